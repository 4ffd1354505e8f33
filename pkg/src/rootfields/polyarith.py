"""Exact arithmetic for univariate polynomials over Z and Q.

Coefficient sequences are dense and constant-first: ``coeffs[k]`` is the
coefficient of ``X^k``.  The zero polynomial has an empty coefficient
tuple; any nonzero polynomial has a nonzero leading coefficient.

Rationals are ``fractions.Fraction`` (the library-wide ``Rat`` type):
the stdlib type already maintains the gcd-reduced, positive-denominator
invariants.  The gcd/resultant kernels follow the subresultant PRS so
coefficient growth stays polynomial; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _intgcd
from typing import Iterable, Sequence, Union

from .errors import ZeroPolynomial

Rat = Fraction

# ---------------------------------------------------------------------------
# low-level kernels on plain coefficient lists (constant-first, int entries)
# ---------------------------------------------------------------------------


def znorm(c: list) -> list:
    """Strip trailing (leading-coefficient side) zeros in place."""
    while c and c[-1] == 0:
        c.pop()
    return c


def zadd(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] += x
    return znorm(out)


def zneg(a: Sequence) -> list:
    return [-x for x in a]


def zsub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] -= x
    return znorm(out)


def zmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return znorm(out)


def zscale(a: Sequence, c) -> list:
    if c == 0:
        return []
    return [c * x for x in a]


def zshift(a: Sequence, k: int) -> list:
    """Multiply by X^k."""
    if not a:
        return []
    return [0] * k + list(a)


def zeval(a: Sequence, x):
    """Horner evaluation; exact for int/Fraction arguments."""
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zderiv(a: Sequence) -> list:
    return znorm([i * a[i] for i in range(1, len(a))])


def zcontent(a: Sequence) -> int:
    g = 0
    for x in a:
        g = _intgcd(g, abs(int(x)))
        if g == 1:
            break
    return g


def zprim(a: Sequence) -> list:
    """Primitive part, sign preserved."""
    if not a:
        return []
    g = zcontent(a)
    return [x // g for x in a]


def zmonicize_sign(a: Sequence) -> list:
    """Flip sign so the leading coefficient is positive."""
    if a and a[-1] < 0:
        return [-x for x in a]
    return list(a)


def zdivmod_exact(a: Sequence, b: Sequence):
    """Divide over Z assuming each leading-coefficient division is exact.

    Returns ``(q, r)`` with a = q*b + r, or None if some step's integer
    division is inexact (so b cannot divide a over Z).
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        lead = r[-1]
        if lead % lb != 0:
            return None
        c = lead // lb
        k = len(r) - 1 - db
        q[k] = c
        for i, x in enumerate(b):
            r[i + k] -= c * x
        # the top entry cancels exactly
        r.pop()
        znorm(r)
    return q, r


def zdivides(b: Sequence, a: Sequence) -> bool:
    """True iff b divides a over Z (both int coefficient lists)."""
    res = zdivmod_exact(a, b)
    return res is not None and not res[1]


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    e = da - db + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + k] -= lr * y
        znorm(r)
        e -= 1
    if e > 0:
        f = lb**e
        r = [f * x for x in r]
    return r


def zgcd(a: Sequence, b: Sequence) -> list:
    """Polynomial gcd over Z, primitive with positive leading coefficient
    up to the integer content gcd (i.e. the true gcd in Z[X])."""
    A = znorm(list(a))
    B = znorm(list(b))
    if not A and not B:
        return []
    if not A:
        return zmonicize_sign(B)
    if not B:
        return zmonicize_sign(A)
    ca, cb = zcontent(A), zcontent(B)
    c = _intgcd(ca, cb)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    if len(A) < len(B):
        A, B = B, A
    # primitive PRS keeps the intermediate coefficients smallest; the
    # subresultant divisors are a special case of the content strip here
    while True:
        if len(B) - 1 == 0:
            return [c]
        R = _prem(A, B)
        if not R:
            return zscale(zmonicize_sign(zprim(B)), c)
        A, B = B, zprim(R)


def zresultant(a: Sequence, b: Sequence) -> int:
    """Resultant over Z via the subresultant PRS (Cohen, Alg. 3.3.7)."""
    try:
        from gmpy2 import mpz
    except ImportError:  # pragma: no cover
        mpz = int
    A = znorm([mpz(int(x)) for x in a])
    B = znorm([mpz(int(x)) for x in b])
    if not A or not B:
        raise ZeroPolynomial("resultant requires nonzero polynomials")
    da, db = len(A) - 1, len(B) - 1
    if da == 0 and db == 0:
        return 1
    if da == 0:
        return int(A[0] ** db)
    if db == 0:
        return int(B[0] ** da)
    s = 1
    if da < db:
        A, B, da, db = B, A, db, da
        if (da & 1) and (db & 1):
            s = -s
    ca = zcontent(A)
    cb = zcontent(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = mpz(ca) ** db * mpz(cb) ** da
    g = mpz(1)
    h = mpz(1)
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if (da & 1) and (db & 1):
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0  # positive-degree common factor
        div = g * h**delta
        B = [x // div for x in R]
        g = A[-1]
        if delta > 0:
            h = g**delta // h ** (delta - 1)
        if len(B) - 1 == 0:
            dA = len(A) - 1
            h = B[0] ** dA // h ** (dA - 1) if dA > 1 else B[0] ** dA * h ** (1 - dA)
            return int(s * t * h)


def qclear(coeffs: Sequence[Fraction]) -> tuple[list, int]:
    """Clear denominators: returns (integer coefficient list, lcm)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // _intgcd(den, c.denominator)
    return [int(c * den) for c in coeffs], den


# ---------------------------------------------------------------------------
# public polynomial types
# ---------------------------------------------------------------------------

CoeffsZ = Union[Sequence[int], "PolyZ"]


def _as_fracs(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = []
    for c in coeffs:
        out.append(c if isinstance(c, Fraction) else Fraction(c))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyZ:
    """Dense integer polynomial; ``coeffs[k]`` multiplies X^k."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        znorm(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "PolyZ") -> "PolyZ":
        return PolyZ(zadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "PolyZ") -> "PolyZ":
        return PolyZ(zsub(self.coeffs, other.coeffs))

    def __neg__(self) -> "PolyZ":
        return PolyZ(zneg(self.coeffs))

    def __mul__(self, other) -> "PolyZ":
        if isinstance(other, PolyZ):
            return PolyZ(zmul(self.coeffs, other.coeffs))
        return PolyZ(zscale(self.coeffs, int(other)))

    __rmul__ = __mul__

    def __call__(self, x):
        return zeval(self.coeffs, x)

    def derivative(self) -> "PolyZ":
        return PolyZ(zderiv(self.coeffs))

    def content(self) -> int:
        return zcontent(self.coeffs)

    def primitive_part(self) -> "PolyZ":
        return PolyZ(zmonicize_sign(zprim(self.coeffs)))

    def to_polyq(self) -> "PolyQ":
        return PolyQ(self.coeffs)

    def shift_arg(self, a: int) -> "PolyZ":
        """f(X + a), exact Taylor shift."""
        out: list = []
        for c in reversed(self.coeffs):
            out = zadd(zmul(out, [a, 1]), [c])
        return PolyZ(out)

    def __str__(self) -> str:
        return render_poly(self.coeffs)


@dataclass(frozen=True)
class PolyQ:
    """Dense rational polynomial; coefficients are ``Fraction``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", _as_fracs(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ(zadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return PolyQ(zsub(self.coeffs, other.coeffs))

    def __neg__(self) -> "PolyQ":
        return PolyQ(zneg(self.coeffs))

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return PolyQ(zmul(self.coeffs, other.coeffs))
        return PolyQ(zscale(self.coeffs, Fraction(other)))

    __rmul__ = __mul__

    def __call__(self, x):
        return zeval(self.coeffs, x)

    def derivative(self) -> "PolyQ":
        return PolyQ(zderiv(self.coeffs))

    def monic(self) -> "PolyQ":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = 1 / self.lc
        return PolyQ([c * inv for c in self.coeffs])

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero:
            raise ZeroPolynomial("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv = 1 / other.lc
        q = [Fraction(0)] * max(len(r) - db, 0)
        while r and len(r) - 1 >= db:
            c = r[-1] * inv
            k = len(r) - 1 - db
            q[k] = c
            for i, y in enumerate(b):
                r[i + k] -= c * y
            r.pop()
            znorm(r)
        return PolyQ(q), PolyQ(r)

    def to_polyz(self) -> "PolyZ":
        """Primitive integer polynomial with positive leading coefficient
        sharing this polynomial's roots (content/primitive normalization)."""
        ints, _ = qclear(self.coeffs)
        return PolyZ(zmonicize_sign(zprim(ints)))

    def clear_denominators(self) -> tuple["PolyZ", int]:
        ints, den = qclear(self.coeffs)
        return PolyZ(ints), den

    def __str__(self) -> str:
        return render_poly(self.coeffs)


def render_poly(coeffs: Sequence) -> str:
    """Human-readable rendering, highest power first (``x^2 - 2``)."""
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = f"{mag}"
        else:
            xs = "x" if k == 1 else f"x^{k}"
            body = xs if mag == 1 else f"{mag}{xs}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# the four spec operations
# ---------------------------------------------------------------------------


def _coerce_q(f) -> PolyQ:
    return f.to_polyq() if isinstance(f, PolyZ) else f


def poly_gcd(f, g) -> PolyQ:
    """Monic gcd in Q[X].  gcd(f, 0) is monic(f); gcd(0, 0) is an error."""
    f, g = _coerce_q(f), _coerce_q(g)
    if f.is_zero and g.is_zero:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    fa, _ = qclear(f.coeffs)
    ga, _ = qclear(g.coeffs)
    d = zgcd(fa, ga)
    return PolyQ(d).monic()


def squarefree_part(f: PolyZ) -> PolyZ:
    """Primitive f / gcd(f, f'): same roots, all simple, positive lc."""
    if f.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if f.degree == 0:
        return PolyZ([1])
    p = zprim(list(f.coeffs))
    d = zgcd(p, zderiv(p))
    # d is primitive and divides the primitive p, so division is exact in Z[X]
    q = zdivmod_exact(p, d)
    assert q is not None and not q[1]
    return PolyZ(zmonicize_sign(zprim(q[0])))


def is_squarefree(f: PolyZ) -> bool:
    if f.is_zero:
        return False
    if f.degree == 0:
        return True
    p = zprim(list(f.coeffs))
    return len(zgcd(p, zderiv(p))) == 1


def resultant(f, g) -> Fraction:
    """res(f, g) in Q; zero iff f and g share a root."""
    f, g = _coerce_q(f), _coerce_q(g)
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("resultant requires nonzero polynomials")
    fa, df = qclear(f.coeffs)
    ga, dg = qclear(g.coeffs)
    r = zresultant(fa, ga)
    return Fraction(r, df**g.degree * dg**f.degree)


def discriminant(f: PolyZ) -> int:
    """disc(f) = (-1)^(n(n-1)/2) * res(f, f') / lc(f)."""
    if f.is_zero or f.degree < 1:
        raise ZeroPolynomial("discriminant requires degree >= 1")
    n = f.degree
    if n == 1:
        return 1
    r = zresultant(f.coeffs, zderiv(f.coeffs))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f.lc)
    assert rem == 0
    return q


X = PolyZ([0, 1])
