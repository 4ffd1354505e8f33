"""Splitting-field towers, Galois groups on labelled roots, embedding problems.

Splitting fields are built by repeatedly adjoining one root of an
irreducible factor of the defining polynomial.  The field after each
adjunction is kept *flat*: a single primitive element gamma with a monic
integer minimal polynomial, every element stored as an integer coordinate
vector over the power basis plus a common denominator.  Factoring over the
current field uses norms: shift the polynomial by an integer multiple of
gamma until its norm (a resultant in one variable, computed by evaluation
and interpolation) is squarefree, factor that norm over the rationals, and
pull the factors back by gcds.  The norm factor belonging to the adjoined
root is itself the minimal polynomial of the next primitive element, so an
adjunction costs one rational factorization and one linear-gcd
re-expression of the old generator.

Galois groups are recovered numerically but certified by counting.  An
automorphism is a choice, level by level, of which labelled root each
adjoined root is sent to.  Candidate images are screened with outward-
rounded interval arithmetic; a level is accepted only when the survivor
count equals the relative degree, which forces the survivor set to equal
the true root set exactly.  The leaves of this search are the |G|
automorphisms, read off as permutations of the labelled roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import gcd as _gcd, lcm as _lcm, mpq, mpz

from . import caches
from .config import DEFAULT, Config
from .errors import (
    DegreeCapExceeded,
    DegreeTooSmall,
    ElementNotInGroup,
    EmbeddingUnresolved,
    InconsistentTower,
    NotSquarefree,
    ZeroPolynomial,
)
from .factorz import _pgcd, factor_with_degree_multiple
from .intervals import (
    c_add,
    c_contains_zero,
    c_intersect,
    c_mul,
    c_point,
    c_round_out,
    cbox,
    coeff_boxes_from_ints,
    horner_box,
    iv_from_fractions,
    iv_point,
)
from .polyarith import PolyZ, is_squarefree, zadd, zderiv, zmul, znorm, zresultant
from .realroots import Box, isolate_roots


# ---------------------------------------------------------------------------
# flat number fields  Q[gamma]/(M),  M monic over Z
# ---------------------------------------------------------------------------
# An element is (nums, den): a length-D tuple of mpz coordinates over the
# power basis 1, gamma, ..., gamma^(D-1), divided by a positive common
# denominator, with gcd(contents, den) == 1.  This keeps multiplication an
# integer convolution plus one exact reduction.


class _Flat:
    __slots__ = ("modulus", "D", "zero", "one", "gen")

    def __init__(self, modulus):
        mod = tuple(mpz(c) for c in modulus)
        assert len(mod) >= 2 and mod[-1] == 1, "modulus must be monic"
        self.modulus = mod
        self.D = len(mod) - 1
        self.zero = (tuple([mpz(0)] * self.D), mpz(1))
        one = [mpz(0)] * self.D
        one[0] = mpz(1)
        self.one = (tuple(one), mpz(1))
        if self.D == 1:
            self.gen = (tuple([-mod[0]]), mpz(1))
        else:
            g = [mpz(0)] * self.D
            g[1] = mpz(1)
            self.gen = (tuple(g), mpz(1))

    def _norm(self, nums, den):
        g = den
        for x in nums:
            g = _gcd(g, x)
            if g == 1:
                break
        if g != 1:
            nums = [x // g for x in nums]
            den = den // g
        return (tuple(nums), den)

    def from_int(self, c):
        v = [mpz(0)] * self.D
        v[0] = mpz(c)
        return (tuple(v), mpz(1))

    def from_frac(self, q):
        q = Fraction(q)
        v = [mpz(0)] * self.D
        v[0] = mpz(q.numerator)
        return self._norm(v, mpz(q.denominator))

    def from_vector(self, fracs):
        den = mpz(1)
        for q in fracs:
            den = _lcm(den, mpz(Fraction(q).denominator))
        v = [mpz(0)] * self.D
        for k, q in enumerate(fracs):
            q = Fraction(q)
            v[k] = mpz(q.numerator) * (den // mpz(q.denominator))
        return self._norm(v, den)

    def to_fracs(self, a):
        nums, den = a
        d = int(den)
        return tuple(Fraction(int(x), d) for x in nums)

    def is_zero(self, a):
        return all(x == 0 for x in a[0])

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        return self._norm([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)

    def sub(self, a, b):
        (an, ad), (bn, bd) = a, b
        return self._norm([x * bd - y * ad for x, y in zip(an, bn)], ad * bd)

    def neg(self, a):
        return (tuple(-x for x in a[0]), a[1])

    def smul(self, a, q):
        q = Fraction(q)
        return self._norm([x * q.numerator for x in a[0]], a[1] * q.denominator)

    def _reduce(self, buf):
        # buf: mutable coefficient list, degree may reach 2D-2; modulus monic
        mod = self.modulus
        D = self.D
        for k in range(len(buf) - 1, D - 1, -1):
            c = buf[k]
            if c:
                buf[k] = mpz(0)
                base = k - D
                for j in range(D):
                    buf[base + j] -= c * mod[j]
        return buf[:D]

    def mul(self, a, b):
        (an, ad), (bn, bd) = a, b
        conv = [mpz(0)] * (2 * self.D - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        return self._norm(self._reduce(conv), ad * bd)

    def inv(self, a):
        # modular inverse: invert coordinate vectors mod word-size primes,
        # CRT-combine, rationally reconstruct, and verify exactly
        assert not self.is_zero(a)
        nums, den = a
        if all(x == 0 for x in nums[1:]):
            return self.from_frac(Fraction(int(den), int(nums[0])))
        mod_full = [int(c) for c in self.modulus]
        vec = [int(x) for x in nums]
        crt, m, used, next_try = None, 1, 0, 1
        for p in itertools.islice(_prime_stream(), _MAX_PRIMES):
            mp = [c % p for c in mod_full]
            up = _fpx_ext_inv([x % p for x in vec], mp, p)
            if up is None:
                continue
            up = up + [0] * (self.D - len(up))
            if crt is None:
                crt, m = up, p
            else:
                crt = [_crt2(x, m, y, p) for x, y in zip(crt, up)]
                m *= p
            used += 1
            # reconstruction is costly, so only try on a doubling schedule
            if used < next_try:
                continue
            next_try = used + max(1, used // 2)
            fracs = _reconstruct_vector(crt, m)
            if fracs is None:
                continue
            cand = self.smul(self.from_vector(fracs), Fraction(int(den)))
            if self.mul(a, cand) == self.one:
                return cand
        raise InconsistentTower("modular inversion did not stabilize")

    def div(self, a, b):
        return self.mul(a, self.inv(b))


_MAX_PRIMES = 600


def _prime_stream():
    from gmpy2 import next_prime

    p = mpz((1 << 62) + 135)
    while True:
        p = next_prime(p)
        yield int(p)


def _crt2(a, ma, b, p):
    t = (b - a) % p * pow(ma % p, -1, p) % p
    return a + ma * t


def _rat_reconstruct(v, m, bound=None):
    """n/d with v*d = n (mod m) and |n|, d <= sqrt(m/2), or None."""
    if bound is None:
        bound = _isqrt((m - 1) // 2)
    r0, s0 = m, 0
    r1, s1 = v % m, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    n, d = (r1, s1) if s1 > 0 else (-r1, -s1)
    return Fraction(int(n), int(d))


def _reconstruct_vector(vec, m):
    """Rational reconstruction of every coordinate, or None; bails early."""
    bound = _isqrt((m - 1) // 2)
    out = []
    for v in vec:
        f = _rat_reconstruct(v, m, bound)
        if f is None:
            return None
        out.append(f)
    return out


def _isqrt(n):
    from gmpy2 import isqrt

    return int(isqrt(mpz(n)))


# dense arithmetic mod p: int lists, constant term first, trimmed
def _fpx_norm(a, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpx_divmod(a, b, p):
    inv = pow(b[-1], -1, p)
    a = a[:]
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        k = len(a) - len(b)
        if c:
            q[k] = c
            for j in range(len(b) - 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _fpx_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _fpx_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _fpx_ext_inv(b, mod_p, p):
    """Inverse of b modulo (mod_p, p), or None when b is not a unit."""
    r0, s0 = _fpx_norm(mod_p, p), []
    r1, s1 = _fpx_norm(b, p), [1]
    if not r1:
        return None
    while len(r1) > 1:
        q, r = _fpx_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fpx_sub(s0, _fpx_mul(q, s1, p), p)
        if not r1:
            return None
    c = pow(r1[0], -1, p)
    return [x * c % p for x in s1]


# ---------------------------------------------------------------------------
# polynomials with coefficients in a flat field
# ---------------------------------------------------------------------------
# Represented as trimmed constant-first lists of field elements.


def _kp_trim(K, p):
    while p and K.is_zero(p[-1]):
        p.pop()
    return p


def _kp_add(K, a, b):
    out = []
    for i in range(max(len(a), len(b))):
        x = a[i] if i < len(a) else K.zero
        y = b[i] if i < len(b) else K.zero
        out.append(K.add(x, y))
    return _kp_trim(K, out)


def _kp_mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not K.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _kp_trim(K, out)


def _kp_smul(K, a, c):
    return _kp_trim(K, [K.mul(x, c) for x in a])


def _kp_divmod_monic(K, a, b):
    assert b and b[-1] == K.one
    a = list(a)
    q = [K.zero] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1]
        k = len(a) - len(b)
        if not K.is_zero(c):
            q[k] = c
            for j in range(len(b) - 1):
                a[k + j] = K.sub(a[k + j], K.mul(c, b[j]))
        a.pop()
    return _kp_trim(K, q), _kp_trim(K, a)


def _kp_monic(K, a):
    assert a
    if a[-1] == K.one:
        return list(a)
    return _kp_smul(K, a, K.inv(a[-1]))


def _kp_primitive(K, p):
    """Scale a K-polynomial by a rational so every coefficient has unit
    denominator and the integer coordinates are jointly coprime."""
    if not p:
        return []
    L = mpz(1)
    for c in p:
        L = _lcm(L, c[1])
    vecs = [[x * (L // den) for x in nums] for (nums, den) in p]
    g = mpz(0)
    for v in vecs:
        for x in v:
            g = _gcd(g, x)
            if g == 1:
                break
        if g == 1:
            break
    if g > 1:
        vecs = [[x // g for x in v] for v in vecs]
    return [(tuple(v), mpz(1)) for v in vecs]


def _kp_prem(K, a, b):
    """Pseudo-remainder of a by b over K, computed without inversions."""
    c = b[-1]
    r = list(a)
    while len(r) >= len(b):
        t = r[-1]
        k = len(r) - len(b)
        nr = [K.mul(x, c) for x in r[:-1]]
        for j in range(len(b) - 1):
            nr[k + j] = K.sub(nr[k + j], K.mul(t, b[j]))
        r = _kp_trim(K, nr)
    return r


def _kp_gcd_monic(K, a, b):
    a = _kp_primitive(K, _kp_trim(K, list(a)))
    b = _kp_primitive(K, _kp_trim(K, list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _kp_prem(K, a, b)
        a, b = b, _kp_primitive(K, r)
    return _kp_monic(K, a)


# gcd over K via images in Z_p[x]/(modulus mod p).  The quotient ring is
# usually not a field; any division by a zero divisor just disqualifies
# that prime.  Unlucky primes can only enlarge the gcd degree, so a CRT
# candidate of minimal observed degree that exactly divides both inputs
# is the gcd, independent of prime luck.


def _kq_mul(a, b, mp, p):
    D = len(mp) - 1
    conv = [0] * (2 * D - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
    for k in range(len(conv) - 1, D - 1, -1):
        c = conv[k] % p
        if c:
            base = k - D
            for j in range(D):
                conv[base + j] -= c * mp[j]
        conv[k] = 0
    return [x % p for x in conv[:D]]


def _kq_poly_gcd(A, B, mp, p):
    """Monic gcd of polynomials over Z_p[x]/(mp), or None on a zero divisor."""
    D = len(mp) - 1
    A = [c[:] for c in A]
    B = [c[:] for c in B]

    def trim(P):
        while P and not any(P[-1]):
            P.pop()
        return P

    A, B = trim(A), trim(B)
    if len(A) < len(B):
        A, B = B, A
    while B:
        inv = _fpx_ext_inv(B[-1], mp, p)
        if inv is None:
            return None
        inv = inv + [0] * (D - len(inv))
        B = [_kq_mul(c, inv, mp, p) for c in B]
        while len(A) >= len(B):
            t = A[-1]
            k = len(A) - len(B)
            if any(t):
                for j in range(len(B) - 1):
                    prod = _kq_mul(t, B[j], mp, p)
                    A[k + j] = [(x - y) % p for x, y in zip(A[k + j], prod)]
            A.pop()
            trim(A)
        A, B = B, A
    inv = _fpx_ext_inv(A[-1], mp, p)
    if inv is None:
        return None
    inv = inv + [0] * (D - len(inv))
    return [_kq_mul(c, inv, mp, p) for c in A]


def _kp_gcd_modular(K, a, b):
    """Monic gcd over K, computed modulo primes and verified exactly."""
    if K.D == 1:
        return _kp_gcd_monic(K, a, b)
    a = _kp_primitive(K, _kp_trim(K, list(a)))
    b = _kp_primitive(K, _kp_trim(K, list(b)))
    mod_full = [int(c) for c in K.modulus]
    avec = [[int(x) for x in c[0]] for c in a]
    bvec = [[int(x) for x in c[0]] for c in b]
    best, crt, m, used, next_try = None, None, 1, 0, 1
    for p in itertools.islice(_prime_stream(), _MAX_PRIMES):
        mp = [c % p for c in mod_full]
        gp = _kq_poly_gcd(
            [[x % p for x in v] for v in avec],
            [[x % p for x in v] for v in bvec],
            mp,
            p,
        )
        if gp is None:
            continue
        deg = len(gp) - 1
        if best is None or deg < best:
            best, crt, m, used, next_try = deg, gp, p, 1, 1
        elif deg == best:
            crt = [
                [_crt2(x, m, y, p) for x, y in zip(cc, cn)]
                for cc, cn in zip(crt, gp)
            ]
            m *= p
            used += 1
        else:
            continue
        if used < next_try:
            continue
        next_try = used + max(1, used // 2)
        bound = _isqrt((m - 1) // 2)
        coeffs = []
        ok = True
        for vec in crt:
            fracs = [_rat_reconstruct(x, m, bound) for x in vec]
            if any(v is None for v in fracs):
                ok = False
                break
            coeffs.append(K.from_vector(fracs))
        if not ok:
            continue
        if coeffs[-1] != K.one:
            continue
        if _kp_divmod_monic(K, a, coeffs)[1] or _kp_divmod_monic(K, b, coeffs)[1]:
            continue
        return coeffs
    raise InconsistentTower("modular gcd did not stabilize")


def _kp_eval(K, p, x):
    acc = K.zero
    for c in reversed(p):
        acc = K.add(K.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------
# re-expressing the old generator after an adjunction
# ---------------------------------------------------------------------------

_MAX_LIFT_BITS = 1 << 17


def _horner_int_vec(coeffs, x, mpe, pe):
    """Evaluate an integer-coefficient polynomial at the ring element x,
    working in Z[y]/(modulus, pe)."""
    D = len(mpe) - 1
    acc = [0] * D
    for c in reversed(coeffs):
        acc = _kq_mul(acc, x, mpe, pe)
        acc[0] = (acc[0] + c) % pe
    return acc


def _is_common_root(K2, mod_ints, acc, cand):
    val = K2.zero
    for c in reversed(mod_ints):
        val = K2.add(K2.mul(val, cand), K2.from_int(c))
    if not K2.is_zero(val):
        return False
    val = K2.zero
    for c in reversed(acc):
        val = K2.add(K2.mul(val, cand), c)
    return K2.is_zero(val)


def _newton_lift(K2, mod_ints, dmod_ints, nj, p, x0, w0, acc):
    """Lift a simple root of the old modulus from mod p to a rational
    coordinate vector, doubling precision until reconstruction verifies."""
    pe, x, w = p, x0, w0
    while True:
        pe2 = pe * pe
        if pe2.bit_length() > _MAX_LIFT_BITS:
            return None
        nj2 = [c % pe2 for c in nj]
        mx = _horner_int_vec(mod_ints, x, nj2, pe2)
        corr = _kq_mul(mx, w, nj2, pe2)
        x = [(a - b) % pe2 for a, b in zip(x, corr)]
        dx = _horner_int_vec(dmod_ints, x, nj2, pe2)
        t = _kq_mul(dx, w, nj2, pe2)
        t[0] = (t[0] - 2) % pe2
        w = [(-c) % pe2 for c in _kq_mul(w, t, nj2, pe2)]
        pe = pe2
        if pe.bit_length() < 128:
            continue
        fracs = _reconstruct_vector(x, pe)
        if fracs is None:
            continue
        cand = K2.from_vector(fracs)
        if _is_common_root(K2, mod_ints, acc, cand):
            return cand


def _generator_image(K, K2, acc, mod_poly):
    """The element alpha of K2 that the old generator maps to: the unique
    common root of the old modulus and the re-expression polynomial acc
    (unique because the defining norm was squarefree).  Hensel lifting from
    one prime does the bulk of the work; a full modular gcd is the fallback.
    """
    if K.D == 1:
        return K2.zero
    mod_ints = [int(c) for c in K.modulus]
    dmod_ints = [int(c) for c in zderiv(mod_ints)]
    nj = [int(c) for c in K2.modulus]
    D2 = K2.D
    acc_vd = [([int(v) for v in nums], int(den)) for nums, den in acc]
    attempts = 0
    for p in itertools.islice(_prime_stream(), 40):
        if any(den % p == 0 for _, den in acc_vd):
            continue
        mp = [c % p for c in nj]
        accp = []
        for vec, den in acc_vd:
            dinv = pow(den, -1, p)
            accp.append([v % p * dinv % p for v in vec] + [0] * (D2 - len(vec)))
        modp = [[c % p] + [0] * (D2 - 1) for c in mod_ints]
        g = _kq_poly_gcd(modp, accp, mp, p)
        if g is None or len(g) != 2:
            continue
        x0 = [(-c) % p for c in g[0]]
        w0 = _fpx_ext_inv(_horner_int_vec(dmod_ints, x0, mp, p), mp, p)
        if w0 is None:
            continue
        w0 = w0 + [0] * (D2 - len(w0))
        cand = _newton_lift(K2, mod_ints, dmod_ints, nj, p, x0, w0, acc)
        if cand is not None:
            return cand
        attempts += 1
        if attempts >= 3:
            break
    lin = _kp_gcd_modular(K2, mod_poly, acc)
    assert len(lin) == 2, "old generator did not re-express linearly"
    return K2.neg(lin[0])


# ---------------------------------------------------------------------------
# factoring over a flat field by norms
# ---------------------------------------------------------------------------

_SQFREE_PRIMES = (1000003, 1000033, 1000037, 1000039, 1000081)


def _shift_sequence(limit):
    yield 0
    for s in range(1, limit):
        yield s
        yield -s


def _integralize(K, g):
    """Rescale the variable of monic g so all coefficients become integral.

    Returns (e, gt) with gt(y) = e^d g(y/e); a root b of g corresponds to
    the root e*b of gt, and gt has unit-denominator coefficients.
    """
    d = len(g) - 1
    e = mpz(1)
    for c in g:
        e = _lcm(e, c[1])
    gt = []
    for m, (nums, den) in enumerate(g):
        scale = e ** (d - m)
        assert scale % den == 0
        f = scale // den
        gt.append((tuple(x * f for x in nums), mpz(1)))
    return int(e), gt


def _modular_squarefree(n_coeffs):
    np = [int(c) for c in n_coeffs]
    dnp = [int(c) for c in zderiv(np)]
    for p in _SQFREE_PRIMES:
        a = [c % p for c in np]
        b = [c % p for c in dnp]
        if len(znorm(a)) == len(np) and len(_pgcd(a, b, p)) == 1:
            return True
    return is_squarefree(PolyZ(np))


def _interp_int(xs, ys):
    """Exact polynomial through (xs[i], ys[i]); asserts integer coefficients."""
    n = len(xs)
    coef = [mpq(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = []
    for i in range(n - 1, -1, -1):
        poly = zadd(zmul(poly, [-xs[i], 1]), [coef[i]]) if poly else [coef[i]]
    out = []
    for c in poly:
        q = mpq(c)
        assert q.denominator == 1
        out.append(int(q))
    return znorm(out)


def _norm_poly(K, gt, s):
    """Norm of gt(y - s*gamma) down to Q, or None if it is not squarefree."""
    d = len(gt) - 1
    deg_n = K.D * d
    xs = list(itertools.islice(_shift_sequence(deg_n + 2), deg_n + 1))
    mod = [int(c) for c in K.modulus]
    vecs = [znorm([int(x) for x in c[0]]) for c in gt]
    ys = []
    for z0 in xs:
        acc = []
        for m in range(d, -1, -1):
            acc = zmul(acc, [z0, -s]) if acc else []
            acc = znorm(zadd(acc, vecs[m]))
        # empty acc means z0/e is a rational root, so the norm vanishes there
        ys.append(zresultant(mod, acc) if acc else 0)
    n = _interp_int(xs, ys)
    assert len(n) == deg_n + 1 and n[-1] == 1, "norm is not monic of full degree"
    if not _modular_squarefree(n):
        return None
    return n


def _pullback(K, gt, nj, s):
    """Monic factor of gt whose roots b satisfy nj(b + s*gamma) = 0."""
    t = [K.smul(K.gen, s), K.one]
    acc = []
    for c in reversed(nj):
        acc = _kp_mul(K, acc, t)
        if acc:
            _, acc = _kp_divmod_monic(K, acc, gt)
        if c:
            acc = _kp_add(K, acc, [K.from_int(c)])
    return _kp_gcd_modular(K, list(gt), acc)


def _rescale_factor(K, h, e):
    """Map a monic factor of gt back to the original variable: h(e*y), monic."""
    d = len(h) - 1
    out = []
    for m, c in enumerate(h):
        out.append(K.smul(c, Fraction(e) ** (m - d)))
    return out


def _trager_factor(K, g, shift_limit=None):
    """Factor monic squarefree g over K.

    Returns a list of (factor, scaled, norm_factor, s, e): `factor` is monic
    over K in the original variable, `scaled` the same factor in the
    integralized variable (roots multiplied by e), and `norm_factor` the
    monic integer minimal polynomial of e*root + s*gamma for its roots.
    """
    d = len(g) - 1
    e, gt = _integralize(K, g)
    limit = shift_limit or (2 * (K.D * d) ** 2 + 8)
    n = None
    for s in _shift_sequence(limit):
        n = _norm_poly(K, gt, s)
        if n is not None:
            break
    if n is None:
        raise InconsistentTower("no squarefree norm shift found")
    parts = factor_with_degree_multiple(PolyZ(n), K.D)
    if len(parts) == 1:
        return [(list(g), gt, n, s, e)]
    out = []
    total = 0
    for nj in parts:
        dj, rem = divmod(nj.degree, K.D)
        assert rem == 0
        h = _pullback(K, gt, list(nj.coeffs), s)
        assert len(h) - 1 == dj, "pullback degree mismatch"
        out.append((_rescale_factor(K, h, e), h, list(nj.coeffs), s, e))
        total += dj
    assert total == d
    return out


# ---------------------------------------------------------------------------
# tower construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Level:
    """One adjunction step: the minimal polynomial of the adjoined root over
    the field below (coefficients as coordinate vectors over that field's
    power basis, constant term first) and the labelled-root box pinned to it."""

    min_poly: tuple
    box: Box
    degree: int


@dataclass(frozen=True, eq=False)
class TowerField:
    """A splitting field presented as a tower of root adjunctions.

    `levels` describe the relative minimal polynomials; `degree` is the
    field degree over Q.  The flat primitive-element data used by the
    group machinery is kept in private fields.
    """

    levels: tuple
    defining: PolyZ
    _modulus: tuple
    _lvl: tuple  # (coeff elts over previous field, e, s) per level
    _root_elts: tuple  # element of the final field per labelled root
    _root_boxes: tuple
    _pinned: tuple  # labelled-root index adjoined at each level

    @property
    def degree(self) -> int:
        return len(self._modulus) - 1


class _NeedPrecision(Exception):
    pass


_MAX_PREC = 1 << 14


def _box_to_cbox(b: Box):
    return cbox(iv_from_fractions(b.re.lo, b.re.hi), iv_from_fractions(b.im.lo, b.im.hi))


def _scaled_boxes(f, base, prec):
    """Boxes at the given precision, matched by containment to base order."""
    fine = isolate_roots(f, prec)
    out = []
    for b in base:
        hit = [g for g in fine if _box_inside(g, b)]
        if len(hit) != 1:
            raise InconsistentTower("failed to match refined root boxes")
        out.append(_box_to_cbox(hit[0]))
    return out


def _box_inside(a: Box, b: Box) -> bool:
    return (
        b.re.lo <= a.re.lo
        and a.re.hi <= b.re.hi
        and b.im.lo <= a.im.lo
        and a.im.hi <= b.im.hi
    )


def _elt_cbox(elt, gamma, prec):
    nums, den = elt
    v = horner_box(coeff_boxes_from_ints([int(x) for x in nums]), gamma, prec)
    if den != 1:
        v = c_mul(v, c_point(mpq(1, int(den)), mpq(0)))
    return c_round_out(v, prec)


def _scale_cbox(a, c):
    return c_mul(a, c_point(mpq(c), mpq(0)))


_ZERO_CBOX = cbox(iv_point(mpq(0)), iv_point(mpq(0)))


def _survivors(K_prev_coeffs, gamma, candidates, prec):
    coeff_boxes = [_elt_cbox(c, gamma, prec) for c in K_prev_coeffs]
    out = []
    for i, b in enumerate(candidates):
        if c_contains_zero(horner_box(coeff_boxes, b, prec)):
            out.append(i)
    return out


def _locate(value, candidates):
    return [i for i, b in enumerate(candidates) if c_intersect(value, b) is not None]


def _build_tower(coeffs: tuple, cap: int) -> tuple:
    f = PolyZ(list(coeffs))
    if f.is_zero:
        raise ZeroPolynomial("cannot split the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("need degree at least 1 to build a splitting field")
    if not is_squarefree(f):
        raise NotSquarefree("defining polynomial must be squarefree")

    base_boxes = isolate_roots(f, 64)
    n = f.degree

    K = _Flat((0, 1))
    lc = f.coeffs[-1]
    pending = [[K.from_frac(Fraction(c, lc)) for c in f.coeffs]]
    lvl_data = []  # (coeffs over previous field, e, s, degree)
    roots = []  # elements of the current field

    while pending:
        # largest degree first; ties go to the earliest entry
        pick = max(range(len(pending)), key=lambda i: (len(pending[i]), -i))
        g = pending.pop(pick)
        if len(g) == 2:
            roots.append(K.neg(g[0]))
            continue
        factors = _trager_factor(K, g)
        nonlinear = [t for t in factors if len(t[0]) > 2]
        for t in factors:
            if len(t[0]) == 2:
                roots.append(K.neg(t[0][0]))
        if not nonlinear:
            continue
        adj = max(range(len(nonlinear)), key=lambda i: len(nonlinear[i][0]))
        h, hsc, nj, s, e = nonlinear.pop(adj)
        d = len(h) - 1
        estimate = K.D * d
        if estimate > cap:
            raise DegreeCapExceeded(
                f"splitting tower would reach degree {estimate} (cap {cap})",
                estimate=estimate,
            )

        K2 = _Flat(nj)
        # express the old generator in the new field: acc(x) collapses the
        # adjoined relation, and its common root with the old modulus is
        # unique because the norm of the shifted factor is squarefree
        tpoly = _kp_trim(K2, [K2.gen, K2.from_int(-s)])
        acc = []
        for m in range(d, -1, -1):
            acc = _kp_mul(K2, acc, tpoly)
            nums, den = hsc[m]
            addend = _kp_trim(
                K2,
                [K2.smul(K2.from_int(int(x)), Fraction(1, int(den))) for x in nums],
            )
            acc = _kp_add(K2, acc, addend)
        mod_poly = [K2.from_int(int(c)) for c in K.modulus]
        if len(acc) >= len(mod_poly):
            _, acc = _kp_divmod_monic(K2, acc, mod_poly)
        alpha = _generator_image(K, K2, acc, mod_poly)

        powers = [K2.one]
        for _ in range(K.D - 1):
            powers.append(K2.mul(powers[-1], alpha))

        def lift(elt, powers=powers, K2=K2):
            nums, den = elt
            acc2 = K2.zero
            for m, x in enumerate(nums):
                if x:
                    acc2 = K2.add(acc2, K2.smul(powers[m], Fraction(int(x))))
            return K2.smul(acc2, Fraction(1, int(den)))

        beta = K2.smul(K2.sub(K2.gen, K2.smul(alpha, Fraction(s))), Fraction(1, e))
        lvl_data.append(([h[m] for m in range(d + 1)], e, s, d))
        roots = [lift(r) for r in roots]
        roots.append(beta)
        h_new = [lift(c) for c in h]
        quot, rem = _kp_divmod_monic(K2, h_new, [K2.neg(beta), K2.one])
        assert not rem, "adjoined root does not annihilate its factor"
        if len(quot) == 2:
            roots.append(K2.neg(quot[0]))
            new_pending = []
        else:
            new_pending = [quot]
        pending = new_pending + [[lift(c) for c in p] for p in pending]
        for t in nonlinear:
            pending.append([lift(c) for c in t[0]])
        K = K2

    assert len(roots) == n, "lost track of roots while splitting"

    # end-to-end certificate: the tracked roots exactly factor f
    prod = [K.one]
    for r in roots:
        prod = _kp_mul(K, prod, [K.neg(r), K.one])
    want = [K.from_frac(Fraction(c, lc)) for c in f.coeffs]
    if _kp_trim(K, list(want)) != prod:
        raise InconsistentTower("tracked roots do not multiply back to the input")

    pinned, perm = _pin_embedding(f, base_boxes, lvl_data, roots)
    by_box = [None] * n
    for elt_idx, box_idx in enumerate(perm):
        by_box[box_idx] = roots[elt_idx]

    levels = []
    prev_D = 1
    for (coeffs_lv, e, s, d), j in zip(lvl_data, pinned):
        pub = tuple(
            tuple(Fraction(int(x), int(den)) for x in nums)
            for (nums, den) in coeffs_lv
        )
        levels.append(Level(min_poly=pub, box=base_boxes[j], degree=d))
        prev_D *= d
    assert prev_D == K.D, "level degrees do not multiply to the tower degree"

    tower = TowerField(
        levels=tuple(levels),
        defining=f,
        _modulus=tuple(int(c) for c in K.modulus),
        _lvl=tuple((tuple(c), e, s, d) for (c, e, s, d) in lvl_data),
        _root_elts=tuple(by_box),
        _root_boxes=tuple(base_boxes),
        _pinned=tuple(pinned),
    )
    return tower, tuple(base_boxes)


def _pin_embedding(f, base_boxes, lvl_data, roots):
    """Choose one complex embedding: pin each adjoined root to a box and
    match every tracked root element to its labelled box."""
    n = f.degree
    prec = 64
    while prec <= _MAX_PREC:
        try:
            boxes_p = _scaled_boxes(f, base_boxes, prec)
            gamma = _ZERO_CBOX
            pinned = []
            for coeffs_lv, e, s, d in lvl_data:
                surv = _survivors(coeffs_lv, gamma, boxes_p, prec)
                if len(surv) != d:
                    raise _NeedPrecision
                j = surv[0]
                pinned.append(j)
                gamma = c_add(_scale_cbox(boxes_p[j], e), _scale_cbox(gamma, s))
            perm = []
            for r in roots:
                hits = _locate(_elt_cbox(r, gamma, prec), boxes_p)
                if len(hits) != 1:
                    raise _NeedPrecision
                perm.append(hits[0])
            if sorted(perm) != list(range(n)):
                raise _NeedPrecision
            return pinned, perm
        except _NeedPrecision:
            prec *= 2
    raise InconsistentTower("could not certify the pinned embedding")


@lru_cache(maxsize=32)
def _build_tower_cached(coeffs: tuple, cap: int):
    return _build_tower(coeffs, cap)


caches.register(_build_tower_cached.cache_clear)


def splitting_field(f: PolyZ, config: Config = DEFAULT):
    """Build a splitting field of squarefree f as a tower of adjunctions.

    Returns (tower, boxes); the boxes label the roots in the canonical
    isolation order, and the tower's group machinery acts on exactly that
    labelling.
    """
    tower, boxes = _build_tower_cached(tuple(f.coeffs), config.max_splitting_degree)
    return tower, boxes


# ---------------------------------------------------------------------------
# Galois group by certified search
# ---------------------------------------------------------------------------


def _compatible_boxes(a: Box, b: Box) -> bool:
    return a == b or _box_inside(a, b) or _box_inside(b, a)


def galois_group(tower: TowerField, roots) -> "PermGroup":
    """All automorphisms of the tower as permutations of the labelled roots."""
    roots = tuple(roots)
    base = tower._root_boxes
    if len(roots) != len(base) or not all(
        _compatible_boxes(a, b) for a, b in zip(roots, base)
    ):
        raise InconsistentTower("root labelling does not match this tower")
    n = len(base)
    f = tower.defining
    D = tower.degree

    prec = 64
    while prec <= _MAX_PREC:
        try:
            boxes_p = _scaled_boxes(f, base, prec)
            perms = []

            def walk(level, gamma):
                if level == len(tower._lvl):
                    perm = []
                    for r in tower._root_elts:
                        hits = _locate(_elt_cbox(r, gamma, prec), boxes_p)
                        if len(hits) != 1:
                            raise _NeedPrecision
                        perm.append(hits[0])
                    if sorted(perm) != list(range(n)):
                        raise _NeedPrecision
                    perms.append(tuple(perm))
                    return
                coeffs_lv, e, s, d = tower._lvl[level]
                surv = _survivors(coeffs_lv, gamma, boxes_p, prec)
                if len(surv) < d:
                    raise InconsistentTower("lost candidate roots during the search")
                if len(surv) > d:
                    raise _NeedPrecision
                for j in surv:
                    walk(level + 1, c_add(_scale_cbox(boxes_p[j], e), _scale_cbox(gamma, s)))

            walk(0, _ZERO_CBOX)
            elements = frozenset(perms)
            if len(perms) != D or len(elements) != D:
                raise InconsistentTower("automorphism count does not match the degree")
            ident = tuple(range(n))
            if ident not in elements:
                raise InconsistentTower("identity automorphism missing")
            for a in elements:
                for b in elements:
                    if perm_compose(a, b) not in elements:
                        raise InconsistentTower("automorphisms are not closed")
            return PermGroup(
                degree=n,
                elements=elements,
                generators=_reduce_generators(n, elements),
            )
        except _NeedPrecision:
            prec *= 2
    raise InconsistentTower("could not certify the automorphism search")


def complex_conjugation(tower: TowerField, group: "PermGroup"):
    """The permutation induced by complex conjugation on the labelled roots."""
    boxes = tower._root_boxes
    perm = []
    for i, b in enumerate(boxes):
        if b.is_real:
            perm.append(i)
            continue
        mirror = b.conjugate()
        if mirror not in boxes:
            raise EmbeddingUnresolved("conjugate root box not present at this precision")
        perm.append(boxes.index(mirror))
    perm = tuple(perm)
    if perm not in group.elements:
        raise InconsistentTower("conjugation permutation is not in the group")
    assert perm_compose(perm, perm) == tuple(range(len(boxes)))
    return perm


# ---------------------------------------------------------------------------
# permutation groups
# ---------------------------------------------------------------------------


def perm_identity(n: int) -> tuple:
    return tuple(range(n))


def perm_compose(p: tuple, q: tuple) -> tuple:
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def perm_inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: tuple) -> int:
    n = len(p)
    ident = perm_identity(n)
    q = p
    k = 1
    while q != ident:
        q = perm_compose(q, p)
        k += 1
    return k


def cycle_notation(p: tuple) -> str:
    """Cycle form on 0-based points, fixed points omitted; identity is ()."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def _closure(n: int, gens) -> frozenset:
    ident = perm_identity(n)
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _reduce_generators(n: int, elements) -> tuple:
    gens = []
    have = frozenset({perm_identity(n)})
    for x in sorted(elements):
        if x not in have:
            gens.append(x)
            have = _closure(n, gens)
            if len(have) == len(elements):
                break
    return tuple(gens)


@dataclass(frozen=True)
class PermGroup:
    """A group of permutations of {0, ..., degree-1}."""

    degree: int
    elements: frozenset
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))


def perm_group(degree: int, generators) -> PermGroup:
    """Group generated by explicit permutations."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of {degree} points: {g}")
    elements = _closure(degree, gens)
    return PermGroup(degree=degree, elements=elements, generators=_reduce_generators(degree, elements))


def subgroup_generated(group: PermGroup, gens) -> PermGroup:
    """Smallest subgroup of `group` containing `gens`."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if g not in group.elements:
            raise ElementNotInGroup(f"{g} is not an element of the group")
    elements = _closure(group.degree, gens)
    return PermGroup(
        degree=group.degree,
        elements=elements,
        generators=_reduce_generators(group.degree, elements),
    )


def conjugacy_class(group: PermGroup, x) -> frozenset:
    x = tuple(x)
    if x not in group.elements:
        raise ElementNotInGroup(f"{x} is not an element of the group")
    return frozenset(perm_compose(g, perm_compose(x, perm_inverse(g))) for g in group.elements)


def is_elementary_abelian(elements, p: int) -> bool:
    """True when every non-identity element has order p and all commute."""
    elems = [tuple(x) for x in elements]
    if not elems:
        return False
    n = len(elems[0])
    ident = perm_identity(n)
    for x in elems:
        if x != ident and perm_order(x) != p:
            return False
    for x in elems:
        for y in elems:
            if perm_compose(x, y) != perm_compose(y, x):
                return False
    return True


def subgroups_containing(group: PermGroup, seed, normal_only: bool = False) -> list:
    """All subgroups of `group` containing the permutations in `seed`,
    smallest first; optionally only those normal in `group`."""
    base = _closure(group.degree, list(seed) + [perm_identity(group.degree)])
    found = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in sorted(group.elements):
                if g not in sub:
                    bigger = _closure(group.degree, list(sub | {g}))
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    if normal_only:
        subs = [
            s
            for s in subs
            if all(
                perm_compose(g, perm_compose(x, perm_inverse(g))) in s
                for g in group.generators or group.elements
                for x in s
            )
        ]
    return subs


def symmetric_group(n: int) -> PermGroup:
    elements = frozenset(itertools.permutations(range(n)))
    return PermGroup(degree=n, elements=elements, generators=_reduce_generators(n, elements))


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of a regular n-gon acting on its vertices (order 2n)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return perm_group(n, [rot, ref])


# ---------------------------------------------------------------------------
# abstract groups and embedding problems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CayleyGroup:
    """Finite group given by its multiplication table (indices 0..n-1)."""

    table: tuple
    identity: int

    @property
    def order(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))


def cayley_group(table) -> CayleyGroup:
    """Validate a multiplication table and wrap it as a group."""
    t = tuple(tuple(row) for row in table)
    n = len(t)
    if any(len(row) != n for row in t) or any(
        x < 0 or x >= n for row in t for x in row
    ):
        raise ValueError("malformed multiplication table")
    ident = None
    for e in range(n):
        if all(t[e][x] == x and t[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise ValueError("table has no identity element")
    for x in range(n):
        if ident not in t[x]:
            raise ValueError(f"element {x} has no inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise ValueError("table is not associative")
    return CayleyGroup(table=t, identity=ident)


def cyclic_group(n: int) -> CayleyGroup:
    return cayley_group([[(i + j) % n for j in range(n)] for i in range(n)])


def _g_elements(G):
    if isinstance(G, PermGroup):
        return sorted(G.elements)
    return list(range(G.order))


def _g_mul(G):
    if isinstance(G, PermGroup):
        return perm_compose
    return lambda a, b: G.table[a][b]


def _g_identity(G):
    if isinstance(G, PermGroup):
        return perm_identity(G.degree)
    return G.identity


@dataclass(frozen=True)
class EmbeddingProblem:
    """Data (phi: G -> A, alpha: B -> A) with both maps surjective
    homomorphisms; a solution is a surjective gamma: G -> B with
    alpha(gamma(g)) = phi(g) everywhere."""

    G: object
    A: object
    B: object
    phi: dict
    alpha: dict


def _check_hom(dom, cod, mapping, name):
    mul_d, mul_c = _g_mul(dom), _g_mul(cod)
    elems = _g_elements(dom)
    if set(mapping.keys()) != set(elems):
        raise ValueError(f"{name} must be defined on every element")
    cod_elems = set(_g_elements(cod))
    if any(v not in cod_elems for v in mapping.values()):
        raise ValueError(f"{name} has values outside the codomain")
    for a in elems:
        for b in elems:
            if mapping[mul_d(a, b)] != mul_c(mapping[a], mapping[b]):
                raise ValueError(f"{name} is not a homomorphism")
    if set(mapping.values()) != cod_elems:
        raise ValueError(f"{name} is not surjective")


def _generating_set(G):
    ident = _g_identity(G)
    elems = _g_elements(G)
    gens = []
    have = {ident}
    for x in elems:
        if x not in have:
            gens.append(x)
            have = _span(G, gens)
            if len(have) == len(elems):
                break
    return gens


def _span(G, gens):
    mul = _g_mul(G)
    ident = _g_identity(G)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def extend_generator_map(dom, cod, gens, images):
    """Extend generator images to a full homomorphism, or None.

    ``gens`` must generate ``dom`` (ValueError otherwise) and ``images``
    names one codomain element per generator.  The extension is verified
    on every pair before being returned, so a dict result is always a
    genuine homomorphism; None means the assignment is inconsistent.
    """
    if len(gens) != len(images):
        raise ValueError("one image per generator required")
    elems = _g_elements(dom)
    if len(_span(dom, list(gens))) != len(elems):
        raise ValueError("the given elements do not generate the domain")
    cod_elems = set(_g_elements(cod))
    if any(v not in cod_elems for v in images):
        raise ValueError("generator image outside the codomain")

    mul_d, mul_c = _g_mul(dom), _g_mul(cod)
    mapping = {_g_identity(dom): _g_identity(cod)}
    frontier = [_g_identity(dom)]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, images):
                y = mul_d(x, g)
                v = mul_c(mapping[x], img)
                if y in mapping:
                    if mapping[y] != v:
                        return None
                else:
                    mapping[y] = v
                    nxt.append(y)
        frontier = nxt
    for a in elems:
        for b in elems:
            if mapping[mul_d(a, b)] != mul_c(mapping[a], mapping[b]):
                return None
    return mapping


def solve_embedding_problem(problem: EmbeddingProblem):
    """A surjective gamma with alpha(gamma(g)) = phi(g), or None.

    The search assigns images to a fixed generating set of G, extends by
    multiplication, and keeps a candidate only if it verifies as a
    surjective homomorphism with the required compatibility; None is
    returned only after the whole assignment space is exhausted.
    """
    G, B = problem.G, problem.B
    _check_hom(G, problem.A, problem.phi, "phi")
    _check_hom(B, problem.A, problem.alpha, "alpha")

    mul_g, mul_b = _g_mul(G), _g_mul(B)
    ident_g, ident_b = _g_identity(G), _g_identity(B)
    g_elems = _g_elements(G)
    b_elems = _g_elements(B)
    gens = _generating_set(G)
    fibers = [
        [b for b in b_elems if problem.alpha[b] == problem.phi[g]] for g in gens
    ]

    for choice in itertools.product(*fibers):
        gamma = {ident_g: ident_b}
        frontier = [ident_g]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, choice):
                    y = mul_g(x, g)
                    v = mul_b(gamma[x], img)
                    if y in gamma:
                        if gamma[y] != v:
                            ok = False
                            break
                    else:
                        gamma[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(gamma) != len(g_elems):
            continue
        if any(
            gamma[mul_g(a, b)] != mul_b(gamma[a], gamma[b])
            for a in g_elems
            for b in g_elems
        ):
            continue
        if set(gamma.values()) != set(b_elems):
            continue
        if any(problem.alpha[gamma[g]] != problem.phi[g] for g in g_elems):
            continue
        return gamma
    return None
