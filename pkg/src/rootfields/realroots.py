"""Certified root location for integer polynomials.

Real roots are isolated by Sturm bisection with exact rational sign
evaluations.  Nonreal roots are isolated as axis-aligned rectangles in
the upper half-plane whose root counts are exact winding numbers,
computed edge-by-edge as Cauchy indices of generalized Sturm chains; the
lower half-plane is filled in by conjugation.  A rectangle's count is
therefore a proof, not a heuristic.

Rectangles in play always have validated boundaries: no root on any
edge and no Cauchy-index jump at a corner.  Subdivision preserves the
property by vetting each split line before using it, so a child's
boundary is made of already-validated pieces plus the vetted line.
Refinement tightens a box by interval Newton steps (midpoint residues
computed exactly) inside a certified outer rectangle, falling back to
one winding-checked subdivision of the outer rectangle whenever Newton
stalls.

Everything is deterministic, and a higher-precision run replays the
lower-precision decisions before continuing, which makes boxes nest
across precisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from gmpy2 import mpq

from . import caches
from .config import DEFAULT, Config
from .errors import (
    DegreeTooSmall,
    EndpointIsRoot,
    NotIrreducible,
    NotSquarefree,
    ZeroPolynomial,
)
from .intervals import (
    c_div,
    c_intersect,
    c_mid,
    c_point,
    c_round_out,
    c_sub,
    c_width,
    cbox,
    coeff_boxes_from_ints,
    horner_box,
    iv_from_fractions,
    iv_to_fractions,
)
from .polyarith import (
    PolyZ,
    Rat,
    _prem,
    squarefree_part,
    zcontent,
    zderiv,
    zdivmod_exact,
    zgcd,
)

# ---------------------------------------------------------------------------
# public geometry types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        assert lo <= hi
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle re x im in the complex plane.

    Real numbers are boxes with im == [0, 0]."""

    re: Interval
    im: Interval

    @property
    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def conjugate(self) -> "Box":
        return Box(self.re, Interval(-self.im.hi, -self.im.lo))

    def sort_key(self):
        return (self.re.lo, self.im.lo)


def _cbox_to_box(cb) -> Box:
    rlo, rhi = iv_to_fractions(cb[0])
    ilo, ihi = iv_to_fractions(cb[1])
    return Box(Interval(rlo, rhi), Interval(ilo, ihi))


# ---------------------------------------------------------------------------
# exact sign evaluation and Sturm chains
# ---------------------------------------------------------------------------


def _sign_at(coeffs, x: Fraction) -> int:
    """Sign of the polynomial at a rational point, exactly."""
    p, q = x.numerator, x.denominator
    acc = 0
    qp = 1
    for coef in reversed(coeffs):
        acc = acc * p + coef * qp
        qp *= q
    return (acc > 0) - (acc < 0)


def _sturm_prs(f0, f1):
    """Negative-remainder chain scaled by positive constants only, so the
    classical index theorem applies: V(a) - V(b) = Cauchy index of f1/f0."""
    chain = [list(f0)]
    if f1:
        chain.append(list(f1))
    while len(chain) >= 2:
        a, b = chain[-2], chain[-1]
        if len(b) - 1 == 0:
            break
        r = _prem(a, b)
        if not r:
            break
        # prem scales the remainder by lc(b)^(deg a - deg b + 1); flip when
        # that factor is negative so only positive scalings remain
        negative = b[-1] < 0 and (len(a) - len(b) + 1) % 2 == 1
        r = [x if negative else -x for x in r]
        c = zcontent(r)
        chain.append([x // c for x in r])
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = []
    for c in chain:
        s = _sign_at(c, x)
        if s:
            signs.append(s)
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def cauchy_bound(f: PolyZ) -> Fraction:
    """Every complex root r satisfies |r| < 1 + max|a_i| / |a_n|."""
    if f.is_zero or f.degree < 1:
        raise ZeroPolynomial("root bound requires degree >= 1")
    return 1 + Fraction(max(abs(c) for c in f.coeffs[:-1]), abs(f.lc))


def sturm_count(f: PolyZ, a: Rat, b: Rat) -> int:
    """Number of real roots of squarefree f in (a, b]."""
    if f.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    coeffs = list(f.coeffs)
    if f.degree >= 1 and len(zgcd(coeffs, zderiv(coeffs))) != 1:
        raise NotSquarefree(f"{f} has a repeated root")
    if _sign_at(coeffs, a) == 0 or _sign_at(coeffs, b) == 0:
        raise EndpointIsRoot("endpoint is a root; counts would be ambiguous")
    if f.degree < 1:
        return 0
    chain = _sturm_prs(coeffs, zderiv(coeffs))
    return _variations(chain, a) - _variations(chain, b)


def count_real_roots(f: PolyZ) -> int:
    """Number of distinct real roots of any nonzero f."""
    if f.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if f.degree < 1:
        return 0
    g = squarefree_part(f)
    if g.degree < 1:
        return 0
    bound = cauchy_bound(g)
    return sturm_count(g, -bound, bound)


def is_totally_real(f: PolyZ, config: Config = DEFAULT) -> bool:
    """All roots real?  Defined for irreducible f only."""
    from .factorz import is_irreducible

    if not is_irreducible(f, config):
        raise NotIrreducible(f"{f} is not irreducible over Q")
    return count_real_roots(f) == f.degree


# ---------------------------------------------------------------------------
# winding numbers on rectangles
# ---------------------------------------------------------------------------


def _edge_pq(g, horizontal: bool, offset: Fraction):
    """Real and imaginary parts of g(z(t)) as integer polynomials in t.

    horizontal: z(t) = t + i*offset;  vertical: z(t) = offset + i*t.
    """
    re: list = []
    im: list = []
    for c in reversed(g):
        if horizontal:
            # acc * (t + i*offset) + c
            new_re = [Fraction(0)] + re
            new_im = [Fraction(0)] + im
            for k, (r_, i_) in enumerate(zip(re, im)):
                new_re[k] += -offset * i_
                new_im[k] += offset * r_
        else:
            # acc * (offset + i*t) + c
            new_re = [offset * r_ for r_ in re] + [Fraction(0)]
            new_im = [offset * i_ for i_ in im] + [Fraction(0)]
            for k, (r_, i_) in enumerate(zip(re, im)):
                new_re[k + 1] += -i_
                new_im[k + 1] += r_
        new_re[0] += c
        re, im = new_re, new_im
    den = 1
    for x in re:
        den = den * x.denominator // _gcd_int(den, x.denominator)
    for x in im:
        den = den * x.denominator // _gcd_int(den, x.denominator)
    P = [int(x * den) for x in re]
    Q = [int(x * den) for x in im]
    while P and P[-1] == 0:
        P.pop()
    while Q and Q[-1] == 0:
        Q.pop()
    return P, Q


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _has_root_in_closed(g, lo: Fraction, hi: Fraction) -> bool:
    """Whether nonzero g vanishes somewhere in [lo, hi]."""
    if len(g) - 1 < 1:
        return False
    if _sign_at(g, lo) == 0 or _sign_at(g, hi) == 0:
        return True
    d = zgcd(g, zderiv(g))
    sf = zdivmod_exact(g, d)[0] if len(d) - 1 > 0 else list(g)
    chain = _sturm_prs(sf, zderiv(sf))
    return _variations(chain, lo) - _variations(chain, hi) > 0


def _edge_index(g, horizontal, offset, t0: Fraction, t1: Fraction):
    """Cauchy index contribution of one directed edge, or None when a root
    of g sits on the closed edge or an endpoint makes the index ambiguous."""
    P, Q = _edge_pq(g, horizontal, offset)
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    if not P and not Q:
        return None
    common = zgcd(P, Q) if (P and Q) else (P or Q)
    if len(common) - 1 > 0 and _has_root_in_closed(common, lo, hi):
        return None  # g vanishes somewhere on the closed edge
    if not Q:
        return 0  # g real and nonzero along the edge: no argument jumps
    if len(common) - 1 > 0 and P and Q:
        P = zdivmod_exact(P, common)[0]
        Q = zdivmod_exact(Q, common)[0]
    if _sign_at(Q, t0) == 0 or _sign_at(Q, t1) == 0:
        return None  # corner lands on a jump of P/Q
    if not P:
        return 0
    chain = _sturm_prs(Q, P)
    return _variations(chain, t0) - _variations(chain, t1)


def _winding(g, rect):
    """Roots of g strictly inside the rectangle, or None on any boundary
    trouble.  rect = (xa, xb, ya, yb)."""
    xa, xb, ya, yb = rect
    edges = [
        (True, ya, xa, xb),  # bottom, left to right
        (False, xb, ya, yb),  # right, upward
        (True, yb, xb, xa),  # top, right to left
        (False, xa, yb, ya),  # left, downward
    ]
    total = 0
    for horizontal, offset, t0, t1 in edges:
        idx = _edge_index(g, horizontal, offset, t0, t1)
        if idx is None:
            return None
        total += idx
    assert total % 2 == 0, "winding total must be even"
    return total // 2


def _edge_q_ok(g, horizontal, offset, t: Fraction) -> bool:
    """Corner admissibility: g must not vanish at the corner and the
    imaginary part along the edge (reduced) must not vanish there either."""
    P, Q = _edge_pq(g, horizontal, offset)
    if not Q:
        return bool(P) and _sign_at(P, t) != 0  # real edge: g(corner) != 0
    if P:
        common = zgcd(P, Q)
        if len(common) - 1 > 0:
            Q = zdivmod_exact(Q, common)[0]
            if _sign_at(common, t) == 0:
                return False  # g(corner) == 0
    return _sign_at(Q, t) != 0


def _split_line(g, lo: Fraction, hi: Fraction, span0: Fraction, span1: Fraction, vertical: bool) -> Fraction:
    """A dyadic split position strictly inside (lo, hi) such that the split
    segment is root-free and all four new corners stay admissible.

    For a vertical line x = pos the segment spans [span0, span1] in y, and
    the perpendicular edges are the horizontals at offsets span0, span1.
    """
    width = hi - lo
    candidates = [Fraction(1, 2)]
    j = 3
    while len(candidates) < 201:
        candidates.append(Fraction(1, 2) + Fraction(1, 2**j))
        candidates.append(Fraction(1, 2) - Fraction(1, 2**j))
        j += 1
    for frac in candidates:
        pos = lo + width * frac
        line_horizontal = not vertical
        P, Q = _edge_pq(g, line_horizontal, pos)
        if not P and not Q:
            continue
        common = zgcd(P, Q) if (P and Q) else (P or Q)
        if len(common) - 1 > 0 and _has_root_in_closed(common, span0, span1):
            continue
        if not (
            _edge_q_ok(g, line_horizontal, pos, span0)
            and _edge_q_ok(g, line_horizontal, pos, span1)
            and _edge_q_ok(g, vertical, span0, pos)
            and _edge_q_ok(g, vertical, span1, pos)
        ):
            continue
        return pos
    raise AssertionError("no admissible split line found")


def _split_rect(g, rect):
    """Split a validated rectangle across its wider side; children come
    back with their exact winding counts and validated boundaries."""
    xa, xb, ya, yb = rect
    if xb - xa >= yb - ya:
        pos = _split_line(g, xa, xb, ya, yb, vertical=True)
        pieces = [(xa, pos, ya, yb), (pos, xb, ya, yb)]
    else:
        pos = _split_line(g, ya, yb, xa, xb, vertical=False)
        pieces = [(xa, xb, ya, pos), (xa, xb, pos, yb)]
    out = []
    for piece in pieces:
        w = _winding(g, piece)
        assert w is not None, "children of a validated rectangle must validate"
        out.append((piece, w))
    return out


def _subdivide_region(g, rect, count):
    """Quadtree-style subdivision until every kept rectangle holds one root."""
    work = [(rect, count)]
    done = []
    while work:
        rect, c = work.pop()
        if c == 1:
            done.append(rect)
            continue
        got = 0
        for piece, w in _split_rect(g, rect):
            got += w
            if w > 0:
                work.append((piece, w))
        assert got == c, "subdivision lost or duplicated roots"
    return done


# ---------------------------------------------------------------------------
# real-root isolation by Sturm bisection
# ---------------------------------------------------------------------------


def _isolate_real(g, chain, lo, hi, count, out):
    """Split (lo, hi) holding `count` roots into one-root pieces and exact
    points; endpoints are never roots."""
    if count == 0:
        return
    if count == 1:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if _sign_at(g, mid) == 0:
        out.append((mid, mid))
        eps = (hi - lo) / 4
        while True:
            a, b = mid - eps, mid + eps
            if (
                _sign_at(g, a) != 0
                and _sign_at(g, b) != 0
                and _variations(chain, a) - _variations(chain, b) == 1
            ):
                break
            eps /= 2
        _isolate_real(g, chain, lo, a, _variations(chain, lo) - _variations(chain, a), out)
        _isolate_real(g, chain, b, hi, _variations(chain, b) - _variations(chain, hi), out)
        return
    left = _variations(chain, lo) - _variations(chain, mid)
    _isolate_real(g, chain, lo, mid, left, out)
    _isolate_real(g, chain, mid, hi, count - left, out)


def _refine_real(g, lo, hi, target):
    """Shrink a sign-change interval below target width; exact roots at
    dyadic midpoints collapse to points."""
    slo = _sign_at(g, lo)
    while hi - lo > target:
        mid = (lo + hi) / 2
        smid = _sign_at(g, mid)
        if smid == 0:
            return mid, mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# complex refinement: interval Newton inside a certified rectangle
# ---------------------------------------------------------------------------


def _eval_exact(g, zr, zi):
    """g(zr + i*zi) exactly over the rationals (gmpy2 mpq arithmetic)."""
    re, im = mpq(0), mpq(0)
    zr, zi = mpq(zr), mpq(zi)
    for c in reversed(g):
        re, im = re * zr - im * zi + int(c), re * zi + im * zr
    return re, im


def _refine_complex(g, gd, rect, precision):
    """Tighten a validated one-root rectangle to width <= 2^-precision."""
    target = mpq(1, 2**precision)
    work_prec = precision + 32
    gdboxes = coeff_boxes_from_ints(gd)
    cert = rect  # validated outer rectangle, always contains the root
    X = cbox(iv_from_fractions(rect[0], rect[1]), iv_from_fractions(rect[2], rect[3]))
    while True:
        w = c_width(X)
        if w <= target:
            return _cbox_to_box(X)
        mre, mim = c_mid(X)
        fr, fi = _eval_exact(g, mre, mim)
        if fr == 0 and fi == 0:
            return _cbox_to_box(c_point(mre, mim))
        fpX = horner_box(gdboxes, X, work_prec)
        quot = c_div(c_point(fr, fi), fpX)
        if quot is not None:
            N = c_sub(c_point(mre, mim), quot)
            X2 = c_intersect(N, X)
            if X2 is not None and c_width(X2) <= w * mpq(3, 4):
                X3 = c_intersect(c_round_out(X2, work_prec), X)
                assert X3 is not None
                X = X3
                continue
        # Newton stalled: halve the certified rectangle by a vetted split
        children = _split_rect(g, cert)
        assert sum(w_ for _, w_ in children) == 1, "lost the root while refining"
        cert = next(piece for piece, w_ in children if w_ == 1)
        inter = c_intersect(
            X, cbox(iv_from_fractions(cert[0], cert[1]), iv_from_fractions(cert[2], cert[3]))
        )
        assert inter is not None
        X = inter


def _separation_bound_exp(g) -> int:
    """k with 2^-k strictly below half the minimal root separation.

    Mahler: sep >= sqrt(3) * n^(-(n+2)/2) * ||g||_2^(1-n) for squarefree
    integer g (|disc| >= 1), so any nonreal root has |Im| >= sep/2."""
    n = len(g) - 1
    a = n ** ((n + 2 + 1) // 2)
    norm2 = isqrt(sum(int(c) * int(c) for c in g)) + 1
    c = norm2 ** (n - 1)
    return (a * c).bit_length() + 1


def _initial_region(g, bd: Fraction, e_low: Fraction, n_pairs: int):
    """A validated rectangle holding exactly the upper half-plane roots.

    Candidates only ever grow outward (and move the bottom edge down,
    staying positive), which cannot change the set of enclosed roots:
    every root has |Re|, |Im| strictly below bd and every nonreal root
    has |Im| strictly above 2 * e_low.  The three outward coordinates
    move at distinct rates so no corner alignment (e.g. corners pinned
    to a line where g is real, as happens for g = x^4 + 1 on y = x) can
    persist across attempts.
    """
    for j in range(400):
        rect = (
            -bd - j * Fraction(1, 64),
            bd + j * Fraction(3, 256),
            e_low / 2**j,
            bd + j * Fraction(5, 1024),
        )
        w = _winding(g, rect)
        if w is not None:
            assert w == n_pairs, "upper half-plane count mismatch"
            return rect
    raise AssertionError("could not validate the initial region")


# ---------------------------------------------------------------------------
# the isolation entry points
# ---------------------------------------------------------------------------


def isolate_roots(f: PolyZ, precision: int = 20) -> tuple[Box, ...]:
    """Disjoint certified boxes around every distinct complex root of f.

    Real roots come back with im == [0, 0]; nonreal roots in conjugate
    pairs of mirrored boxes; all widths at most 2^-precision; ordered by
    (re.lo, im.lo).  Higher precision refines the same boxes.
    """
    if f.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("need degree >= 1")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    return _isolate_cached(f, precision)


@lru_cache(maxsize=512)
def _isolate_cached(f: PolyZ, precision: int) -> tuple[Box, ...]:
    g_poly = squarefree_part(f)
    g = list(g_poly.coeffs)
    n = len(g) - 1
    target = Fraction(1, 2**precision)

    bound = cauchy_bound(g_poly)
    k = 0
    while 2**k < bound:
        k += 1
    bd = Fraction(2**k)

    chain = _sturm_prs(g, zderiv(g))
    raw: list = []
    total_real = _variations(chain, -bd) - _variations(chain, bd)
    _isolate_real(g, chain, -bd, bd, total_real, raw)
    boxes = []
    for lo, hi in raw:
        if lo != hi:
            lo, hi = _refine_real(g, lo, hi, target)
        boxes.append(Box(Interval(lo, hi), Interval(0, 0)))

    n_pairs = (n - total_real) // 2
    if n_pairs:
        e_exp = _separation_bound_exp(g)
        e_low = Fraction(1, 2 ** (e_exp + 1))
        region = _initial_region(g, bd, e_low, n_pairs)
        gd = zderiv(g)
        for rect in _subdivide_region(g, region, n_pairs):
            upper = _refine_complex(g, gd, rect, precision)
            boxes.append(upper)
            boxes.append(upper.conjugate())

    boxes.sort(key=lambda b: b.sort_key())
    return tuple(boxes)


caches.register(_isolate_cached.cache_clear)


def refine_box(f: PolyZ, box: Box, precision: int) -> Box:
    """The root box of f at the given precision contained in ``box``.

    Relies on determinism: a higher-precision isolation replays the
    lower-precision run and keeps shrinking, so exactly one new box nests
    inside any box previously returned for f.  Raises ValueError when no
    isolated box lies inside ``box``.
    """
    for cand in isolate_roots(f, precision):
        if (
            box.re.lo <= cand.re.lo
            and cand.re.hi <= box.re.hi
            and box.im.lo <= cand.im.lo
            and cand.im.hi <= box.im.hi
        ):
            return cand
    raise ValueError("box does not contain an isolated root box of f")
