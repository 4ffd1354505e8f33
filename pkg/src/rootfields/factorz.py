"""Integer polynomial factorization (Zassenhaus).

Pipeline for a primitive squarefree polynomial: monicize, pick a good odd
prime (squarefree reduction, fewest modular factors among the first five
candidates, ties to the smallest), factor mod p by distinct-degree plus
deterministic equal-degree splitting, Hensel-lift the factor tree
quadratically until the modulus clears twice the Mignotte bound, then
recombine modular factors by subsets of increasing size with degree-sum
and trailing-coefficient pruning.  Everything is deterministic: no
randomness enters at any stage.

``factor_with_degree_multiple`` exposes the recombination prune used by
the splitting-field construction: when every true factor is known to have
degree divisible by m, subsets whose degree sum is not are skipped, which
collapses the classic exponential recombination blowup for norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from gmpy2 import mpz

from .config import DEFAULT, Config
from .errors import DegreeCapExceeded, ZeroPolynomial
from .polyarith import (
    PolyZ,
    zcontent,
    zderiv,
    zdivmod_exact,
    zgcd,
    zmonicize_sign,
    zmul,
    znorm,
    zprim,
)

# ---------------------------------------------------------------------------
# arithmetic mod m on coefficient lists (constant-first)
# ---------------------------------------------------------------------------


def _pnorm(a, m):
    a = [x % m for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % m
    return _pnorm(out, m)


def _psub(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % m
    return _pnorm(out, m)


def _pmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pnorm(out, m)


def _pdivmod_monic(a, b, m):
    """Divide by monic b modulo m."""
    r = [x % m for x in a]
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    while True:
        r = _pnorm(r, m)
        if not r or len(r) - 1 < db:
            return _pnorm(q, m), r
        c = r[-1]
        k = len(r) - 1 - db
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] = (r[i + k] - c * y) % m


def _pmonic(a, p):
    inv = pow(int(a[-1]), -1, p)
    return [x * inv % p for x in a]


def _pgcd(a, b, p):
    a, b = _pnorm(a, p), _pnorm(b, p)
    while b:
        if len(b) - 1 == 0:
            return [1]
        _, r = _pdivmod_monic(a, _pmonic(b, p), p)
        a, b = b, r
    return _pmonic(a, p) if a else []


def _pxgcd(g, h, p):
    """Bezout (s, t) with s*g + t*h = 1 mod p for coprime monic g, h."""
    r0, r1 = [x % p for x in g], [x % p for x in h]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _pnorm(r1, p):
        lead_inv = pow(int(_pnorm(r1, p)[-1]), -1, p)
        q, r = _pdivmod_monic(r0, _pmonic(r1, p), p)
        q = _pmul(q, [lead_inv], p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    c = _pnorm(r0, p)
    assert len(c) == 1, "xgcd arguments were not coprime"
    inv = pow(int(c[0]), -1, p)
    return _pmul(s0, [inv], p), _pmul(t0, [inv], p)


def _ppowmod(a, e, f, p):
    """a^e mod (f, p) by square and multiply."""
    result = [1]
    base = _pdivmod_monic(a, f, p)[1]
    while e:
        if e & 1:
            result = _pdivmod_monic(_pmul(result, base, p), f, p)[1]
        base = _pdivmod_monic(_pmul(base, base, p), f, p)[1]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# factorization mod p (monic squarefree input)
# ---------------------------------------------------------------------------


def _ddf(f, p):
    """Distinct-degree split: list of (degree d, product of the degree-d
    irreducible factors)."""
    out = []
    w = [0, 1]
    fstar = list(f)
    d = 0
    while len(fstar) - 1 >= 2 * (d + 1):
        d += 1
        w = _ppowmod(w, p, fstar, p)
        g = _pgcd(_psub(w, [0, 1], p), fstar, p)
        if len(g) - 1 > 0:
            out.append((d, g))
            fstar = _pdivmod_monic(fstar, g, p)[0]
            w = _pdivmod_monic(w, fstar, p)[1]
    if len(fstar) - 1 > 0:
        out.append((len(fstar) - 1, fstar))
    return out


def _edf(h, d, p):
    """Split a product of distinct degree-d irreducibles mod p.

    Candidate splitting elements are enumerated in a fixed counting order
    (base-p digit expansion of k = p, p+1, ...), so runs are repeatable.
    """
    m = len(h) - 1
    if m == d:
        return [h]
    exp = (p**d - 1) // 2
    k = p
    while True:
        digits = []
        kk = k
        while kk:
            digits.append(kk % p)
            kk //= p
        k += 1
        a = _pnorm(digits, p)
        if len(a) - 1 >= m:
            a = _pdivmod_monic(a, h, p)[1]
            if len(a) - 1 < 1:
                continue
        g = _pgcd(a, h, p)
        if 0 < len(g) - 1 < m:
            rest = _pdivmod_monic(h, g, p)[0]
            return _edf(g, d, p) + _edf(rest, d, p)
        b = _psub(_ppowmod(a, exp, h, p), [1], p)
        g = _pgcd(b, h, p)
        if 0 < len(g) - 1 < m:
            rest = _pdivmod_monic(h, g, p)[0]
            return _edf(g, d, p) + _edf(rest, d, p)


def _factor_mod_p(f, p):
    """Monic irreducible factors of monic squarefree f mod p, sorted."""
    out = []
    for d, h in _ddf(f, p):
        out.extend(_edf(h, d, p))
    return sorted(out, key=lambda g: (len(g), tuple(g)))


# ---------------------------------------------------------------------------
# Hensel lifting (quadratic, factor tree)
# ---------------------------------------------------------------------------


class _Node:
    __slots__ = ("g", "h", "s", "t", "left", "right", "leaf")

    def __init__(self, leaf=None):
        self.leaf = leaf
        self.left = self.right = None
        self.g = self.h = self.s = self.t = None


def _build_tree(facs, p):
    if len(facs) == 1:
        return _Node(leaf=[mpz(c) for c in facs[0]])
    mid = len(facs) // 2
    node = _Node()
    node.left = _build_tree(facs[:mid], p)
    node.right = _build_tree(facs[mid:], p)
    node.g = _subtree_product(node.left, p)
    node.h = _subtree_product(node.right, p)
    node.s, node.t = [[mpz(c) for c in v] for v in _pxgcd(node.g, node.h, p)]
    node.g = [mpz(c) for c in node.g]
    node.h = [mpz(c) for c in node.h]
    return node


def _subtree_product(node, p):
    if node.leaf is not None:
        return [int(c) for c in node.leaf]
    return _pmul(_subtree_product(node.left, p), _subtree_product(node.right, p), p)


def _lift_round(node, f, m, m2):
    """One quadratic step: from f = g*h (mod m) to (mod m2 = m^2)."""
    if node.leaf is not None:
        node.leaf = f
        return
    g, h, s, t = node.g, node.h, node.s, node.t
    e = _psub(f, _pmul(g, h, m2), m2)
    q, r = _pdivmod_monic(_pmul(s, e, m2), h, m2)
    g2 = _padd(_padd(g, _pmul(t, e, m2), m2), _pmul(q, g, m2), m2)
    h2 = _padd(h, r, m2)
    b = _psub(_padd(_pmul(s, g2, m2), _pmul(t, h2, m2), m2), [1], m2)
    c, d = _pdivmod_monic(_pmul(s, b, m2), h2, m2)
    s2 = _psub(s, d, m2)
    t2 = _psub(_psub(t, _pmul(t, b, m2), m2), _pmul(c, g2, m2), m2)
    node.g, node.h, node.s, node.t = g2, h2, s2, t2
    _lift_round(node.left, g2, m, m2)
    _lift_round(node.right, h2, m, m2)


def _collect_leaves(node, out):
    if node.leaf is not None:
        out.append(node.leaf)
    else:
        _collect_leaves(node.left, out)
        _collect_leaves(node.right, out)


def _hensel_lift(f, facs, p, bound):
    """Lift factors of monic f from mod p until the modulus exceeds bound.

    Returns (lifted factor list, modulus).
    """
    if len(facs) == 1:
        return [list(f)], p
    tree = _build_tree(facs, p)
    m = mpz(p)
    while m <= bound:
        m2 = m * m
        froot = [mpz(c) % m2 for c in f]
        _lift_round(tree, _pnorm(froot, m2), m, m2)
        m = m2
    leaves: list = []
    _collect_leaves(tree, leaves)
    return leaves, m


# ---------------------------------------------------------------------------
# good prime selection
# ---------------------------------------------------------------------------


def _odd_primes():
    yield 3
    n = 5
    while True:
        for q in range(3, isqrt(n) + 1, 2):
            if n % q == 0:
                break
        else:
            yield n
        n += 2


def _choose_prime(f):
    """First five odd primes keeping monic f squarefree; fewest modular
    factors wins, ties to the smallest prime."""
    fbar_d = zderiv(f)
    candidates = []
    for p in _odd_primes():
        fp = _pnorm(f, p)
        if len(fp) != len(f):
            continue  # cannot happen for monic f, kept for clarity
        if len(_pgcd(fp, _pnorm(fbar_d, p), p)) != 1:
            continue
        facs = _factor_mod_p(fp, p)
        candidates.append((len(facs), p, facs))
        if len(candidates) == 5:
            break
    candidates.sort(key=lambda c: (c[0], c[1]))
    _, p, facs = candidates[0]
    return p, facs


# ---------------------------------------------------------------------------
# recombination
# ---------------------------------------------------------------------------


def _symmetric(x, m):
    x = x % m
    return x - m if 2 * x > m else x


def _mignotte_bound(f):
    """sqrt(n+1) * 2^n * height * |lc|; any factor's height fits under it."""
    n = len(f) - 1
    height = max(abs(int(c)) for c in f)
    return (isqrt(n + 1) + 1) * (1 << n) * height * abs(int(f[-1]))


def _degree_sum_table(degs, smax):
    """reach[i][j] = set of degree sums over j elements of degs[i:]."""
    n = len(degs)
    reach = [[set() for _ in range(smax + 1)] for _ in range(n + 1)]
    reach[n][0].add(0)
    for i in range(n - 1, -1, -1):
        reach[i][0].add(0)
        for j in range(1, smax + 1):
            acc = set(reach[i + 1][j])
            acc.update(t + degs[i] for t in reach[i + 1][j - 1])
            reach[i][j] = acc
    return reach


def _subsets_of_size(pool, degs, s, half_deg, multiple, reach):
    """Index subsets of the given size whose degree sum is a multiple of
    ``multiple`` and at most ``half_deg``, in lexicographic order."""
    n = len(pool)
    chosen: list = []

    def rec(i, count, dsum):
        if count == s:
            if dsum % multiple == 0 and dsum <= half_deg:
                yield tuple(chosen)
            return
        for k in range(i, n - (s - count) + 1):
            nxt = dsum + degs[k]
            feasible = any(
                nxt + t <= half_deg and (nxt + t) % multiple == 0
                for t in reach[k + 1][s - count - 1]
            )
            if feasible:
                chosen.append(k)
                yield from rec(k + 1, count + 1, nxt)
                chosen.pop()

    yield from rec(0, 0, 0)


def _recombine(f, lifted, modulus, degree_multiple):
    """Search subsets of lifted factors (increasing size, then
    lexicographic) whose symmetric-lift product divides f over Z.

    Minimal-size-first order makes every emitted factor irreducible: a
    reducible divisor would contain a smaller dividing subset, already
    found and removed.  f is monic.
    """
    out = []
    pool = list(range(len(lifted)))
    f = [int(c) for c in f]
    bound = _mignotte_bound(f)
    s = 1
    # every proper true factor d with deg d <= deg f / 2 is found at its
    # subset size; at most one factor can sit above the half-degree prune
    # at any moment, and that one is exactly the final remainder
    while s <= len(pool) - 1:
        degs = [len(lifted[i]) - 1 for i in pool]
        reach = _degree_sum_table(degs, s)
        total_deg = len(f) - 1
        restart = False
        for subset in _subsets_of_size(
            pool, degs, s, total_deg // 2, degree_multiple, reach
        ):
            idxs = [pool[k] for k in subset]
            # trailing coefficient of a true factor divides f(0)
            if f[0] != 0:
                tc = mpz(1)
                for i in idxs:
                    tc = tc * lifted[i][0] % modulus
                tc = _symmetric(tc, modulus)
                if tc == 0 or f[0] % tc:
                    continue
            prod = [mpz(1)]
            for i in idxs:
                prod = _pmul(prod, lifted[i], modulus)
            cand = [int(_symmetric(c, modulus)) for c in prod]
            if any(abs(c) > bound for c in cand):
                continue
            division = zdivmod_exact(f, cand)
            if division is not None and not division[1]:
                out.append(cand)
                f = division[0]
                for i in idxs:
                    pool.remove(i)
                restart = True
                break
        if not restart:
            s += 1
    if len(f) - 1 > 0:
        out.append(f)
    return out


# ---------------------------------------------------------------------------
# Zassenhaus on a primitive squarefree polynomial
# ---------------------------------------------------------------------------


def _zassenhaus(g, degree_multiple=1):
    """Irreducible factors (primitive, positive lead) of a primitive
    squarefree positive-lead polynomial of degree >= 1."""
    g = list(g)
    out = []
    if g[0] == 0:
        out.append([0, 1])
        k = next(i for i, c in enumerate(g) if c != 0)
        g = g[k:]  # squarefree, so k == 1
    n = len(g) - 1
    if n == 0:
        return out
    if n == 1:
        out.append(zmonicize_sign(g))
        return out
    lead = g[-1]
    # monicize: F(x) = lead^(n-1) g(x/lead) is monic over Z
    F = [int(g[k]) * int(lead) ** (n - 1 - k) for k in range(n + 1)]
    p, facs = _choose_prime(F)
    if len(facs) == 1:
        out.append(zmonicize_sign(zprim(g)))
        return out
    bound = 2 * _mignotte_bound(F)
    lifted, modulus = _hensel_lift([mpz(c) for c in F], facs, p, bound)
    parts = _recombine(F, lifted, modulus, degree_multiple)
    for G in parts:
        # undo the monicizing substitution: x -> lead * x, then primitive part
        back = [int(G[k]) * int(lead) ** k for k in range(len(G))]
        out.append(zmonicize_sign(zprim(back)))
    return out


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """content * prod(poly^mult) == the factored polynomial, exactly.

    Factors are primitive with positive leading coefficient, pairwise
    distinct, sorted by (degree, coefficient tuple).
    """

    content: int
    factors: tuple[tuple[PolyZ, int], ...]

    def expand(self) -> PolyZ:
        acc = [self.content]
        for poly, mult in self.factors:
            for _ in range(mult):
                acc = zmul(acc, poly.coeffs)
        return PolyZ(acc)

    def __str__(self) -> str:
        parts = [str(self.content)] if self.content != 1 or not self.factors else []
        for poly, mult in self.factors:
            term = f"({poly})"
            if mult > 1:
                term += f"^{mult}"
            parts.append(term)
        return " * ".join(parts) if parts else "1"


def squarefree_decomposition(f: PolyZ) -> tuple[int, list[tuple[PolyZ, int]]]:
    """Yun's algorithm: signed content and [(part, multiplicity)] with the
    parts squarefree, pairwise coprime, primitive with positive lead."""
    if f.is_zero:
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    sign = -1 if f.lc < 0 else 1
    content = sign * f.content()
    p = zmonicize_sign(zprim(list(f.coeffs)))
    if len(p) - 1 == 0:
        return content, []
    out = []
    dp = zderiv(p)
    g = zgcd(p, dp)
    if len(g) - 1 == 0:
        return content, [(PolyZ(p), 1)]
    b = zdivmod_exact(p, g)[0]
    c = zdivmod_exact(dp, g)[0]
    d = znorm([x - y for x, y in _pairs(c, zderiv(b))])
    i = 1
    while len(b) - 1 > 0:
        a = zgcd(b, d)
        if len(a) - 1 > 0:
            out.append((PolyZ(zmonicize_sign(a)), i))
        b = zdivmod_exact(b, a)[0]
        c = zdivmod_exact(d, a)[0]
        d = znorm([x - y for x, y in _pairs(c, zderiv(b))])
        i += 1
    return content, out


def _pairs(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def factor(f: PolyZ, config: Config = DEFAULT) -> Factorization:
    """Full factorization over Z: signed content times irreducible powers."""
    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree > config.max_input_degree:
        raise DegreeCapExceeded(
            f"degree {f.degree} exceeds the input cap {config.max_input_degree}"
        )
    content, parts = squarefree_decomposition(f)
    bag: dict[tuple, int] = {}
    for part, mult in parts:
        for irr in _zassenhaus(list(part.coeffs)):
            key = tuple(irr)
            bag[key] = bag.get(key, 0) + mult
    factors = tuple(
        (PolyZ(k), m) for k, m in sorted(bag.items(), key=lambda kv: (len(kv[0]), kv[0]))
    )
    return Factorization(content=content, factors=factors)


def is_irreducible(f: PolyZ, config: Config = DEFAULT) -> bool:
    """Irreducible as a polynomial over Q (degree >= 1, one factor once)."""
    if f.is_zero or f.degree < 1:
        return False
    fz = factor(f, config)
    return len(fz.factors) == 1 and fz.factors[0][1] == 1


def factor_with_degree_multiple(f: PolyZ, degree_multiple: int) -> list[PolyZ]:
    """Irreducible factors of a primitive squarefree positive-lead input,
    every one of which is known a priori to have degree divisible by
    ``degree_multiple``.  Used on norms inside the splitting-field
    construction; exempt from the input degree cap."""
    assert not f.is_zero and f.degree >= 1
    facs = _zassenhaus(list(f.coeffs), degree_multiple)
    return sorted((PolyZ(c) for c in facs), key=lambda q: (q.degree, q.coeffs))
