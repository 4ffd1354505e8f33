"""Decision procedures for where integer polynomials have roots.

Four target fields, in increasing order of reach: the algebraic numbers;
the totally real numbers (every conjugate real); the field obtained from
the totally real numbers by adjoining i; and, for a prime p, the
compositum of all p-th roots of elements of that field -- its maximal
elementary abelian p-extension, since it already contains the p-th roots
of unity.

Membership of a root of an irreducible g is read off the Galois group of
an auxiliary splitting field: adjoining X^2+1 makes complex conjugation
visible as a group element, and the subgroup H generated by all products
of two conjugations cuts out exactly the part of the splitting field
lying inside the third field.  For the fourth field the criterion becomes
"H is an elementary abelian p-group" (with the p-th cyclotomic polynomial
adjoined as well, so the base matches).  A literal search mode
re-decides the same question by enumerating totally-real Galois
subfields, for cross-validation.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import caches
from .config import Config, DEFAULT
from .errors import DegreeCapExceeded, InconsistentTower, ZeroPolynomial
from .factorz import factor
from .galoistower import (
    _scaled_boxes,
    complex_conjugation,
    conjugacy_class,
    galois_group,
    is_elementary_abelian,
    perm_compose,
    splitting_field,
    subgroup_generated,
    subgroups_containing,
)
from .intervals import c_contains_zero, coeff_boxes_from_ints, horner_box
from .polyarith import PolyZ, zmul
from .realroots import is_totally_real


# ---------------------------------------------------------------------------
# field tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldTag:
    """Which field a membership query targets; E carries its prime."""

    kind: str
    p: int | None = None

    def __str__(self) -> str:
        return f"E({self.p})" if self.kind == "E" else self.kind


QBAR = FieldTag("QBAR")
QTOTR = FieldTag("QTOTR")
L = FieldTag("L")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def E(p: int) -> FieldTag:
    if not _is_prime(p):
        raise ValueError(f"E needs a prime, got {p}")
    return FieldTag("E", p)


# ---------------------------------------------------------------------------
# class labels
# ---------------------------------------------------------------------------

NOT_IRREDUCIBLE = "NOT_IRREDUCIBLE"
IRR_NO_ROOT_IN_E = "IRR_NO_ROOT_IN_E"
IRR_SPLITS_IN_E = "IRR_SPLITS_IN_E"


@dataclass(frozen=True)
class ClassLabel:
    label: str
    in_T_n: bool


# ---------------------------------------------------------------------------
# auxiliary splitting fields and the conjugation subgroup H
# ---------------------------------------------------------------------------


def _cyclotomic(p: int) -> tuple:
    # (x^p - 1)/(x - 1) for prime p
    return (1,) * p


def _aux_poly(g: tuple, p: int | None) -> tuple:
    """Squarefree product of g with x^2+1 (and the p-th cyclotomic
    polynomial when p is given), repeated factors dropped."""
    parts = {g, (1, 0, 1)}
    if p == 2:
        parts.add((1, 1))
    elif p is not None:
        parts.add(_cyclotomic(p))
    prod = [1]
    for q in sorted(parts, key=lambda t: (len(t), t)):
        prod = zmul(prod, list(q))
    return tuple(prod)


@lru_cache(maxsize=512)
def _aux_tower(F: tuple, cap: int):
    """Tower, boxes, group, conjugation and H for the auxiliary product F."""
    tower, boxes = splitting_field(PolyZ(list(F)), Config(max_splitting_degree=cap))
    G = galois_group(tower, boxes)
    c = complex_conjugation(tower, G)
    cls = conjugacy_class(G, c)
    prods = sorted({perm_compose(a, b) for a in cls for b in cls})
    H = subgroup_generated(G, prods)
    return tower, boxes, G, c, H


caches.register(_aux_tower.cache_clear)


def _root_positions(F: tuple, g: tuple, boxes) -> tuple:
    """Indices of the labelled roots of F that are roots of g, certified by
    interval evaluation at increasing precision."""
    want = len(g) - 1
    coeff_bs = coeff_boxes_from_ints(list(g))
    f = PolyZ(list(F))
    prec = 128
    while prec <= (1 << 14):
        refined = _scaled_boxes(f, list(boxes), prec)
        hits = [
            i
            for i, z in enumerate(refined)
            if c_contains_zero(horner_box(coeff_bs, z, prec))
        ]
        if len(hits) == want:
            return tuple(hits)
        prec *= 2
    raise InconsistentTower("could not separate factor roots at any precision")


@lru_cache(maxsize=8192)
def _decide_L(g: tuple, cap: int) -> bool:
    """H-criterion: some root of g is fixed by every even product of
    complex conjugations in the splitting field of g*(x^2+1)."""
    F = _aux_poly(g, None)
    tower, boxes, G, c, H = _aux_tower(F, cap)
    pos = _root_positions(F, g, boxes)
    return any(all(h[j] == j for h in H.elements) for j in pos)


@lru_cache(maxsize=8192)
def _decide_E(g: tuple, p: int, cap: int) -> bool:
    """H-criterion at p: with x^2+1 and the p-th cyclotomic polynomial
    adjoined, the whole splitting field lies in the target field exactly
    when H is an elementary abelian p-group."""
    F = _aux_poly(g, p)
    _, _, _, _, H = _aux_tower(F, cap)
    return is_elementary_abelian(H.elements, p)


caches.register(_decide_L.cache_clear)
caches.register(_decide_E.cache_clear)


_LITERAL_GROUP_CAP = 200


@lru_cache(maxsize=2048)
def _decide_E_literal(g: tuple, p: int, cap: int) -> bool:
    """Literal search: enumerate totally-real Galois subfields M of the
    auxiliary splitting field with [M:Q] <= (deg g)! and ask whether the
    roots generate an elementary abelian p-extension of M(i, zeta_p).

    Totally-real Galois subfields correspond to normal subgroups U
    containing every complex conjugation; M(i, zeta_p) corresponds to
    V = U intersected with the pointwise stabilizer of the roots of
    x^2+1 and of the cyclotomic factor; the condition is that V's action
    on the roots of g is elementary abelian p.
    """
    F = _aux_poly(g, p)
    tower, boxes, G, c, _ = _aux_tower(F, cap)
    if G.order > _LITERAL_GROUP_CAP:
        raise DegreeCapExceeded(
            f"literal search needs group order <= {_LITERAL_GROUP_CAP}, got {G.order}",
            estimate=G.order,
        )
    gpos = _root_positions(F, g, boxes)
    ipos = _root_positions(F, (1, 0, 1), boxes)
    cpos = _root_positions(F, (1, 1) if p == 2 else _cyclotomic(p), boxes)
    fixed = set(ipos) | set(cpos)
    w0 = frozenset(s for s in G.elements if all(s[j] == j for j in fixed))
    cls = conjugacy_class(G, c)
    bound = factorial(len(g) - 1)
    index = {r: k for k, r in enumerate(gpos)}
    for U in subgroups_containing(G, sorted(cls), normal_only=True):
        if G.order // len(U) > bound:
            continue
        V = U & w0
        vbar = {tuple(index[s[r]] for r in gpos) for s in V}
        if is_elementary_abelian(vbar, p):
            return True
    return False


caches.register(_decide_E_literal.cache_clear)


# ---------------------------------------------------------------------------
# public decisions
# ---------------------------------------------------------------------------


def _distinct_irreducibles(f: PolyZ) -> list:
    return [tuple(q.coeffs) for q, _ in factor(f).factors]


def _factor_has_root(g: tuple, K: FieldTag, cap: int, method: str) -> bool:
    deg = len(g) - 1
    if K.kind == "QBAR":
        return deg >= 1
    if K.kind == "QTOTR":
        return is_totally_real(PolyZ(list(g)))
    # the literal search never takes shortcuts: it exists to be compared
    # against the subgroup criterion, shortcuts and all
    if method == "literal":
        return _decide_E_literal(g, K.p, cap)
    # every quadratic field embeds in L (real ones are totally real, the
    # imaginary ones differ from one by a factor of i), and L sits inside
    # every E(p); likewise anything totally real
    if deg <= 2 or is_totally_real(PolyZ(list(g))):
        return True
    if K.kind == "L":
        return _decide_L(g, cap)
    return _decide_E(g, K.p, cap)


def _validated(f: PolyZ, K: FieldTag, method: str) -> None:
    if f.is_zero:
        raise ZeroPolynomial("membership queries need a nonzero polynomial")
    if K.kind == "E" and (K.p is None or not _is_prime(K.p)):
        raise ValueError("E-membership needs a prime p")
    if method not in ("h", "literal"):
        raise ValueError(f"unknown method {method!r}")
    if method == "literal" and K.kind != "E":
        raise ValueError("the literal search applies to E-membership only")


def has_root(f: PolyZ, K: FieldTag, config: Config = DEFAULT, method: str = "h") -> bool:
    """True when f has at least one root in the field named by K."""
    _validated(f, K, method)
    if K.kind == "QBAR":
        return f.degree >= 1
    cap = config.max_splitting_degree
    return any(
        _factor_has_root(g, K, cap, method) for g in _distinct_irreducibles(f)
    )


def splits(f: PolyZ, K: FieldTag, config: Config = DEFAULT, method: str = "h") -> bool:
    """True when every irreducible factor of f has a root in K (for the
    normal targets this makes f a product of linear factors over K)."""
    _validated(f, K, method)
    cap = config.max_splitting_degree
    return all(
        _factor_has_root(g, K, cap, method) for g in _distinct_irreducibles(f)
    )


def classify(a, p: int, config: Config = DEFAULT) -> ClassLabel:
    """Classify the monic polynomial X^n + a[n-1] X^(n-1) + ... + a[0].

    NOT_IRREDUCIBLE when it factors; otherwise IRR_SPLITS_IN_E or
    IRR_NO_ROOT_IN_E by the E(p) decision (the two coincide with
    has_root by normality).  in_T_n records total reality and is only
    ever true for irreducible input.
    """
    a = list(a)
    if len(a) < 1:
        raise ValueError("need at least the constant coefficient")
    if not _is_prime(p):
        raise ValueError(f"classification needs a prime, got {p}")
    f = PolyZ(a + [1])
    fact = factor(f)
    if len(fact.factors) != 1 or fact.factors[0][1] != 1:
        return ClassLabel(label=NOT_IRREDUCIBLE, in_T_n=False)
    in_t = is_totally_real(f)
    if splits(f, E(p), config):
        return ClassLabel(label=IRR_SPLITS_IN_E, in_T_n=in_t)
    return ClassLabel(label=IRR_NO_ROOT_IN_E, in_T_n=in_t)
