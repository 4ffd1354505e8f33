"""Axiom emission and ground root-queries for the language of rings.

The decidable fragment tracked by this package records, for each monic
integer polynomial, whether it has a root in a fixed algebraic extension
of Q.  This module turns those decisions into concrete first-order
sentences over ``+ * 0 1`` and streams them as an effective axiom list:
for every irreducible monic polynomial in an enumeration window, a
DICHOTOMY sentence (no root, or full splitting), followed by whichever
of NO_ROOT / SPLITS actually holds in the elementary abelian p-world.

Sentences use a fixed prefix grammar:

    formula := 'E' var formula | 'A' var formula
             | '&' formula formula | '|' formula formula
             | '->' formula formula | '!' formula
             | '=' term term
    term    := '0' | '1' | var | '+' term term | '*' term term

There is no subtraction, so an equation ``t = 0`` with mixed-sign
coefficients is rendered by moving the negative part across ``=``.
Positive integers are rendered as binary numerals built from + and *.
Splitting is rendered coefficient-wise: the elementary symmetric
functions of the root variables must match the (sign-adjusted)
coefficients, which over a field says exactly that the polynomial is
the product of the linear factors X - x_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, TextIO

from .config import DEFAULT, Config
from .errors import DegreeCapExceeded
from .fieldmembership import (
    IRR_SPLITS_IN_E,
    NOT_IRREDUCIBLE,
    E,
    FieldTag,
    classify,
    has_root,
)
from .polyarith import PolyZ

DICHOTOMY = "DICHOTOMY"
NO_ROOT = "NO_ROOT"
SPLITS = "SPLITS"

_FAMILIES = (DICHOTOMY, NO_ROOT, SPLITS)


@dataclass(frozen=True)
class AxiomRecord:
    """One emitted sentence, with enough metadata to re-audit it."""

    family: str
    poly: PolyZ
    p: int
    rendered: str


@dataclass(frozen=True)
class RootQuery:
    """The ground atom R_n(a_0, ..., a_{n-1}) asking whether
    Z^n + a_{n-1} Z^{n-1} + ... + a_0 has a root in the given field."""

    n: int
    a: tuple[int, ...]
    field: FieldTag

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("root queries need n >= 1")
        if len(self.a) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(self.a)}")

    @property
    def poly(self) -> PolyZ:
        return PolyZ(list(self.a) + [1])


def eval_R(q: RootQuery, config: Config = DEFAULT) -> bool:
    """Truth value of the ground atom, delegated to the membership oracle."""
    return has_root(q.poly, q.field, config)


# ---------------------------------------------------------------------------
# sentence rendering

def _numeral(m: int) -> str:
    # binary numeral, n = 2q or 2q + 1 with 2 spelled as + 1 1
    if m < 0:
        raise ValueError("numerals are non-negative; move signs across =")
    if m <= 1:
        return str(m)
    half = _numeral(m // 2)
    if m % 2 == 0:
        return f"* + 1 1 {half}"
    return f"+ * + 1 1 {half} 1"


def _fold(op: str, parts: list[str]) -> str:
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = f"{op} {part} {out}"
    return out


def _power(var: str, i: int) -> str:
    return var if i == 1 else f"* {var} {_power(var, i - 1)}"


def _side(coeffs: Iterable[int], var: str) -> str:
    """Sum of a_i x^i for non-negative a_i, lowest degree first."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        parts.append(_numeral(c) if i == 0 else f"* {_numeral(c)} {_power(var, i)}")
    return _fold("+", parts) if parts else "0"


def _root_atom(coeffs: tuple[int, ...], var: str) -> str:
    plus = [max(c, 0) for c in coeffs]
    minus = [max(-c, 0) for c in coeffs]
    return f"= {_side(plus, var)} {_side(minus, var)}"


def _esym(variables: list[str], k: int) -> str:
    prods = [_fold("*", list(combo)) for combo in combinations(variables, k)]
    return _fold("+", prods)


def _vieta_atom(coeffs: tuple[int, ...], k: int, variables: list[str]) -> str:
    n = len(coeffs) - 1
    target = (-1) ** k * coeffs[n - k]
    ek = _esym(variables, k)
    if target >= 0:
        return f"= {ek} {_numeral(target)}"
    return f"= + {ek} {_numeral(-target)} 0"


def render_root_formula(coeffs: tuple[int, ...]) -> str:
    """(exists x0) f(x0) = 0."""
    return f"E x0 {_root_atom(coeffs, 'x0')}"


def render_splits_formula(coeffs: tuple[int, ...]) -> str:
    """(exists x1 ... xn) f(X) = prod (X - x_i), coefficient-wise."""
    n = len(coeffs) - 1
    variables = [f"x{i}" for i in range(1, n + 1)]
    atoms = [_vieta_atom(coeffs, k, variables) for k in range(1, n + 1)]
    quants = " ".join(f"E {v}" for v in variables)
    return f"{quants} {_fold('&', atoms)}"


def render_no_root_formula(coeffs: tuple[int, ...]) -> str:
    return f"! {render_root_formula(coeffs)}"


def render_dichotomy_formula(coeffs: tuple[int, ...]) -> str:
    return f"| {render_no_root_formula(coeffs)} {render_splits_formula(coeffs)}"


_RENDERERS = {
    DICHOTOMY: render_dichotomy_formula,
    NO_ROOT: render_no_root_formula,
    SPLITS: render_splits_formula,
}


# ---------------------------------------------------------------------------
# the stream

def axiom_stream(
    max_deg: int,
    max_height: int,
    p: int,
    config: Config = DEFAULT,
) -> Iterator[AxiomRecord]:
    """All axioms for monic polynomials with deg <= max_deg and
    coefficients bounded by max_height, by degree then lexicographic on
    (a_0, ..., a_{n-1}).  Reducible polynomials contribute nothing; each
    irreducible one contributes its DICHOTOMY sentence followed by the
    member of NO_ROOT / SPLITS that holds in E(p)."""
    E(p)  # validates primality
    if max_deg < 1:
        raise ValueError("max_deg must be at least 1")
    if max_height < 0:
        raise ValueError("max_height must be non-negative")
    if max_deg > config.max_input_degree:
        raise DegreeCapExceeded(
            f"axiom stream degree {max_deg} exceeds the input cap "
            f"{config.max_input_degree}",
            estimate=max_deg,
        )
    for n in range(1, max_deg + 1):
        for a in product(range(-max_height, max_height + 1), repeat=n):
            yield from records_for(a, p, config)


def records_for(
    a: tuple[int, ...], p: int, config: Config = DEFAULT
) -> list[AxiomRecord]:
    """The records axiom_stream emits at one coefficient tuple: empty
    for reducible polynomials, otherwise DICHOTOMY plus the decided
    family."""
    label = classify(a, p, config)
    if label.label == NOT_IRREDUCIBLE:
        return []
    f = PolyZ(list(a) + [1])
    out = [AxiomRecord(DICHOTOMY, f, p, render_dichotomy_formula(f.coeffs))]
    if label.label == IRR_SPLITS_IN_E:
        out.append(AxiomRecord(SPLITS, f, p, render_splits_formula(f.coeffs)))
    else:
        out.append(AxiomRecord(NO_ROOT, f, p, render_no_root_formula(f.coeffs)))
    return out


def axiom_check(rec: AxiomRecord, config: Config = DEFAULT) -> bool:
    """Re-derive the record's family and rendering from scratch; True
    iff both match.  A forged family or a tampered sentence fails."""
    coeffs = rec.poly.coeffs
    if rec.family not in _FAMILIES:
        return False
    if len(coeffs) < 2 or coeffs[-1] != 1:
        return False
    label = classify(coeffs[:-1], rec.p, config)
    if label.label == NOT_IRREDUCIBLE:
        return False
    if rec.family == SPLITS and label.label != IRR_SPLITS_IN_E:
        return False
    if rec.family == NO_ROOT and label.label == IRR_SPLITS_IN_E:
        return False
    return rec.rendered == _RENDERERS[rec.family](coeffs)


# ---------------------------------------------------------------------------
# stream files: family TAB degree TAB coefficients TAB p TAB sentence

def write_axiom_file(records: Iterable[AxiomRecord], out: TextIO) -> int:
    count = 0
    for rec in records:
        coeffs = ",".join(str(c) for c in rec.poly.coeffs)
        out.write(
            f"{rec.family}\t{rec.poly.degree}\t{coeffs}\t{rec.p}\t{rec.rendered}\n"
        )
        count += 1
    return count


def read_axiom_file(inp: TextIO) -> list[AxiomRecord]:
    records = []
    for lineno, line in enumerate(inp, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 5 tab-separated fields")
        family, deg_text, coeff_text, p_text, rendered = parts
        coeffs = [int(c) for c in coeff_text.split(",")]
        poly = PolyZ(coeffs)
        if poly.degree != int(deg_text):
            raise ValueError(f"line {lineno}: degree field disagrees with coefficients")
        records.append(AxiomRecord(family, poly, int(p_text), rendered))
    return records
