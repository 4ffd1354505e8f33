"""Finite truncation of the hyperplane-orbit separation argument.

A finite matrix group G acts on V = F_p^dim.  Blocks B_1, ..., B_m are
built inductively: each block is a maximal linearly independent subset
of the G-orbit of a seed drawn from a G-invariant subspace meeting the
span of the earlier blocks trivially.  Extending the union of the
blocks to a basis B, every proper index set I defines a functional T_I
(zero on the blocks named by I, one on the rest of B) whose kernel is a
hyperplane.  Distinct index sets give hyperplanes in distinct G-orbits,
and verify_lemma reproduces the witness for every pair: for i in I\\I',
the span of B_i is G-invariant and lies inside ker T_I, so a group
element carrying ker T_I onto ker T_I' would force B_i into ker T_I',
where its members take the value 1.

Everything here is exact linear algebra over F_p; subspaces are
canonicalized by reduced row echelon form so equality is syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DegreeCapExceeded,
    DimensionMismatch,
    GroupTooLarge,
    IndexSetNotProper,
    NoInvariantComplement,
)

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]

_COMPLEMENT_DIM_CAP = 12
_GROUP_ORDER_CAP = 100_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# F_p linear algebra

def _identity(dim: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))


def _mat_mul(a: Mat, b: Mat, p: int) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def _mat_vec(a: Mat, v: Vec, p: int) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def rref(rows: Iterable[Vec], p: int) -> Mat:
    """Reduced row echelon form with unit pivots; zero rows dropped.
    The result is the canonical form of the span."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    pivot_row = 0
    for col in range(ncols):
        sel = next(
            (r for r in range(pivot_row, len(work)) if work[r][col] % p != 0), None
        )
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = pow(work[pivot_row][col], -1, p)
        work[pivot_row] = [x * inv % p for x in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col] % p != 0:
                factor = work[r][col]
                work[r] = [
                    (x - factor * y) % p for x, y in zip(work[r], work[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(work):
            break
    return tuple(tuple(r) for r in work[:pivot_row] if any(r))


def _rank(rows: Iterable[Vec], p: int) -> int:
    return len(rref(rows, p))


def _in_span(v: Vec, basis: Mat, p: int) -> bool:
    if not any(x % p for x in v):
        return True
    return _rank(basis + (v,), p) == len(basis)


def canonical_subspace(rows: Iterable[Vec], p: int) -> Mat:
    return rref(rows, p)


# ---------------------------------------------------------------------------
# modules and orbits

@dataclass(frozen=True)
class FpModule:
    p: int
    dim: int
    generators: tuple[Mat, ...]
    elements: tuple[Mat, ...]


def fp_module(
    p: int,
    dim: int,
    generators: Sequence[Sequence[Sequence[int]]],
    max_order: int = _GROUP_ORDER_CAP,
) -> FpModule:
    """Close the generator list into the full matrix group."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if dim < 1:
        raise ValueError("dimension must be positive")
    gens = []
    for g in generators:
        mat = tuple(tuple(int(x) % p for x in row) for row in g)
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise DimensionMismatch(f"generator is not {dim}x{dim}")
        if _rank(mat, p) != dim:
            raise ValueError("generator matrix is singular")
        gens.append(mat)
    ident = _identity(dim)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                prod = _mat_mul(a, g, p)
                if prod not in elements:
                    elements.add(prod)
                    nxt.append(prod)
                    if len(elements) > max_order:
                        raise GroupTooLarge(
                            f"group closure exceeds {max_order} elements"
                        )
        frontier = nxt
    return FpModule(p, dim, tuple(gens), tuple(sorted(elements)))


def orbit(M: FpModule, v: Sequence[int]) -> frozenset[Vec]:
    if len(v) != M.dim:
        raise DimensionMismatch(f"vector has length {len(v)}, module dim {M.dim}")
    w = tuple(int(x) % M.p for x in v)
    return frozenset(_mat_vec(g, w, M.p) for g in M.elements)


# ---------------------------------------------------------------------------
# block construction

@dataclass(frozen=True)
class OrbitBlock:
    seed: Vec
    basis: tuple[Vec, ...]


def _count_vectors(p: int, dim: int):
    # little-endian base-p counting, so e_1 comes before e_2: the order
    # the worked examples fix
    total = p**dim
    for n in range(1, total):
        digits = []
        k = n
        for _ in range(dim):
            digits.append(k % p)
            k //= p
        yield tuple(digits)


def _cyclic_span(M: FpModule, v: Vec) -> Mat:
    return rref(sorted(orbit(M, v)), M.p)


def _block_from_seed(M: FpModule, seed: Vec) -> OrbitBlock:
    members = sorted(orbit(M, seed), key=lambda u: tuple(reversed(u)))
    basis: list[Vec] = []
    for u in members:
        if not _in_span(u, tuple(basis), M.p):
            basis.append(u)
    return OrbitBlock(seed, tuple(basis))


def build_blocks(M: FpModule, m: int, seed_policy: str = "lex") -> tuple[OrbitBlock, ...]:
    """m blocks, each the orbit-span of a seed taken from a G-invariant
    subspace meeting the span of the earlier blocks trivially."""
    if m < 1:
        raise ValueError("need at least one block")
    if seed_policy != "lex":
        raise ValueError(f"unknown seed policy {seed_policy!r}")
    if M.dim > _COMPLEMENT_DIM_CAP:
        raise DegreeCapExceeded(
            f"invariant-complement search capped at dim {_COMPLEMENT_DIM_CAP}",
            estimate=M.dim,
        )
    blocks: list[OrbitBlock] = []
    span_so_far: Mat = ()
    for _ in range(m):
        seed = None
        for v in _count_vectors(M.p, M.dim):
            cyc = _cyclic_span(M, v)
            if len(cyc) + len(span_so_far) == _rank(cyc + span_so_far, M.p):
                seed = v
                break
        if seed is None:
            raise NoInvariantComplement(
                f"no nonzero invariant subspace meets the current span "
                f"(dimension {len(span_so_far)}) trivially"
            )
        block = _block_from_seed(M, seed)
        blocks.append(block)
        flat = tuple(b for blk in blocks for b in blk.basis)
        span_so_far = rref(flat, M.p)
        if len(span_so_far) != len(flat):
            raise AssertionError("block union lost linear independence")
    return tuple(blocks)


def full_basis_from_blocks(M: FpModule, blocks: Sequence[OrbitBlock]) -> tuple[Vec, ...]:
    """Extend the union of the block bases to a basis of the whole module
    by appending standard vectors, greedily and deterministically."""
    rows = [tuple(b) for blk in blocks for b in blk.basis]
    if _rank(tuple(rows), M.p) != len(rows):
        raise ValueError("block bases are not linearly independent")
    for i in range(M.dim):
        if len(rows) == M.dim:
            break
        e = tuple(1 if j == i else 0 for j in range(M.dim))
        if _rank(tuple(rows) + (e,), M.p) > len(rows):
            rows.append(e)
    return tuple(rows)


# ---------------------------------------------------------------------------
# hyperplanes

@dataclass(frozen=True)
class HyperplaneSpec:
    index_set: frozenset[int]
    full_basis: tuple[Vec, ...]
    chi: tuple[int, ...]
    kernel: Mat


def _solve_coords(basis: tuple[Vec, ...], v: Vec, p: int) -> Vec:
    """Coordinates of v in the given basis (basis is square of full rank)."""
    dim = len(basis)
    aug = [list(col) + [v[i]] for i, col in enumerate(zip(*basis))]
    # aug is the transpose system: sum_j c_j basis_j = v
    row = 0
    pivots = []
    for col in range(dim):
        sel = next((r for r in range(row, dim) if aug[r][col] % p != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = pow(aug[row][col], -1, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for r in range(dim):
            if r != row and aug[r][col] % p != 0:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    if row != dim:
        raise ValueError("basis matrix is singular")
    coords = [0] * dim
    for r, col in enumerate(pivots):
        coords[col] = aug[r][dim]
    return tuple(coords)


def functional_value(spec: HyperplaneSpec, v: Vec, p: int) -> int:
    """T_I(v): express v in the full basis and pair with the chi values."""
    coords = _solve_coords(spec.full_basis, v, p)
    return sum(c * x for c, x in zip(coords, spec.chi)) % p


def hyperplane(
    blocks: Sequence[OrbitBlock],
    full_basis: Sequence[Sequence[int]],
    index_set: Iterable[int],
    p: int,
) -> HyperplaneSpec:
    m = len(blocks)
    I = frozenset(int(i) for i in index_set)
    if not I <= set(range(1, m + 1)):
        raise ValueError(f"index set must be within 1..{m}")
    if I == set(range(1, m + 1)):
        raise IndexSetNotProper(
            "the full index set does not define a surjective functional "
            "in the intended way; take a proper subset"
        )
    B = tuple(tuple(int(x) % p for x in row) for row in full_basis)
    dim = len(B[0]) if B else 0
    if any(len(row) != dim for row in B) or len(B) != dim:
        raise DimensionMismatch("full basis must be square")
    if _rank(B, p) != dim:
        raise ValueError("full basis is not linearly independent")
    block_vecs = {b for blk in blocks for b in blk.basis}
    if not block_vecs <= set(B):
        raise ValueError("full basis must extend the union of the blocks")
    zero_on = {b for i in I for b in blocks[i - 1].basis}
    chi = tuple(0 if b in zero_on else 1 for b in B)
    # functional in standard coordinates: t(v) = chi . coords_B(v)
    kernel_rows = []
    for v in _count_vectors(p, dim):
        coords = _solve_coords(B, v, p)
        if sum(c * x for c, x in zip(coords, chi)) % p == 0:
            kernel_rows.append(v)
            if _rank(tuple(kernel_rows), p) < len(kernel_rows):
                kernel_rows.pop()
            if len(kernel_rows) == dim - 1:
                break
    kernel = rref(tuple(kernel_rows), p)
    if len(kernel) != dim - 1:
        raise AssertionError("kernel does not have codimension 1")
    return HyperplaneSpec(I, B, chi, kernel)


def same_orbit(M: FpModule, U: Iterable[Vec], Uprime: Iterable[Vec]) -> bool:
    """Exhaustive search for g in G with g U = U'."""
    a = canonical_subspace(U, M.p)
    b = canonical_subspace(Uprime, M.p)
    if (a and len(a[0]) != M.dim) or (b and len(b[0]) != M.dim):
        raise DimensionMismatch("subspaces live in a different ambient space")
    if len(a) != len(b):
        raise DimensionMismatch("subspaces have different dimensions")
    for g in M.elements:
        image = rref(tuple(_mat_vec(g, row, M.p) for row in a), M.p)
        if image == b:
            return True
    return False


# ---------------------------------------------------------------------------
# the lemma, pair by pair

@dataclass(frozen=True)
class PairWitness:
    """The separation argument for one pair of index sets.

    block_index i lies in first \\ second; vector is a member of B_i.
    The recorded facts: the span of B_i is G-invariant and sits inside
    ker T_first, while T_second(vector) = 1 -- so no group element can
    carry ker T_first onto ker T_second.  orbit_separated confirms the
    conclusion by exhaustive search.
    """

    first: frozenset[int]
    second: frozenset[int]
    block_index: int
    vector: Vec
    span_in_kernel: bool
    span_invariant: bool
    functional_is_one: bool
    orbit_separated: bool

    @property
    def consistent(self) -> bool:
        return (
            self.span_in_kernel
            and self.span_invariant
            and self.functional_is_one
            and self.orbit_separated
        )


@dataclass(frozen=True)
class LemmaReport:
    hyperplanes: tuple[HyperplaneSpec, ...]
    witnesses: tuple[PairWitness, ...]
    consistent: bool


def verify_lemma(
    M: FpModule,
    blocks: Sequence[OrbitBlock],
    full_basis: Sequence[Sequence[int]],
    index_sets: Sequence[Iterable[int]],
) -> LemmaReport:
    sets = [frozenset(int(i) for i in s) for s in index_sets]
    if len(set(sets)) != len(sets):
        raise ValueError("index sets must be pairwise distinct")
    specs = {s: hyperplane(blocks, full_basis, s, M.p) for s in sets}
    witnesses = []
    for sa, sb in combinations(sets, 2):
        # orient the pair so the difference on the 'first' side is nonempty
        first, second = (sa, sb) if sa - sb else (sb, sa)
        i = min(first - second)
        block = blocks[i - 1]
        vec = block.basis[0]
        span = rref(block.basis, M.p)
        in_kernel = all(
            functional_value(specs[first], b, M.p) == 0 for b in block.basis
        )
        invariant = all(
            _in_span(_mat_vec(g, b, M.p), span, M.p)
            for g in M.elements
            for b in block.basis
        )
        value_one = functional_value(specs[second], vec, M.p) == 1
        separated = not same_orbit(M, specs[first].kernel, specs[second].kernel)
        witnesses.append(
            PairWitness(first, second, i, vec, in_kernel, invariant, value_one, separated)
        )
    ordered = tuple(specs[s] for s in sets)
    return LemmaReport(
        ordered, tuple(witnesses), all(w.consistent for w in witnesses)
    )


# ---------------------------------------------------------------------------
# module files: first line "p dim", then generator matrices, dim lines each

def parse_module_file(text: str, max_order: int = _GROUP_ORDER_CAP) -> FpModule:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty module file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be: p dim")
    p, dim = int(head[0]), int(head[1])
    if dim < 1:
        raise ValueError("dimension must be positive")
    body = lines[1:]
    if len(body) % dim != 0:
        raise ValueError(f"expected generator matrices of {dim} lines each")
    gens = []
    for start in range(0, len(body), dim):
        rows = []
        for ln in body[start : start + dim]:
            entries = [int(x) for x in ln.split()]
            if len(entries) != dim:
                raise ValueError(f"matrix row has {len(entries)} entries, need {dim}")
            rows.append(entries)
        gens.append(rows)
    return fp_module(p, dim, gens, max_order=max_order)
