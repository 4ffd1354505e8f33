"""Acceptance suite: ten criteria, one test (and one pass/fail line) each.

Criteria with a stated runtime budget assert it.  Tests run in order so
later criteria benefit from towers cached by earlier ones.
"""

import io
import itertools
import random
import time

import pytest

import oracles
from corpus import CORPUS
from groups_catalogue import (
    brute_force_embedding,
    build_problem_suite,
    g_elements,
    g_mul,
)

from rootfields.axioms import (
    DICHOTOMY,
    NO_ROOT,
    SPLITS,
    axiom_check,
    axiom_stream,
    write_axiom_file,
)
from rootfields.errors import NoInvariantComplement
from rootfields.factorz import factor, is_irreducible
from rootfields.fieldmembership import E, L, QBAR, QTOTR, has_root, splits
from rootfields.galoistower import (
    galois_group,
    perm_order,
    solve_embedding_problem,
    splitting_field,
)
from rootfields.orbitlab import (
    build_blocks,
    fp_module,
    full_basis_from_blocks,
    same_orbit,
    verify_lemma,
)
from rootfields.polyarith import PolyZ, squarefree_part, zmul
from rootfields.realroots import (
    cauchy_bound,
    count_real_roots,
    is_totally_real,
    isolate_roots,
    sturm_count,
)

pytestmark = pytest.mark.acceptance


def _report(n: int, text: str):
    print(f"criterion {n:2d}: PASS  {text}")


def test_criterion_01_factor_oracle_equivalence():
    t0 = time.perf_counter()
    checked = 0
    for deg in range(1, 5):
        for tail in itertools.product(range(-3, 4), repeat=deg):
            coeffs = list(tail) + [1]
            f = PolyZ(coeffs)
            fz = factor(f)
            assert fz.content == 1
            acc = [1]
            for g, m in fz.factors:
                for _ in range(m):
                    acc = zmul(acc, list(g.coeffs))
            assert acc == coeffs, f"reassembly failed for {coeffs}"
            assert is_irreducible(f) == oracles.oracle_is_irreducible_monic(coeffs)
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"factor sweep took {elapsed:.0f}s"
    _report(1, f"{checked} monic polynomials, oracle-equivalent in {elapsed:.0f}s")


def test_criterion_02_real_root_triple_agreement():
    rng = random.Random(20260825)
    checked = 0
    while checked < 500:
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-10, 10) for _ in range(deg + 1)]
        if coeffs[deg] == 0:
            continue
        f = PolyZ(coeffs)
        if f.is_zero:
            continue
        sf = squarefree_part(f)
        bound = cauchy_bound(sf) + 1
        by_sturm = sturm_count(sf, -bound, bound)
        by_count = count_real_roots(f)
        by_boxes = sum(
            1 for b in isolate_roots(sf) if b.im.lo == 0 and b.im.hi == 0
        )
        assert by_sturm == by_count == by_boxes, f"disagreement on {coeffs}"
        checked += 1
    _report(2, f"{checked} random polynomials, three root counts agree")


def test_criterion_03_totally_real_anchors():
    golden = PolyZ([-1, 1, 1])
    trace = PolyZ([-1, -2, 1, 1])
    assert is_totally_real(golden)
    assert is_totally_real(trace)
    assert not is_totally_real(PolyZ([-2, 0, 0, 1]))
    assert not is_totally_real(PolyZ([1, 0, 1]))
    _report(3, "x^2+x-1 and x^3+x^2-2x-1 accepted; x^3-2 and x^2+1 rejected")


def test_criterion_04_galois_fixtures():
    fixtures = [
        ((1, 0, 1), 2, None),
        ((-2, 0, 0, 1), 6, None),
        ((1, 0, 0, 0, 1), 4, (0, 0, 0, 1)),
        ((-2, 0, 0, 0, 1), 8, (0, 0, 0, -2)),
    ]
    for coeffs, want_order, quartic in fixtures:
        t0 = time.perf_counter()
        tower, boxes = splitting_field(PolyZ(list(coeffs)))
        group = galois_group(tower, boxes)
        assert group.order == want_order, coeffs
        if quartic is not None:
            label = oracles.oracle_quartic_galois(*quartic)
            assert group.order == oracles.QUARTIC_GROUP_ORDER[label], coeffs
        elapsed = time.perf_counter() - t0
        assert elapsed < 30, f"{coeffs} took {elapsed:.0f}s"
    # x^3-2 acts transitively on its three roots
    tower, boxes = splitting_field(PolyZ([-2, 0, 0, 1]))
    group = galois_group(tower, boxes)
    reach = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in group.generators:
                if g[i] not in reach:
                    reach.add(g[i])
                    nxt.append(g[i])
        frontier = nxt
    assert len(reach) == 3
    # x^4+1: every non-identity element is an involution
    tower, boxes = splitting_field(PolyZ([1, 0, 0, 0, 1]))
    group = galois_group(tower, boxes)
    assert all(perm_order(g) in (1, 2) for g in group)
    _report(4, "orders 2/6/4/8 with resolvent cross-check on the quartics")


def test_criterion_05_e_anchors_and_monotonicity():
    assert splits(PolyZ([-2, 0, 0, 1]), E(3))
    assert not has_root(PolyZ([-2, 0, 0, 0, 0, 1]), E(3))
    assert splits(PolyZ([-2, 0, 1]), E(3))
    assert splits(PolyZ([1, 0, 1]), E(3))

    chain = [QTOTR, L, E(3), QBAR]
    worst = 0.0
    for f in CORPUS:
        verdicts = []
        for tag in chain:
            t0 = time.perf_counter()
            verdicts.append(has_root(f, tag))
            worst = max(worst, time.perf_counter() - t0)
        for earlier, later in zip(verdicts, verdicts[1:]):
            assert not (earlier and not later), f"chain broken on {f.coeffs}"
    assert worst < 60, f"slowest single decision {worst:.0f}s"
    _report(
        5,
        f"anchors hold; QTOTR=>L=>E(3)=>QBAR on {len(CORPUS)} polynomials, "
        f"slowest decision {worst:.1f}s",
    )


def test_criterion_06_dichotomy_on_corpus():
    checked = 0
    for f in CORPUS:
        if not is_irreducible(f):
            continue
        assert has_root(f, E(3)) == splits(f, E(3)), f.coeffs
        checked += 1
    assert checked > 50
    _report(6, f"has_root = splits in E(3) for all {checked} irreducible corpus members")


def test_criterion_07_literal_agreement_low_degree():
    checked = 0
    for f in CORPUS:
        if f.degree > 3:
            continue
        for p in (2, 3):
            subgroup = has_root(f, E(p))
            literal = has_root(f, E(p), method="literal")
            assert subgroup == literal, (
                f"reportable defect: methods disagree on {f.coeffs} at p={p}"
            )
            checked += 1
    _report(7, f"subgroup criterion = literal search on {checked} low-degree decisions")


def test_criterion_08_axiom_stream_stability():
    t0 = time.perf_counter()
    texts = []
    streams = []
    for _ in range(3):
        records = list(axiom_stream(3, 2, 3))
        buf = io.StringIO()
        write_axiom_file(records, buf)
        texts.append(buf.getvalue().encode("utf-8"))
        streams.append(records)
    assert texts[0] == texts[1] == texts[2]
    records = streams[0]
    assert all(axiom_check(rec) for rec in records)
    by_poly = {}
    for rec in records:
        by_poly.setdefault(rec.poly.coeffs, []).append(rec.family)
    for coeffs, families in by_poly.items():
        assert families[0] == DICHOTOMY, coeffs
        assert len(families) == 2, coeffs
        assert families[1] in (NO_ROOT, SPLITS), coeffs
    elapsed = time.perf_counter() - t0
    assert elapsed < 600, f"stream runs took {elapsed:.0f}s"
    _report(
        8,
        f"axiom_stream(3,2,3) byte-identical over 3 runs, {len(records)} records, "
        f"verdicts partition the irreducibles, {elapsed:.0f}s",
    )


def test_criterion_09_embedding_problems_exhaustive():
    suite = build_problem_suite()
    solvable = 0
    for label, prob in suite:
        got = solve_embedding_problem(prob)
        want = brute_force_embedding(prob)
        assert (got is None) == (want is None), f"verdict mismatch on {label}"
        if got is None:
            continue
        solvable += 1
        assert all(prob.alpha[got[g]] == prob.phi[g] for g in got), label
        assert set(got.values()) == set(g_elements(prob.B)), label
        mul_g, mul_b = g_mul(prob.G), g_mul(prob.B)
        elems = g_elements(prob.G)
        assert all(
            got[mul_g(a, b)] == mul_b(got[a], got[b]) for a in elems for b in elems
        ), label
    _report(
        9,
        f"{len(suite)} catalogue problems match brute force; "
        f"{solvable} solutions re-verified",
    )


def test_criterion_10_orbit_lemma_truncations():
    t0 = time.perf_counter()

    # p = 3: scalar action on F_3^3, three singleton blocks
    scalar = fp_module(3, 3, [((2, 0, 0), (0, 2, 0), (0, 0, 2))])
    blocks = build_blocks(scalar, 3)
    basis = full_basis_from_blocks(scalar, blocks)
    all_proper = [
        frozenset(s)
        for r in range(3)
        for s in itertools.combinations((1, 2, 3), r)
    ]
    assert len(all_proper) == 7
    report = verify_lemma(scalar, blocks, basis, all_proper)
    assert report.consistent and len(report.hyperplanes) == 7
    kernels = [h.kernel for h in report.hyperplanes]
    for a, b in itertools.combinations(kernels, 2):
        assert not same_orbit(scalar, a, b)

    # p = 2: three independent coordinate swaps on F_2^6, three 2-dim blocks
    swap6 = tuple(
        tuple(1 if j == (i ^ 1) else 0 for j in range(6)) for i in range(6)
    )
    paired = fp_module(2, 6, [swap6])
    blocks2 = build_blocks(paired, 3)
    assert [len(b.basis) for b in blocks2] == [2, 2, 2]
    basis2 = full_basis_from_blocks(paired, blocks2)
    report2 = verify_lemma(paired, blocks2, basis2, all_proper)
    assert report2.consistent and len(report2.hyperplanes) == 7
    kernels2 = [h.kernel for h in report2.hyperplanes]
    for a, b in itertools.combinations(kernels2, 2):
        assert not same_orbit(paired, a, b)

    # swap action on F_2^2 exhausts the space after one block
    swap2 = fp_module(2, 2, [((0, 1), (1, 0))])
    with pytest.raises(NoInvariantComplement):
        build_blocks(swap2, 2)

    elapsed = time.perf_counter() - t0
    assert elapsed < 60, f"orbit truncations took {elapsed:.0f}s"
    _report(
        10,
        f"7 hyperplanes in 7 orbits at p=3 and p=2; swap truncation refused; "
        f"{elapsed:.1f}s",
    )
