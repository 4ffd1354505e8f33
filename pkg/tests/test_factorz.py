import random

import pytest

from rootfields.config import Config
from rootfields.errors import DegreeCapExceeded, ZeroPolynomial
from rootfields.factorz import (
    Factorization,
    factor,
    factor_with_degree_multiple,
    is_irreducible,
    squarefree_decomposition,
)
from rootfields.polyarith import PolyZ, discriminant

import oracles


def rand_polyz(rng, max_deg, height):
    while True:
        deg = rng.randint(1, max_deg)
        coeffs = [rng.randint(-height, height) for _ in range(deg)] + [
            rng.randint(1, height)
        ]
        p = PolyZ(coeffs)
        if p.degree >= 1:
            return p


def check_shape(f: PolyZ, fz: Factorization):
    assert fz.expand().coeffs == f.coeffs
    seen = set()
    for poly, mult in fz.factors:
        assert mult >= 1
        assert poly.content() == 1
        assert poly.lc > 0
        assert poly.coeffs not in seen
        seen.add(poly.coeffs)
    keys = [(p.degree, p.coeffs) for p, _ in fz.factors]
    assert keys == sorted(keys)


class TestExamples:
    def test_x4_plus_4(self):
        # x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
        fz = factor(PolyZ([4, 0, 0, 0, 1]))
        assert fz.content == 1
        assert [p.coeffs for p, m in fz.factors] == [(2, -2, 1), (2, 2, 1)]
        assert all(m == 1 for _, m in fz.factors)

    def test_repeated_factor_multiplicity(self):
        # x^5 - x^4 - x + 1 = (x-1)^2 (x+1) (x^2+1)
        fz = factor(PolyZ([1, -1, 0, 0, -1, 1]))
        got = {p.coeffs: m for p, m in fz.factors}
        assert got == {(-1, 1): 2, (1, 1): 1, (1, 0, 1): 1}

    def test_signed_content(self):
        fz = factor(PolyZ([6, 0, -6]))
        assert fz.content == -6
        assert [p.coeffs for p, m in fz.factors] == [(-1, 1), (1, 1)]

    def test_non_monic(self):
        fz = factor(PolyZ([1, 3, 2]))
        assert [p.coeffs for p, m in fz.factors] == [(1, 1), (1, 2)]

    def test_constant_and_zero(self):
        assert factor(PolyZ([-7])).content == -7
        assert factor(PolyZ([-7])).factors == ()
        with pytest.raises(ZeroPolynomial):
            factor(PolyZ([]))

    def test_power_of_x(self):
        fz = factor(PolyZ([0, 0, 0, 5]))
        assert fz.content == 5
        assert fz.factors == ((PolyZ([0, 1]), 3),)

    def test_irreducibility_fixtures(self):
        assert is_irreducible(PolyZ([-2, 0, 1]))
        assert is_irreducible(PolyZ([1, 1, 1, 1, 1]))  # cyclotomic, degree 4
        assert is_irreducible(PolyZ([-2, 0, 0, 0, 0, 1]))  # eisenstein at 2
        assert is_irreducible(PolyZ([576, 0, -960, 0, 352, 0, -40, 0, 1]))
        assert not is_irreducible(PolyZ([-1, 0, 1]))
        assert not is_irreducible(PolyZ([4, 0, 0, 0, 1]))
        assert not is_irreducible(PolyZ([9]))
        assert not is_irreducible(PolyZ([1, 2, 1]))

    def test_cyclotomic_x12(self):
        fz = factor(PolyZ([-1] + [0] * 11 + [1]))
        degs = sorted(p.degree for p, _ in fz.factors)
        assert degs == [1, 1, 2, 2, 2, 4]


class TestOracleAgreement:
    def test_monic_random_sample_matches_bounded_search(self):
        rng = random.Random(201)
        for _ in range(120):
            deg = rng.randint(1, 4)
            coeffs = [rng.randint(-3, 3) for _ in range(deg)] + [1]
            f = PolyZ(coeffs)
            want = oracles.oracle_factor_monic(list(f.coeffs))
            fz = factor(f)
            got = []
            for p, m in fz.factors:
                got.extend([p.coeffs] * m)
            # oracle factors of a monic poly are monic; squarefree parts of
            # the oracle output come back sorted the same way
            assert sorted(got, key=lambda t: (len(t), t)) == [tuple(w) for w in want]

    def test_is_irreducible_against_oracle(self):
        rng = random.Random(202)
        for _ in range(120):
            deg = rng.randint(2, 4)
            coeffs = [rng.randint(-3, 3) for _ in range(deg)] + [1]
            f = PolyZ(coeffs)
            assert is_irreducible(f) == oracles.oracle_is_irreducible_monic(
                list(f.coeffs)
            )


class TestProperties:
    def test_expand_identity_random(self):
        rng = random.Random(203)
        for _ in range(150):
            f = rand_polyz(rng, 6, 10)
            check_shape(f, factor(f))

    def test_factors_are_irreducible(self):
        rng = random.Random(204)
        for _ in range(60):
            f = rand_polyz(rng, 6, 8)
            for p, _ in factor(f).factors:
                refz = factor(p)
                assert len(refz.factors) == 1 and refz.factors[0][1] == 1

    def test_deterministic_across_runs(self):
        rng = random.Random(205)
        polys = [rand_polyz(rng, 6, 9) for _ in range(40)]
        first = [factor(f) for f in polys]
        second = [factor(f) for f in polys]
        assert first == second

    def test_products_recover_parts(self):
        rng = random.Random(206)
        for _ in range(60):
            f = rand_polyz(rng, 3, 5)
            g = rand_polyz(rng, 3, 5)
            fz = factor(f * g)
            check_shape(f * g, fz)

    def test_yun_decomposition_properties(self):
        rng = random.Random(207)
        for _ in range(80):
            f = rand_polyz(rng, 3, 4)
            g = rand_polyz(rng, 2, 4)
            h = f * f * g
            content, parts = squarefree_decomposition(h)
            acc = PolyZ([content])
            for part, mult in parts:
                assert discriminant(part) != 0 or part.degree < 1
                for _ in range(mult):
                    acc = acc * part
            assert acc.coeffs == h.coeffs


class TestCapsAndPruning:
    def test_degree_cap(self):
        f = PolyZ([0] * 25 + [1])
        with pytest.raises(DegreeCapExceeded):
            factor(f)
        small_cap = Config(max_input_degree=3)
        with pytest.raises(DegreeCapExceeded):
            factor(PolyZ([1, 0, 0, 0, 1]), small_cap)

    def test_degree_multiple_bypasses_cap(self):
        # degree 28 > default input cap, but the internal entry point allows it
        f = PolyZ([-1] + [0] * 27 + [1])
        parts = factor_with_degree_multiple(f, 1)
        acc = PolyZ([1])
        for p in parts:
            acc = acc * p
        assert acc.coeffs == f.coeffs

    def test_degree_multiple_agrees_with_plain_factoring(self):
        # every factor of these has even degree, so the prune must not
        # change the answer
        cases = [
            PolyZ([4, 0, 0, 0, 1]),
            PolyZ([1, 0, -10, 0, 1]),
            PolyZ([6, 0, 5, 0, 1]),  # (x^2+2)(x^2+3)
            PolyZ([576, 0, -960, 0, 352, 0, -40, 0, 1]),
        ]
        for f in cases:
            plain = [p.coeffs for p, _ in factor(f).factors]
            pruned = [p.coeffs for p in factor_with_degree_multiple(f, 2)]
            assert sorted(plain, key=lambda t: (len(t), t)) == pruned
