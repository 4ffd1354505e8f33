"""CLI tests: the polynomial/group parsers and full command round trips
through the in-process service."""

import contextlib
import hashlib
import io
import json

import pytest

from rootfields.cli import (
    main,
    parse_cycles,
    parse_poly,
    parse_problem_file,
    parse_sets,
    render_poly,
)
from rootfields.errors import ParseError
from rootfields.fieldmembership import classify
from rootfields.galoistower import solve_embedding_problem
from rootfields.orbitlab import parse_module_file, same_orbit
from rootfields.polyarith import PolyZ, zmul


def run_cli(args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(args)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


class TestParsePoly:
    def test_quadratic_minus_constant(self):
        assert parse_poly("x^2 - 2").coeffs == (-2, 0, 1)

    def test_bare_constant(self):
        assert parse_poly("3").coeffs == (3,)

    def test_three_terms(self):
        assert parse_poly("x^2 + x - 1").coeffs == (-1, 1, 1)

    def test_explicit_coefficients(self):
        assert parse_poly("2x^3 + 5x - 7").coeffs == (-7, 5, 0, 2)

    def test_leading_minus(self):
        assert parse_poly("-x^2 + 2").coeffs == (2, 0, -1)

    def test_like_terms_accumulate(self):
        assert parse_poly("x + x").coeffs == (0, 2)

    def test_cancellation_to_zero(self):
        assert parse_poly("x - x").coeffs == ()

    def test_whitespace_tolerated(self):
        assert parse_poly("  x^2   -   2 ").coeffs == (-2, 0, 1)

    def test_empty_input(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("   ")
        assert exc.value.position == 0

    def test_missing_exponent(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("x^")
        assert exc.value.position == 2

    def test_negative_exponent_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("x^-1")

    def test_adjacent_terms_need_operator(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("2 3")
        assert exc.value.position == 2

    def test_stray_character(self):
        with pytest.raises(ParseError):
            parse_poly("x**2")

    def test_missing_term_after_operator(self):
        with pytest.raises(ParseError):
            parse_poly("x +")


class TestRenderPoly:
    def test_canonical_forms(self):
        assert render_poly(PolyZ([-2, 0, 1])) == "x^2 - 2"
        assert render_poly(PolyZ([3])) == "3"
        assert render_poly(PolyZ([-1, 1, 1])) == "x^2 + x - 1"
        assert render_poly(PolyZ([0, -1])) == "-x"
        assert render_poly(PolyZ([2, 0, -1])) == "-x^2 + 2"
        assert render_poly(PolyZ([0, 2])) == "2x"
        assert render_poly(PolyZ([0])) == "0"

    def test_round_trip_identity(self):
        import itertools

        for coeffs in itertools.product((-2, -1, 0, 1, 3), repeat=4):
            f = PolyZ(list(coeffs))
            if f.is_zero:
                continue
            assert parse_poly(render_poly(f)).coeffs == f.coeffs


class TestParseCycles:
    def test_three_cycle(self):
        assert parse_cycles("(0 1 2)", 3) == (1, 2, 0)

    def test_identity(self):
        assert parse_cycles("()", 3) == (0, 1, 2)

    def test_disjoint_cycles(self):
        assert parse_cycles("(0 1)(2 3)", 4) == (1, 0, 3, 2)

    def test_commas_allowed(self):
        assert parse_cycles("(0, 1, 2)", 3) == (1, 2, 0)

    def test_out_of_range(self):
        with pytest.raises(ParseError):
            parse_cycles("(0 3)", 3)

    def test_repeated_index(self):
        with pytest.raises(ParseError):
            parse_cycles("(0 1)(1 2)", 3)

    def test_unclosed(self):
        with pytest.raises(ParseError):
            parse_cycles("(0 1", 3)

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_cycles("0 1", 3)

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_cycles("", 3)


class TestParseSets:
    def test_mixed(self):
        assert parse_sets("1,2;1;") == [frozenset({1, 2}), frozenset({1}), frozenset()]

    def test_single_empty(self):
        assert parse_sets("") == [frozenset()]

    def test_spaces(self):
        assert parse_sets(" 1 , 2 ; 3 ") == [frozenset({1, 2}), frozenset({3})]

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_sets("1,x")


PROBLEM_TEXT = """
# identity cover of C2 by C4 over C2
[G]
perm 4
(0 1 2 3)

[A]
perm 2
(0 1)

[B]
table 4
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2

[phi]
(0 1)

[alpha]
()
(0 1)
()
(0 1)
"""


class TestProblemFiles:
    def test_parses_and_solves(self):
        prob = parse_problem_file(PROBLEM_TEXT)
        assert prob.G.order == 4 and prob.A.order == 2 and prob.B.order == 4
        assert solve_embedding_problem(prob) is not None

    def test_comments_and_blanks_ignored(self):
        noisy = PROBLEM_TEXT.replace("[A]", "# noise\n\n[A]")
        assert parse_problem_file(noisy).A.order == 2

    def test_missing_section(self):
        with pytest.raises(ParseError):
            parse_problem_file(PROBLEM_TEXT.replace("[alpha]", "[beta]"))

    def test_duplicate_section(self):
        with pytest.raises(ParseError):
            parse_problem_file(PROBLEM_TEXT + "\n[G]\nperm 1\n")

    def test_content_before_sections(self):
        with pytest.raises(ParseError):
            parse_problem_file("perm 2\n" + PROBLEM_TEXT)

    def test_wrong_image_count(self):
        with pytest.raises(ParseError):
            parse_problem_file(PROBLEM_TEXT.replace("[phi]\n(0 1)", "[phi]\n(0 1)\n()"))

    def test_non_extending_map(self):
        # x -> (0 1) cannot extend from C3 to C2
        text = """
[G]
perm 3
(0 1 2)
[A]
perm 2
(0 1)
[B]
perm 2
(0 1)
[phi]
(0 1)
[alpha]
(0 1)
"""
        with pytest.raises(ParseError):
            parse_problem_file(text)

    def test_bad_table(self):
        text = PROBLEM_TEXT.replace("3 0 1 2", "3 0 1 1")
        with pytest.raises(ParseError):
            parse_problem_file(text)


class TestCommands:
    def test_factor_example(self):
        code, out, _ = run_cli(["factor", "--poly", "x^4+4"])
        assert code == 0
        doc = json.loads(out)
        assert [f["poly"] for f in doc["result"]] == ["x^2 - 2x + 2", "x^2 + 2x + 2"]

    def test_factor_certificate_reassembles(self):
        code, out, _ = run_cli(["factor", "--poly", "3x^2 - 3"])
        doc = json.loads(out)
        cert = doc["certificate"]
        acc = [cert["content"]]
        for entry in cert["factors"]:
            for _ in range(entry["multiplicity"]):
                acc = zmul(acc, entry["coeffs"])
        assert acc == [-3, 0, 3]

    def test_totally_real_example(self):
        code, out, _ = run_cli(["totally-real", "--poly", "x^2+x-1"])
        assert code == 0 and json.loads(out)["result"] is True

    def test_classify_certificate_agrees_with_fresh_call(self):
        code, out, _ = run_cli(["classify", "--poly", "x^3-2", "--p", "3"])
        assert code == 0
        doc = json.loads(out)
        fresh = classify((-2, 0, 0), 3)
        assert doc["result"] == fresh.label
        assert doc["certificate"]["label"] == fresh.label

    def test_decide_root_quadratic(self):
        code, out, _ = run_cli(
            ["decide-root", "--field", "E", "--p", "2", "--poly", "x^2-2"]
        )
        assert code == 0 and json.loads(out)["result"] is True

    def test_parse_error_exit_code(self):
        code, _, err = run_cli(["factor", "--poly", "x +"])
        assert code == 3 and "ParseError" in err

    def test_cap_exit_code(self):
        code, _, err = run_cli(["factor", "--poly", "x^25"])
        assert code == 2 and "DegreeCapExceeded" in err

    def test_usage_exit_codes(self):
        assert run_cli([])[0] == 64
        assert run_cli(["no-such-command"])[0] == 64
        assert run_cli(["factor"])[0] == 64
        assert run_cli(["decide-root", "--poly", "x", "--field", "Z"])[0] == 64

    def test_missing_problem_file(self):
        code, _, err = run_cli(["embed-solve", "--problem", "/nonexistent/p.txt"])
        assert code == 3

    def test_config_file_respected(self, tmp_path):
        cfg = tmp_path / "caps.cfg"
        cfg.write_text("max_input_degree = 2\n")
        code, _, err = run_cli(["--config", str(cfg), "factor", "--poly", "x^3-2"])
        assert code == 2 and "DegreeCapExceeded" in err

    def test_config_file_parse_error(self, tmp_path):
        cfg = tmp_path / "caps.cfg"
        cfg.write_text("nonsense\n")
        code, _, err = run_cli(["--config", str(cfg), "factor", "--poly", "x"])
        assert code == 3

    def test_determinism_modulo_elapsed(self):
        first = json.loads(run_cli(["factor", "--poly", "x^4-1"])[1])
        second = json.loads(run_cli(["factor", "--poly", "x^4-1"])[1])
        first.pop("elapsed_ms")
        second.pop("elapsed_ms")
        assert first == second


class TestAxiomsCommand:
    def test_out_file_and_hash(self, tmp_path):
        out_path = tmp_path / "stream.txt"
        code, out, _ = run_cli(
            [
                "axioms", "--max-deg", "2", "--max-height", "1",
                "--p", "2", "--out", str(out_path),
            ]
        )
        assert code == 0
        doc = json.loads(out)
        cert = doc["certificate"]
        assert cert["path"] == str(out_path)
        assert "lines" not in cert
        text = out_path.read_text(encoding="utf-8")
        assert hashlib.sha256(text.encode()).hexdigest() == cert["sha256"]
        assert len(text.splitlines()) == doc["result"]

    def test_inline_lines_without_out(self):
        code, out, _ = run_cli(
            ["axioms", "--max-deg", "1", "--max-height", "1", "--p", "2"]
        )
        doc = json.loads(out)
        assert len(doc["certificate"]["lines"]) == doc["result"]


class TestOrbitVerifyCommand:
    def test_report_recheck(self, tmp_path):
        module = tmp_path / "m.txt"
        module.write_text("3 3\n2 0 0\n0 2 0\n0 0 2\n")
        code, out, _ = run_cli(
            ["orbit-verify", "--module", str(module), "--blocks", "3", "--sets", ";1;2,3"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"] is True
        M = parse_module_file(module.read_text())
        kernels = [
            tuple(tuple(r) for r in h["kernel"])
            for h in doc["certificate"]["hyperplanes"]
        ]
        for i in range(len(kernels)):
            for j in range(i + 1, len(kernels)):
                assert not same_orbit(M, kernels[i], kernels[j])

    def test_no_invariant_complement_decided(self, tmp_path):
        module = tmp_path / "m.txt"
        module.write_text("2 2\n0 1\n1 0\n")
        code, out, _ = run_cli(
            ["orbit-verify", "--module", str(module), "--blocks", "2", "--sets", ""]
        )
        assert code == 0
        assert json.loads(out)["result"] == "NoInvariantComplement"


@pytest.mark.slow
class TestSlowAnchors:
    def test_fifth_root_not_in_e3(self):
        code, out, _ = run_cli(
            ["decide-root", "--field", "E", "--p", "3", "--poly", "x^5-2"]
        )
        assert code == 0 and json.loads(out)["result"] is False
