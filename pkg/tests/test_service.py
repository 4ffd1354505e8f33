"""Service endpoint tests over the in-process ASGI app."""

import hashlib

import pytest
from fastapi.testclient import TestClient

from rootfields.axioms import axiom_check, read_axiom_file
from rootfields.fieldmembership import classify
from rootfields.orbitlab import parse_module_file, same_orbit
from rootfields.polyarith import zmul
from rootfields.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


SCALAR_F3 = "3 3\n2 0 0\n0 2 0\n0 0 2\n"
SWAP_F2 = "2 2\n0 1\n1 0\n"

PROBLEM_SOLVABLE = """
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

PROBLEM_UNSOLVABLE = """
[G]
perm 4
(0 1)
(2 3)

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
()

[alpha]
()
(0 1)
()
(0 1)
"""


class TestHealth:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "ok" and "version" in body


class TestEnvelope:
    def test_document_fields(self, client):
        r = client.post("/factor", json={"poly": "x^2 - 2"})
        assert r.status_code == 200
        doc = r.json()
        assert set(doc) == {"query", "result", "certificate", "elapsed_ms"}
        assert doc["query"]["op"] == "factor"
        assert doc["query"]["poly"] == "x^2 - 2"
        assert isinstance(doc["elapsed_ms"], int)

    def test_unknown_body_field_rejected(self, client):
        r = client.post("/factor", json={"poly": "x", "bogus": 1})
        assert r.status_code == 422


class TestFactor:
    def test_two_quadratics(self, client):
        doc = client.post("/factor", json={"poly": "x^4+4"}).json()
        assert [f["poly"] for f in doc["result"]] == ["x^2 - 2x + 2", "x^2 + 2x + 2"]

    def test_certificate_reassembles(self, client):
        doc = client.post("/factor", json={"poly": "2x^4 - 2"}).json()
        cert = doc["certificate"]
        acc = [cert["content"]]
        for entry in cert["factors"]:
            for _ in range(entry["multiplicity"]):
                acc = zmul(acc, entry["coeffs"])
        assert acc == [-2, 0, 0, 0, 2]

    def test_parse_error_shape(self, client):
        r = client.post("/factor", json={"poly": "x +"})
        assert r.status_code == 400
        detail = r.json()["detail"]
        assert detail["kind"] == "ParseError"
        assert isinstance(detail["position"], int)

    def test_cap_error_shape(self, client):
        r = client.post("/factor", json={"poly": "x^25"})
        assert r.status_code == 422
        detail = r.json()["detail"]
        assert detail["kind"] == "DegreeCapExceeded" and detail["estimate"] == 25

    def test_config_override_tightens_cap(self, client):
        r = client.post(
            "/factor", json={"poly": "x^3 - 2", "config": {"max_input_degree": 2}}
        )
        assert r.status_code == 422
        assert r.json()["detail"]["kind"] == "DegreeCapExceeded"

    def test_zero_polynomial_refused(self, client):
        r = client.post("/factor", json={"poly": "0"})
        assert r.status_code == 422
        assert r.json()["detail"]["kind"] == "ZeroPolynomial"


class TestIrreducible:
    def test_values(self, client):
        assert client.post("/irreducible", json={"poly": "x^2+1"}).json()["result"] is True
        assert client.post("/irreducible", json={"poly": "x^2-1"}).json()["result"] is False


class TestRealRoots:
    def test_count_and_intervals(self, client):
        doc = client.post("/real-roots", json={"poly": "x^3 - 2x"}).json()
        assert doc["result"] == 3
        cert = doc["certificate"]
        assert cert["count"] == 3
        assert len(cert["isolating_intervals"]) == 3

    def test_repeated_roots_counted_once(self, client):
        doc = client.post("/real-roots", json={"poly": "x^2 - 2x + 1"}).json()
        assert doc["result"] == 1


class TestTotallyReal:
    def test_golden_quadratic(self, client):
        doc = client.post("/totally-real", json={"poly": "x^2 + x - 1"}).json()
        assert doc["result"] is True
        cert = doc["certificate"]
        assert cert["distinct_real_roots"] == cert["squarefree_degree"]

    def test_cube_root_rejected(self, client):
        assert client.post("/totally-real", json={"poly": "x^3-2"}).json()["result"] is False


class TestGaloisGroup:
    def test_cube_root_tower(self, client):
        doc = client.post("/galois-group", json={"poly": "x^3 - 2"}).json()
        assert doc["result"] == 6
        assert doc["certificate"]["transitive"] is True

    def test_reducible_not_transitive(self, client):
        doc = client.post("/galois-group", json={"poly": "x^2 - 1"}).json()
        assert doc["result"] == 1
        assert doc["certificate"]["transitive"] is False

    def test_squarefree_part_taken(self, client):
        doc = client.post("/galois-group", json={"poly": "x^2 + 2x + 1"}).json()
        assert doc["result"] == 1


class TestDecideRoot:
    def test_qbar(self, client):
        doc = client.post("/decide-root", json={"poly": "x^2+1", "field": "qbar"}).json()
        assert doc["result"] is True

    def test_totr(self, client):
        assert (
            client.post("/decide-root", json={"poly": "x^2+1", "field": "totr"}).json()["result"]
            is False
        )

    def test_e_depends_on_p(self, client):
        body = {"poly": "x^3 - 2", "field": "E", "p": 3}
        assert client.post("/decide-root", json=body).json()["result"] is True
        body["p"] = 2
        assert client.post("/decide-root", json=body).json()["result"] is False

    def test_default_p_from_config(self, client):
        body = {"poly": "x^3 - 2", "field": "E", "config": {"default_p": 2}}
        assert client.post("/decide-root", json=body).json()["result"] is False

    def test_bad_prime(self, client):
        r = client.post("/decide-root", json={"poly": "x", "field": "E", "p": 4})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "ValueError"

    def test_field_echoed_in_certificate(self, client):
        doc = client.post(
            "/decide-root", json={"poly": "x^2 - 2", "field": "E", "p": 3}
        ).json()
        assert doc["certificate"]["field"] == "E(3)"


class TestClassify:
    def test_label_matches_library(self, client):
        doc = client.post("/classify", json={"poly": "x^3 - 2", "p": 3}).json()
        fresh = classify((-2, 0, 0), 3)
        assert doc["result"] == fresh.label
        assert doc["certificate"]["in_T_n"] == fresh.in_T_n

    def test_requires_monic(self, client):
        r = client.post("/classify", json={"poly": "2x - 1", "p": 3})
        assert r.status_code == 400

    def test_requires_positive_degree(self, client):
        r = client.post("/classify", json={"poly": "1", "p": 3})
        assert r.status_code == 400


class TestAxioms:
    def test_stream_document(self, client):
        body = {"max_deg": 2, "max_height": 1, "p": 2}
        doc = client.post("/axioms", json=body).json()
        cert = doc["certificate"]
        assert doc["result"] == cert["count"] == len(cert["lines"])
        text = "\n".join(cert["lines"]) + "\n"
        assert hashlib.sha256(text.encode()).hexdigest() == cert["sha256"]

    def test_lines_are_valid_records(self, client):
        import io

        body = {"max_deg": 2, "max_height": 1, "p": 2}
        cert = client.post("/axioms", json=body).json()["certificate"]
        records = read_axiom_file(io.StringIO("\n".join(cert["lines"]) + "\n"))
        assert all(axiom_check(rec) for rec in records)

    def test_byte_identical_across_calls(self, client):
        body = {"max_deg": 2, "max_height": 2, "p": 3}
        first = client.post("/axioms", json=body).json()["certificate"]
        second = client.post("/axioms", json=body).json()["certificate"]
        assert first["sha256"] == second["sha256"]
        assert first["lines"] == second["lines"]

    def test_bad_prime(self, client):
        r = client.post("/axioms", json={"max_deg": 1, "max_height": 1, "p": 6})
        assert r.status_code == 400


class TestEmbedSolve:
    def test_solvable(self, client):
        doc = client.post("/embed-solve", json={"problem": PROBLEM_SOLVABLE}).json()
        assert doc["result"] is True
        gamma = doc["certificate"]["gamma"]
        assert len(gamma) == 4
        assert ["()", "0"] in gamma

    def test_unsolvable(self, client):
        doc = client.post("/embed-solve", json={"problem": PROBLEM_UNSOLVABLE}).json()
        assert doc["result"] is False
        assert doc["certificate"]["gamma"] is None

    def test_bad_file(self, client):
        r = client.post("/embed-solve", json={"problem": "[G]\nperm 2\n"})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "ParseError"

    def test_non_extending_map(self, client):
        text = PROBLEM_SOLVABLE.replace("[phi]\n(0 1)", "[phi]\n(0 1 2 3)")
        r = client.post("/embed-solve", json={"problem": text})
        assert r.status_code == 400


class TestOrbitVerify:
    def test_seven_hyperplanes(self, client):
        body = {
            "module": SCALAR_F3,
            "blocks": 3,
            "sets": [[], [1], [2], [3], [1, 2], [1, 3], [2, 3]],
        }
        doc = client.post("/orbit-verify", json=body).json()
        assert doc["result"] is True
        cert = doc["certificate"]
        assert len(cert["hyperplanes"]) == 7
        assert len(cert["witnesses"]) == 21
        assert all(w["orbit_separated"] for w in cert["witnesses"])

    def test_kernels_pairwise_non_conjugate_recheck(self, client):
        body = {"module": SCALAR_F3, "blocks": 3, "sets": [[], [1], [2]]}
        cert = client.post("/orbit-verify", json=body).json()["certificate"]
        M = parse_module_file(SCALAR_F3)
        kernels = [tuple(tuple(r) for r in h["kernel"]) for h in cert["hyperplanes"]]
        for i in range(len(kernels)):
            for j in range(i + 1, len(kernels)):
                assert not same_orbit(M, kernels[i], kernels[j])

    def test_no_invariant_complement_is_decided(self, client):
        body = {"module": SWAP_F2, "blocks": 2, "sets": [[]]}
        doc = client.post("/orbit-verify", json=body).json()
        assert doc["result"] == "NoInvariantComplement"
        assert doc["certificate"]["blocks"] is None

    def test_improper_set_rejected(self, client):
        body = {"module": SWAP_F2, "blocks": 1, "sets": [[1]]}
        r = client.post("/orbit-verify", json=body)
        assert r.status_code == 422
        assert r.json()["detail"]["kind"] == "IndexSetNotProper"

    def test_bad_module_text(self, client):
        r = client.post("/orbit-verify", json={"module": "nope", "blocks": 1, "sets": [[]]})
        assert r.status_code == 400
