"""HTTP service exposing the library, one POST endpoint per query kind.

Responses share one envelope: ``query`` echoes the request, ``result``
is the decision or count, ``certificate`` carries enough evidence to
re-check the answer independently, ``elapsed_ms`` is server-side wall
time.  Refusals become structured errors: parse failures are HTTP 400
with kind ParseError, degree-cap refusals HTTP 422 with kind
DegreeCapExceeded, other library refusals HTTP 422 under their own
exception name.
"""

from __future__ import annotations

import hashlib
import io
import time
from typing import Literal, Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import __version__
from .axioms import axiom_stream, write_axiom_file
from .cli import parse_poly, parse_problem_file, render_element, render_poly
from .config import DEFAULT, Config
from .errors import (
    DegreeCapExceeded,
    NoInvariantComplement,
    ParseError,
    RootfieldsError,
)
from .factorz import factor, is_irreducible
from .fieldmembership import E, L, QBAR, QTOTR, classify, has_root
from .galoistower import cycle_notation, galois_group, solve_embedding_problem, splitting_field
from .orbitlab import (
    build_blocks,
    full_basis_from_blocks,
    parse_module_file,
    verify_lemma,
)
from .polyarith import PolyZ, squarefree_part
from .realroots import count_real_roots, is_totally_real, isolate_roots


class ConfigOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")
    max_splitting_degree: Optional[int] = None
    max_input_degree: Optional[int] = None
    default_p: Optional[int] = None


class PolyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    poly: str
    config: Optional[ConfigOverrides] = None


class DecideRootRequest(PolyRequest):
    field: Literal["qbar", "totr", "L", "E"]
    p: Optional[int] = None


class ClassifyRequest(PolyRequest):
    p: int


class AxiomsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    max_deg: int
    max_height: int
    p: int
    config: Optional[ConfigOverrides] = None


class EmbedRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    problem: str


class OrbitVerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    module: str
    blocks: int
    sets: list[list[int]]


def _config_from(overrides: Optional[ConfigOverrides]) -> Config:
    if overrides is None:
        return DEFAULT
    return DEFAULT.with_overrides(**overrides.model_dump())


def _parse_capped(text: str, cfg: Config) -> PolyZ:
    f = parse_poly(text)
    if not f.is_zero and f.degree > cfg.max_input_degree:
        raise DegreeCapExceeded(
            f"input degree {f.degree} exceeds the cap {cfg.max_input_degree}",
            estimate=f.degree,
        )
    return f


def _doc(op: str, request: BaseModel, result, certificate, t0: float) -> dict:
    return {
        "query": {"op": op, **request.model_dump(exclude_none=True)},
        "result": result,
        "certificate": certificate,
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
    }


def _factor_summary(fz) -> dict:
    return {
        "content": fz.content,
        "factors": [
            {"coeffs": list(g.coeffs), "multiplicity": m} for g, m in fz.factors
        ],
    }


def _register_handlers(app: FastAPI):
    @app.exception_handler(ParseError)
    async def _parse_error(request, exc: ParseError):
        return JSONResponse(
            status_code=400,
            content={
                "detail": {
                    "kind": "ParseError",
                    "message": str(exc),
                    "position": exc.position,
                }
            },
        )

    @app.exception_handler(DegreeCapExceeded)
    async def _cap_error(request, exc: DegreeCapExceeded):
        return JSONResponse(
            status_code=422,
            content={
                "detail": {
                    "kind": "DegreeCapExceeded",
                    "message": str(exc),
                    "estimate": exc.estimate,
                }
            },
        )

    @app.exception_handler(RootfieldsError)
    async def _library_error(request, exc: RootfieldsError):
        return JSONResponse(
            status_code=422,
            content={"detail": {"kind": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"detail": {"kind": "ValueError", "message": str(exc)}},
        )


def create_app() -> FastAPI:
    app = FastAPI(title="rootfields", version=__version__)
    _register_handlers(app)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/factor")
    def do_factor(req: PolyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        fz = factor(f, cfg)
        result = [
            {"poly": render_poly(g), "multiplicity": m} for g, m in fz.factors
        ]
        cert = _factor_summary(fz)
        cert["degree"] = f.degree
        return _doc("factor", req, result, cert, t0)

    @app.post("/irreducible")
    def do_irreducible(req: PolyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        verdict = is_irreducible(f, cfg)
        cert = _factor_summary(factor(f, cfg))
        return _doc("irreducible", req, verdict, cert, t0)

    @app.post("/real-roots")
    def do_real_roots(req: PolyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        sf = squarefree_part(f)
        count = count_real_roots(f)
        intervals = [
            [str(b.re.lo), str(b.re.hi)]
            for b in isolate_roots(sf)
            if b.im.lo == 0 and b.im.hi == 0
        ]
        cert = {
            "count": count,
            "squarefree_degree": sf.degree,
            "isolating_intervals": intervals,
        }
        return _doc("real-roots", req, count, cert, t0)

    @app.post("/totally-real")
    def do_totally_real(req: PolyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        sf = squarefree_part(f)
        verdict = is_totally_real(f)
        cert = {
            "degree": f.degree,
            "squarefree_degree": sf.degree,
            "distinct_real_roots": count_real_roots(f),
        }
        return _doc("totally-real", req, verdict, cert, t0)

    @app.post("/galois-group")
    def do_galois_group(req: PolyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        sf = squarefree_part(f)
        tower, boxes = splitting_field(sf, cfg)
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
        cert = {
            "order": group.order,
            "roots": len(boxes),
            "generators": [cycle_notation(g) for g in group.generators],
            "transitive": len(reach) == len(boxes),
        }
        return _doc("galois-group", req, group.order, cert, t0)

    @app.post("/decide-root")
    def do_decide_root(req: DecideRootRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        if req.field == "qbar":
            tag = QBAR
        elif req.field == "totr":
            tag = QTOTR
        elif req.field == "L":
            tag = L
        else:
            tag = E(req.p if req.p is not None else cfg.default_p)
        verdict = has_root(f, tag, cfg)
        cert = {
            "field": str(tag),
            **_factor_summary(factor(f, cfg)),
        }
        return _doc("decide-root", req, verdict, cert, t0)

    @app.post("/classify")
    def do_classify(req: ClassifyRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        f = _parse_capped(req.poly, cfg)
        if f.is_zero or f.coeffs[-1] != 1:
            raise ValueError("classify requires a monic polynomial")
        if f.degree < 1:
            raise ValueError("classify requires degree at least 1")
        label = classify(tuple(f.coeffs[:-1]), req.p, cfg)
        cert = {
            "p": req.p,
            "coeffs": list(f.coeffs),
            "label": label.label,
            "in_T_n": label.in_T_n,
        }
        return _doc("classify", req, label.label, cert, t0)

    @app.post("/axioms")
    def do_axioms(req: AxiomsRequest):
        t0 = time.perf_counter()
        cfg = _config_from(req.config)
        records = list(axiom_stream(req.max_deg, req.max_height, req.p, cfg))
        buf = io.StringIO()
        write_axiom_file(records, buf)
        text = buf.getvalue()
        cert = {
            "count": len(records),
            "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
            "lines": text.splitlines(),
        }
        return _doc("axioms", req, len(records), cert, t0)

    @app.post("/embed-solve")
    def do_embed_solve(req: EmbedRequest):
        t0 = time.perf_counter()
        problem = parse_problem_file(req.problem)
        gamma = solve_embedding_problem(problem)
        if gamma is None:
            cert = {"solvable": False, "gamma": None}
        else:
            cert = {
                "solvable": True,
                "gamma": [
                    [render_element(problem.G, g), render_element(problem.B, b)]
                    for g, b in sorted(gamma.items())
                ],
            }
        return _doc("embed-solve", req, gamma is not None, cert, t0)

    @app.post("/orbit-verify")
    def do_orbit_verify(req: OrbitVerifyRequest):
        t0 = time.perf_counter()
        module = parse_module_file(req.module)
        try:
            blocks = build_blocks(module, req.blocks)
        except NoInvariantComplement as exc:
            cert = {"reason": str(exc), "blocks": None}
            return _doc("orbit-verify", req, "NoInvariantComplement", cert, t0)
        basis = full_basis_from_blocks(module, blocks)
        report = verify_lemma(module, blocks, basis, [frozenset(s) for s in req.sets])
        cert = {
            "blocks": [
                {"seed": list(b.seed), "basis": [list(v) for v in b.basis]}
                for b in blocks
            ],
            "hyperplanes": [
                {
                    "index_set": sorted(h.index_set),
                    "kernel": [list(v) for v in h.kernel],
                }
                for h in report.hyperplanes
            ],
            "witnesses": [
                {
                    "first": sorted(w.first),
                    "second": sorted(w.second),
                    "block_index": w.block_index,
                    "vector": list(w.vector),
                    "span_in_kernel": w.span_in_kernel,
                    "span_invariant": w.span_invariant,
                    "functional_is_one": w.functional_is_one,
                    "orbit_separated": w.orbit_separated,
                }
                for w in report.witnesses
            ],
        }
        return _doc("orbit-verify", req, report.consistent, cert, t0)

    return app


app = create_app()
