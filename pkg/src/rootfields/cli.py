"""Command-line front end.

Every subcommand builds one HTTP request, sends it to the service (an
in-process instance by default, a remote one with --server), and prints
the JSON document the service returns: query, result, certificate,
elapsed_ms.  Exit codes: 0 when the query was decided either way, 2 when
a degree cap refused the computation, 3 on parse or input errors, 64 on
usage errors.

Polynomial grammar (single variable x, integer coefficients):

    expr := ['-'] term (('+' | '-') term)*
    term := coeff | coeff? 'x' ('^' nat)?

so "x^2 - 2", "3", "2x^3 + x - 7" are all valid.  The leading minus is
accepted so rendered polynomials round-trip through the parser.

Embedding problem files (embed-solve) have five sections:

    [G]           the group to map onto B
    [A]           the common quotient
    [B]           the cover
    [phi]         images in A of the listed generators of G
    [alpha]       images in A of the listed generators of B

A group section starts with "perm DEGREE" followed by one generator per
line in cycle notation ("(0 1 2)(3 4)", "()" for the identity), or
"table N" followed by the N rows of a Cayley table (entry r c is the
product r*c).  For a table group every element 0..N-1 counts as listed,
so [phi] or [alpha] then needs one image line per element.  Images are
written in the notation of [A].

Module files (orbit-verify) start with a line "p dim"; each subsequent
block of dim lines is one generator matrix, entries space-separated.
The --sets argument is a semicolon-separated list of index sets, each a
comma-separated list of block indices; an empty segment is the empty
set, so --sets "1,2;1;" names {1,2}, {1} and {}.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from .errors import ParseError
from .galoistower import (
    CayleyGroup,
    EmbeddingProblem,
    PermGroup,
    cayley_group,
    cycle_notation,
    extend_generator_map,
    perm_group,
)
from .polyarith import PolyZ


# ---------------------------------------------------------------------------
# polynomial text

def parse_poly(text: str) -> PolyZ:
    """Parse the polynomial grammar above into dense coefficients."""
    coeffs: dict[int, int] = {}
    i, n = 0, len(text)

    def skip():
        nonlocal i
        while i < n and text[i].isspace():
            i += 1

    def read_nat() -> int:
        nonlocal i
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            raise ParseError(f"expected integer at position {start}", position=start)
        return int(text[start:i])

    def read_term(sign: int):
        nonlocal i
        skip()
        if i >= n:
            raise ParseError(f"expected term at position {i}", position=i)
        if text[i].isdigit():
            c = read_nat()
        elif text[i] == "x":
            c = 1
        else:
            raise ParseError(f"expected term at position {i}", position=i)
        k = 0
        if i < n and text[i] == "x":
            i += 1
            k = 1
            if i < n and text[i] == "^":
                i += 1
                k = read_nat()
        coeffs[k] = coeffs.get(k, 0) + sign * c

    skip()
    if i >= n:
        raise ParseError("empty polynomial", position=0)
    sign = 1
    if text[i] == "-":
        sign = -1
        i += 1
    read_term(sign)
    while True:
        skip()
        if i >= n:
            break
        if text[i] == "+":
            sign = 1
        elif text[i] == "-":
            sign = -1
        else:
            raise ParseError(
                f"unexpected character {text[i]!r} at position {i}", position=i
            )
        i += 1
        read_term(sign)
    deg = max(coeffs)
    return PolyZ([coeffs.get(k, 0) for k in range(deg + 1)])


def render_poly(f: PolyZ) -> str:
    """Canonical text form; parse_poly(render_poly(f)) == f."""
    cs = f.coeffs
    if not cs:
        return "0"
    parts: list[str] = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = f"{head}x" if k == 1 else f"{head}x^{k}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# permutations and groups

def parse_cycles(text: str, degree: int) -> tuple:
    """Cycle notation to a permutation tuple; each entry maps to its
    successor within the cycle."""
    i, n = 0, len(text)
    perm = list(range(degree))
    seen: set[int] = set()
    cycles = 0
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] != "(":
            raise ParseError(f"expected '(' at position {i}", position=i)
        i += 1
        entries: list[int] = []
        while True:
            while i < n and (text[i].isspace() or text[i] == ","):
                i += 1
            if i >= n:
                raise ParseError("unclosed cycle", position=n)
            if text[i] == ")":
                i += 1
                break
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i == start:
                raise ParseError(f"expected index at position {start}", position=start)
            entries.append(int(text[start:i]))
        cycles += 1
        for idx in entries:
            if idx >= degree:
                raise ParseError(f"index {idx} out of range for degree {degree}")
            if idx in seen:
                raise ParseError(f"repeated index {idx} in permutation")
            seen.add(idx)
        if len(entries) > 1:
            for a, b in zip(entries, entries[1:] + entries[:1]):
                perm[a] = b
    if cycles == 0:
        raise ParseError("empty permutation", position=0)
    return tuple(perm)


def render_element(group, x) -> str:
    if isinstance(group, PermGroup):
        return cycle_notation(x)
    return str(x)


def _parse_element(group, text: str, where: str):
    text = text.strip()
    if isinstance(group, PermGroup):
        return parse_cycles(text, group.degree)
    try:
        idx = int(text)
    except ValueError:
        raise ParseError(f"{where}: expected an element index, got {text!r}")
    if not 0 <= idx < group.order:
        raise ParseError(f"{where}: element {idx} out of range")
    return idx


def _parse_group_section(name: str, lines: list[str]):
    """One group section -> (group, listed generators)."""
    if not lines:
        raise ParseError(f"section [{name}] is empty")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"section [{name}]: header must be 'perm N' or 'table N'")
    kind, num = header[0], header[1]
    try:
        size = int(num)
    except ValueError:
        raise ParseError(f"section [{name}]: bad size {num!r}")
    if kind == "perm":
        gens = [parse_cycles(line, size) for line in lines[1:]]
        return perm_group(size, gens), gens
    if kind == "table":
        rows = []
        if len(lines) != size + 1:
            raise ParseError(
                f"section [{name}]: expected {size} table rows, got {len(lines) - 1}"
            )
        for line in lines[1:]:
            try:
                row = tuple(int(t) for t in line.split())
            except ValueError:
                raise ParseError(f"section [{name}]: non-integer table entry")
            if len(row) != size:
                raise ParseError(f"section [{name}]: table row of width {len(row)}")
            rows.append(row)
        try:
            group = cayley_group(tuple(rows))
        except ValueError as exc:
            raise ParseError(f"section [{name}]: {exc}")
        return group, list(range(size))
    raise ParseError(f"section [{name}]: unknown group kind {kind!r}")


def parse_problem_file(text: str) -> EmbeddingProblem:
    """Parse the five-section embedding problem format described in the
    module docstring."""
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            if current in sections:
                raise ParseError(f"duplicate section [{current}]")
            sections[current] = []
            continue
        if current is None:
            raise ParseError("content before the first section header")
        sections[current].append(line)
    required = ("G", "A", "B", "phi", "alpha")
    for name in required:
        if name not in sections:
            raise ParseError(f"missing section [{name}]")
    for name in sections:
        if name not in required:
            raise ParseError(f"unknown section [{name}]")

    G, g_gens = _parse_group_section("G", sections["G"])
    A, _ = _parse_group_section("A", sections["A"])
    B, b_gens = _parse_group_section("B", sections["B"])

    def build_map(name: str, dom, gens):
        lines = sections[name]
        if len(lines) != len(gens):
            raise ParseError(
                f"section [{name}]: expected {len(gens)} image lines, got {len(lines)}"
            )
        images = [_parse_element(A, line, f"section [{name}]") for line in lines]
        mapping = extend_generator_map(dom, A, gens, images)
        if mapping is None:
            raise ParseError(f"section [{name}] does not extend to a homomorphism")
        return mapping

    phi = build_map("phi", G, g_gens)
    alpha = build_map("alpha", B, b_gens)
    return EmbeddingProblem(G=G, A=A, B=B, phi=phi, alpha=alpha)


def parse_sets(text: str) -> list[frozenset[int]]:
    """Semicolon-separated index sets, commas within a set."""
    out: list[frozenset[int]] = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            out.append(frozenset())
            continue
        members = set()
        for tok in part.split(","):
            tok = tok.strip()
            try:
                members.add(int(tok))
            except ValueError:
                raise ParseError(f"bad index {tok!r} in --sets")
        out.append(frozenset(members))
    return out


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    # the exit-code contract reserves 64 for usage errors
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(64)


def build_parser() -> _Parser:
    parser = _Parser(prog="rootfields", description=__doc__.splitlines()[0])
    parser.add_argument("--server", help="base URL of a running service; default runs in-process")
    parser.add_argument("--config", help="key=value config file; flags override it")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def poly_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--poly", required=True, help="polynomial, e.g. 'x^2 - 2'")
        return p

    poly_cmd("factor", "factor an integer polynomial")
    poly_cmd("irreducible", "decide irreducibility over the integers")
    poly_cmd("real-roots", "count and isolate distinct real roots")
    poly_cmd("totally-real", "decide whether every root is real")
    poly_cmd("galois-group", "splitting field Galois group of the squarefree part")

    p = poly_cmd("decide-root", "decide existence of a root in a named field")
    p.add_argument("--field", required=True, choices=["qbar", "totr", "L", "E"])
    p.add_argument("--p", type=int, help="prime for E; defaults to the configured one")

    p = poly_cmd("classify", "irreducibility/root dichotomy label for monic input")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("axioms", help="emit the axiom stream for a height/degree window")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--max-height", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out", help="write the stream to this file instead of inlining it")

    p = sub.add_parser("embed-solve", help="solve a finite embedding problem")
    p.add_argument("--problem", required=True, help="problem file path")

    p = sub.add_parser("orbit-verify", help="verify pairwise non-conjugate hyperplanes")
    p.add_argument("--module", required=True, help="module file path")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--sets", required=True, help="e.g. '1,2;1;' for {1,2}, {1}, {}")

    return parser


def _post(server: str | None, path: str, body: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=body)

    import asyncio

    from .service import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://rootfields.local", timeout=None
        ) as client:
            return await client.post(path, json=body)

    return asyncio.run(go())


def _config_payload(path: str | None) -> dict | None:
    if path is None:
        return None
    from .config import load_config_file, DEFAULT

    cfg = load_config_file(path)
    payload = {}
    for key in ("max_splitting_degree", "max_input_degree", "default_p"):
        val = getattr(cfg, key)
        if val != getattr(DEFAULT, key):
            payload[key] = val
    return payload or None


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}")


def _print_error(detail: dict):
    msg = detail.get("message", "error")
    kind = detail.get("kind", "Error")
    pos = detail.get("position")
    suffix = f" (position {pos})" if pos is not None else ""
    print(f"rootfields: {kind}: {msg}{suffix}", file=sys.stderr)


def _dispatch(args) -> tuple[str, dict]:
    cfg = _config_payload(args.config)

    def with_cfg(body: dict) -> dict:
        if cfg:
            body["config"] = cfg
        return body

    cmd = args.command
    if cmd in ("factor", "irreducible", "real-roots", "totally-real", "galois-group"):
        return f"/{cmd}", with_cfg({"poly": args.poly})
    if cmd == "decide-root":
        body = {"poly": args.poly, "field": args.field}
        if args.p is not None:
            body["p"] = args.p
        return "/decide-root", with_cfg(body)
    if cmd == "classify":
        return "/classify", with_cfg({"poly": args.poly, "p": args.p})
    if cmd == "axioms":
        body = {"max_deg": args.max_deg, "max_height": args.max_height, "p": args.p}
        return "/axioms", with_cfg(body)
    if cmd == "embed-solve":
        return "/embed-solve", {"problem": _read_file(args.problem)}
    if cmd == "orbit-verify":
        sets = [sorted(s) for s in parse_sets(args.sets)]
        return "/orbit-verify", {
            "module": _read_file(args.module),
            "blocks": args.blocks,
            "sets": sets,
        }
    raise AssertionError(f"unhandled command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("rootfields: error: a command is required", file=sys.stderr)
        return 64

    try:
        path, body = _dispatch(args)
    except ParseError as exc:
        _print_error({"kind": "ParseError", "message": str(exc), "position": exc.position})
        return 3

    try:
        response = _post(args.server, path, body)
    except httpx.HTTPError as exc:
        print(f"rootfields: transport error: {exc}", file=sys.stderr)
        return 70

    if response.status_code == 200:
        doc = response.json()
        if args.command == "axioms" and args.out:
            lines = doc["certificate"].pop("lines", [])
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                for line in lines:
                    fh.write(line + "\n")
            doc["certificate"]["path"] = args.out
        print(json.dumps(doc, indent=2))
        return 0

    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, dict):
        _print_error(detail)
        if detail.get("kind") == "DegreeCapExceeded":
            return 2
        return 3
    print(f"rootfields: service error (status {response.status_code})", file=sys.stderr)
    return 70


if __name__ == "__main__":
    sys.exit(main())
