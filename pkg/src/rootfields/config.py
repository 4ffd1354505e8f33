"""Runtime caps and defaults.

A ``Config`` travels explicitly into the operations that can refuse work.
The config file format accepted by the CLI and the service is plain
``key=value`` text, one entry per line, ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ParseError

#: keys a config file may set
_KEYS = ("max_splitting_degree", "max_input_degree", "default_p")


@dataclass(frozen=True)
class Config:
    # cap on the degree of any splitting field (Galois closure) we will build
    max_splitting_degree: int = 2000
    # cap on the degree of polynomials accepted for factorization
    max_input_degree: int = 24
    # prime used for E(p) when a query does not name one
    default_p: int = 3

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


DEFAULT = Config()


def load_config_file(path: str) -> Config:
    """Parse a key=value config file into a Config."""
    values: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"config line {lineno}: expected key=value, got {raw.strip()!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _KEYS:
                raise ParseError(f"config line {lineno}: unknown key {key!r}")
            try:
                values[key] = int(val.strip())
            except ValueError:
                raise ParseError(f"config line {lineno}: value for {key} must be an integer")
    return Config().with_overrides(**values)
