"""Plain-text problem/solution files and synthetic instances with known optima.

Problem file layout (UTF-8, whitespace-separated tokens, '#' lines skipped):
line 1: "n m"; lines 2..m+1: the m rows of A, n decimals each; then one
line of m decimals for b; then one line of n decimals for c. A solution
file holds n decimals. Writers emit 17 significant digits, so a
write/read round trip reproduces every float64 exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .core import DimensionError, Problem

__all__ = [
    "ParseError",
    "GeneratorSpec",
    "read_problem",
    "write_problem",
    "load_problem",
    "save_problem",
    "read_solution",
    "write_solution",
    "load_solution",
    "gen_hypercube",
    "gen_capped_cube",
    "generate",
]


class ParseError(ValueError):
    """Malformed token in an instance file; carries line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _tokens(text: str) -> Iterator[tuple[str, int, int]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for match in re.finditer(r"\S+", line):
            yield match.group(), lineno, match.start() + 1


def _parse_int(tok: tuple[str, int, int]) -> int:
    text, line, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", line, col) from None


def _parse_float(tok: tuple[str, int, int]) -> float:
    text, line, col = tok
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"expected a decimal number, got {text!r}", line, col) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {text!r}", line, col)
    return value


def read_problem(text: str) -> Problem:
    """Parse a problem file. The parser is dimension-agnostic: any n, m >= 1
    parse fine; downstream stages impose their own dimension limits."""
    toks = list(_tokens(text))
    if len(toks) < 2:
        raise DimensionError("missing 'n m' header")
    n = _parse_int(toks[0])
    m = _parse_int(toks[1])
    if n < 1 or m < 1:
        raise DimensionError(f"header requires n >= 1 and m >= 1, got n={n}, m={m}")
    expected = 2 + m * n + m + n
    if len(toks) != expected:
        raise DimensionError(
            f"header n={n}, m={m} requires {expected - 2} numbers, got {len(toks) - 2}"
        )
    values = [_parse_float(t) for t in toks[2:]]
    A = np.array(values[: m * n]).reshape(m, n)
    b = np.array(values[m * n : m * n + m])
    c = np.array(values[m * n + m :])
    return Problem(A=A, b=b, c=c)


def _fmt(values) -> str:
    return " ".join("%.17g" % v for v in values)


def write_problem(problem: Problem) -> str:
    lines = [f"{problem.n} {problem.m}"]
    lines.extend(_fmt(row) for row in problem.A)
    lines.append(_fmt(problem.b))
    lines.append(_fmt(problem.c))
    return "\n".join(lines) + "\n"


def read_solution(text: str, n: int) -> np.ndarray:
    """Parse a candidate point: exactly n finite decimals."""
    toks = list(_tokens(text))
    if len(toks) != n:
        raise DimensionError(f"expected {n} coordinates, got {len(toks)}")
    return np.array([_parse_float(t) for t in toks])


def write_solution(point) -> str:
    return _fmt(np.asarray(point)) + "\n"


def load_problem(path) -> Problem:
    return read_problem(Path(path).read_text())


def save_problem(problem: Problem, path) -> None:
    Path(path).write_text(write_problem(problem))


def load_solution(path, n: int) -> np.ndarray:
    return read_solution(Path(path).read_text(), n)


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a synthetic instance with an analytically known optimum.

    seed is reserved for future randomized kinds; the current kinds are
    deterministic.
    """

    kind: str
    n: int
    side: float
    cap: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("hypercube", "capped-cube"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if not self.side > 0:
            raise ValueError(f"side must be > 0, got {self.side}")
        if self.kind == "capped-cube":
            if self.cap is None or not 0 < self.cap < self.n * self.side:
                raise ValueError(
                    f"capped-cube needs 0 < cap < n*side, got cap={self.cap}"
                )


def gen_hypercube(n: int, side: float) -> tuple[Problem, np.ndarray]:
    """Box 0 <= x_i <= side with objective sum(x); the unique maximizer is
    the far vertex (side, ..., side). Upper-bound rows come first."""
    GeneratorSpec(kind="hypercube", n=n, side=side)
    eye = np.eye(n)
    A = np.vstack([eye, -eye])
    b = np.concatenate([np.full(n, float(side)), np.zeros(n)])
    c = np.ones(n)
    return Problem(A=A, b=b, c=c), np.full(n, float(side))


def gen_capped_cube(n: int, side: float, cap: float) -> tuple[Problem, np.ndarray]:
    """Hypercube plus the diagonal constraint sum(x) <= cap. The optimum
    value cap is attained on a whole facet; the returned point is its
    barycenter (cap/n, ..., cap/n)."""
    GeneratorSpec(kind="capped-cube", n=n, side=side, cap=cap)
    eye = np.eye(n)
    A = np.vstack([eye, -eye, np.ones((1, n))])
    b = np.concatenate([np.full(n, float(side)), np.zeros(n), [float(cap)]])
    c = np.ones(n)
    return Problem(A=A, b=b, c=c), np.full(n, cap / n)


def generate(spec: GeneratorSpec) -> tuple[Problem, np.ndarray]:
    if spec.kind == "hypercube":
        return gen_hypercube(spec.n, spec.side)
    return gen_capped_cube(spec.n, spec.side, spec.cap)
