"""Diagrams in the square grid ``[n] x [n]``.

A diagram is stored columnwise: ``columns[j - 1]`` is the sorted tuple of row
indices ``i`` such that the box ``(i, j)`` is present.  Rows and columns are
1-based throughout the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

Column = tuple[int, ...]
ExponentVector = tuple[int, ...]


class DiagramError(ValueError):
    pass


class ParseError(DiagramError):
    """Malformed diagram text; ``line``/``column`` locate the offending spot (1-based)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Diagram:
    n: int
    columns: tuple[Column, ...]

    def __init__(self, n: int, columns: Iterable[Iterable[int]] = ()):
        if not isinstance(n, int) or n < 1:
            raise DiagramError(f"grid size must be a positive integer, got {n!r}")
        cols = []
        for j, col in enumerate(columns, start=1):
            rows = list(col)
            if len(set(rows)) != len(rows):
                raise DiagramError(f"column {j} repeats a row index")
            for i in rows:
                if not isinstance(i, int) or not 1 <= i <= n:
                    raise DiagramError(f"row index {i!r} in column {j} outside [1, {n}]")
            cols.append(tuple(sorted(rows)))
        if len(cols) > n:
            raise DiagramError(f"{len(cols)} columns do not fit in a {n}x{n} grid")
        cols.extend(() for _ in range(n - len(cols)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "columns", tuple(cols))

    @classmethod
    def from_columns(cls, columns: Sequence[Iterable[int]], n: int | None = None) -> "Diagram":
        """Build a diagram, inferring the smallest grid that holds ``columns`` when ``n`` is omitted."""
        columns = [tuple(c) for c in columns]
        if n is None:
            n = max([len(columns), 1] + [max(c) for c in columns if c])
        return cls(n, columns)

    def column(self, j: int) -> Column:
        if not 1 <= j <= self.n:
            raise DiagramError(f"column index {j} outside [1, {self.n}]")
        return self.columns[j - 1]

    def boxes(self) -> list[tuple[int, int]]:
        return [(i, j) for j, col in enumerate(self.columns, start=1) for i in col]

    def box_count(self) -> int:
        return sum(len(col) for col in self.columns)

    def __contains__(self, box: tuple[int, int]) -> bool:
        i, j = box
        return 1 <= j <= self.n and i in self.columns[j - 1]

    def is_empty(self) -> bool:
        return not any(self.columns)

    def with_columns(self, columns: Sequence[Iterable[int]]) -> "Diagram":
        return Diagram(self.n, columns)

    def __str__(self) -> str:
        return serialize_diagram(self, "grid")


# ---------------------------------------------------------------------------
# text formats


def parse_diagram(text: str, format: str = "grid") -> Diagram:
    if format == "grid":
        return _parse_grid(text)
    if format == "json":
        return _parse_json(text)
    raise DiagramError(f"unknown diagram format {format!r}")


def _parse_grid(text: str) -> Diagram:
    lines = [(k, "".join(line.split())) for k, line in enumerate(text.splitlines(), start=1)]
    lines = [(k, line) for k, line in lines if line]
    if not lines:
        raise ParseError("empty grid")
    n = len(lines)
    columns: list[list[int]] = [[] for _ in range(n)]
    for i, (lineno, line) in enumerate(lines, start=1):
        if len(line) != n:
            raise ParseError(f"expected {n} cells, found {len(line)}", line=lineno)
        for j, ch in enumerate(line, start=1):
            if ch == "#":
                columns[j - 1].append(i)
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r}", line=lineno, column=j)
    return Diagram(n, columns)


def _parse_json(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict) or "n" not in data or "columns" not in data:
        raise ParseError('expected an object with keys "n" and "columns"')
    n, columns = data["n"], data["columns"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(columns, list) or len(columns) > n:
        raise ParseError(f'"columns" must be a list of at most {n} lists')
    for j, col in enumerate(columns, start=1):
        if not isinstance(col, list):
            raise ParseError(f"column {j} is not a list", column=j)
        for i in col:
            if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n:
                raise ParseError(f"row index {i!r} outside [1, {n}]", column=j)
        if len(set(col)) != len(col):
            raise ParseError("duplicate row index", column=j)
    return Diagram(n, columns)


def serialize_diagram(D: Diagram, format: str = "grid") -> str:
    if format == "grid":
        return "\n".join(
            "".join("#" if i in col else "." for col in D.columns) for i in range(1, D.n + 1)
        )
    if format == "json":
        return json.dumps(diagram_to_json(D))
    raise DiagramError(f"unknown diagram format {format!r}")


def diagram_to_json(D: Diagram) -> dict:
    return {"n": D.n, "columns": [list(col) for col in D.columns]}


# ---------------------------------------------------------------------------
# constructors


def check_permutation(w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise DiagramError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def rothe_diagram(w: Sequence[int]) -> Diagram:
    """Boxes ``(i, j)`` with ``w(i) > j`` and ``w^{-1}(j) > i``."""
    w = check_permutation(w)
    n = len(w)
    winv = [0] * (n + 1)
    for i, v in enumerate(w, start=1):
        winv[v] = i
    columns = [[i for i in range(1, n + 1) if w[i - 1] > j and winv[j] > i] for j in range(1, n + 1)]
    return Diagram(max(n, 1), columns)


def skyline_diagram(alpha: Sequence[int]) -> Diagram:
    """Left-justified rows: row ``i`` holds ``alpha[i-1]`` boxes.

    The grid is ``max(len(alpha), max(alpha))``; a short composition is
    zero-padded to that size.
    """
    alpha = tuple(alpha)
    if any(not isinstance(a, int) or a < 0 for a in alpha):
        raise DiagramError(f"composition parts must be non-negative integers: {alpha}")
    n = max([len(alpha), 1] + list(alpha))
    alpha = alpha + (0,) * (n - len(alpha))
    columns = [[i for i in range(1, n + 1) if alpha[i - 1] >= j] for j in range(1, n + 1)]
    return Diagram(n, columns)


# ---------------------------------------------------------------------------
# reductions


def is_standard_interval(col: Column) -> bool:
    return bool(col) and col == tuple(range(1, len(col) + 1))


def strip_standard_intervals(D: Diagram) -> tuple[Diagram, ExponentVector]:
    """Remove every column of the form ``[m]``.

    Each removed column contributes the factor ``x_1 ... x_m`` to the dual
    character.  Survivors keep their relative order and the freed slots become
    empty columns at the right end, so ``n`` is unchanged.
    """
    factor = [0] * D.n
    kept = []
    for col in D.columns:
        if is_standard_interval(col):
            for i in col:
                factor[i - 1] += 1
        else:
            kept.append(col)
    return Diagram(D.n, kept), tuple(factor)


def pad_grid(D: Diagram) -> Diagram:
    """Smallest enlargement of the grid in which every column misses at least two rows."""
    longest = max(len(col) for col in D.columns)
    m = max(D.n, longest + 2)
    if m == D.n:
        return D
    return Diagram(m, D.columns)


def satisfies_two_crossings(D: Diagram) -> bool:
    return all(D.n - len(col) >= 2 for col in D.columns)
