"""The twelve multiplicitous two-column configurations and a subdiagram matcher."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagrams import Diagram


class Cell(str, Enum):
    CROSS = "x"  # box absent
    BOX = "#"  # box present
    ANY = "*"


X, B, ANY = Cell.CROSS, Cell.BOX, Cell.ANY


@dataclass(frozen=True)
class Pattern:
    id: str
    swapped: bool
    rows: tuple[tuple[Cell, Cell], ...]

    @property
    def name(self) -> str:
        return self.id + ("'" if self.swapped else "")

    def swap(self) -> "Pattern":
        return Pattern(self.id, not self.swapped, tuple((b, a) for a, b in self.rows))


# Rows top to bottom; rows that are '*' in both columns are left out.
BASE_PATTERNS = (
    Pattern("A", False, ((X, X), (B, X), (ANY, B))),
    Pattern("B", False, ((X, B), (X, X), (B, B), (B, ANY))),
    Pattern("C", False, ((X, X), (X, X), (B, B), (B, ANY))),
    Pattern("D", False, ((X, B), (B, X), (B, B))),
    Pattern("E", False, ((X, B), (B, X), (B, X), (X, B))),
    Pattern("F", False, ((B, X), (X, B), (B, X), (X, B))),
)


def configuration_table() -> list[Pattern]:
    table = []
    for p in BASE_PATTERNS:
        table.extend([p, p.swap()])
    return table


@dataclass(frozen=True)
class Witness:
    pattern: str
    swapped: bool
    rows: tuple[int, ...]
    cols: tuple[int, int]

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "swapped": self.swapped, "rows": list(self.rows), "cols": list(self.cols)}


def _cell_ok(cell: Cell, present: bool) -> bool:
    return cell is ANY or (cell is B) == present


def _match_rows(pattern: Pattern, left: list[bool], right: list[bool]) -> tuple[int, ...] | None:
    # Greedy earliest matching gives the lexicographically smallest row tuple.
    rows = []
    i = 0
    n = len(left)
    for a, b in pattern.rows:
        while i < n and not (_cell_ok(a, left[i]) and _cell_ok(b, right[i])):
            i += 1
        if i == n:
            return None
        rows.append(i + 1)
        i += 1
    return tuple(rows)


def find_multiplicitous_witness(D: Diagram) -> Witness | None:
    """First occurrence ordered by pattern (A, A', B, ...), column pair, then row tuple."""
    n = D.n
    present = [[i in set(col) for i in range(1, n + 1)] for col in D.columns]
    nonempty = [j for j in range(n) if D.columns[j]]
    for pattern in configuration_table():
        for x, j1 in enumerate(nonempty):
            for j2 in nonempty[x + 1:]:
                rows = _match_rows(pattern, present[j1], present[j2])
                if rows is not None:
                    return Witness(pattern.id, pattern.swapped, rows, (j1 + 1, j2 + 1))
    return None


def is_multiplicitous(D: Diagram) -> bool:
    return find_multiplicitous_witness(D) is not None
