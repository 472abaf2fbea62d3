"""Flagged fillings and the signed expansion of ``det(Y_D^C)``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .diagrams import Column, Diagram
from .selection import Selection, check_below
from .ypoly import YPoly, unpack, var_key

FillingColumn = tuple[tuple[int, int], ...]  # (row, entry) pairs sorted by row


@dataclass(frozen=True)
class FlaggedFilling:
    columns: tuple[FillingColumn, ...]

    @classmethod
    def from_entries(cls, D: Diagram, entries: Sequence[Sequence[int]]) -> "FlaggedFilling":
        """Entries of each column listed top to bottom."""
        cols = []
        for rows, ents in zip(D.columns, list(entries) + [()] * (D.n - len(entries))):
            if len(rows) != len(ents):
                raise ValueError(f"column with rows {rows} got {len(ents)} entries")
            cols.append(tuple(zip(rows, ents)))
        return cls(tuple(cols))

    @classmethod
    def from_maps(cls, maps: Iterable[dict[int, int]]) -> "FlaggedFilling":
        return cls(tuple(tuple(sorted(m.items())) for m in maps))

    def entry_sets(self) -> tuple[Column, ...]:
        return tuple(tuple(sorted(e for _, e in col)) for col in self.columns)

    def rows(self) -> tuple[Column, ...]:
        return tuple(tuple(r for r, _ in col) for col in self.columns)

    def words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(e for _, e in col) for col in self.columns)

    def maps(self) -> list[dict[int, int]]:
        return [dict(col) for col in self.columns]


def is_flagged_filling(F: FlaggedFilling, D: Diagram) -> bool:
    if len(F.columns) != D.n or F.rows() != D.columns:
        return False
    for col in F.columns:
        entries = [e for _, e in col]
        if len(set(entries)) != len(entries):
            return False
        if any(not 1 <= e <= r for r, e in col):
            return False
    return True


@lru_cache(maxsize=None)
def _column_fillings(C: Column, rows: Column) -> tuple[tuple[int, ...], ...]:
    # rows top to bottom; each takes an unused entry not exceeding the row, smallest first
    out: list[tuple[int, ...]] = []
    k = len(rows)
    used = [False] * k
    word: list[int] = []

    def rec(t: int) -> None:
        if t == k:
            out.append(tuple(word))
            return
        for a in range(k):
            if used[a] or C[a] > rows[t]:
                continue
            used[a] = True
            word.append(C[a])
            rec(t + 1)
            word.pop()
            used[a] = False

    rec(0)
    return tuple(out)


def enumerate_fillings(D: Diagram, C: Selection) -> list[FlaggedFilling]:
    """``F_D(C)``: fillings of ``D`` whose column ``j`` uses exactly the entries ``C_j``."""
    check_below(C, D)
    per_column = [_column_fillings(c, d) for c, d in zip(C.columns, D.columns)]
    return [
        FlaggedFilling(tuple(tuple(zip(d, w)) for d, w in zip(D.columns, words)))
        for words in product(*per_column)
    ]


def filling_count(D: Diagram, C: Selection) -> int:
    total = 1
    for c, d in zip(C.columns, D.columns):
        total *= len(_column_fillings(c, d))
    return total


def word_inversions(word: Sequence[int]) -> int:
    return sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])


def inversions(F: FlaggedFilling) -> int:
    return sum(word_inversions(w) for w in F.words())


def sign(F: FlaggedFilling) -> int:
    return -1 if inversions(F) % 2 else 1


def weight_key(F: FlaggedFilling) -> int:
    return sum(var_key(e, r) for col in F.columns for r, e in col)


def weight(F: FlaggedFilling) -> tuple[tuple[int, int, int], ...]:
    """``y^F``: one factor ``y_{entry,row}`` per box, in canonical ``(r, c, exp)`` form."""
    return unpack(weight_key(F))


def det_via_fillings(D: Diagram, C: Selection) -> YPoly:
    terms: dict[int, int] = {}
    for F in enumerate_fillings(D, C):
        k = weight_key(F)
        terms[k] = terms.get(k, 0) + sign(F)
    return YPoly(terms)
