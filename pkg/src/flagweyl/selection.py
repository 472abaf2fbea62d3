"""Gale order and the selections ``C <= D`` grouped by their monomial ``x^C``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from .diagrams import Column, Diagram, ExponentVector


def gale_leq(R: Iterable[int], S: Iterable[int]) -> bool:
    R, S = sorted(R), sorted(S)
    if len(R) != len(S):
        raise ValueError(f"Gale order compares sets of equal size, got {len(R)} and {len(S)}")
    return all(r <= s for r, s in zip(R, S))


@lru_cache(maxsize=None)
def _gale_below(S: Column) -> tuple[Column, ...]:
    out: list[Column] = []
    k = len(S)

    def rec(prefix: list[int], lo: int) -> None:
        t = len(prefix)
        if t == k:
            out.append(tuple(prefix))
            return
        for r in range(lo, S[t] + 1):
            prefix.append(r)
            rec(prefix, r + 1)
            prefix.pop()

    rec([], 1)
    return tuple(out)


def enumerate_gale_below(S: Iterable[int]) -> list[Column]:
    """All sets ``R <= S`` in Gale order (the bases of a Schubert matroid), lexicographically."""
    return list(_gale_below(tuple(sorted(S))))


@dataclass(frozen=True)
class Selection:
    columns: tuple[Column, ...]
    exponent: ExponentVector

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], n: int) -> "Selection":
        cols = tuple(tuple(sorted(c)) for c in columns)
        cols = cols + ((),) * (n - len(cols))
        return cls(cols, exponent_of(cols, n))

    def is_below(self, D: Diagram) -> bool:
        if len(self.columns) != D.n:
            return False
        return all(len(c) == len(d) and gale_leq(c, d) for c, d in zip(self.columns, D.columns))


def exponent_of(columns: Iterable[Column], n: int) -> ExponentVector:
    a = [0] * n
    for col in columns:
        for i in col:
            a[i - 1] += 1
    return tuple(a)


def check_below(C: Selection, D: Diagram) -> None:
    if not C.is_below(D):
        raise ValueError(f"selection {C.columns} is not below the diagram {D.columns} in Gale order")


def iter_selections(D: Diagram) -> Iterable[tuple[Column, ...]]:
    return product(*(_gale_below(col) for col in D.columns))


def group_selections(D: Diagram) -> dict[ExponentVector, list[Selection]]:
    """Bucket every ``C <= D`` by ``x^C``; keys and bucket contents in lexicographic order."""
    n = D.n
    buckets: dict[ExponentVector, list[Selection]] = {}
    for cols in iter_selections(D):
        a = exponent_of(cols, n)
        buckets.setdefault(a, []).append(Selection(cols, a))
    # the product already yields selections in lexicographic order of column contents
    return {a: buckets[a] for a in sorted(buckets)}


def selection_count(D: Diagram) -> int:
    total = 1
    for col in D.columns:
        total *= len(_gale_below(col))
    return total
