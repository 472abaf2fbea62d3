"""Normalization, regions and column types of a diagram.

A *crossing* of a column is a row where the box is absent.  Normalized diagrams
order columns by the lexicographic order of their crossing sets, each extended
by a final infinity; a *region* is a maximal run of columns whose first crossing
lies in the same row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .diagrams import Column, Diagram, DiagramError


class PreconditionError(DiagramError):
    pass


class Kind(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"


@dataclass(frozen=True)
class ColumnClass:
    kind: Kind
    signature: int
    n_j: int
    first_crossing: int
    second_crossing: int
    lower_boxes: Column = ()  # boxes below the second crossing


def crossings(D: Diagram, j: int) -> tuple[int, ...]:
    return complement(D.column(j), D.n)


def complement(col: Sequence[int], n: int) -> tuple[int, ...]:
    present = set(col)
    return tuple(i for i in range(1, n + 1) if i not in present)


def sort_key(col: Sequence[int], n: int) -> tuple[int, ...]:
    """Crossings followed by ``n + 1`` standing in for infinity."""
    return complement(col, n) + (n + 1,)


def normalize(D: Diagram) -> tuple[Diagram, tuple[int, ...]]:
    """Sort columns by :func:`sort_key` (stable).

    Returns the normalized diagram and ``perm`` with ``perm[j - 1]`` the new
    position of old column ``j`` (both 1-based).
    """
    order = sorted(range(D.n), key=lambda j: sort_key(D.columns[j], D.n))
    perm = [0] * D.n
    for new, old in enumerate(order, start=1):
        perm[old] = new
    return Diagram(D.n, [D.columns[j] for j in order]), tuple(perm)


def is_normalized(D: Diagram, ignore_empty: bool = False) -> bool:
    """Columns already in normal order; with ``ignore_empty`` only boxed columns are compared."""
    keys = [sort_key(col, D.n) for col in D.columns if col or not ignore_empty]
    return all(a <= b for a, b in zip(keys, keys[1:]))


def classify_rows(col: Sequence[int], n: int) -> ColumnClass:
    cross = complement(col, n)
    if len(cross) < 2:
        raise PreconditionError(
            f"column {tuple(col)} has {len(cross)} crossing(s) in a {n}x{n} grid; pad the grid first"
        )
    first, second = cross[0], cross[1]
    signature = sum(1 for i in col if first < i < second)
    lower = tuple(i for i in col if i > second)
    kind = Kind.TYPE_I if not lower else Kind.TYPE_II if len(lower) == 1 else Kind.TYPE_III
    return ColumnClass(kind, signature, second - 1, first, second, lower)


def classify_column(D: Diagram, j: int) -> ColumnClass:
    return classify_rows(D.column(j), D.n)


@dataclass
class Region:
    first_crossing: int
    columns: list[int]  # 1-based column indices, left to right
    classes: list[ColumnClass]


@dataclass
class RegionInfo:
    regions: list[Region] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)

    def __getitem__(self, k: int) -> Region:
        return self.regions[k]


def regions(D: Diagram) -> RegionInfo:
    """Group the non-empty columns of a normalized diagram by first crossing."""
    if not is_normalized(D, ignore_empty=True):
        raise PreconditionError("regions are defined for normalized diagrams only; call normalize() first")
    info = RegionInfo()
    for j, col in enumerate(D.columns, start=1):
        if not col:
            continue
        cls = classify_rows(col, D.n)
        if info.regions and info.regions[-1].first_crossing == cls.first_crossing:
            info.regions[-1].columns.append(j)
            info.regions[-1].classes.append(cls)
        else:
            info.regions.append(Region(cls.first_crossing, [j], [cls]))
    return info


# ---------------------------------------------------------------------------
# structural checks on multiplicity-free diagrams


@dataclass
class Violation:
    region: int  # 1-based region number
    rule: str
    columns: list[int]

    def to_json(self) -> dict:
        return {"region": self.region, "rule": self.rule, "columns": list(self.columns)}


@dataclass
class StructureReport:
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.violations)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.violations]


def check_region(region: Region, number: int = 1) -> list[Violation]:
    out = []
    cols, classes = region.columns, region.classes
    top = max(c.signature for c in classes)
    low = [j for j, c in zip(cols, classes) if c.signature < top and c.kind is not Kind.TYPE_I]
    if low:
        out.append(Violation(number, "non_max_signature_not_type_I", low))
    twos = [j for j, c in zip(cols, classes) if c.kind is Kind.TYPE_II]
    threes = [j for j, c in zip(cols, classes) if c.kind is Kind.TYPE_III]
    if twos and threes:
        out.append(Violation(number, "type_II_and_type_III_coexist", twos + threes))
    if len({(c.signature, c.second_crossing, c.lower_boxes) for c in classes if c.kind is Kind.TYPE_II}) > 1:
        out.append(Violation(number, "type_II_columns_differ", twos))
    if len(threes) > 1:
        out.append(Violation(number, "several_type_III_columns", threes))
    return out


def check_structure(D: Diagram) -> StructureReport:
    """Within-region shape constraints that every multiplicity-free diagram obeys.

    Requires a normalized diagram with two crossings per column and no column of
    the form ``[m]``.
    """
    _require_prepared(D)
    report = StructureReport()
    for number, region in enumerate(regions(D), start=1):
        report.violations.extend(check_region(region, number))
    return report


def check_cross_region(D: Diagram) -> StructureReport:
    """Constraints linking a column to the columns of later regions.

    For ``j1`` in an earlier region with boxes ``d_1 < ... < d_k`` and ``j2`` in a
    later region with first crossing ``i2`` and a box below ``i2``:
    ``i2 > d_{k-1}``; if ``i2 < d_k - 1`` then ``D_{j2} = [i2-1] + {d_k}``; if
    ``i2 = d_k - 1`` then ``[i2-1] + {d_k}`` is contained in ``D_{j2}``.
    """
    if not is_normalized(D, ignore_empty=True):
        raise PreconditionError("diagram must be normalized")
    report = StructureReport()
    info = regions(D)
    for a, reg1 in enumerate(info.regions):
        for reg2 in info.regions[a + 1:]:
            i2 = reg2.first_crossing
            for j1 in reg1.columns:
                d = D.column(j1)
                dk = d[-1]
                dk1 = d[-2] if len(d) >= 2 else 0
                for j2 in reg2.columns:
                    col2 = D.column(j2)
                    if col2 == tuple(range(1, i2)):
                        continue
                    if not i2 > dk1:
                        report.violations.append(Violation(a + 1, "first_crossing_above_second_lowest_box", [j1, j2]))
                        continue
                    head = set(range(1, i2)) | {dk}
                    if i2 < dk - 1 and set(col2) != head:
                        report.violations.append(Violation(a + 1, "later_column_not_prefix_plus_lowest_box", [j1, j2]))
                    elif i2 == dk - 1 and not head <= set(col2):
                        report.violations.append(Violation(a + 1, "later_column_misses_prefix_or_lowest_box", [j1, j2]))
    return report


def _require_prepared(D: Diagram) -> None:
    if not is_normalized(D, ignore_empty=True):
        raise PreconditionError("diagram must be normalized")
    for j, col in enumerate(D.columns, start=1):
        if D.n - len(col) < 2:
            raise PreconditionError(f"column {j} has fewer than two crossings")
        if col and col == tuple(range(1, len(col) + 1)):
            raise PreconditionError(f"column {j} is a standard interval")
