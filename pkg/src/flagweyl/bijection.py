"""A sign- and weight-preserving bijection ``F_D(C) -> F_D(C')`` for multiplicity-free ``D``.

The map is built by repeatedly transforming the first region of a working
diagram (see :func:`phi`) until every column has been settled.  Columns are
only ever changed by

* exchanging the entries in the common rows of two columns of one region, or
* permuting entries of a single row among several columns,

so weights are preserved outright and column inversions change in pairs.

The working diagram is the input after removing ``[m]``-columns, padding the
grid until every column misses two rows, and normalizing.  Columns pushed into
a later region by a merge get their upper rows filled with ``1, 2, ...`` as
bookkeeping; their real entries there are parked in ``frozen`` and restored
when the column is settled.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .diagrams import Column, Diagram, is_standard_interval, pad_grid, strip_standard_intervals
from .fillings import FlaggedFilling, enumerate_fillings, det_via_fillings, inversions, is_flagged_filling, weight_key
from .selection import Selection, check_below, group_selections
from .structure import ColumnClass, Kind, classify_rows, normalize, sort_key

EMPTY = math.inf  # label of a column whose selection contains all of [n_j]

Label = float  # a row index, or EMPTY


class BijectionError(RuntimeError):
    """A structural property the construction relies on failed to hold."""


# ---------------------------------------------------------------------------
# preprocessing


@dataclass(frozen=True)
class Prepared:
    original: Diagram
    diagram: Diagram  # stripped, padded and normalized
    source: tuple[int | None, ...]  # prepared column k (1-based) -> original column, None for filler

    def selection(self, C: Selection) -> tuple[Column, ...]:
        return tuple(C.columns[j - 1] if j else () for j in self.source)

    def filling(self, F: FlaggedFilling) -> list[dict[int, int]]:
        return [dict(F.columns[j - 1]) if j else {} for j in self.source]


def prepare(D: Diagram) -> Prepared:
    kept = [j for j, col in enumerate(D.columns, start=1) if not is_standard_interval(col)]
    stripped, _ = strip_standard_intervals(D)
    padded = pad_grid(stripped)
    source: list[int | None] = kept + [None] * (padded.n - len(kept))
    normal, perm = normalize(padded)
    order: list[int | None] = [None] * padded.n
    for old, new in enumerate(perm):
        order[new - 1] = source[old]
    return Prepared(D, normal, tuple(order))


# ---------------------------------------------------------------------------
# working state


@dataclass
class WorkColumn:
    index: int  # 1-based column of the prepared diagram
    real_rows: Column
    rows: Column
    fill: dict[int, int]
    target: frozenset[int]
    real_target: frozenset[int]
    frozen: dict[int, int] = field(default_factory=dict)
    prefix: int = 0  # rows 1..prefix are bookkeeping rows holding 1..prefix

    def entries(self) -> frozenset[int]:
        return frozenset(self.fill.values())

    def copy(self) -> "WorkColumn":
        return WorkColumn(self.index, self.real_rows, self.rows, dict(self.fill), self.target,
                          self.real_target, dict(self.frozen), self.prefix)

    def real_fill(self) -> dict[int, int]:
        return {r: self.frozen[r] if r in self.frozen else self.fill[r] for r in self.real_rows}


@dataclass
class IterationState:
    n: int
    active: list[WorkColumn]
    finalized: dict[int, dict[int, int]] = field(default_factory=dict)
    rounds: int = 0

    def copy(self) -> "IterationState":
        return IterationState(self.n, [c.copy() for c in self.active], dict(self.finalized), self.rounds)

    @property
    def done(self) -> bool:
        return not self.active

    def measure(self) -> int:
        return len(self.active) + len(_group_regions(self.active, self.n))


def initial_state(P: Diagram, fill: Sequence[dict[int, int]], target: Sequence[Column]) -> IterationState:
    active = []
    for k, (rows, f, t) in enumerate(zip(P.columns, fill, target), start=1):
        if rows:
            active.append(WorkColumn(k, rows, rows, dict(f), frozenset(t), frozenset(t)))
    state = IterationState(P.n, active)
    _check_state(state)
    return state


def _group_regions(cols: Iterable[WorkColumn], n: int) -> list[tuple[int, list[WorkColumn]]]:
    ordered = sorted(cols, key=lambda c: (sort_key(c.rows, n), c.index))
    groups: list[tuple[int, list[WorkColumn]]] = []
    for col in ordered:
        fc = sort_key(col.rows, n)[0]
        if groups and groups[-1][0] == fc:
            groups[-1][1].append(col)
        else:
            groups.append((fc, [col]))
    return groups


def _check_state(state: IterationState) -> None:
    n = state.n
    src, tgt = Counter(), Counter()
    for col in state.active:
        if set(col.fill) != set(col.rows):
            raise BijectionError(f"column {col.index}: filled rows {sorted(col.fill)} differ from {col.rows}")
        if len(col.entries()) != len(col.rows) or any(not 1 <= e <= r for r, e in col.fill.items()):
            raise BijectionError(f"column {col.index} is not a flagged filling: {col.fill}")
        if any(col.fill[i] != i for i in range(1, col.prefix + 1)):
            raise BijectionError(f"column {col.index}: entries above the merge row moved")
        if n - len(col.rows) < 2:
            raise BijectionError(f"column {col.index} has fewer than two crossings")
        src.update(col.entries())
        tgt.update(col.target)
    if src != tgt:
        raise BijectionError("source and target selections of the unsettled columns have different monomials")


# ---------------------------------------------------------------------------
# labels and the interchange step


def _label(entries: Iterable[int], n_j: int) -> Label:
    missing = set(range(1, n_j + 1)) - set(entries)
    if len(missing) > 1:
        raise BijectionError(f"[{n_j}] misses {sorted(missing)} from the selection; expected at most one row")
    return missing.pop() if missing else EMPTY


def labels(D: Diagram, C: Selection, region: Sequence[int]) -> list[Label]:
    """Per column of ``region`` (1-based indices into normalized ``D``): the row of
    ``[n_j]`` missing from ``C_j``, or :data:`EMPTY`."""
    return [_label(C.columns[j - 1], classify_rows(D.columns[j - 1], D.n).n_j) for j in region]


def _region_type(classes: Sequence[ColumnClass], cols: Sequence[WorkColumn]) -> str:
    kinds = [c.kind for c in classes]
    top = max(c.signature for c in classes)
    if any(c.kind is not Kind.TYPE_I and c.signature < top for c in classes):
        raise BijectionError("a column below the maximal signature of its region is not of type I")
    twos = [col for col, k in zip(cols, kinds) if k is Kind.TYPE_II]
    threes = [col for col, k in zip(cols, kinds) if k is Kind.TYPE_III]
    if twos and threes:
        raise BijectionError("type II and type III columns share a region")
    if len(threes) > 1:
        raise BijectionError("several type III columns in one region")
    if len({col.rows for col in twos}) > 1:
        raise BijectionError("type II columns of one region differ")
    special = twos or threes
    if special and any(k is Kind.TYPE_I for k in kinds[len(kinds) - len(special):]):
        raise BijectionError("type II/III columns are not at the right end of their region")
    return "R3" if threes else "R2" if twos else "R1"


def _swap(left: WorkColumn, right: WorkColumn) -> None:
    # left precedes right in its region, so its rows are a subset of right's
    if not set(left.rows) <= set(right.rows):
        raise BijectionError(f"columns {left.index} and {right.index} are not nested")
    for r in left.rows:
        left.fill[r], right.fill[r] = right.fill[r], left.fill[r]


def _interchange(cols: list[WorkColumn], classes: Sequence[ColumnClass]) -> None:
    n_j = [c.n_j for c in classes]
    target = [_label(col.target, nj) for col, nj in zip(cols, n_j)]
    remaining = list(range(len(cols)))
    while remaining:
        current = {t: _label(cols[t].entries(), n_j[t]) for t in remaining}
        c = max(current.values())
        A = [t for t in remaining if current[t] == c]
        B = [t for t in remaining if target[t] == c]
        S = set(A) & set(B)
        moving_out = [t for t in A if t not in S]
        moving_in = [t for t in B if t not in S]
        if len(moving_out) != len(moving_in):
            raise BijectionError(f"label {c} occurs {len(A)} times in the source but {len(B)} in the target")
        for s, s2 in zip(moving_out, moving_in):
            lo, hi = min(s, s2), max(s, s2)
            _swap(cols[lo], cols[hi])
        for t in B:
            if _label(cols[t].entries(), n_j[t]) != c:
                raise BijectionError(f"column {cols[t].index} did not receive label {c}")
        remaining = [t for t in remaining if t not in set(B)]


# ---------------------------------------------------------------------------
# one round


def _settle(state: IterationState, col: WorkColumn) -> None:
    if col.entries() != col.target:
        raise BijectionError(f"column {col.index} settled with {sorted(col.entries())}, expected {sorted(col.target)}")
    real = col.real_fill()
    if frozenset(real.values()) != col.real_target:
        raise BijectionError(f"column {col.index} settled with real entries {sorted(real.values())}")
    state.finalized[col.index] = real


def _merge(col: WorkColumn, q: int, b: int) -> None:
    if q not in col.rows or (q - 1) in col.rows or any(r > q for r in col.rows):
        raise BijectionError(f"column {col.index} cannot be merged below row {q - 2}")
    for r in col.real_rows:
        if r < q - 1 and r not in col.frozen:
            col.frozen[r] = col.fill[r]
    head = tuple(range(1, q - 1))
    col.rows = head + (q,)
    col.fill = {i: i for i in head} | {q: col.fill[q]}
    col.target = frozenset(head) | {b}
    col.prefix = q - 2


def phi(state: IterationState) -> IterationState:
    """Transform the first region of the working diagram and settle what is finished."""
    st = state.copy()
    n = st.n
    before = st.measure()
    groups = _group_regions(st.active, n)
    first = groups[0][1]
    classes = [classify_rows(col.rows, n) for col in first]
    kind = _region_type(classes, first)
    _interchange(first, classes)

    if kind == "R1":
        for col in first:
            _settle(st, col)
        settled = {col.index for col in first}
    else:
        last = classes[-1]
        if kind == "R2":
            p, q = last.n_j, last.lower_boxes[0]
        else:
            p, q = last.lower_boxes[-2], last.lower_boxes[-1]
        firsts = [fc for fc, _ in groups]
        k = sum(1 for fc in firsts if fc <= q - 1)
        case2 = firsts[k - 1] == q - 1
        scope = groups[: k - 1] if case2 else groups[:k]
        if case2:
            head = set(range(1, q - 1)) | {q}
            for col in groups[k - 1][1]:
                if not head <= set(col.rows):
                    raise BijectionError(f"column {col.index} of the merge region misses rows of {sorted(head)}")

        places: list[tuple[WorkColumn, int, int]] = []
        for r, (i_r, members) in enumerate(scope):
            low = p + 1 if r == 0 else i_r
            for col in members:
                if r > 0 and set(col.rows) != set(range(1, i_r)) | {q}:
                    raise BijectionError(f"column {col.index} is not [{i_r - 1}] plus row {q}")
                big = [e for e in col.entries() if e >= low]
                tbig = [e for e in col.target if e >= low]
                if len(big) != len(tbig) or len(big) > 1:
                    raise BijectionError(f"column {col.index}: entries >= {low} do not pair up")
                if {e for e in col.entries() if e < low} != {e for e in col.target if e < low}:
                    raise BijectionError(f"column {col.index} disagrees with its target above row {low}")
                if big:
                    if col.fill.get(q) != big[0]:
                        raise BijectionError(f"column {col.index}: entry {big[0]} is not in row {q}")
                    places.append((col, big[0], tbig[0]))

        a = [x for _, x, _ in places]
        b = [y for _, _, y in places]
        if not case2:
            if Counter(a) != Counter(b):
                raise BijectionError(f"row {q} entries {a} cannot be rearranged into {b}")
            for col, _, y in places:
                col.fill[q] = y
            settled = set()
            for _, members in scope:
                for col in members:
                    _settle(st, col)
                    settled.add(col.index)
        else:
            edge = {q - 1, q}
            if Counter(x for x in a if x not in edge) != Counter(y for y in b if y not in edge):
                raise BijectionError(f"row {q} entries {a} and {b} differ away from {sorted(edge)}")
            spare = iter([x for x in a if x in edge])
            shuffled = [y if y not in edge else next(spare) for y in b]
            target_big = {}
            for (col, _, y), x in zip(places, shuffled):
                col.fill[q] = x
                target_big[col.index] = y
            settled = set()
            for _, members in scope:
                for col in members:
                    if col.entries() & edge:
                        if not (col.entries() ^ col.target) <= edge:
                            raise BijectionError(f"column {col.index} differs from its target outside {sorted(edge)}")
                        _merge(col, q, target_big[col.index])
                    else:
                        _settle(st, col)
                        settled.add(col.index)

    st.active = [col for col in st.active if col.index not in settled]
    st.rounds += 1
    _check_state(st)
    if st.measure() >= before:
        raise BijectionError("a round made no progress")
    return st


# ---------------------------------------------------------------------------
# the full map


def omega_prepared(P: Diagram, fill: Sequence[dict[int, int]], source: Sequence[Column],
                   target: Sequence[Column]) -> list[dict[int, int]]:
    """Run :func:`phi` to completion on a prepared diagram; returns the new columns as row maps."""
    if tuple(source) == tuple(target):
        return [dict(f) for f in fill]
    state = initial_state(P, fill, target)
    for col in state.active:
        if col.entries() != frozenset(source[col.index - 1]):
            raise BijectionError(f"filling column {col.index} does not use the entries {source[col.index - 1]}")
    while not state.done:
        state = phi(state)
    return [state.finalized.get(k, {}) for k in range(1, P.n + 1)]


def omega(F: FlaggedFilling, D: Diagram, C: Selection, C2: Selection, prepared: Prepared | None = None) -> FlaggedFilling:
    """Image of ``F`` in ``F_D(C2)``; ``D`` must be multiplicity-free and ``x^C = x^{C2}``."""
    check_below(C, D)
    check_below(C2, D)
    if C.exponent != C2.exponent:
        raise ValueError("source and target selections have different monomials")
    if F.entry_sets() != C.columns or not is_flagged_filling(F, D):
        raise ValueError("filling is not a member of F_D(C)")
    if C.columns == C2.columns:
        return F
    P = prepared or prepare(D)
    image = omega_prepared(P.diagram, P.filling(F), P.selection(C), P.selection(C2))
    maps = F.maps()
    for k, j in enumerate(P.source):
        if j:
            maps[j - 1] = image[k]
    return FlaggedFilling.from_maps(maps)


# ---------------------------------------------------------------------------
# verification


@dataclass
class BijectionReport:
    source_size: int
    target_size: int
    bijective: bool
    sign_preserved: bool
    weight_preserved: bool
    inverse_ok: bool
    det_equal: bool
    counterexample: FlaggedFilling | None = None
    reason: str = ""

    @property
    def bucket_size(self) -> int:
        return self.source_size

    @property
    def ok(self) -> bool:
        return self.bijective and self.sign_preserved and self.weight_preserved and self.inverse_ok and self.det_equal

    def to_json(self) -> dict:
        return {
            "source_size": self.source_size,
            "target_size": self.target_size,
            "bijective": self.bijective,
            "sign_preserved": self.sign_preserved,
            "weight_preserved": self.weight_preserved,
            "inverse_ok": self.inverse_ok,
            "det_equal": self.det_equal,
            "counterexample": [list(map(list, col)) for col in self.counterexample.columns]
            if self.counterexample else None,
            "reason": self.reason,
        }


OmegaFn = Callable[[FlaggedFilling, Diagram, Selection, Selection], FlaggedFilling]


def verify_bijection(D: Diagram, C: Selection, C2: Selection, omega_fn: OmegaFn | None = None) -> BijectionReport:
    """Apply the map to all of ``F_D(C)`` and check it against ``F_D(C2)``."""
    P = prepare(D)
    if omega_fn is None:
        def omega_fn(F, D, C, C2):
            return omega(F, D, C, C2, prepared=P)
    source = enumerate_fillings(D, C)
    target = set(enumerate_fillings(D, C2))
    report = BijectionReport(len(source), len(target), True, True, True, True, True)

    def fail(flag: str, F: FlaggedFilling, why: str) -> None:
        setattr(report, flag, False)
        if report.counterexample is None:
            report.counterexample, report.reason = F, why

    seen: dict[FlaggedFilling, FlaggedFilling] = {}
    for F in source:
        try:
            G = omega_fn(F, D, C, C2)
        except (BijectionError, ValueError) as exc:
            fail("bijective", F, f"map failed: {exc}")
            continue
        if G not in target:
            fail("bijective", F, "image is not in F_D(C')")
            continue
        if G in seen:
            fail("bijective", F, "two fillings share an image")
        seen[G] = F
        if inversions(G) % 2 != inversions(F) % 2:
            fail("sign_preserved", F, "sign changed")
        if weight_key(G) != weight_key(F):
            fail("weight_preserved", F, "weight changed")
        try:
            back = omega_fn(G, D, C2, C)
        except (BijectionError, ValueError) as exc:
            fail("inverse_ok", F, f"reverse map failed: {exc}")
            continue
        if back != F:
            fail("inverse_ok", F, "reverse map does not return the filling")
    if len(seen) != len(target):
        report.bijective = False
        if not report.reason:
            report.reason = "image does not cover F_D(C')"
    report.det_equal = det_via_fillings(D, C) == det_via_fillings(D, C2)
    return report


def bucket_pairs(D: Diagram) -> Iterable[tuple[Selection, Selection]]:
    """Ordered pairs of distinct selections sharing a monomial."""
    for bucket in group_selections(D).values():
        if len(bucket) > 1:
            for C in bucket:
                for C2 in bucket:
                    if C is not C2:
                        yield C, C2
