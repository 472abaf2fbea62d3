"""Exhaustive or sampled comparison of the two zero-one tests on ``[n] x [n]``."""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Iterator

from .character import is_zero_one_direct
from .diagrams import Diagram, diagram_to_json
from .patterns import find_multiplicitous_witness
from .structure import normalize


@dataclass
class SweepReport:
    n: int
    examined: int = 0
    agreements: int = 0
    disagreements: list[dict] = field(default_factory=list)
    seconds: float = 0.0
    distinct: int = 0  # diagrams actually evaluated after normalization

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "examined": self.examined,
            "distinct": self.distinct,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "seconds": round(self.seconds, 3),
        }


def diagram_from_mask(n: int, mask: int) -> Diagram:
    """Bit ``(j-1)*n + (i-1)`` of ``mask`` is the box ``(i, j)``."""
    return Diagram(n, [tuple(i + 1 for i in range(n) if mask >> (j * n + i) & 1) for j in range(n)])


def all_diagrams(n: int) -> Iterator[Diagram]:
    for mask in range(1 << (n * n)):
        yield diagram_from_mask(n, mask)


def sample_diagrams(n: int, k: int, seed: int = 0) -> Iterator[Diagram]:
    rng = random.Random(seed)
    for _ in range(k):
        yield diagram_from_mask(n, rng.getrandbits(n * n))


def verdicts(D: Diagram) -> tuple[bool, bool]:
    """(dual character is zero-one, diagram avoids every configuration)."""
    return is_zero_one_direct(D), find_multiplicitous_witness(D) is None


def _verdict_columns(columns: tuple) -> tuple[bool, bool]:
    return verdicts(Diagram(len(columns), columns))


def sweep_theorem(n: int, sample: int | None = None, workers: int = 1, seed: int = 0,
                  diagrams: Iterable[Diagram] | None = None, progress: bool = False) -> SweepReport:
    """Both verdicts are invariant under column order, so each normalized class is evaluated once."""
    start = time.perf_counter()
    if diagrams is None:
        diagrams = all_diagrams(n) if sample is None else sample_diagrams(n, sample, seed)
    counts: dict[tuple, int] = {}
    members: dict[tuple, list[Diagram]] = {}
    for D in diagrams:
        key = normalize(D)[0].columns
        counts[key] = counts.get(key, 0) + 1
        members.setdefault(key, []).append(D)
    keys = sorted(counts)
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_verdict_columns, keys, chunksize=max(1, len(keys) // (8 * workers)))
    else:
        results = []
        for t, key in enumerate(keys):
            results.append(_verdict_columns(key))
            if progress and t % 500 == 0:
                print(f"sweep n={n}: {t}/{len(keys)} classes", file=sys.stderr)
    report = SweepReport(n, distinct=len(keys))
    for key, (direct, avoids) in zip(keys, results):
        report.examined += counts[key]
        if direct == avoids:
            report.agreements += counts[key]
        else:
            for D in members[key]:
                report.disagreements.append({"diagram": diagram_to_json(D), "zero_one": direct, "multiplicity_free": avoids})
    report.seconds = time.perf_counter() - start
    return report
