"""Acceptance criteria 1-10, all exact.

Each test records a ``criterion N [PASS|FAIL]`` line; pytest prints them in the
terminal summary.  ``python tests/test_acceptance.py`` runs them directly.
"""

import random
import sys
import time
from itertools import combinations, permutations, product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from flagweyl.bijection import bucket_pairs, prepare, verify_bijection
from flagweyl.character import (
    coefficient, dual_character, is_zero_one_direct, resize, shift, support,
)
from flagweyl.diagrams import Diagram, parse_diagram, rothe_diagram, skyline_diagram, strip_standard_intervals
from flagweyl.fillings import FlaggedFilling, det_via_fillings, inversions, is_flagged_filling, weight
from flagweyl.oracles import key_poly, schubert_poly
from flagweyl.patterns import find_multiplicitous_witness, is_multiplicitous
from flagweyl.selection import Selection, gale_leq, group_selections, iter_selections
from flagweyl.structure import is_normalized, normalize
from flagweyl.sweep import all_diagrams, diagram_from_mask, sweep_theorem
from flagweyl.ypoly import column_det, diagram_det

from conftest import ACCEPTANCE_LINES
from reference import character_brute, diagram_det_brute, poly_rank


def record(number, title, ok, detail=""):
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _sweep(number, n):
    r = sweep_theorem(n)
    ok = r.examined == 2 ** (n * n) and not r.disagreements and r.agreements == r.examined
    record(number, f"theorem sweep n={n}", ok,
           f"{r.examined} diagrams, {r.distinct} classes, {len(r.disagreements)} disagreements, {r.seconds:.1f}s")


def test_criterion_01_sweep_n3():
    _sweep(1, 3)


def test_criterion_02_sweep_n4():
    _sweep(2, 4)


def test_criterion_03_fillings_expand_determinants():
    checked = bad = 0
    for D in all_diagrams(3):
        for cols in iter_selections(D):
            C = Selection.from_columns(cols, 3)
            checked += 1
            bad += det_via_fillings(D, C) != diagram_det(C, D)
    rng = random.Random(2024)
    for _ in range(1000):
        D = diagram_from_mask(4, rng.getrandbits(16))
        cols = rng.choice(list(iter_selections(D)))
        C = Selection.from_columns(cols, 4)
        checked += 1
        bad += det_via_fillings(D, C) != diagram_det(C, D)
    record(3, "signed filling expansion equals the determinant", bad == 0, f"{checked} pairs, {bad} mismatches")


def test_criterion_04_schubert():
    bad = []
    total = 0
    for n in (4, 5):
        for w in permutations(range(1, n + 1)):
            total += 1
            if dual_character(rothe_diagram(w)) != schubert_poly(w):
                bad.append(w)
    record(4, "Rothe characters are Schubert polynomials on S_4 and S_5", not bad and total == 144,
           f"{total} permutations, {len(bad)} mismatches")


def test_criterion_05_key():
    bad = []
    comps = list(product(range(4), repeat=3))
    for alpha in comps:
        if resize(dual_character(skyline_diagram(alpha)), 3) != key_poly(alpha):
            bad.append(alpha)
    record(5, "skyline characters are key polynomials", not bad and len(comps) == 64,
           f"{len(comps)} compositions, {len(bad)} mismatches")


def test_criterion_06_bijection():
    start = time.perf_counter()
    seen = set()
    pairs = failures = 0
    first = ""
    for D in all_diagrams(4):
        key = prepare(D).diagram
        if key in seen:
            continue
        seen.add(key)
        if is_multiplicitous(D):
            continue
        for C, C2 in bucket_pairs(D):
            pairs += 1
            report = verify_bijection(D, C, C2)
            if not report.ok:
                failures += 1
                first = first or f"{D.columns} {C.columns} -> {C2.columns}: {report.reason}"
    record(6, "filling bijection on every multiplicity-free [4]x[4] bucket", failures == 0 and pairs > 0,
           f"{len(seen)} prepared diagrams, {pairs} ordered pairs, {failures} failures, "
           f"{time.perf_counter() - start:.0f}s" + (f"; first: {first}" if first else ""))


def test_criterion_07_fixtures():
    D = parse_diagram('{"n":4,"columns":[[2,3,4],[],[1,2],[3]]}', "json")
    parsed = D.columns == ((2, 3, 4), (), (1, 2), (3,))
    # the filling drawn for the inversion example lives on this diagram
    E = Diagram(4, [(2, 3, 4), (2, 3, 4), (1,), (3, 4)])
    F = FlaggedFilling.from_entries(E, [(2, 3, 1), (2, 1, 3), (1,), (3, 2)])
    expected = ((1, 1, 1), (1, 3, 1), (1, 4, 1), (2, 2, 2), (2, 4, 1), (3, 3, 2), (3, 4, 1))
    ok = parsed and is_flagged_filling(F, E) and inversions(F) == 4 and weight(F) == expected
    record(7, "four-column diagram and inversion filling fixtures", ok, f"inv={inversions(F)}, weight={weight(F)}")


def test_criterion_08_witness():
    D = Diagram(3, [(2, 3), (1, 3)])
    bucket = group_selections(D)[(2, 1, 1)]
    brute = poly_rank([diagram_det_brute(C.columns, D.columns) for C in bucket])
    w = find_multiplicitous_witness(D)
    ok = (coefficient(D, (2, 1, 1)) == 2 == brute and w is not None
          and (w.pattern, w.rows) == ("D", (1, 2, 3)) and not is_zero_one_direct(D))
    record(8, "multiplicity witness fixture", ok, f"coefficient {coefficient(D, (2, 1, 1))}, witness {w}")


def test_criterion_09_support():
    bad = 0
    for D in all_diagrams(3):
        exps = set()
        for cols in product(*(combinations(range(1, 4), len(c)) for c in D.columns)):
            if all(gale_leq(c, d) for c, d in zip(cols, D.columns)):
                exps.add(tuple(sum(i in c for c in cols) for i in range(1, 4)))
        ref = {a for a, v in character_brute(D.columns, 3).items() if v}
        bad += not (set(dual_character(D)) == support(D) == exps == ref)
    record(9, "support is the set of selection monomials", bad == 0, f"512 diagrams, {bad} mismatches")


def test_criterion_10_invariance():
    problems = []
    for D in all_diagrams(3):
        ch = dual_character(D)
        for p in permutations(range(3)):
            if dual_character(Diagram(3, [D.columns[j] for j in p])) != ch:
                problems.append(("permutation", D.columns, p))
        N, _ = normalize(D)
        if normalize(N)[0] != N or not is_normalized(N):
            problems.append(("normalize", D.columns))
        S, factor = strip_standard_intervals(D)
        if shift(dual_character(S), factor) != ch:
            problems.append(("strip", D.columns))
    rng = random.Random(99)
    for _ in range(200):
        D = diagram_from_mask(4, rng.getrandbits(16))
        p = rng.sample(range(4), 4)
        ch = dual_character(D)
        if dual_character(Diagram(4, [D.columns[j] for j in p])) != ch:
            problems.append(("permutation", D.columns, p))
        S, factor = strip_standard_intervals(D)
        if shift(dual_character(S), factor) != ch:
            problems.append(("strip", D.columns))
    for D in all_diagrams(4):
        N, _ = normalize(D)
        if normalize(N)[0] != N:
            problems.append(("normalize", D.columns))
    minors = 0
    for k in range(5):
        for R in combinations(range(1, 5), k):
            for S in combinations(range(1, 5), k):
                minors += 1
                if bool(column_det(R, S)) != gale_leq(R, S):
                    problems.append(("minor", R, S))
    record(10, "invariance suite", not problems, f"{minors} minors, {len(problems)} problems")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
