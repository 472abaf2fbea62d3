import json
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from flagweyl.diagrams import (
    Diagram, DiagramError, ParseError, pad_grid, parse_diagram, rothe_diagram, satisfies_two_crossings,
    serialize_diagram, skyline_diagram, strip_standard_intervals,
)

from conftest import make
from reference import rothe_by_shadows


def diagrams(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.frozensets(st.integers(1, n)), min_size=n, max_size=n).map(lambda cols: Diagram(n, cols))
    )


def test_grid_parse():
    D = parse_diagram("##\n.#")
    assert D.n == 2 and D.columns == ((1,), (1, 2))


def test_json_parse_four_columns():
    D = parse_diagram('{"n":4,"columns":[[2,3,4],[],[1,2],[3]]}', "json")
    assert D.columns == ((2, 3, 4), (), (1, 2), (3,))


def test_grid_ignores_blank_lines_and_spaces():
    assert parse_diagram("\n# .\n. #\n\n") == make(2, (1,), (2,))


@pytest.mark.parametrize("text, line, col", [
    ("##\n.", 2, None),
    ("#x\n..", 1, 2),
    ("##\n.#\n..", 1, None),
])
def test_grid_errors_locate_the_problem(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_diagram(text)
    assert info.value.line == line
    assert info.value.column == col


@pytest.mark.parametrize("text", [
    '{"n":2,"columns":[[3]]}',
    '{"n":2,"columns":[[1,1]]}',
    '{"n":2,"columns":[[1],[1],[1]]}',
    '{"columns":[]}',
    '{"n":2,"columns":[[1]',
    '{"n":0,"columns":[]}',
])
def test_json_errors(text):
    with pytest.raises(ParseError):
        parse_diagram(text, "json")


def test_unknown_format():
    with pytest.raises(DiagramError):
        parse_diagram("#", "yaml")


def test_constructor_rejects_bad_rows():
    with pytest.raises(DiagramError):
        Diagram(2, [(3,)])
    with pytest.raises(DiagramError):
        Diagram(2, [(1, 1)])


@given(diagrams())
def test_round_trip(D):
    assert parse_diagram(serialize_diagram(D)) == D
    assert parse_diagram(serialize_diagram(D, "json"), "json") == D
    assert json.loads(serialize_diagram(D, "json"))["n"] == D.n


@pytest.mark.parametrize("w, cols", [
    ((1, 2, 3), ((), (), ())),
    ((2, 1, 4, 3), ((1,), (), (3,), ())),
    ((3, 2, 1), ((1, 2), (1,), ())),
])
def test_rothe_examples(w, cols):
    assert rothe_diagram(w).columns == cols


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_rothe_matches_shadow_construction(n):
    for w in permutations(range(1, n + 1)):
        D = rothe_diagram(w)
        assert D.columns == rothe_by_shadows(w)
        # the number of boxes is the length of w
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
        assert D.box_count() == inv


def test_rothe_rejects_non_permutation():
    with pytest.raises(DiagramError):
        rothe_diagram((1, 1, 2))


@pytest.mark.parametrize("alpha, n, cols", [
    ((0, 0), 2, ((), ())),
    ((0, 2, 1), 3, ((2, 3), (2,), ())),
    ((1, 1), 2, ((1, 2), ())),
    ((3,), 3, ((1,), (1,), (1,))),
])
def test_skyline_examples(alpha, n, cols):
    D = skyline_diagram(alpha)
    assert D.n == n and D.columns == cols


def test_skyline_rejects_negative_part():
    with pytest.raises(DiagramError):
        skyline_diagram((1, -1))


@pytest.mark.parametrize("cols, n, stripped, factor", [
    (((1, 2), (2,)), 2, ((2,), ()), (1, 1)),
    (((2, 3), (1, 3)), 3, ((2, 3), (1, 3), ()), (0, 0, 0)),
    (((1,), (1,)), 2, ((), ()), (2, 0)),
])
def test_strip_examples(cols, n, stripped, factor):
    D2, f = strip_standard_intervals(Diagram(n, cols))
    assert D2.columns == stripped
    assert f == factor


def test_pad_examples():
    assert pad_grid(make(2, (2,))) == make(3, (2,))
    assert pad_grid(make(3, (1, 2, 3))) == make(5, (1, 2, 3))
    D = make(4, (2,), (1, 3))
    assert pad_grid(D) is D


@given(diagrams())
def test_pad_gives_two_crossings(D):
    P = pad_grid(D)
    assert satisfies_two_crossings(P)
    assert P.boxes() == D.boxes()
    assert P.n in (D.n, max(len(c) for c in D.columns) + 2)
