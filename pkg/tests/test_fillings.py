import pytest
from hypothesis import given, settings, strategies as st

from flagweyl.diagrams import Diagram
from flagweyl.fillings import (
    FlaggedFilling, det_via_fillings, enumerate_fillings, filling_count, inversions, is_flagged_filling, sign,
    weight, word_inversions,
)
from flagweyl.selection import Selection, iter_selections
from flagweyl.ypoly import YPoly, diagram_det

from conftest import make

y = YPoly.var


def sel(n, *cols):
    return Selection.from_columns(cols, n)


def test_enumerate_examples():
    D = make(3, (2, 3))
    fs = enumerate_fillings(D, sel(3, (1, 2)))
    assert [F.words()[0] for F in fs] == [(1, 2), (2, 1)]
    fs = enumerate_fillings(D, sel(3, (2, 3)))
    assert [F.columns[0] for F in fs] == [((2, 2), (3, 3))]


def test_enumerate_rejects_selection_not_below():
    with pytest.raises(ValueError):
        enumerate_fillings(make(3, (1, 2)), sel(3, (1, 3)))


def test_inversions():
    assert word_inversions((3, 2)) == 1
    assert word_inversions((1, 2, 5)) == 0
    D = make(3, (2, 3))
    F = FlaggedFilling.from_entries(D, [(2, 1)])
    assert inversions(F) == 1 and sign(F) == -1


def test_weight_single_box():
    D = make(2, (2,))
    assert weight(FlaggedFilling.from_entries(D, [(1,)])) == ((1, 2, 1),)
    assert weight(FlaggedFilling.from_entries(D, [(2,)])) == ((2, 2, 1),)


def test_membership():
    D = make(3, (2, 3))
    assert is_flagged_filling(FlaggedFilling.from_entries(D, [(2, 3)]), D)
    assert not is_flagged_filling(FlaggedFilling.from_entries(D, [(3, 2)]), D)
    assert not is_flagged_filling(FlaggedFilling.from_entries(D, [(1, 1)]), D)
    with pytest.raises(ValueError):
        FlaggedFilling.from_entries(D, [(1,)])


def test_det_examples():
    D = make(3, (2, 3))
    assert det_via_fillings(D, sel(3, (1, 2))) == y(1, 2) * y(2, 3) - y(1, 3) * y(2, 2)
    assert det_via_fillings(D, sel(3, (2, 3))) == y(2, 2) * y(3, 3)
    D = make(3, (2, 3), (1, 3))
    assert det_via_fillings(D, sel(3, (1, 3), (1, 2))) == y(1, 2) * y(3, 3) * y(1, 1) * y(2, 3)


def diagram_and_selection():
    def pick(cols):
        n = len(cols)
        D = Diagram(n, cols)
        return st.sampled_from(list(iter_selections(D))).map(lambda C: (D, Selection.from_columns(C, n)))
    return st.integers(1, 4).flatmap(
        lambda n: st.lists(st.frozensets(st.integers(1, n), max_size=3), min_size=n, max_size=n)
    ).flatmap(pick)


@settings(max_examples=150, deadline=None)
@given(diagram_and_selection())
def test_fillings_expand_the_determinant(pair):
    D, C = pair
    fs = enumerate_fillings(D, C)
    assert len(fs) == filling_count(D, C) == len(set(fs))
    assert all(is_flagged_filling(F, D) and F.entry_sets() == C.columns for F in fs)
    assert det_via_fillings(D, C) == diagram_det(C, D)
