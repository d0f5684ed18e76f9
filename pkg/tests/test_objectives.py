from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlmopt import objectives
from nlmopt.errors import InputError
from nlmopt.objectives import LexTieBreak, Scaled, Shifted, minimize

profile2 = st.tuples(st.integers(-20, 20), st.integers(-20, 20))

FAMILIES = [
    objectives.linear([1, -2]),
    objectives.lq(1),
    objectives.lq(3, [1, Fraction(1, 2)]),
    objectives.lq("inf"),
    objectives.maximum(),
    objectives.shifted_square([1, -1]),
    objectives.table({(0, 0): 2, (1, 1): 1}),
]


@pytest.mark.parametrize("f", FAMILIES, ids=lambda f: f.name)
@given(x=profile2, y=profile2, z=profile2)
@settings(max_examples=80, deadline=None)
def test_total_preorder_consistent_with_value(f, x, y, z):
    assert f.leq(x, x)
    assert f.leq(x, y) or f.leq(y, x)
    if f.leq(x, y) and f.leq(y, z):
        assert f.leq(x, z)
    assert f.leq(x, y) == (f.value(x) <= f.value(y))


@given(x=profile2, y=profile2)
def test_lex_tiebreak_is_total_order(x, y):
    f = LexTieBreak(objectives.lq("inf"))
    if x != y:
        assert f.leq(x, y) != f.leq(y, x)
    assert f.equivalent(x, y) == (x == y)


def test_values():
    assert objectives.identity().value((4,)) == 4
    assert objectives.lq(2, [1, 2]).value((3, -1)) == 13
    assert objectives.lq("inf").value((3, -5)) == 5
    assert objectives.shifted_square([1]).value((4,)) == 9
    assert objectives.table({(0,): 5}).value((1,)) == 6  # unlisted ranks last


def test_identity_requires_d1():
    with pytest.raises(InputError):
        objectives.identity().value((1, 2))


def test_shift_and_scale_wrappers():
    f = objectives.identity()
    assert Shifted(f, (3,)).value((5,)) == 2
    assert Scaled(f, Fraction(1, 4)).value((2,)) == Fraction(1, 2)


def test_minimize_prefers_lex_smallest_and_counts():
    f = objectives.lq("inf")
    profiles = [(2, 1), (1, 2), (3, 0), (0, 3), (2, 2)]
    before = f.comparisons
    assert minimize(f, profiles) == (1, 2)
    assert f.comparisons - before == len(profiles) - 1


def test_from_spec_kinds():
    assert objectives.from_spec({"kind": "max"}).value((1, 7)) == 7
    with pytest.raises(InputError):
        objectives.from_spec({"kind": "nope"})
