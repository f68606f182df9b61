from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bflab.core import (
    CROSS,
    DOT,
    BilinearForm,
    CostGuardError,
    Direction,
    PreconditionError,
    area,
    check_cost,
    direction_of,
    eval_form,
    format_scalar,
    integer_form,
    integerize,
    integerize_points,
    parse_scalar,
    point,
    point_set,
    scalar_set,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)
points = st.tuples(rationals, rationals).map(lambda t: point(*t))


def test_eval_form_examples():
    assert eval_form(DOT, point(1, 2), point(3, 4)) == 11
    assert eval_form(CROSS, point(1, 0), point(0, 1)) == 1


@given(points)
def test_skew_vanishes_on_diagonal(q):
    assert eval_form(CROSS, q, q) == 0


@given(points, points)
def test_cross_is_area(p, q):
    assert eval_form(CROSS, p, q) == area(p, q) == -eval_form(CROSS, q, p)


@pytest.mark.parametrize("p, expected", [((2, 4), (1, 2)), ((-1, -2), (1, 2)), ((0, 5), (0, 1)),
                                         ((0, -3), (0, 1)), ((F(1, 2), F(-1, 3)), (3, -2))])
def test_direction_examples(p, expected):
    assert direction_of(point(*p)) == Direction(*expected)


def test_zero_direction_is_degenerate():
    with pytest.raises(PreconditionError, match="degenerate direction"):
        direction_of(point(0, 0))


@given(points, st.fractions(max_denominator=20).filter(lambda x: x != 0))
def test_direction_scale_invariant(p, lam):
    if p == (0, 0):
        return
    assert direction_of(p) == direction_of(point(lam * p.x, lam * p.y))


@pytest.mark.parametrize("text, value", [("3", F(3)), ("-7/2", F(-7, 2)), ("+4/6", F(2, 3))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1.5", "1/0", "abc", "", "1/-2", "1e3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(PreconditionError):
        parse_scalar(text)


@given(rationals)
def test_scalar_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_floats_rejected():
    with pytest.raises(TypeError):
        scalar_set([0.5])
    with pytest.raises(TypeError):
        scalar_set([True])


def test_sets_dedupe_and_sort():
    assert scalar_set([3, 1, F(2, 2), 2]) == (1, 2, 3)
    assert point_set([(1, 1), (0, 1), (1, 1)]) == (point(0, 1), point(1, 1))


def test_form_validation():
    with pytest.raises(PreconditionError):
        BilinearForm(1, 2, 2, 4, "symmetric")  # singular
    with pytest.raises(PreconditionError):
        BilinearForm(1, 2, 3, 4, "symmetric")
    with pytest.raises(PreconditionError):
        BilinearForm(1, 1, -1, 0, "skew")
    assert BilinearForm(0, 2, -2, 0, "skew").kind == "skew-symmetric"


@given(st.lists(rationals, min_size=1, max_size=10))
def test_integerize_scales_exactly(values):
    ints, L = integerize(values)
    assert [F(i, L) for i in ints] == [F(v) for v in values]


def test_integerize_points_and_form():
    xs, ys, L = integerize_points([point(F(1, 2), 1), point(F(1, 3), 0)])
    assert L == 6 and xs == [3, 2] and ys == [6, 0]
    coeffs, L = integer_form(BilinearForm(F(1, 2), 0, 0, 1, "symmetric"))
    assert L == 2 and coeffs == (1, 0, 0, 2)


def test_cost_guard():
    check_cost("x", 10, 10)
    with pytest.raises(CostGuardError) as info:
        check_cost("x", 11, 10)
    assert info.value.cost == 11
    check_cost("x", 11, 10, force=True)
