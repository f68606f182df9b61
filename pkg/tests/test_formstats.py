from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bflab.core import CROSS, DOT, BilinearForm, CostGuardError, PreconditionError, point, point_set
from bflab.formstats import (
    area_identity_holds,
    area_identity_sides,
    distance_energy,
    form_energy,
    form_moments,
    pinned_form_energy,
    split_by_line_richness,
    value_set,
    value_table,
)

coord = st.integers(-6, 6)
fcoord = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_pts = st.lists(st.tuples(coord, coord).filter(lambda p: p != (0, 0)), min_size=1, max_size=7, unique=True)
frac_pts = st.lists(st.tuples(fcoord, fcoord).filter(lambda p: p != (0, 0)), min_size=1, max_size=5, unique=True)
FORMS = [DOT, CROSS, BilinearForm(2, 1, 1, -3, "symmetric"), BilinearForm(0, F(3, 2), F(-3, 2), 0, "skew")]
P3 = point_set([(1, 0), (0, 1), (1, 1)])


def test_value_set_examples():
    assert value_set(point_set([(1, 0), (0, 1)]), CROSS) == (-1, 1)
    assert value_set(point_set([(1, 1), (2, 2), (3, 3)]), CROSS) == ()
    assert value_set(point_set([(1, 0), (0, 1)]), DOT) == (1,)


def test_energy_examples():
    assert form_energy(P3, CROSS) == 18
    assert form_energy(point_set([(1, 1), (2, 2), (5, 5)]), CROSS) == 0
    assert pinned_form_energy(point_set([(1, 0), (0, 1)]), CROSS) == 2
    assert pinned_form_energy(P3, CROSS) == 10
    assert distance_energy(point_set([(0, 0), (1, 0), (0, 1)])) == 20
    assert distance_energy(point_set([(3, 4)])) == 0


def test_origin_rejected():
    with pytest.raises(PreconditionError):
        form_energy(point_set([(0, 0), (1, 0)]), DOT)


@pytest.mark.parametrize("form", FORMS, ids=["dot", "cross", "sym", "skew"])
@given(P=nonzero_pts)
def test_energies_match_oracle(form, P, backend):
    P = point_set(P)
    m = form.matrix
    assert set(value_set(P, form)) == oracles.form_values(P, m)
    assert form_energy(P, form) == oracles.form_energy(P, m)
    assert pinned_form_energy(P, form) == oracles.pinned_energy(P, m)


@given(P=frac_pts, Q=frac_pts)
def test_fraction_points_match_oracle(P, Q, backend):
    P, Q = point_set(P), point_set(Q)
    assert form_energy(P, CROSS) == oracles.form_energy(P, CROSS.matrix)
    assert pinned_form_energy(P, DOT, Q) == oracles.pinned_energy(P, DOT.matrix, Q)


@given(P=st.lists(st.tuples(coord, coord), min_size=1, max_size=6, unique=True))
def test_distance_energy_oracle(P):
    P = point_set(P)
    assert distance_energy(P) == oracles.distance_energy(P)


@given(P=nonzero_pts)
def test_moment_consistency(P):
    P = point_set(P)
    table = value_table(P, CROSS)
    mom = form_moments(P, CROSS)
    assert mom["distinct_values"] == len(table)
    assert mom["nonzero_pairs"] == sum(table.values())
    assert mom["energy"] == sum(v * v for v in table.values())
    # Cauchy-Schwarz: E * |T| >= (nonzero pairs)^2
    assert mom["energy"] * len(table) >= mom["nonzero_pairs"] ** 2


def test_big_coordinates_generic_path():
    P = point_set([(2**40, 1), (3, 2**41), (5, 7)])
    assert form_energy(P, CROSS) == oracles.form_energy(P, CROSS.matrix)
    assert pinned_form_energy(P, DOT) == oracles.pinned_energy(P, DOT.matrix)


def test_cost_guard():
    P = point_set([(i, 1) for i in range(1, 20)])
    with pytest.raises(CostGuardError):
        form_energy(P, DOT, max_cost=100)
    assert form_energy(P, DOT, max_cost=100, force=True) > 0


def test_split_examples():
    P = point_set([(1, 0), (2, 0), (0, 1)])
    s = split_by_line_richness(P, 1)
    assert s.poor == (point(0, 1),)
    assert s.rich == (point(1, 0), point(2, 0))
    assert split_by_line_richness(P, 3).rich == ()
    empty = split_by_line_richness([], 2)
    assert empty.poor == () and empty.rich == ()


@given(P=nonzero_pts, w0=st.integers(1, 8))
def test_split_partitions(P, w0):
    P = point_set(P)
    s = split_by_line_richness(P, w0)
    assert sorted(s.poor + s.rich) == sorted(P)
    assert not s.directions("poor") & s.directions("rich")


def test_area_identity_example():
    a, b, c, d = (point(*p) for p in [(1, 0), (0, 1), (1, 1), (1, 2)])
    left, right = area_identity_sides(a, b, c, d)
    assert left == right == 2
    assert area_identity_holds(a, b, c, a)


@given(st.lists(st.tuples(fcoord, fcoord).map(lambda t: point(*t)), min_size=4, max_size=4))
def test_area_identity_property(q):
    assert area_identity_holds(*q)
