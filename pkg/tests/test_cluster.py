from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bflab.cluster import (
    build_clusters,
    choose_M,
    cluster_mu,
    cluster_sum_points,
    pair_intersection_energy,
    run_pipeline,
    slope_fibers,
    strictly_between,
)
from bflab.core import PreconditionError, point
from bflab.generators import make_progression
from bflab.setops import combine

positive_sets = st.lists(st.integers(1, 40), min_size=1, max_size=8, unique=True)


def test_fibers_example():
    fibers = slope_fibers([1, 2])
    assert [(f.slope, len(f.members)) for f in fibers] == [(F(1, 2), 1), (1, 2), (2, 1)]
    assert [f.slope for f in slope_fibers([1])] == [1]


def test_rejects_nonpositive():
    with pytest.raises(PreconditionError):
        slope_fibers([0, 1])
    with pytest.raises(PreconditionError):
        slope_fibers([-1, 2])


@given(positive_sets)
def test_fiber_mass_identity(A):
    fibers = slope_fibers(A)
    assert sum(len(f.members) for f in fibers) == len(A) ** 2
    assert len(fibers) == len(combine(A, A, "ratio"))
    for f in fibers:
        assert f.representative in f.members
        assert all(f.slope * x in set(map(F, A)) for x in f.members)


def test_choose_m_geometric_clamps():
    A = make_progression("geometric", 1, 2, 64)
    assert choose_M(A) == (2, True)


def test_choose_m_small_c_clamps_down():
    A = list(range(1, 9))
    M, clamped = choose_M(A, F(1, 10**9))
    assert clamped and M == len(combine(A, A, "ratio"))


def test_choose_m_interval_256_golden():
    # raw value is 0 at C = 1, so the lower clamp fires
    assert choose_M(range(1, 257)) == (2, True)


def test_build_clusters():
    fibers = slope_fibers([1, 2, 3])  # 7 slopes
    clusters = build_clusters(fibers, 3)
    assert [len(c.slopes) for c in clusters] == [3, 3, 1]
    assert [c.full for c in clusters] == [True, True, False]
    assert len(build_clusters(fibers, 7)) == 1 and build_clusters(fibers, 7)[0].full
    with pytest.raises(PreconditionError):
        build_clusters(fibers, 1)


def test_sum_points_example():
    f = {x.slope: x for x in slope_fibers([1, 2])}
    pts = cluster_sum_points(f[F(1, 2)], f[F(1)], [1, 2])
    assert pts == tuple(point(*p) for p in [(3, 2), (4, 3), (5, 3), (6, 4)])
    assert strictly_between(pts, F(1, 2), F(1))
    with pytest.raises(PreconditionError):
        cluster_sum_points(f[F(1)], f[F(1, 2)], [1, 2])


@given(positive_sets.filter(lambda A: len(A) >= 2))
def test_sum_points_size_between_and_membership(A):
    fibers = slope_fibers(A)
    aa = set(combine(A, A, "prod"))
    aa_plus = {u + v for u in aa for v in aa}
    for f1, f2 in combinations(fibers[:5], 2):
        pts = cluster_sum_points(f1, f2, A)
        assert len(pts) == len(A) ** 2
        assert strictly_between(pts, f1.slope, f2.slope)
        assert all(p.x in aa_plus and p.y in aa_plus for p in pts)


def test_intersection_energy_matches_materialized_sets():
    A = [1, 2, 3, 4]
    fibers = slope_fibers(A)[:4]
    for a, b, c, d in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (0, 1, 0, 2), (0, 1, 1, 2)]:
        f = [fibers[i] for i in (a, b, c, d)]
        count, sols = pair_intersection_energy(*f, A)
        left = set(cluster_sum_points(f[0], f[1], A))
        right = set(cluster_sum_points(f[2], f[3], A))
        assert count == len(left & right) == len(sols)


def test_intersection_disjoint_intervals():
    A = [1, 2, 3]
    fibers = slope_fibers(A)
    assert pair_intersection_energy(fibers[0], fibers[1], fibers[3], fibers[4], A)[0] == 0


def test_intersection_rejects_same_pair():
    f = slope_fibers([1, 2])
    with pytest.raises(PreconditionError):
        pair_intersection_energy(f[0], f[1], f[1], f[0], [1, 2])


def test_cluster_mu_example():
    A = [1, 2]
    f = slope_fibers(A)
    U = build_clusters(f[:2], 2)[0]
    rep = cluster_mu(U, A)
    assert rep["mu"] == 4 and rep["ie_lower"] == 4 and rep["collisions"] == 0


@given(positive_sets.filter(lambda A: len(A) >= 2), st.integers(2, 4))
def test_cluster_mu_bounds(A, M):
    clusters = [U for U in build_clusters(slope_fibers(A), M) if U.full]
    for U in clusters[:2]:
        rep = cluster_mu(U, A)
        assert rep["ie_lower"] <= rep["mu"] <= rep["union_upper"]


def test_partial_cluster_rejected():
    clusters = build_clusters(slope_fibers([1, 2, 3]), 3)
    with pytest.raises(PreconditionError):
        cluster_mu(clusters[-1], [1, 2, 3])


def test_pipeline_small():
    rep = run_pipeline(range(1, 9), M=3)
    assert rep["mass_identity"] and rep["sum_point_sizes_ok"] and rep["between_slopes_ok"]
    assert rep["full_cluster_floor_ok"] and rep["mu_total_le_square"]
    assert rep["full_clusters"] >= rep["ratio_set_size"] / (2 * 3)
