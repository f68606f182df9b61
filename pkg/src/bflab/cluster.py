"""Slope fibers of A x A, clusters of consecutive slopes and their sum-point counts.

Inputs are finite sets of strictly positive rationals. Representatives are the
smallest member of each fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .core import Point, PreconditionError, as_scalar, scalar_set
from .setops import SetOp, combine, combined_size


@dataclass(frozen=True)
class SlopeFiber:
    slope: Fraction
    members: tuple[Fraction, ...]
    representative: Fraction

    @property
    def base(self) -> tuple[Fraction, Fraction]:
        """The vector (a_l, l * a_l) spanning this slope."""
        return (self.representative, self.slope * self.representative)


@dataclass(frozen=True)
class Cluster:
    slopes: tuple[SlopeFiber, ...]
    full: bool

    @property
    def lo(self) -> Fraction:
        return self.slopes[0].slope

    @property
    def hi(self) -> Fraction:
        return self.slopes[-1].slope


def _positive_set(A: Iterable) -> tuple[Fraction, ...]:
    A = scalar_set(A)
    if not A:
        raise PreconditionError("cluster pipeline needs a nonempty set")
    if A[0] <= 0:
        raise PreconditionError(f"cluster pipeline needs strictly positive elements, got {A[0]}")
    return A


def _plain(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def slope_fibers(A: Iterable) -> list[SlopeFiber]:
    """One fiber per slope in A:A, sorted by slope; members are {x in A : slope*x in A}."""
    A = _positive_set(A)
    members: dict[Fraction, list[Fraction]] = {}
    for x in A:
        for y in A:
            members.setdefault(y / x, []).append(x)
    return [SlopeFiber(s, tuple(sorted(m)), min(m)) for s, m in sorted(members.items())]


def doubling_upper_bound(A: Iterable) -> Fraction:
    """|A:A|^2 / |A|^2, the trivial upper bound for the multiplicative doubling d(A)."""
    A = scalar_set(A)
    return Fraction(combined_size(A, A, SetOp.RATIO) ** 2, len(A) ** 2)


def _iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0."""
    lo, hi = 0, 1
    while hi**k <= x:
        hi *= 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid**k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def choose_M(A: Iterable, c_param=1) -> tuple[int, bool]:
    """floor(|A|^(1/6) / (sqrt(8C) dhat^(1/6))) clamped into [2, |A:A|].

    Computed exactly: the raw value is the largest m >= 0 with
    m^6 (8C)^3 dhat <= |A|. Returns (M, clamped).
    """
    A = _positive_set(A)
    c = as_scalar(c_param)
    if c <= 0:
        raise PreconditionError("c_param must be positive")
    ratio_size = combined_size(A, A, SetOp.RATIO)
    dhat = Fraction(ratio_size**2, len(A) ** 2)
    raw = _iroot(int(len(A) / ((8 * c) ** 3 * dhat)), 6)
    M = min(max(raw, 2), max(ratio_size, 2))
    return M, M != raw


def build_clusters(fibers: list[SlopeFiber], M: int) -> list[Cluster]:
    """Consecutive blocks of M slopes; a shorter trailing block is not full."""
    if M < 2:
        raise PreconditionError("cluster size M must be at least 2")
    blocks = [tuple(fibers[i:i + M]) for i in range(0, len(fibers), M)]
    return [Cluster(b, len(b) == M) for b in blocks]


def _sum_point_map(f1: SlopeFiber, f2: SlopeFiber, A) -> dict:
    """point -> (a, b) for a*(base of f1) + b*(base of f2), a, b in A."""
    x1, y1 = map(_plain, f1.base)
    x2, y2 = map(_plain, f2.base)
    A = [_plain(a) for a in A]
    return {(a * x1 + b * x2, a * y1 + b * y2): (a, b) for a in A for b in A}


def cluster_sum_points(f1: SlopeFiber, f2: SlopeFiber, A: Iterable) -> tuple[Point, ...]:
    """A*(a_l1, l1 a_l1) + A*(a_l2, l2 a_l2): |A|^2 points strictly between the two slopes."""
    if not f1.slope < f2.slope:
        raise PreconditionError("cluster_sum_points needs slope1 < slope2")
    A = _positive_set(A)
    return tuple(sorted(Point(Fraction(x), Fraction(y)) for x, y in _sum_point_map(f1, f2, A)))


def strictly_between(points: Iterable, lo: Fraction, hi: Fraction) -> bool:
    return all(lo * p[0] < p[1] < hi * p[0] for p in points)


_LABELINGS = ((0, 1, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1), (2, 3, 1, 0))


def pair_intersection_energy(f1: SlopeFiber, f2: SlopeFiber, f3: SlopeFiber, f4: SlopeFiber,
                             A: Iterable) -> tuple[int, list[tuple]]:
    """Size of [A v1 + A v2] & [A v3 + A v4] and the (a, b, c) each collision induces.

    After relabeling so that slope 4 differs from slopes 1-3, every common point
    a v1 + b v2 = c v3 + d v4 yields
    a a_1 (l1 - l4) + b a_2 (l2 - l4) + c a_3 (l4 - l3) = 0.
    The map point -> (a, b, c) is checked to be injective.
    """
    A = _positive_set(A)
    fibers = (f1, f2, f3, f4)
    s = [f.slope for f in fibers]
    if s[0] == s[1] or s[2] == s[3] or {s[0], s[1]} == {s[2], s[3]}:
        raise PreconditionError("need two distinct pairs of distinct slopes")
    for order in _LABELINGS:
        g1, g2, g3, g4 = (fibers[i] for i in order)
        if g4.slope not in (g1.slope, g2.slope, g3.slope):
            break
    l1, l2, l3, l4 = g1.slope, g2.slope, g3.slope, g4.slope
    k1 = g1.representative * (l1 - l4)
    k2 = g2.representative * (l2 - l4)
    k3 = g3.representative * (l4 - l3)
    if 0 in (k1, k2, k3):
        raise AssertionError("coefficients of the three-term equation must be nonzero")
    left = _sum_point_map(g1, g2, A)
    right = _sum_point_map(g3, g4, A)
    solutions = []
    for z in left.keys() & right.keys():
        a, b = left[z]
        c, _ = right[z]
        if a * k1 + b * k2 + c * k3 != 0:
            raise AssertionError(f"collision {z} does not solve the three-term equation")
        solutions.append((Fraction(a), Fraction(b), Fraction(c)))
    if len(set(solutions)) != len(solutions):
        raise AssertionError("collision -> solution map is not injective")
    solutions.sort()
    return len(solutions), solutions


def cluster_mu(U: Cluster, A: Iterable) -> dict:
    """Distinct sum points of a full cluster and the inclusion-exclusion lower bound.

    The subtracted term runs over unordered pairs of distinct slope pairs.
    """
    if not U.full:
        raise PreconditionError("cluster_mu needs a full cluster")
    A = _positive_set(A)
    n = len(A)
    M = len(U.slopes)
    pairs = list(combinations(U.slopes, 2))
    union = set()
    for f1, f2 in pairs:
        union.update(_sum_point_map(f1, f2, A))
    overlap = 0
    for (f1, f2), (f3, f4) in combinations(pairs, 2):
        overlap += pair_intersection_energy(f1, f2, f3, f4, A)[0]
    mu = len(union)
    target = Fraction(M * M * n * n, 8)
    return {
        "M": M,
        "slope_lo": U.lo,
        "slope_hi": U.hi,
        "mu": mu,
        "ie_lower": n * n * comb(M, 2) - overlap,
        "union_upper": n * n * comb(M, 2),
        "collisions": overlap,
        "mu_target": target,
        "mu_ratio": Fraction(mu) / target,
    }


def run_pipeline(A: Iterable, M: int | None = None, c_param=1) -> dict:
    """Fibers, M, clusters and per-cluster counts, with the structural checks."""
    A = _positive_set(A)
    n = len(A)
    fibers = slope_fibers(A)
    mass = sum(len(f.members) for f in fibers)
    if M is None:
        M, clamped = choose_M(A, c_param)
    else:
        clamped = False
    clusters = build_clusters(fibers, M)
    full = [U for U in clusters if U.full]
    between_ok = True
    sizes_ok = True
    reports = []
    for U in full:
        for f1, f2 in combinations(U.slopes, 2):
            pts = _sum_point_map(f1, f2, A)
            sizes_ok &= len(pts) == n * n
            between_ok &= strictly_between(pts, f1.slope, f2.slope)
        reports.append(cluster_mu(U, A))
    aa = combine(A, A, SetOp.PRODUCT)
    aa_plus = combined_size(aa, aa, SetOp.SUM)
    mu_total = sum(r["mu"] for r in reports)
    return {
        "size": n,
        "ratio_set_size": len(fibers),
        "mass": mass,
        "mass_identity": mass == n * n,
        "dhat": doubling_upper_bound(A),
        "M": M,
        "M_clamped": clamped,
        "clusters": len(clusters),
        "full_clusters": len(full),
        "full_cluster_floor_ok": len(full) == len(fibers) // M,
        "sum_point_sizes_ok": sizes_ok,
        "between_slopes_ok": between_ok,
        "collisions": sum(r["collisions"] for r in reports),
        "mu_total": mu_total,
        "card_AA_plus_AA": aa_plus,
        "mu_total_le_square": mu_total <= aa_plus**2,
        "clusters_detail": reports,
    }

