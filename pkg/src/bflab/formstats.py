"""Statistics of a bilinear form over a planar point set.

All pair counts are over ordered pairs, quadruples and triples.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np

from . import _kernels
from .core import (
    INT64_SAFE,
    BilinearForm,
    Direction,
    Point,
    PreconditionError,
    check_cost,
    direction_of,
    eval_form,
    integer_form,
    integerize_points,
    is_origin,
    max_abs,
    point_set,
)

_PAIR_BLOCK = 1 << 22


def _punctured(P: Iterable) -> tuple[Point, ...]:
    P = point_set(P)
    if any(is_origin(p) for p in P):
        raise PreconditionError("point set must not contain the origin")
    return P


def _int_pair_setup(P, Q, form):
    """int64 covectors of P (under the form) and coordinates of Q, plus the value scale.

    Returns None when the products could overflow int64. Values of the integer
    problem equal the rational values times ``scale``.
    """
    px, py, lp = integerize_points(P)
    qx, qy, lq = integerize_points(Q)
    (m11, m12, m21, m22), lm = integer_form(form)
    ux = [x * m11 + y * m21 for x, y in zip(px, py)]
    uy = [x * m12 + y * m22 for x, y in zip(px, py)]
    if 2 * max(max_abs(ux), max_abs(uy), 1) * max(max_abs(qx), max_abs(qy), 1) >= INT64_SAFE:
        return None
    arr = lambda v: np.array(v, dtype=np.int64)  # noqa: E731
    return arr(ux), arr(uy), arr(qx), arr(qy), lp * lq * lm


def _int_value_counts(ux, uy, qx, qy):
    """Sorted distinct integer values over all pairs with their multiplicities."""
    vals = np.empty(0, dtype=np.int64)
    counts = np.empty(0, dtype=np.int64)
    step = max(1, _PAIR_BLOCK // max(1, len(qx)))
    for s in range(0, len(ux), step):
        block = ux[s:s + step, None] * qx[None, :] + uy[s:s + step, None] * qy[None, :]
        v, c = np.unique(block, return_counts=True)
        if vals.size == 0:
            vals, counts = v, c
            continue
        merged = np.concatenate([vals, v])
        weights = np.concatenate([counts, c])
        vals, inverse = np.unique(merged, return_inverse=True)
        counts = np.bincount(inverse, weights=weights).astype(np.int64)
    return vals, counts


def value_table(P: Iterable, form: BilinearForm, Q: Iterable | None = None, *,
                max_cost: int | None = None, force: bool = False) -> Counter:
    """Counter t -> #{(q, q') in P x Q : form(q, q') = t}, nonzero t only."""
    P = _punctured(P)
    Q = P if Q is None else _punctured(Q)
    check_cost("value_table", len(P) * len(Q), max_cost, force)
    if not P or not Q:
        return Counter()
    setup = _int_pair_setup(P, Q, form)
    if setup is None:
        table = Counter(eval_form(form, q, r) for q in P for r in Q)
        table.pop(Fraction(0), None)
        return table
    ux, uy, qx, qy, scale = setup
    vals, counts = _int_value_counts(ux, uy, qx, qy)
    return Counter({Fraction(int(v), scale): int(c) for v, c in zip(vals, counts) if v != 0})


def value_set(P: Iterable, form: BilinearForm, **guard) -> tuple[Fraction, ...]:
    """T(P): the nonzero values of the form over ordered pairs of P, ascending."""
    return tuple(sorted(value_table(P, form, **guard)))


def _nonzero_moments(P, form, max_cost, force) -> tuple[int, int, int, int]:
    """(number of distinct nonzero values, nonzero pair count, sum of m(t)^2, max m(t))."""
    P = _punctured(P)
    check_cost("form_energy", len(P) ** 2, max_cost, force)
    if not P:
        return 0, 0, 0, 0
    setup = _int_pair_setup(P, P, form)
    if setup is None:
        table = value_table(P, form, force=True)
        counts = list(table.values())
    else:
        vals, c = _int_value_counts(*setup[:4])
        counts = c[vals != 0].tolist()
    return len(counts), sum(counts), sum(c * c for c in counts), max(counts, default=0)


def form_energy(P: Iterable, form: BilinearForm, *, max_cost: int | None = None, force: bool = False) -> int:
    """#{(q, q', r, r') in P^4 : form(q, q') = form(r, r') != 0}."""
    return _nonzero_moments(P, form, max_cost, force)[2]


def form_moments(P: Iterable, form: BilinearForm, *, max_cost: int | None = None,
                 force: bool = False) -> dict:
    distinct, pairs, energy, top = _nonzero_moments(P, form, max_cost, force)
    return {"distinct_values": distinct, "nonzero_pairs": pairs, "energy": energy, "max_multiplicity": top}


def pinned_form_energy(P: Iterable, form: BilinearForm, partners: Iterable | None = None, *,
                       max_cost: int | None = None, force: bool = False) -> int:
    """#{(q, q', r') : form(q, q') = form(q, r') != 0}, q in P and q', r' in ``partners``.

    ``partners`` defaults to P. The diagonal q' = r' is counted.
    """
    P = _punctured(P)
    Q = P if partners is None else _punctured(partners)
    check_cost("pinned_form_energy", len(P) * len(Q), max_cost, force)
    if not P or not Q:
        return 0
    setup = _int_pair_setup(P, Q, form)
    if setup is None:
        total = 0
        for q in P:
            row = Counter(eval_form(form, q, r) for r in Q)
            row.pop(Fraction(0), None)
            total += sum(c * c for c in row.values())
        return total
    ux, uy, qx, qy, _ = setup
    return _kernels.pinned_rows(ux, uy, qx, qy)


def distance_energy(P: Iterable, *, max_cost: int | None = None, force: bool = False) -> int:
    """#{(q, q', r, r') : |q - q'|^2 = |r - r'|^2 != 0}; the origin is allowed."""
    P = point_set(P)
    check_cost("distance_energy", len(P) ** 2, max_cost, force)
    if len(P) < 2:
        return 0
    xs, ys, _ = integerize_points(P)
    if 8 * max(max_abs(xs), max_abs(ys)) ** 2 < INT64_SAFE:
        x = np.array(xs, dtype=np.int64)
        y = np.array(ys, dtype=np.int64)
        total: Counter = Counter()
        step = max(1, _PAIR_BLOCK // len(x))
        for s in range(0, len(x), step):
            d = (x[s:s + step, None] - x[None, :]) ** 2 + (y[s:s + step, None] - y[None, :]) ** 2
            v, c = np.unique(d[d != 0], return_counts=True)
            total.update(dict(zip(v.tolist(), c.tolist())))
    else:
        total = Counter((p.x - q.x) ** 2 + (p.y - q.y) ** 2 for p in P for q in P if p != q)
    return sum(c * c for c in total.values())


@dataclass(frozen=True)
class RichPoorSplit:
    poor: tuple[Point, ...]
    rich: tuple[Point, ...]
    threshold: int
    fibers: dict = field(default_factory=dict, compare=False)

    @property
    def n_poor(self) -> int:
        return len(self.poor)

    @property
    def n_rich(self) -> int:
        return len(self.rich)

    def directions(self, which: str) -> set[Direction]:
        pts = self.poor if which == "poor" else self.rich
        return {direction_of(p) for p in pts}


def direction_fibers(P: Iterable) -> dict[Direction, list[Point]]:
    fibers: dict[Direction, list[Point]] = defaultdict(list)
    for p in _punctured(P):
        fibers[direction_of(p)].append(p)
    return dict(fibers)


def split_by_line_richness(P: Iterable, w0: int) -> RichPoorSplit:
    """Poor points lie on origin lines carrying at most ``w0`` points of P, rich on the rest."""
    if w0 < 1:
        raise PreconditionError("w0 must be a positive integer")
    fibers = direction_fibers(P)
    poor, rich = [], []
    for members in fibers.values():
        (poor if len(members) <= w0 else rich).extend(members)
    return RichPoorSplit(tuple(sorted(poor)), tuple(sorted(rich)), w0,
                         {d: len(m) for d, m in sorted(fibers.items())})


def _integer_identity_sides(a: Point, b: Point, c: Point, d: Point) -> tuple[int, int, int]:
    # both sides are homogeneous of degree 4, so clear denominators once
    L = lcm(*(v.denominator for p in (a, b, c, d) for v in p))
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = (
        (p.x.numerator * (L // p.x.denominator), p.y.numerator * (L // p.y.denominator)) for p in (a, b, c, d))
    t = lambda px, py, qx, qy: px * qy - py * qx  # noqa: E731
    lhs = t(ax, ay, dx, dy) * t(cx, cy, bx, by)
    rhs = t(ax, ay, bx, by) * t(cx, cy, dx, dy) - t(ax, ay, cx, cy) * t(bx, by, dx, dy)
    return lhs, rhs, L**4


def area_identity_sides(a: Point, b: Point, c: Point, d: Point) -> tuple[Fraction, Fraction]:
    """Both sides of t_ad * t_cb = t_ab * t_cd - t_ac * t_bd."""
    lhs, rhs, scale = _integer_identity_sides(a, b, c, d)
    return Fraction(lhs, scale), Fraction(rhs, scale)


def area_identity_holds(a: Point, b: Point, c: Point, d: Point) -> bool:
    lhs, rhs, _ = _integer_identity_sides(a, b, c, d)
    return lhs == rhs
