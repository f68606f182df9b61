"""Exact solution counters and point-line incidences."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .core import (
    INT64_SAFE,
    BilinearForm,
    Point,
    PreconditionError,
    as_scalar,
    check_cost,
    common_denominator,
    integerize,
    integerize_points,
    max_abs,
    point_set,
    scalar_set,
)
from .setops import SetOp, representation_table


def count_affine_product(A: Iterable, B: Iterable, C: Iterable, D: Iterable, *,
                         max_cost: int | None = None, force: bool = False) -> int:
    """#{(a, b, c, d) in A x B x C x D : a - b = c*d}."""
    A, B, C, D = (scalar_set(S) for S in (A, B, C, D))
    if not all((A, B, C, D)):
        raise PreconditionError("affine-product count needs nonempty sets")
    check_cost("count_affine_product", len(A) * len(B) + len(C) * len(D), max_cost, force)
    diffs = representation_table(A, B, SetOp.DIFFERENCE, force=True)
    prods = representation_table(C, D, SetOp.PRODUCT, force=True)
    if len(prods) < len(diffs):
        diffs, prods = prods, diffs
    return sum(r * prods.get(s, 0) for s, r in diffs.items())


def count_teq(T: Iterable, *, max_cost: int | None = None, force: bool = False) -> int:
    """#{(t1, ..., t6) in T^6 : t1*t2 = t3*t4 - t5*t6}.

    With r the product representation function of T x T this is
    sum over (u, v) of r(u) r(v) r(u - v).
    """
    T = scalar_set(T)
    if not T:
        return 0
    ints, _ = integerize(T)  # homogeneous equation: rescaling T keeps the count
    r = Counter(x * y for x in ints for y in ints)
    check_cost("count_teq", len(r) ** 2, max_cost, force)
    keys = sorted(r)
    top = max_abs(keys)
    if 2 * top < INT64_SAFE and len(T) ** 6 < INT64_SAFE:
        return _kernels.triple_product_sum(np.array(keys, dtype=np.int64),
                                           np.array([r[k] for k in keys], dtype=np.int64))
    total = 0
    get = r.get
    for u, ru in r.items():
        for v, rv in r.items():
            w = get(u - v)
            if w:
                total += ru * rv * w
    return total


def count_ternary_linear(A: Iterable, alpha1, alpha2, alpha3, *, max_cost: int | None = None,
                         force: bool = False) -> int:
    """#{(a1, a2, a3) in A^3 : alpha1*a1 + alpha2*a2 + alpha3*a3 = 0}."""
    coeffs = [as_scalar(c) for c in (alpha1, alpha2, alpha3)]
    if any(c == 0 for c in coeffs):
        raise PreconditionError("coefficients must be nonzero")
    A = scalar_set(A)
    check_cost("count_ternary_linear", len(A) ** 2, max_cost, force)
    if not A:
        return 0
    ints, _ = integerize(A)
    cs, _ = integerize(coeffs)
    if 2 * max_abs(cs) * max_abs(ints) < INT64_SAFE:
        return _kernels.ternary_count(np.array(ints, dtype=np.int64), *cs)
    members = set(A)
    c1, c2, c3 = coeffs
    return sum(1 for x in A for y in A if -(c1 * x + c2 * y) / c3 in members)


# --- incidences ----------------------------------------------------------------


@dataclass(frozen=True)
class WeightedLine:
    """Line a*x + b*y = c in primitive integer form, first nonzero of (a, b) positive."""

    a: int
    b: int
    c: int
    weight: int = 1

    @classmethod
    def from_coefficients(cls, a, b, c, weight: int = 1) -> "WeightedLine":
        a, b, c = (as_scalar(v) for v in (a, b, c))
        if a == 0 and b == 0:
            raise PreconditionError("line needs (a, b) != (0, 0)")
        if weight < 1:
            raise PreconditionError("line weights must be positive integers")
        L = common_denominator((a, b, c))
        ia, ib, ic = (int(v * L) for v in (a, b, c))
        g = reduce(gcd, (ia, ib, ic))
        if ia < 0 or (ia == 0 and ib < 0):
            g = -g
        return cls(ia // g, ib // g, ic // g, int(weight))

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y == self.c


def _canonical_lines(L: Iterable) -> list[WeightedLine]:
    lines = []
    seen = set()
    for line in L:
        if not isinstance(line, WeightedLine):
            line = WeightedLine.from_coefficients(*line)
        else:
            line = WeightedLine.from_coefficients(line.a, line.b, line.c, line.weight)
        if line.key in seen:
            raise PreconditionError(f"duplicate line {line.key} after canonicalization")
        seen.add(line.key)
        lines.append(line)
    return lines


def _point_weights(P: Iterable, weights: Mapping | None) -> dict[Point, int]:
    P = point_set(P)
    if weights is None:
        return {p: 1 for p in P}
    out = {}
    for p in P:
        w = int(weights.get(p, 0))
        if w < 0:
            raise PreconditionError("point weights must be nonnegative")
        if w:
            out[p] = w
    return out


def count_incidences(P: Iterable, L: Iterable, weights_on_points: Mapping | None = None, *,
                     max_cost: int | None = None, force: bool = False) -> int:
    """sum over incident (p, l) of w(p) w(l); unit point weights by default."""
    pw = _point_weights(P, weights_on_points)
    lines = _canonical_lines(L)
    if not pw or not lines:
        return 0
    points = list(pw)
    xs, ys, scale = integerize_points(points)
    lc_scaled = [line.c * scale for line in lines]
    coef = max(max(abs(line.a), abs(line.b)) for line in lines)
    by_x: dict = defaultdict(dict)
    by_y: dict = defaultdict(dict)
    for p, w in pw.items():
        by_x[p.x][p.y] = w
        by_y[p.y][p.x] = w
    sweep = min(len(by_x), len(by_y))
    grouped_cost = len(lines) * sweep
    check_cost("count_incidences", min(grouped_cost, len(lines) * len(points)), max_cost, force)
    fits = 2 * coef * max(max_abs(xs), max_abs(ys), 1) < INT64_SAFE and max_abs(lc_scaled) < INT64_SAFE
    if fits and grouped_cost > 4 * 10**5 and len(lines) * len(points) <= 4 * grouped_cost:
        arr = lambda v: np.array(v, dtype=np.int64)  # noqa: E731
        return _kernels.incidence_sum(arr(xs), arr(ys), arr([pw[p] for p in points]),
                                      arr([ln.a for ln in lines]), arr([ln.b for ln in lines]),
                                      arr(lc_scaled), arr([ln.weight for ln in lines]))
    use_x = len(by_x) <= len(by_y)
    total = 0
    for line in lines:
        a, b, c = line.a, line.b, line.c
        hits = 0
        if use_x:
            if b == 0:
                hits = sum(by_x.get(Fraction(c, a), {}).values())
            else:
                for x, col in by_x.items():
                    hits += col.get((c - a * x) / b, 0)
        else:
            if a == 0:
                hits = sum(by_y.get(Fraction(c, b), {}).values())
            else:
                for y, row in by_y.items():
                    hits += row.get((c - b * y) / a, 0)
        total += hits * line.weight
    return total


def st_bound(n_points: int, n_lines: int, constant: float = 4.0) -> float:
    """constant * (|P|^(2/3) |L|^(2/3) + |P| + |L|)."""
    return constant * ((n_points * n_lines) ** (2 / 3) + n_points + n_lines)


def weighted_st_bound(point_weights: Iterable[int], line_weights: Iterable[int], constant: float = 1.0) -> float:
    """constant * ((w_P w_L)^(1/3) (W_P W_L)^(2/3) + w_P W_L + w_L W_P)."""
    pw, lw = list(point_weights), list(line_weights)
    if not pw or not lw:
        return 0.0
    wp, wl, Wp, Wl = max(pw), max(lw), sum(pw), sum(lw)
    return constant * ((wp * wl) ** (1 / 3) * (Wp * Wl) ** (2 / 3) + wp * Wl + wl * Wp)


def incidence_report(P: Iterable, L: Iterable, weights_on_points: Mapping | None = None,
                     st_constant: float = 4.0, **guard) -> dict:
    pw = _point_weights(P, weights_on_points)
    lines = _canonical_lines(L)
    count = count_incidences(pw, lines, weights_on_points=pw, **guard)
    unit = weights_on_points is None and all(ln.weight == 1 for ln in lines)
    bound = (st_bound(len(pw), len(lines), st_constant) if unit
             else weighted_st_bound(pw.values(), [ln.weight for ln in lines], st_constant))
    return {"incidences": count, "points": len(pw), "lines": len(lines), "bound": bound,
            "ratio": count / bound if bound else None, "weighted": not unit}


def count_form_value(P: Iterable, Q: Iterable, form: BilinearForm, c, *, max_cost: int | None = None,
                     force: bool = False) -> int:
    """#{(q, q') in P x Q : form(q, q') = c}, c nonzero.

    Each q' gives the line {x : x^T M q' = c}, so this is an incidence count.
    """
    c = as_scalar(c)
    if c == 0:
        raise PreconditionError("form value must be nonzero")
    P, Q = point_set(P), point_set(Q)
    lines = []
    for q in Q:
        a = form.m11 * q.x + form.m12 * q.y
        b = form.m21 * q.x + form.m22 * q.y
        if a == 0 and b == 0:
            continue  # only q' = 0, which gives value 0
        lines.append(WeightedLine.from_coefficients(a, b, c))
    return count_incidences(P, lines, max_cost=max_cost, force=force)
