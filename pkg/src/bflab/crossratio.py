"""Cross-ratios of scalars and of directions through the origin."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable

import numpy as np

from . import _kernels
from .core import (
    Direction,
    Point,
    PreconditionError,
    area,
    as_scalar,
    check_cost,
    integerize,
    max_abs,
    scalar_set,
)


def cross_ratio(a, b, c, d) -> Fraction:
    """r(a, b, c, d) = (a - b)(c - d) / ((a - c)(b - d)) for pairwise distinct inputs."""
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    if len({a, b, c, d}) < 4:
        raise PreconditionError("degenerate quadruple")
    return (a - b) * (c - d) / ((a - c) * (b - d))


def cross_ratio_set(A: Iterable, *, max_cost: int | None = None, force: bool = False) -> tuple[Fraction, ...]:
    """R(A) over ordered pairwise-distinct quadruples, ascending."""
    A = scalar_set(A)
    n = len(A)
    if n < 4:
        raise PreconditionError("cross-ratio set needs |A| >= 4")
    check_cost("cross_ratio_set", n**4, max_cost, force)
    ints, _ = integerize(A)
    # each factor is a difference, so |num|, |den| <= (2 max|a|)^2
    if 4 * max_abs(ints) ** 2 < 2**62:
        num, den = _kernels.cross_ratio_pairs(np.array(ints, dtype=np.int64))
        pairs = np.unique(np.stack([num, den], axis=1), axis=0)
        return tuple(sorted(Fraction(int(p), int(q)) for p, q in pairs))
    return tuple(sorted({cross_ratio(*quad) for quad in permutations(A, 4)}))


def cross_ratio_count(A: Iterable, **guard) -> int:
    return len(cross_ratio_set(A, **guard))


def _transversal_coordinate(d: Direction, transversal):
    """Coordinate of the point where the origin line of ``d`` meets the transversal.

    The transversal is alpha*x + beta*y = gamma with gamma != 0; points on it are
    parametrized by -beta*x + alpha*y. Returns None for the parallel direction.
    """
    alpha, beta, gamma = transversal
    denom = alpha * d.a + beta * d.b
    if denom == 0:
        return None
    t = Fraction(gamma) / denom
    return t * (-beta * d.a + alpha * d.b)


def cross_ratio_of_directions(da: Direction, db: Direction, dc: Direction, dd: Direction,
                              transversal=(1, 0, 1)) -> Fraction:
    """Cross-ratio of four origin lines read off a transversal line (default x = 1).

    A direction parallel to the transversal meets it at infinity; the formula is
    then taken in its limit form with the infinite factors cancelled.
    """
    dirs = (da, db, dc, dd)
    if len(set(dirs)) < 4:
        raise PreconditionError("repeated direction")
    alpha, beta, gamma = (as_scalar(v) for v in transversal)
    if gamma == 0 or (alpha == 0 and beta == 0):
        raise PreconditionError("transversal must not pass through the origin")
    a, b, c, d = (_transversal_coordinate(x, (alpha, beta, gamma)) for x in dirs)
    if a is None:
        return (c - d) / (b - d)
    if b is None:
        return (c - d) / (c - a)
    if c is None:
        return (a - b) / (d - b)
    if d is None:
        return (a - b) / (a - c)
    return (a - b) * (c - d) / ((a - c) * (b - d))


def area_cross_ratio(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    """t_ab * t_cd / (t_ac * t_bd) with t the signed area form."""
    tab, tcd, tac, tbd = area(a, b), area(c, d), area(a, c), area(b, d)
    if 0 in (tab, tcd, tac, tbd, area(a, d), area(b, c)):
        raise PreconditionError("collinear-with-origin pair")
    return tab * tcd / (tac * tbd)
