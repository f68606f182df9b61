"""Deterministic scalar and point families, and the grid-plus-pencil construction.

Random families use ``numpy.random.default_rng(seed)`` (PCG64), so a seed
fixes the output across platforms and numpy versions that keep PCG64 stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable

import numpy as np

from .core import (
    Direction,
    Point,
    PreconditionError,
    as_scalar,
    normalize_direction,
    point_set,
    scalar_set,
)


def make_progression(kind: str, start, step, n: int) -> tuple[Fraction, ...]:
    start, step = as_scalar(start), as_scalar(step)
    if n < 2:
        raise PreconditionError("progression needs n >= 2")
    if kind == "arithmetic":
        if step == 0:
            raise PreconditionError("arithmetic step must be nonzero")
        return scalar_set(start + k * step for k in range(n))
    if kind == "geometric":
        if start == 0 or step in (0, 1, -1):
            raise PreconditionError("geometric progression needs start != 0 and ratio not in {0, 1, -1}")
        return scalar_set(start * step**k for k in range(n))
    raise PreconditionError(f"unknown progression kind {kind!r}")


def make_grid(A: Iterable, B: Iterable, puncture: bool = False) -> tuple[Point, ...]:
    A, B = scalar_set(A), scalar_set(B)
    if not A or not B:
        raise PreconditionError("grid needs nonempty factors")
    return tuple(Point(a, b) for a in A for b in B if not (puncture and a == 0 and b == 0))


def _nonzero_from_index(idx, bound):
    # 0..bound-1 -> -bound..-1, bound..2*bound-1 -> 1..bound
    return np.where(idx < bound, idx - bound, idx - bound + 1)


def random_set(seed: int, n: int, bound: int) -> tuple[Fraction, ...]:
    """n distinct nonzero integers from [-bound, bound], sampled without replacement."""
    if bound < 1 or n < 0 or n > 2 * bound:
        raise PreconditionError(f"cannot draw {n} distinct nonzero integers from [-{bound}, {bound}]")
    rng = np.random.default_rng(seed)
    idx = rng.choice(2 * bound, size=n, replace=False)
    return scalar_set(int(v) for v in _nonzero_from_index(idx, bound))


def random_positive_set(seed: int, n: int, bound: int) -> tuple[Fraction, ...]:
    """n distinct integers from [1, bound]."""
    if bound < 1 or n < 0 or n > bound:
        raise PreconditionError(f"cannot draw {n} distinct integers from [1, {bound}]")
    rng = np.random.default_rng(seed)
    return scalar_set(int(v) + 1 for v in rng.choice(bound, size=n, replace=False))


def _signed_powers(count: int) -> list[int]:
    out, e = [], 0
    while len(out) < count:
        out.extend([2**e, -(2**e)])
        e += 1
    return out[:count]


def random_point_set(seed: int, n: int, bound: int, rich_lines: int = 0, per_line: int = 0) -> tuple[Point, ...]:
    """n distinct nonzero integer points.

    ``rich_lines`` random origin lines with primitive directions in [-3, 3]^2
    each carry ``per_line`` points k*(a, b), k running through 1, -1, 2, -2, 4, ...;
    the remaining points are uniform in the box [-bound, bound]^2.
    """
    rng = np.random.default_rng(seed)
    pts: set[tuple[int, int]] = set()
    if rich_lines:
        pool = sorted({normalize_direction(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)})
        if rich_lines > len(pool):
            raise PreconditionError(f"at most {len(pool)} rich lines available")
        chosen = rng.choice(len(pool), size=rich_lines, replace=False)
        mults = _signed_powers(per_line)
        for i in sorted(chosen.tolist()):
            a, b = pool[i]
            pts.update((k * a, k * b) for k in mults)
    if len(pts) > n:
        raise PreconditionError("rich lines alone exceed n points")
    side = 2 * bound + 1
    if side * side - 1 + len(pts) < n:
        raise PreconditionError("box too small for n distinct points")
    while len(pts) < n:
        xy = rng.integers(-bound, bound + 1, size=(2 * (n - len(pts)), 2))
        for x, y in xy.tolist():
            if (x, y) != (0, 0) and len(pts) < n:
                pts.add((x, y))
    return point_set(Point(Fraction(x), Fraction(y)) for x, y in pts)


# --- lattice counting on the box [-R, R]^2 -----------------------------------


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _step_range(base: int, step: int, R: int):
    """Integer t-interval with -R <= base + step*t <= R, or None for 'all t'."""
    if step == 0:
        return None if abs(base) <= R else (1, 0)
    if step < 0:
        base, step = -base, -step
    return (-((R + base) // step), (R - base) // step)


def grid_line_count(alpha: int, beta: int, gamma: int, R: int, puncture: bool = True) -> int:
    """#{(x, y) integer, |x|, |y| <= R, alpha*x + beta*y = gamma}, origin dropped if ``puncture``."""
    if alpha == 0 and beta == 0:
        raise PreconditionError("line needs (alpha, beta) != (0, 0)")
    g, u, v = _ext_gcd(abs(alpha), abs(beta))
    if gamma % g:
        return 0
    x0 = u * (gamma // g) * (1 if alpha >= 0 else -1)
    y0 = v * (gamma // g) * (1 if beta >= 0 else -1)
    ranges = [r for r in (_step_range(x0, beta // g, R), _step_range(y0, -alpha // g, R)) if r is not None]
    lo = max(r[0] for r in ranges)
    hi = min(r[1] for r in ranges)
    count = max(0, hi - lo + 1)
    if puncture and gamma == 0:
        count -= 1
    return count


def line_support_count(d: Direction, offset, P: Iterable) -> int:
    """#{p in P : b*p.x - a*p.y = offset} for direction d = (a : b), by enumeration."""
    offset = as_scalar(offset)
    return sum(1 for p in point_set(P) if d.b * p.x - d.a * p.y == offset)


def linear_form_counts(alpha: int, beta: int, R: int) -> tuple[int, np.ndarray]:
    """Histogram of alpha*x + beta*y over the box [-R, R]^2 as (min value, counts)."""
    xs = np.arange(-R, R + 1, dtype=np.int64)
    vals = (alpha * xs[:, None] + beta * xs[None, :]).ravel()
    lo = int(vals.min())
    return lo, np.bincount(vals - lo)


# --- the grid-plus-pencil construction ---------------------------------------


def sixth_root_even(N: int) -> int:
    r = round(N ** (1 / 6)) if N > 0 else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 2 and cand % 2 == 0 and cand**6 == N:
            return cand
    raise PreconditionError(f"N = {N} is not the 6th power of an even integer")


def pencil_directions(s: int) -> list[Direction]:
    """Primitive (a, b) with |a|, |b| <= s, one representative per line."""
    return sorted({normalize_direction(a, b) for a in range(-s, s + 1) for b in range(-s, s + 1)
                   if (a, b) != (0, 0) and gcd(a, b) == 1})


@dataclass
class ConstructionBundle:
    n: int
    radius: int
    lines: tuple[Direction, ...]
    translates: dict[Direction, tuple[int, ...]] = field(repr=False)
    p2: tuple[Point, ...] = field(repr=False)
    p2_triples: tuple[tuple[int, int, int], ...] = field(repr=False)

    @cached_property
    def p1(self) -> tuple[Point, ...]:
        """The grid [-sqrt N, sqrt N]^2 without the origin."""
        R = self.radius
        return tuple(Point(Fraction(x), Fraction(y)) for x in range(-R, R + 1) for y in range(-R, R + 1)
                     if (x, y) != (0, 0))

    @property
    def p1_size(self) -> int:
        return (2 * self.radius + 1) ** 2 - 1

    def sizes(self) -> dict:
        return {"p1": self.p1_size, "p2": len(self.p2), "lines": len(self.lines),
                "translates": sum(len(v) for v in self.translates.values())}


def erdos_construction(N: int) -> ConstructionBundle:
    """Grid P1, pencil L of primitive directions and the rational family P2.

    P2 = {(b/m, a/m) : (a : b) in L, m = b*i - a*j != 0, |i|, |j| <= sqrt(N)/2}.
    """
    r = sixth_root_even(N)
    R = r**3
    half = R // 2
    lines = pencil_directions(r)
    ij = np.arange(-half, half + 1, dtype=np.int64)
    translates: dict[Direction, tuple[int, ...]] = {}
    triples = []
    for d in lines:
        m = np.unique(d.b * ij[:, None] - d.a * ij[None, :])
        m = m[m != 0].tolist()
        translates[d] = tuple(m)
        triples.extend((d.a, d.b, mm) for mm in m)
    p2 = point_set(Point(Fraction(b, m), Fraction(a, m)) for a, b, m in triples)
    return ConstructionBundle(N, R, tuple(lines), translates, p2, tuple(triples))


def construction_s_count(bundle: ConstructionBundle) -> int:
    """#{(q, q') in P1 x P2 : q . q' = 1} by analytic lattice counting, one line per q'."""
    R = bundle.radius
    return sum(grid_line_count(b, a, m, R) for a, b, m in bundle.p2_triples)


def construction_pinned_count(bundle: ConstructionBundle) -> int:
    """#{(q, q', r') : q in P2, q', r' in P1, q . q' = q . r' != 0}.

    Every q in P2 is (b, a)/m, so the count depends only on the direction (b, a):
    sum over nonzero v of #{grid points with b*x + a*y = v}^2.
    """
    R = bundle.radius
    total = 0
    for d in bundle.lines:
        lo, counts = linear_form_counts(d.b, d.a, R)
        counts = counts.astype(np.int64)
        if 0 - lo < len(counts):
            counts[0 - lo] = 0
        total += int((counts * counts).sum()) * len(bundle.translates[d])
    return total
