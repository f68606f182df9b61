"""Exact scalars, points, directions and bilinear forms.

Scalars are :class:`fractions.Fraction` values; a Fraction is always stored in
lowest terms with a positive denominator, so equality, ordering and hashing
agree with the rational it represents.
"""

from __future__ import annotations

import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, NamedTuple

Scalar = Fraction

DEFAULT_MAX_COST = 10**9
INT64_SAFE = 2**62


class BflabError(ValueError):
    """Base class for precondition failures."""


class PreconditionError(BflabError):
    pass


class CostGuardError(BflabError):
    """Raised before running a counter whose declared cost exceeds the budget."""

    def __init__(self, what: str, cost: int, budget: int):
        super().__init__(f"{what}: declared cost {cost} exceeds budget {budget} (use force to override)")
        self.what = what
        self.cost = cost
        self.budget = budget


def check_cost(what: str, cost: int, max_cost: int | None = None, force: bool = False) -> None:
    budget = DEFAULT_MAX_COST if max_cost is None else max_cost
    if not force and cost > budget:
        raise CostGuardError(what, cost, budget)


_SCALAR_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_scalar(text: str) -> Fraction:
    """Parse ``[sign]digits[/digits]``; anything else (decimals, exponents) is rejected."""
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise PreconditionError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise PreconditionError(f"zero denominator in scalar {text!r}")
    return Fraction(num, den)


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point:
    return Point(as_scalar(x), as_scalar(y))


def is_origin(p: Point) -> bool:
    return p.x == 0 and p.y == 0


class Direction(NamedTuple):
    """Primitive integer representative (a : b) of a line through the origin."""

    a: int
    b: int


def normalize_direction(a: int, b: int) -> Direction:
    if a == 0 and b == 0:
        raise PreconditionError("degenerate direction")
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return Direction(a, b)


def direction_of(p: Point) -> Direction:
    """Direction of the line through the origin and ``p``; antipodal points agree."""
    x, y = p
    if x == 0 and y == 0:
        raise PreconditionError("degenerate direction")
    return normalize_direction(x.numerator * y.denominator, y.numerator * x.denominator)


def scalar_set(values: Iterable) -> tuple[Fraction, ...]:
    """Deduplicated scalars in ascending order."""
    return tuple(sorted({as_scalar(v) for v in values}))


def point_set(points: Iterable) -> tuple[Point, ...]:
    """Deduplicated points in lexicographic order."""
    return tuple(sorted({p if isinstance(p, Point) else point(*p) for p in points}))


def area(p: Point, q: Point) -> Fraction:
    """Signed area t_pq = p.x*q.y - p.y*q.x of the triangle (0, p, q), doubled."""
    return p.x * q.y - p.y * q.x


SYMMETRIC = "symmetric"
SKEW = "skew-symmetric"
_KIND_ALIASES = {"symmetric": SYMMETRIC, "sym": SYMMETRIC, "skew": SKEW, "skew-symmetric": SKEW}


@dataclass(frozen=True)
class BilinearForm:
    m11: Fraction
    m12: Fraction
    m21: Fraction
    m22: Fraction
    kind: str

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        kind = _KIND_ALIASES.get(self.kind)
        if kind is None:
            raise PreconditionError(f"unknown form kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.m11 * self.m22 - self.m12 * self.m21 == 0:
            raise PreconditionError("degenerate bilinear form (zero determinant)")
        if kind == SYMMETRIC and self.m12 != self.m21:
            raise PreconditionError("symmetric form needs m12 == m21")
        if kind == SKEW and not (self.m11 == 0 and self.m22 == 0 and self.m12 == -self.m21):
            raise PreconditionError("skew form needs m11 == m22 == 0 and m12 == -m21")

    @classmethod
    def dot(cls) -> "BilinearForm":
        return cls(1, 0, 0, 1, SYMMETRIC)

    @classmethod
    def cross(cls) -> "BilinearForm":
        """The area form, matrix ((0, 1), (-1, 0))."""
        return cls(0, 1, -1, 0, SKEW)

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def covector(self, p: Point) -> tuple[Fraction, Fraction]:
        """Row vector p^T M, so that eval_form(self, p, q) = covector . q."""
        return (p.x * self.m11 + p.y * self.m21, p.x * self.m12 + p.y * self.m22)


DOT = BilinearForm.dot()
CROSS = BilinearForm.cross()


def eval_form(form: BilinearForm, p: Point, q: Point) -> Fraction:
    return p.x * (form.m11 * q.x + form.m12 * q.y) + p.y * (form.m21 * q.x + form.m22 * q.y)


# --- integer scaling ---------------------------------------------------------
# Most counts are invariant under scaling every input by a common nonzero
# factor, which lets the fast paths run on int64 arrays.


def common_denominator(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (v.denominator for v in values), 1)


def integerize(values: Iterable[Fraction]) -> tuple[list[int], int]:
    """Return ``([v * L for v in values], L)`` with L the lcm of the denominators."""
    values = list(values)
    L = common_denominator(values)
    return [v.numerator * (L // v.denominator) for v in values], L


def integerize_points(points: Iterable[Point]) -> tuple[list[int], list[int], int]:
    points = list(points)
    L = common_denominator(c for p in points for c in p)
    xs = [p.x.numerator * (L // p.x.denominator) for p in points]
    ys = [p.y.numerator * (L // p.y.denominator) for p in points]
    return xs, ys, L


def integer_form(form: BilinearForm) -> tuple[tuple[int, int, int, int], int]:
    (m11, m12), (m21, m22) = form.matrix
    ints, L = integerize([m11, m12, m21, m22])
    return tuple(ints), L


def max_abs(values: Iterable[int]) -> int:
    return max((abs(v) for v in values), default=0)
