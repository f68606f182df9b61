"""Sum, difference, product and ratio sets; representation tables; additive energy."""

from __future__ import annotations

import enum
from collections import Counter
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .core import (
    INT64_SAFE,
    PreconditionError,
    check_cost,
    integerize,
    max_abs,
    scalar_set,
)

# Largest offset table the bitmap path allocates (bytes).
BITMAP_LIMIT = 1 << 28
# Largest pair block materialized at once by the sort-based path.
_PAIR_BLOCK = 1 << 23


class SetOp(enum.Enum):
    SUM = "sum"
    DIFFERENCE = "difference"
    PRODUCT = "product"
    RATIO = "ratio"

    @classmethod
    def parse(cls, value) -> "SetOp":
        if isinstance(value, cls):
            return value
        aliases = {"sum": cls.SUM, "+": cls.SUM, "difference": cls.DIFFERENCE, "diff": cls.DIFFERENCE,
                   "-": cls.DIFFERENCE, "product": cls.PRODUCT, "prod": cls.PRODUCT, "*": cls.PRODUCT,
                   "ratio": cls.RATIO, ":": cls.RATIO, "/": cls.RATIO}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise PreconditionError(f"unknown set operation {value!r}") from None


def _apply(op: SetOp, a: Fraction, b: Fraction) -> Fraction:
    if op is SetOp.SUM:
        return a + b
    if op is SetOp.DIFFERENCE:
        return a - b
    if op is SetOp.PRODUCT:
        return a * b
    return a / b


def _prepare(A: Iterable, B: Iterable, op) -> tuple[tuple, tuple, SetOp]:
    op = SetOp.parse(op)
    A, B = scalar_set(A), scalar_set(B)
    if not A or not B:
        raise PreconditionError("set operations need nonempty sets")
    if op is SetOp.RATIO and Fraction(0) in B:
        raise PreconditionError("division by zero: divisor 0 belongs to the second set")
    return A, B, op


def combine(A: Iterable, B: Iterable, op, *, max_cost: int | None = None, force: bool = False) -> tuple[Fraction, ...]:
    """The deduplicated set {a o b : a in A, b in B}, ascending."""
    A, B, op = _prepare(A, B, op)
    check_cost("combine", len(A) * len(B), max_cost, force)
    return tuple(sorted({_apply(op, a, b) for a in A for b in B}))


def representation_table(A: Iterable, B: Iterable, op, *, max_cost: int | None = None,
                         force: bool = False) -> Counter:
    """Counter s -> #{(a, b) in A x B : a o b = s}; total mass |A||B|."""
    A, B, op = _prepare(A, B, op)
    check_cost("representation_table", len(A) * len(B), max_cost, force)
    return Counter(_apply(op, a, b) for a in A for b in B)


def _int_arrays_for(A, B, op):
    """int64 images of A and B under a count-preserving rescaling, or None."""
    if op in (SetOp.SUM, SetOp.DIFFERENCE):
        ints, _ = integerize(A + B)
        xa, xb = ints[:len(A)], ints[len(A):]
        if max_abs(ints) * 2 >= INT64_SAFE:
            return None
    else:
        xa, _ = integerize(A)
        xb, _ = integerize(B)
        if max_abs(xa) * max_abs(xb) >= INT64_SAFE:
            return None
    return np.array(xa, dtype=np.int64), np.array(xb, dtype=np.int64)


def _sorted_unique_count(blocks) -> int:
    seen = np.empty(0, dtype=np.int64)
    for block in blocks:
        seen = np.union1d(seen, block)
    return int(seen.size)


def combined_size(A: Iterable, B: Iterable, op, *, max_cost: int | None = None, force: bool = False) -> int:
    """|A o B| without materializing Fractions when an exact integer path exists."""
    A, B, op = _prepare(A, B, op)
    check_cost("combined_size", len(A) * len(B), max_cost, force)
    arrays = _int_arrays_for(A, B, op)
    if arrays is None:
        return len({_apply(op, a, b) for a in A for b in B})
    xa, xb = arrays
    if op in (SetOp.SUM, SetOp.DIFFERENCE):
        sign = 1 if op is SetOp.SUM else -1
        lo = int(xa.min()) + (int(xb.min()) if sign == 1 else -int(xb.max()))
        hi = int(xa.max()) + (int(xb.max()) if sign == 1 else -int(xb.min()))
        size = hi - lo + 1
        if size <= BITMAP_LIMIT:
            same = sign == 1 and np.array_equal(xa, xb)
            return int(_kernels.mark_combos(xa, xb, sign, lo, size, same).sum())
        step = max(1, _PAIR_BLOCK // len(xb))
        return _sorted_unique_count(np.unique(xa[s:s + step, None] + sign * xb[None, :])
                                    for s in range(0, len(xa), step))
    if op is SetOp.PRODUCT:
        step = max(1, _PAIR_BLOCK // len(xb))
        return _sorted_unique_count(np.unique(xa[s:s + step, None] * xb[None, :])
                                    for s in range(0, len(xa), step))
    # ratio a/b as reduced pairs, denominator positive
    num = np.repeat(xa, len(xb))
    den = np.tile(xb, len(xa))
    g = np.gcd(num, den) * np.sign(den)
    pairs = np.stack([num // g, den // g], axis=1)
    return int(np.unique(pairs, axis=0).shape[0])


def additive_energy(A: Iterable, B: Iterable | None = None, *, max_cost: int | None = None,
                    force: bool = False) -> int:
    """#{(a1, b1, a2, b2) : a1 + b1 = a2 + b2}, ordered quadruples."""
    A = scalar_set(A)
    B = A if B is None else scalar_set(B)
    if not A or not B:
        raise PreconditionError("additive energy needs nonempty sets")
    check_cost("additive_energy", len(A) * len(B), max_cost, force)
    arrays = _int_arrays_for(A, B, SetOp.SUM)
    if arrays is None:
        return sum(r * r for r in representation_table(A, B, SetOp.SUM, force=True).values())
    xa, xb = arrays
    lo = int(xa.min()) + int(xb.min())
    size = int(xa.max()) + int(xb.max()) - lo + 1
    step = max(1, _PAIR_BLOCK // len(xb))
    if size <= BITMAP_LIMIT // 8:
        counts = np.zeros(size, dtype=np.int64)
        for s in range(0, len(xa), step):
            counts += np.bincount((xa[s:s + step, None] + xb[None, :] - lo).ravel(), minlength=size)
        return int((counts * counts).sum())
    table: Counter = Counter()
    for s in range(0, len(xa), step):
        vals, cnt = np.unique(xa[s:s + step, None] + xb[None, :], return_counts=True)
        table.update(dict(zip(vals.tolist(), cnt.tolist())))
    return sum(r * r for r in table.values())


def weak_es_report(A: Iterable) -> dict:
    """Quantities in the weak Erdos-Szemeredi chain and the Cauchy-Schwarz check."""
    A = scalar_set(A)
    if len(A) < 2:
        raise PreconditionError("weak-es needs |A| >= 2")
    if Fraction(0) in A:
        raise PreconditionError("weak-es assumes 0 is not in A")
    n = len(A)
    energy = additive_energy(A)
    aa = combined_size(A, A, SetOp.PRODUCT)
    plus = combined_size(A, A, SetOp.SUM)
    minus = combined_size(A, A, SetOp.DIFFERENCE)
    ratio = Fraction(energy * n, aa**3)
    return {
        "size": n,
        "energy": energy,
        "card_AA": aa,
        "card_A_plus_A": plus,
        "card_A_minus_A": minus,
        "energy_ratio": ratio,
        "cs_bound": Fraction(n**4, energy),
        "cs_sum_holds": plus * energy >= n**4,
        "cs_diff_holds": minus * energy >= n**4,
    }

