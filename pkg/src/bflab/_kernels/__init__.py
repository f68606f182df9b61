"""Hot integer kernels with two interchangeable backends.

``numba`` runs compiled loops; ``numpy`` runs blocked vectorized code. The
default is numba when importable; set ``BFLAB_NUMBA=0`` to force numpy.
Both backends return identical integers on identical int64 inputs.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _numpy

try:
    if os.environ.get("BFLAB_NUMBA", "1").strip().lower() in {"0", "false", "no", "off"}:
        raise ImportError("numba disabled by BFLAB_NUMBA")
    from . import _numba
except ImportError:
    _numba = None

BACKENDS = ("numba", "numpy")
_active = "numba" if _numba is not None else "numpy"


def available() -> list[str]:
    return [name for name in BACKENDS if name == "numpy" or _numba is not None]


def backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in available():
        raise ValueError(f"backend {name!r} not available (have {available()})")
    _active = name


@contextmanager
def use_backend(name: str):
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _impl():
    return _numba if _active == "numba" else _numpy


def mark_combos(x, y, sign, lo, size, symmetric=False):
    """Boolean table ``out[x_i + sign*y_j - lo] = True`` over all pairs."""
    return _impl().mark_combos(x, y, sign, lo, size, symmetric)


def cross_ratio_pairs(a):
    """Reduced (numerator, positive denominator) of r over ordered distinct quadruples."""
    return _impl().cross_ratio_pairs(a)


def incidence_sum(px, py, pw, la, lb, lc, lw):
    """Weighted count of (point, line) pairs with a*x + b*y == c."""
    return int(_impl().incidence_sum(px, py, pw, la, lb, lc, lw))


def pinned_rows(ux, uy, x, y):
    """Sum over rows i of sum_{t != 0} #{j : ux_i*x_j + uy_i*y_j = t}^2."""
    return int(_impl().pinned_rows(ux, uy, x, y))


def triple_product_sum(keys, weights):
    """Sum over key pairs (u, v) of r(u) r(v) r(u - v); keys sorted and unique."""
    return int(_impl().triple_product_sum(keys, weights))


def ternary_count(a, c1, c2, c3):
    """#{(i, j, k) : c1*a_i + c2*a_j + c3*a_k = 0}; ``a`` sorted and unique, c3 != 0."""
    return int(_impl().ternary_count(a, c1, c2, c3))
