"""bflab: exact counting of bilinear-form values, energies, cross-ratios and sum-product quantities."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CROSS,
    DOT,
    BflabError,
    BilinearForm,
    CostGuardError,
    Direction,
    Point,
    PreconditionError,
    direction_of,
    eval_form,
    point,
    point_set,
    scalar_set,
)

__all__ = [
    "CROSS",
    "DOT",
    "BflabError",
    "BilinearForm",
    "CostGuardError",
    "Direction",
    "Point",
    "PreconditionError",
    "direction_of",
    "eval_form",
    "point",
    "point_set",
    "scalar_set",
]
