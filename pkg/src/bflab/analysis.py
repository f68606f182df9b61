"""Exponent fits, bound-ratio rows and the measurement suites.

This is the only module that uses floating point; every count entering it is
an exact integer.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .core import CROSS, BilinearForm, Point, PreconditionError, direction_of, format_scalar, point_set, scalar_set
from .equations import count_teq
from .formstats import form_moments, split_by_line_richness, value_table
from .generators import (
    construction_pinned_count,
    construction_s_count,
    erdos_construction,
    grid_line_count,
)
from .setops import SetOp, additive_energy, combine, combined_size


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    rms_residual: float
    points: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["points"] = [list(p) for p in self.points]
        return d


def fit_exponent(records: Iterable[tuple[int, int]]) -> FitResult:
    """Least-squares line through (log size, log value), natural logarithms."""
    records = [(int(s), int(v)) for s, v in records]
    if len(records) < 2:
        raise PreconditionError("exponent fit needs at least two records")
    if any(s < 1 or v < 1 for s, v in records):
        raise PreconditionError("exponent fit needs sizes and values >= 1")
    x = np.log(np.array([s for s, _ in records], dtype=float))
    y = np.log(np.array([v for _, v in records], dtype=float))
    if np.ptp(x) == 0:
        raise PreconditionError("exponent fit needs at least two distinct sizes")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return FitResult(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))), tuple(records))


def bound_ratio_report(measured, bound_terms: Sequence[tuple[float, float]], kind: str = "lower",
                       name: str = "") -> dict:
    """measured / sum(coefficient * value); flagged when a lower bound is undershot or an upper bound exceeded."""
    bound = float(sum(c * v for c, v in bound_terms))
    if not bound > 0:
        raise PreconditionError("bound value must be positive")
    ratio = float(measured) / bound
    flag = ratio < 1 if kind == "lower" else ratio > 1 if kind == "upper" else False
    return {"name": name, "measured": measured, "bound": bound, "ratio": ratio, "kind": kind, "flag": flag}


def _row(name, measured, bound, kind="lower", note=None) -> dict:
    if measured is None or bound is None or not bound > 0:
        row = {"name": name, "measured": measured, "bound": bound, "ratio": None, "kind": kind, "flag": False}
    else:
        row = bound_ratio_report(measured, [(1.0, bound)], kind, name)
    if note:
        row["note"] = note
    return row


def content_hash(obj) -> str:
    """sha256 of a canonical text rendering of scalars, points and nested lists."""

    def render(v):
        if isinstance(v, Fraction):
            return format_scalar(v)
        if isinstance(v, Point):
            return f"{format_scalar(v.x)} {format_scalar(v.y)}"
        if isinstance(v, (list, tuple)):
            return "[" + ",".join(render(x) for x in v) + "]"
        return str(v)

    return hashlib.sha256(render(obj).encode()).hexdigest()


def ceil_power(n: int, num: int, den: int) -> int:
    """ceil(n^(num/den)) in exact integer arithmetic."""
    target = n**num
    w = max(1, int(round(n ** (num / den))))
    while w**den < target:
        w += 1
    while w > 1 and (w - 1) ** den >= target:
        w -= 1
    return w


def _report(suite: str, inputs: dict, rows: list, fit: FitResult | None = None, seed=None, **extra) -> dict:
    out = {"suite": suite, "inputs": inputs, "rows": rows, "version": __version__, "seed": seed}
    if fit is not None:
        out["fit"] = {"slope": fit.slope, "intercept": fit.intercept, "rms": fit.rms_residual}
    out.update(extra)
    return out


# --- suites -----------------------------------------------------------------------


def suite_thm34(P: Iterable, w0: int | None = None, form: BilinearForm = CROSS, *, seed=None,
                teq_budget: int = 10**8) -> dict:
    """Distinct nonzero areas and the rich/poor split quantities."""
    P = point_set(P)
    N = len(P)
    inputs = {"hash": content_hash(P), "N": N}
    if N == 0 or len({direction_of(p) for p in P}) < 2:
        return _report("thm34", inputs, [], seed=seed, degenerate=True,
                       note="P is supported on a single line through the origin; T(P) is empty")
    if w0 is None:
        w0 = ceil_power(N, 8, 13)
    inputs["w0"] = w0
    table = value_table(P, form)
    T = len(table)
    split = split_by_line_richness(P, w0)
    N1, N2 = split.n_poor, split.n_rich
    rows = [
        _row("distinct values |T| vs N^(9/13)", T, N ** (9 / 13)),
        _row("szemeredi-trotter baseline |T| vs N^(2/3)", T, N ** (2 / 3)),
        _row("single value max m(t) vs 4(N^(4/3)+N)", max(table.values()), 4 * (N ** (4 / 3) + N), "upper"),
        _row("near-linear |T|/N", T, N, "info"),
        _row("near-linear |T| log N / N", T, N / math.log(N), "info"),
    ]
    T1 = value_table(split.poor, form) if N1 else {}
    if N1 and len(split.directions("poor")) >= 2:
        rows.append(_row("poor part |T1| vs N1 w0^(-1/2)", len(T1), N1 / math.sqrt(w0)))
    else:
        rows.append(_row("poor part |T1| vs N1 w0^(-1/2)", len(T1), None,
                         note="precondition fails: P1 empty or on one line through the origin"))
    T2 = value_table(split.rich, form) if N2 else {}
    rich_lines = len(split.directions("rich")) if N2 else 0
    if rich_lines >= 4:
        rows.append(_row("rich part |T2| vs (N2 w0)^(3/7)", len(T2), (N2 * w0) ** (3 / 7)))
        cost = len({s * t for s in T2 for t in T2}) ** 2
        if cost <= teq_budget:
            sols = count_teq(T2, force=True)
            rows.append(_row("six-term teq(T2) vs N2^2 w0^2", sols, N2**2 * w0**2))
            rows.append(_row("teq upper teq(T2) vs |T2|^(14/3)", sols, len(T2) ** (14 / 3), "upper"))
        else:
            rows.append(_row("six-term teq(T2) vs N2^2 w0^2", None, N2**2 * w0**2,
                             note=f"skipped: cost {cost} exceeds budget {teq_budget}"))
    else:
        rows.append(_row("rich part |T2| vs (N2 w0)^(3/7)", len(T2), None,
                         note=f"precondition fails: P2 on {rich_lines} < 4 origin lines"))
        rows.append(_row("six-term teq(T2) vs N2^2 w0^2", None, None, note="precondition fails"))
    inputs.update({"N1": N1, "N2": N2, "T": T, "T1": len(T1), "T2": len(T2), "rich_lines": rich_lines})
    return _report("thm34", inputs, rows, seed=seed, degenerate=False)


def _product_sets(A):
    AA = combine(A, A, SetOp.PRODUCT)
    return AA, combined_size(A, A, SetOp.RATIO)


def suite_eps1(sets: Sequence[tuple[str, Iterable]], *, seed=None) -> dict:
    """|AA+AA| against |A|^(19/12), |A|^(5/4)|A:A|^(1/3) and |A||A:A|^(1/2)."""
    rows, records, inputs = [], [], {}
    for label, A in sets:
        A = scalar_set(A)
        n = len(A)
        AA, ratio = _product_sets(A)
        plus = combined_size(AA, AA, SetOp.SUM)
        inputs[label] = {"hash": content_hash(A), "size": n, "AA": len(AA), "A:A": ratio, "AA+AA": plus}
        rows.append(_row(f"{label}: |AA+AA| vs |A|^(19/12)", plus, n ** (19 / 12)))
        rows.append(_row(f"{label}: |AA+AA| vs |A|^(5/4)|A:A|^(1/3)", plus, n ** 1.25 * ratio ** (1 / 3)))
        rows.append(_row(f"{label}: |AA+AA| vs |A||A:A|^(1/2)", plus, n * math.sqrt(ratio)))
        records.append((n, plus))
    fit = fit_exponent(records) if len({s for s, _ in records}) >= 2 else None
    return _report("eps1", inputs, rows, fit, seed=seed)


def suite_eps2(sets: Sequence[tuple[str, Iterable]], *, seed=None, slack: float = 4.0) -> dict:
    """|AA-AA| against |A|^(26/17)/log^(2/17)|A| (with slack) and the supporting inequalities."""
    rows, records, inputs = [], [], {}
    for label, A in sets:
        A = scalar_set(A)
        n = len(A)
        AA, ratio = _product_sets(A)
        minus = combined_size(AA, AA, SetOp.DIFFERENCE)
        diff = combined_size(A, A, SetOp.DIFFERENCE)
        log_n = math.log(n)
        inputs[label] = {"hash": content_hash(A), "size": n, "AA": len(AA), "A:A": ratio, "A-A": diff,
                         "AA-AA": minus}
        rows.append(_row(f"{label}: |AA-AA| vs |A|^(26/17)/(slack log^(2/17)|A|)", minus,
                         n ** (26 / 17) / (slack * log_n ** (2 / 17))))
        rows.append(_row(f"{label}: |AA-AA| vs |A||A:A|^(1/2)", minus, n * math.sqrt(ratio)))
        rows.append(_row(f"{label}: |A:A|^6|A-A|^5 vs |A|^14/log^2|A|", ratio**6 * diff**5,
                         n**14 / log_n**2))
        rows.append(_row(f"{label}: |A-A| <= |AA-AA|", diff, minus, "upper"))
        records.append((n, minus))
    fit = fit_exponent(records) if len({s for s, _ in records}) >= 2 else None
    return _report("eps2", inputs, rows, fit, seed=seed)


def construction_measurements(N: int) -> dict:
    bundle = erdos_construction(N)
    R = bundle.radius
    support = min(grid_line_count(d.b, -d.a, 0, R) for d in bundle.lines)
    return {
        "N": N,
        "sizes": bundle.sizes(),
        "min_line_support": support,
        "S": construction_s_count(bundle),
        "pinned": construction_pinned_count(bundle),
    }


def suite_construction(Ns: Sequence[int], *, seed=None) -> dict:
    rows, records, inputs = [], [], {}
    for N in Ns:
        m = construction_measurements(N)
        inputs[str(N)] = m["sizes"]
        rows.append(_row(f"N={N}: min line support vs 2N^(1/3)", m["min_line_support"], 2 * N ** (1 / 3)))
        rows.append(_row(f"N={N}: S(N) vs N^(4/3)", m["S"], N ** (4 / 3)))
        rows.append(_row(f"N={N}: pinned (q in P2) vs N^(7/3)", m["pinned"], N ** (7 / 3)))
        rows.append(_row(f"N={N}: |P2| vs N", m["sizes"]["p2"], N, "info"))
        records.append((N, m["S"]))
    fit = fit_exponent(records) if len(records) >= 2 else None
    return _report("construction", inputs, rows, fit, seed=seed)


def suite_weak_es(A: Iterable, *, seed=None) -> dict:
    A = scalar_set(A)
    if len(A) < 2 or Fraction(0) in A:
        raise PreconditionError("weak-es needs |A| >= 2 and 0 not in A")
    n = len(A)
    E = additive_energy(A)
    aa = combined_size(A, A, SetOp.PRODUCT)
    plus = combined_size(A, A, SetOp.SUM)
    minus = combined_size(A, A, SetOp.DIFFERENCE)
    rows = [
        _row("|A+A| vs |A|^4/E(A)", plus, n**4 / E),
        _row("|A-A| vs |A|^4/E(A)", minus, n**4 / E),
        _row("E(A) vs |AA|^3/|A|", E, aa**3 / n, "upper"),
        _row("|A+A| vs |A|^5/|AA|^3", plus, n**5 / aa**3),
    ]
    inputs = {"hash": content_hash(A), "size": n, "E": E, "AA": aa, "A+A": plus, "A-A": minus}
    return _report("weak-es", inputs, rows, seed=seed)


def suite_e_upper(sets: Sequence[tuple[str, Iterable]], form: BilinearForm = CROSS, *, seed=None) -> dict:
    """Form energy against N^3 (never exceeded in practice) and the provable N^(10/3)."""
    rows, records, inputs = [], [], {}
    for label, P in sets:
        P = point_set(P)
        N = len(P)
        m = form_moments(P, form)
        inputs[label] = {"hash": content_hash(P), "N": N, **m}
        rows.append(_row(f"{label}: E(P) vs N^3", m["energy"], N**3, "upper"))
        rows.append(_row(f"{label}: E(P) vs N^(10/3)", m["energy"], N ** (10 / 3), "upper"))
        rows.append(_row(f"{label}: E(P) vs (nonzero pairs)^2/|T|", m["energy"],
                         m["nonzero_pairs"] ** 2 / max(1, m["distinct_values"])))
        records.append((N, m["energy"]))
    fit = fit_exponent(records) if len({s for s, _ in records}) >= 2 else None
    return _report("e-upper", inputs, rows, fit, seed=seed)


SUITES = {
    "thm34": suite_thm34,
    "eps1": suite_eps1,
    "eps2": suite_eps2,
    "construction": suite_construction,
    "weak-es": suite_weak_es,
    "e-upper": suite_e_upper,
}


def theorem_suite(target: str, *args, **kwargs) -> dict:
    try:
        suite = SUITES[target]
    except KeyError:
        raise PreconditionError(f"unknown suite {target!r} (choose from {sorted(SUITES)})") from None
    return suite(*args, **kwargs)

