"""Time every hot kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0] [--json out.json]

Numba compilation happens in a warm-up call that is not timed. Each row also
checks that both backends returned the same value.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from bflab import _kernels


def workloads(scale: float):
    rng = np.random.default_rng(7)
    s = lambda n: max(4, int(n * scale))  # noqa: E731

    n = s(3000)
    x = np.unique(rng.integers(-10**5, 10**5, n))
    lo = int(2 * x.min())
    yield "mark_combos (A+A)", (x, x, 1, lo, int(2 * x.max()) - lo + 1, True), lambda r: int(r.sum())

    a = np.unique(rng.integers(-500, 500, s(40)))
    yield "cross_ratio_pairs", (a,), lambda r: len(np.unique(np.stack(r, axis=1), axis=0))

    m = s(4000)
    px, py = rng.integers(-60, 60, m), rng.integers(-60, 60, m)
    k = s(1500)
    la, lb, lc = rng.integers(-4, 5, k), rng.integers(1, 5, k), rng.integers(-100, 100, k)
    yield "incidence_sum", (px, py, np.ones(m, np.int64), la, lb, lc, np.ones(k, np.int64)), int

    q = s(1200)
    ux, uy = rng.integers(-40, 40, q), rng.integers(-40, 40, q)
    yield "pinned_rows", (ux, uy, ux, uy), int

    keys = np.unique(rng.integers(-10**6, 10**6, s(6000)))
    yield "triple_product_sum", (keys, rng.integers(1, 4, len(keys))), int

    t = np.unique(rng.integers(-10**5, 10**5, s(5000)))
    yield "ternary_count", (t, 1, 1, -1), int


def bench(repeat: int, scale: float) -> list[dict]:
    rows = []
    backends = _kernels.available()
    for name, args, digest in workloads(scale):
        fn = getattr(_kernels, name.split()[0])
        row = {"kernel": name}
        results = {}
        for backend in backends:
            with _kernels.use_backend(backend):
                results[backend] = digest(fn(*args))  # warm-up, and compile for numba
                times = []
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    fn(*args)
                    times.append(time.perf_counter() - t0)
                row[backend] = statistics.median(times)
        row["agree"] = len(set(results.values())) == 1
        if "numba" in row and "numpy" in row:
            row["speedup"] = row["numpy"] / row["numba"] if row["numba"] else float("inf")
        rows.append(row)
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--scale", type=float, default=1.0, help="multiply workload sizes")
    parser.add_argument("--json", help="also write the rows as JSON")
    args = parser.parse_args(argv)

    rows = bench(args.repeat, args.scale)
    print(f"{'kernel':<22}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}  agree")
    for r in rows:
        numba = f"{r['numba']:.4f}" if "numba" in r else "n/a"
        speed = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['kernel']:<22}{numba:>12}{r['numpy']:>12.4f}{speed:>10}  {r['agree']}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
