"""Vectorized numpy versions of the numba kernels, processed in row blocks."""

import numpy as np

_BLOCK = 1 << 22  # elements per temporary block


def _rows_per_block(width: int) -> int:
    return max(1, _BLOCK // max(1, width))


def mark_combos(x, y, sign, lo, size, symmetric):
    out = np.zeros(size, dtype=np.bool_)
    step = _rows_per_block(y.shape[0])
    for s in range(0, x.shape[0], step):
        block = x[s:s + step, None] - lo + sign * y[None, :]
        out[block.ravel()] = True
    # symmetric only skips redundant work in the loop kernel; the set is the same
    return out


def cross_ratio_pairs(a):
    n = a.shape[0]
    idx = np.arange(n)
    i, j, p, q = (g.ravel() for g in np.meshgrid(idx, idx, idx, idx, indexing="ij"))
    keep = (i != j) & (i != p) & (i != q) & (j != p) & (j != q) & (p != q)
    i, j, p, q = i[keep], j[keep], p[keep], q[keep]
    u = (a[i] - a[j]) * (a[p] - a[q])
    v = (a[i] - a[p]) * (a[j] - a[q])
    g = np.gcd(u, v) * np.sign(v)
    return u // g, v // g


def incidence_sum(px, py, pw, la, lb, lc, lw):
    total = 0
    step = _rows_per_block(px.shape[0])
    for s in range(0, la.shape[0], step):
        a, b, c = la[s:s + step, None], lb[s:s + step, None], lc[s:s + step, None]
        hit = (a * px[None, :] + b * py[None, :]) == c
        total += int((hit.astype(np.int64) @ pw) @ lw[s:s + step])
    return total


def pinned_rows(ux, uy, x, y):
    m = x.shape[0]
    total = 0
    step = _rows_per_block(m)
    for s in range(0, ux.shape[0], step):
        v = ux[s:s + step, None] * x[None, :] + uy[s:s + step, None] * y[None, :]
        v.sort(axis=1)
        starts = np.ones(v.shape, dtype=np.bool_)
        starts[:, 1:] = v[:, 1:] != v[:, :-1]
        flat_starts = np.flatnonzero(starts.ravel())
        lengths = np.diff(np.append(flat_starts, v.size))
        nonzero = v.ravel()[flat_starts] != 0
        total += int((lengths[nonzero] ** 2).sum())
    return total


def triple_product_sum(keys, weights):
    n = keys.shape[0]
    total = 0
    step = _rows_per_block(n)
    for s in range(0, n, step):
        d = keys[s:s + step, None] - keys[None, :]
        pos = np.searchsorted(keys, d).clip(0, n - 1)
        hit = keys[pos] == d
        contrib = weights[s:s + step, None] * weights[None, :] * np.where(hit, weights[pos], 0)
        total += int(contrib.sum())
    return total


def ternary_count(a, c1, c2, c3):
    n = a.shape[0]
    total = 0
    step = _rows_per_block(n)
    for s in range(0, n, step):
        t = -(c1 * a[s:s + step, None] + c2 * a[None, :])
        ok = t % c3 == 0
        q = t[ok] // c3
        pos = np.searchsorted(a, q).clip(0, n - 1)
        total += int(np.count_nonzero(a[pos] == q))
    return total
