"""Loop kernels compiled with numba. Inputs are int64 arrays already checked for overflow."""

import numpy as np
from numba import njit


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def mark_combos(x, y, sign, lo, size, symmetric):
    out = np.zeros(size, dtype=np.bool_)
    n = x.shape[0]
    m = y.shape[0]
    for i in range(n):
        xi = x[i] - lo
        start = i if symmetric else 0
        for j in range(start, m):
            out[xi + sign * y[j]] = True
    return out


@njit(cache=True)
def cross_ratio_pairs(a):
    n = a.shape[0]
    total = n * (n - 1) * (n - 2) * (n - 3)
    num = np.empty(total, dtype=np.int64)
    den = np.empty(total, dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for p in range(n):
                if p == i or p == j:
                    continue
                for q in range(n):
                    if q == i or q == j or q == p:
                        continue
                    u = (a[i] - a[j]) * (a[p] - a[q])
                    v = (a[i] - a[p]) * (a[j] - a[q])
                    g = _gcd(u, v)
                    if v < 0:
                        g = -g
                    num[k] = u // g
                    den[k] = v // g
                    k += 1
    return num, den


@njit(cache=True)
def incidence_sum(px, py, pw, la, lb, lc, lw):
    total = 0
    for j in range(la.shape[0]):
        a = la[j]
        b = lb[j]
        c = lc[j]
        hits = 0
        for i in range(px.shape[0]):
            if a * px[i] + b * py[i] == c:
                hits += pw[i]
        total += hits * lw[j]
    return total


@njit(cache=True)
def pinned_rows(ux, uy, x, y):
    m = x.shape[0]
    mx = 0
    my = 0
    for j in range(m):
        mx = max(mx, abs(x[j]))
        my = max(my, abs(y[j]))
    limit = max(1 << 16, 8 * m)
    table = np.zeros(2 * limit + 1, dtype=np.int64)
    vals = np.empty(m, dtype=np.int64)
    total = 0
    for i in range(ux.shape[0]):
        for j in range(m):
            vals[j] = ux[i] * x[j] + uy[i] * y[j]
        if abs(ux[i]) * mx + abs(uy[i]) * my <= limit:
            # counting table; (c+1)^2 - c^2 = 2c + 1
            for j in range(m):
                v = vals[j]
                if v != 0:
                    c = table[v + limit]
                    total += 2 * c + 1
                    table[v + limit] = c + 1
            for j in range(m):
                table[vals[j] + limit] = 0
            continue
        vals.sort()
        run = 1
        for j in range(1, m + 1):
            if j < m and vals[j] == vals[j - 1]:
                run += 1
            else:
                if vals[j - 1] != 0:
                    total += run * run
                run = 1
    return total


@njit(cache=True)
def triple_product_sum(keys, weights):
    # for fixed i, keys[i] - keys[j] decreases in j: merge against a descending pointer
    total = 0
    n = keys.shape[0]
    for i in range(n):
        ki = keys[i]
        wi = weights[i]
        k = n - 1
        for j in range(n):
            d = ki - keys[j]
            while k >= 0 and keys[k] > d:
                k -= 1
            if k < 0:
                break
            if keys[k] == d:
                total += wi * weights[j] * weights[k]
    return total


@njit(cache=True)
def ternary_count(a, c1, c2, c3):
    # count k with c3*a[k] = -(c1*a[i] + c2*a[j]); with c3 > 0 the targets are monotone in j
    if c3 < 0:
        c1, c2, c3 = -c1, -c2, -c3
    total = 0
    n = a.shape[0]
    for i in range(n):
        s = c1 * a[i]
        k = 0
        for step in range(n):
            j = step if c2 < 0 else n - 1 - step
            t = -(s + c2 * a[j])
            while k < n and c3 * a[k] < t:
                k += 1
            if k == n:
                break
            if c3 * a[k] == t:
                total += 1
    return total
