"""Numba kernels: scalar-loop twins of ``_kernels_numpy`` (see that module
for the shared index-layout contract).

All jitted functions run single threaded with fastmath disabled, so results
do not depend on worker counts and index arithmetic is bit-identical to the
numpy backend.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

FAMILY_FREE = 0
FAMILY_CYCLIC = 1

_OPTS = dict(cache=True, nogil=True)


@njit(**_OPTS)
def _parent_inlevel(family, m, cnt, lv, inl, first):
    r = inl - first * cnt[lv]
    if family == FAMILY_FREE:
        blocked_start = (first ^ 1) * cnt[lv - 1]
        blocked_width = cnt[lv - 1]
    else:
        w = m - 1
        blocked_start = (first // w) * (w * cnt[lv - 1])
        blocked_width = w * cnt[lv - 1]
    if r >= blocked_start:
        return r + blocked_width
    return r


@njit(**_OPTS)
def _parent_index(family, m, offsets, cnt, lv, inl, first):
    if lv == 1:
        return np.int64(0)
    return offsets[lv - 1] + _parent_inlevel(family, m, cnt, lv, inl, first)


@njit(**_OPTS)
def _child_index(family, m, radius, offsets, cnt, b, lv, inl, first):
    if lv >= radius:
        return np.int64(-1)
    if family == FAMILY_FREE:
        rank = inl - cnt[lv] * (1 if first > (b ^ 1) else 0)
    else:
        w = m - 1
        rank = inl - (w * cnt[lv]) * (1 if (first // w) > (b // w) else 0)
    return offsets[lv + 1] + b * cnt[lv + 1] + rank


@njit(**_OPTS)
def _left_mult_one(i, b, family, m, radius, offsets, cnt, level_of):
    if i < 0:
        return np.int64(-1)
    lv = np.int64(level_of[i])
    if lv == 0:
        if radius >= 1:
            return offsets[1] + b
        return np.int64(-1)
    inl = i - offsets[lv]
    first = inl // cnt[lv]
    if family == FAMILY_FREE:
        if first == (b ^ 1):
            return _parent_index(family, m, offsets, cnt, lv, inl, first)
        return _child_index(family, m, radius, offsets, cnt, b, lv, inl, first)
    w = m - 1
    if (first // w) != (b // w):
        return _child_index(family, m, radius, offsets, cnt, b, lv, inl, first)
    esum = ((b % w) + (first % w) + 2) % m
    if esum == 0:
        return _parent_index(family, m, offsets, cnt, lv, inl, first)
    b2 = (b // w) * w + (esum - 1)
    if lv == 1:
        return offsets[1] + b2
    w_inl = _parent_inlevel(family, m, cnt, lv, inl, first)
    pf = w_inl // cnt[lv - 1]
    return _child_index(family, m, radius, offsets, cnt, b2, lv - 1, w_inl, pf)


@njit(**_OPTS)
def left_mult(idx, b, family, m, radius, offsets, cnt, level_of):
    n = idx.shape[0]
    res = np.empty(n, np.int64)
    for i in range(n):
        res[i] = _left_mult_one(idx[i], b, family, m, radius, offsets, cnt, level_of)
    return res


@njit(**_OPTS)
def conv_apply(out, out_size, idx2d, coeffs, g):
    s = coeffs.shape[0]
    for i in range(out_size):
        acc = 0.0
        for j in range(s):
            t = idx2d[j, i]
            if t >= 0:
                acc += coeffs[j] * g[t]
        out[i] = acc


@njit(**_OPTS)
def lp_norm_slice(x, n, p):
    if n == 0:
        return 0.0
    m = 0.0
    for i in range(n):
        a = abs(x[i])
        if a > m:
            m = a
    if m == 0.0 or p == math.inf:
        return m
    inv_m = 1.0 / m
    s = 0.0
    c = 0.0
    if p == 2.0:
        for i in range(n):
            v = x[i] * inv_m
            term = v * v
            y = term - c
            t = s + y
            c = (t - s) - y
            s = t
    elif p == 1.0:
        for i in range(n):
            term = abs(x[i]) * inv_m
            y = term - c
            t = s + y
            c = (t - s) - y
            s = t
    else:
        for i in range(n):
            term = (abs(x[i]) * inv_m) ** p
            y = term - c
            t = s + y
            c = (t - s) - y
            s = t
    return m * s ** (1.0 / p)


@njit(**_OPTS)
def signed_pow_scaled(out, x, n, expo):
    m = 0.0
    for i in range(n):
        a = abs(x[i])
        if a > m:
            m = a
    if m == 0.0:
        for i in range(n):
            out[i] = 0.0
        return
    inv_m = 1.0 / m
    if expo == 1.0:
        for i in range(n):
            out[i] = x[i] * inv_m
        return
    for i in range(n):
        v = x[i]
        mag = (abs(v) * inv_m) ** expo
        out[i] = mag if v > 0.0 else (-mag if v < 0.0 else 0.0)
