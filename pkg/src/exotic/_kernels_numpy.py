"""Pure numpy kernels for Cayley-ball index arithmetic and the power
iteration inner loops.

This is the fallback backend (select with ``EXOTIC_BACKEND=numpy``); the
numba twin in ``_kernels_numba`` implements the same contracts with scalar
loops.  Index arithmetic is exact integer work and matches the numba backend
bit for bit.  Floating point reductions are deterministic within a backend:
``lp_norm_slice`` sums fixed-size chunks pairwise and combines them with
``math.fsum``, independent of any worker count.

Ball index layout (shared contract):
  - elements of the radius-R ball are numbered breadth first, each sphere
    sorted lexicographically by letter sequence;
  - ``offsets[k]`` is the index of the first length-k word (len radius+2);
  - ``cnt[k] = |S_k| / L`` counts level-k words with a given first letter
    (cnt[0] = 1, padded with 1 at radius+1 so masked gathers stay in bounds);
  - a word is stored conceptually as (first letter, parent), the parent being
    the word with its first letter removed, so left multiplication by a letter
    is O(1) arithmetic: cancel -> parent, extend -> child, and for cyclic
    factors a same-factor merge -> sibling.
``left_mult`` maps -1 to -1 and words leaving the ball to -1; callers only
read function values through these indices, and any word outside the table
provably carries the value 0.
"""

from __future__ import annotations

import math

import numpy as np

FAMILY_FREE = 0
FAMILY_CYCLIC = 1


def _parent_inlevel(family, m, cnt, lv, inl, first):
    """In-level index of the word with its first letter removed (level >= 2)."""
    r = inl - first * cnt[lv]
    if family == FAMILY_FREE:
        blocked_start = (first ^ 1) * cnt[lv - 1]
        blocked_width = cnt[lv - 1]
    else:
        w = m - 1
        blocked_start = (first // w) * (w * cnt[lv - 1])
        blocked_width = w * cnt[lv - 1]
    return r + np.where(r >= blocked_start, blocked_width, 0)


def _parent_index(family, m, offsets, cnt, lv, inl, first):
    w_inl = _parent_inlevel(family, m, cnt, np.maximum(lv, 2), inl, first)
    return np.where(lv == 1, 0, offsets[np.maximum(lv - 1, 0)] + w_inl)


def _child_index(family, m, radius, offsets, cnt, b, lv, inl, first):
    """Index of letter b prepended to the level-lv word; -1 past the radius.
    ``b`` may be a scalar or an array; the prepend must be valid (caller
    guarantees b does not cancel/merge with ``first``)."""
    if family == FAMILY_FREE:
        rank = inl - cnt[lv] * (first > (b ^ 1))
    else:
        w = m - 1
        rank = inl - (w * cnt[lv]) * ((first // w) > (b // w))
    ci = offsets[lv + 1] + b * cnt[lv + 1] + rank
    return np.where(lv >= radius, -1, ci)


def left_mult(idx, b, family, m, radius, offsets, cnt, level_of):
    """Map each table index i to the index of (letter_b . word_i); -1 in, -1
    out, and -1 for products outside the table."""
    idx = np.asarray(idx, dtype=np.int64)
    res = np.full(idx.shape[0], -1, dtype=np.int64)
    sel = np.flatnonzero(idx >= 0)
    if sel.size == 0:
        return res
    i = idx[sel]
    lvl = level_of[i].astype(np.int64)
    out = np.full(i.shape[0], np.int64(-1))

    root = lvl == 0
    if root.any():
        out[root] = offsets[1] + b if radius >= 1 else -1

    nr = ~root
    if nr.any():
        lv = lvl[nr]
        inl = i[nr] - offsets[lv]
        first = inl // cnt[lv]
        o = np.full(lv.shape[0], np.int64(-1))
        if family == FAMILY_FREE:
            cancel = first == (b ^ 1)
            extend = ~cancel
            if cancel.any():
                o[cancel] = _parent_index(family, m, offsets, cnt,
                                          lv[cancel], inl[cancel], first[cancel])
            if extend.any():
                o[extend] = _child_index(family, m, radius, offsets, cnt,
                                         np.int64(b), lv[extend], inl[extend],
                                         first[extend])
        else:
            w = m - 1
            same = (first // w) == (b // w)
            esum = ((b % w) + (first % w) + 2) % m
            cancel = same & (esum == 0)
            sib = same & (esum != 0)
            extend = ~same
            if extend.any():
                o[extend] = _child_index(family, m, radius, offsets, cnt,
                                         np.int64(b), lv[extend], inl[extend],
                                         first[extend])
            if cancel.any():
                o[cancel] = _parent_index(family, m, offsets, cnt,
                                          lv[cancel], inl[cancel], first[cancel])
            if sib.any():
                lv_s = lv[sib]
                b2 = (b // w) * w + (esum[sib] - 1)
                w_inl = _parent_inlevel(family, m, cnt, np.maximum(lv_s, 2),
                                        inl[sib], first[sib])
                w_inl = np.where(lv_s == 1, 0, w_inl)
                pf = w_inl // cnt[np.maximum(lv_s - 1, 0)]
                sib_idx = np.where(
                    lv_s == 1,
                    offsets[1] + b2,
                    _child_index(family, m, radius, offsets, cnt, b2,
                                 np.maximum(lv_s - 1, 1), w_inl, pf))
                o[sib] = sib_idx
        out[nr] = o
    res[sel] = out
    return res


def conv_apply(out, out_size, idx2d, coeffs, g):
    """out[i] = sum_j coeffs[j] * g[idx2d[j, i]] for i < out_size, treating
    index -1 as a zero read.  Terms accumulate in ascending j, matching the
    numba backend's per-element order."""
    res = out[:out_size]
    res[:] = 0.0
    for j in range(coeffs.shape[0]):
        ix = idx2d[j, :out_size]
        valid = ix >= 0
        vals = g[np.where(valid, ix, 0)]
        res += np.where(valid, coeffs[j] * vals, 0.0)


_CHUNK = 1 << 16


def lp_norm_slice(x, n, p) -> float:
    """ell^p norm of x[:n]; p = inf gives the max absolute value.  Values are
    scaled by the max before powering, so large p stays finite."""
    if n == 0:
        return 0.0
    xs = x[:n]
    m = float(np.max(np.abs(xs)))
    if m == 0.0 or p == math.inf:
        return m
    scaled = xs * (1.0 / m)
    if p == 2.0:
        t = scaled * scaled
    elif p == 1.0:
        t = np.abs(scaled)
    else:
        t = np.abs(scaled) ** p
    parts = [float(np.sum(t[i:i + _CHUNK])) for i in range(0, n, _CHUNK)]
    return m * math.fsum(parts) ** (1.0 / p)


def signed_pow_scaled(out, x, n, expo) -> None:
    """out[:n] = sign(x) * (|x| / max|x|)^expo (zero when x[:n] vanishes)."""
    xs = x[:n]
    m = float(np.max(np.abs(xs))) if n else 0.0
    if m == 0.0:
        out[:n] = 0.0
        return
    if expo == 1.0:
        out[:n] = xs * (1.0 / m)
        return
    out[:n] = np.sign(xs) * (np.abs(xs) * (1.0 / m)) ** expo
