"""Arithmetic index tables for balls in the Cayley graph.

Both group families here are tree-like, so the radius-T ball can be indexed
without hashing: spheres are numbered breadth first, each sorted
lexicographically, and a word is recovered from (first letter, parent word).
Left multiplication by a letter is then O(1) index arithmetic (cancel,
extend, or same-factor merge), and left multiplication by a word is a short
chain of letter moves.  When a reduced word u is applied letter by letter,
intermediate lengths never overshoot max(|s|, |u s|), so a chain through the
table is exact: an index of -1 certifies the product lies outside the table.

The table layout contract shared with the kernels is documented in
``_kernels_numpy``.
"""

from __future__ import annotations

import numpy as np

from . import growth
from ._backend import BACKEND_NAME, kernels
from .algebra import SUPPORT_CAP_ENV, SUPPORT_CAP_FLAG, support_cap
from .errors import DomainError, ResourceLimitError
from .words import CYCLIC, FREE, Presentation

_FAMILY = {FREE: 0, CYCLIC: 1}


class BallIndex:
    """Index table for the ball of a given radius."""

    def __init__(self, pres: Presentation, radius: int, max_elements: int | None = None):
        if radius < 0:
            raise DomainError("radius must be nonnegative")
        if max_elements is None:
            max_elements = support_cap()
        hard_max = growth.max_radius(pres)
        eff = radius if hard_max is None else min(radius, hard_max)
        sizes = [growth.sphere_size(pres, k) for k in range(eff + 1)]
        total = sum(sizes)
        if total > max_elements:
            raise ResourceLimitError(
                f"ball of radius {eff} on {pres.descriptor()} has {total} elements, "
                f"over the table cap {max_elements}; raise it with {SUPPORT_CAP_FLAG} "
                f"(env {SUPPORT_CAP_ENV}) or lower the radius",
                flag=SUPPORT_CAP_FLAG, estimate=total, limit=max_elements)
        self.presentation = pres
        self.radius = eff
        self.requested_radius = radius
        self.family = _FAMILY[pres.kind]
        self.m = pres.m if pres.kind == CYCLIC else 0
        self.size = total
        L = pres.alphabet_size
        # offsets[k] = |B_{k-1}|; cnt[k] = |S_k|/L words per first letter.
        # Both padded one past the radius so masked child lookups stay in bounds.
        offsets = np.zeros(eff + 2, np.int64)
        cnt = np.ones(eff + 2, np.int64)
        for k, s in enumerate(sizes):
            offsets[k + 1] = offsets[k] + s
            if k >= 1:
                cnt[k] = s // L
        self.offsets = offsets
        self.cnt = cnt
        self.level_of = np.repeat(np.arange(eff + 1, dtype=np.int8),
                                  np.asarray(sizes, dtype=np.int64))
        self._compose_cache: dict[tuple[int, ...], np.ndarray] = {}

    def size_at(self, r: int) -> int:
        r = min(r, self.radius)
        return int(self.offsets[r + 1])

    # -- scalar paths (python ints; used for word<->index and as the oracle
    #    the vectorized kernels are tested against) ------------------------

    def _left_mult_scalar(self, i: int, b: int) -> int:
        if i < 0:
            return -1
        offsets, cnt = self.offsets, self.cnt
        lv = int(self.level_of[i])
        if lv == 0:
            return int(offsets[1]) + b if self.radius >= 1 else -1
        inl = i - int(offsets[lv])
        first = inl // int(cnt[lv])

        def parent_inlevel():
            r = inl - first * int(cnt[lv])
            if self.family == 0:
                bs, bw = (first ^ 1) * int(cnt[lv - 1]), int(cnt[lv - 1])
            else:
                w = self.m - 1
                bs = (first // w) * (w * int(cnt[lv - 1]))
                bw = w * int(cnt[lv - 1])
            return r + (bw if r >= bs else 0)

        def parent():
            return 0 if lv == 1 else int(offsets[lv - 1]) + parent_inlevel()

        def child(bb, clv, cinl, cfirst):
            if clv >= self.radius:
                return -1
            if self.family == 0:
                rank = cinl - int(cnt[clv]) * (1 if cfirst > (bb ^ 1) else 0)
            else:
                w = self.m - 1
                rank = cinl - (w * int(cnt[clv])) * (1 if (cfirst // w) > (bb // w) else 0)
            return int(offsets[clv + 1]) + bb * int(cnt[clv + 1]) + rank

        if self.family == 0:
            if first == (b ^ 1):
                return parent()
            return child(b, lv, inl, first)
        w = self.m - 1
        if (first // w) != (b // w):
            return child(b, lv, inl, first)
        esum = ((b % w) + (first % w) + 2) % self.m
        if esum == 0:
            return parent()
        b2 = (b // w) * w + (esum - 1)
        if lv == 1:
            return int(offsets[1]) + b2
        w_inl = parent_inlevel()
        pf = w_inl // int(cnt[lv - 1])
        return child(b2, lv - 1, w_inl, pf)

    def word_index(self, letters) -> int:
        """Index of a reduced word (-1 if it falls outside the ball)."""
        i = 0
        for b in reversed(tuple(letters)):
            i = self._left_mult_scalar(i, b)
            if i < 0:
                return -1
        return i

    def index_word(self, i: int) -> tuple[int, ...]:
        letters = []
        while int(self.level_of[i]) > 0:
            lv = int(self.level_of[i])
            inl = i - int(self.offsets[lv])
            first = inl // int(self.cnt[lv])
            letters.append(first)
            # strip the first letter: invert it and multiply
            i = self._left_mult_scalar(i, self.presentation.inv_letter(first))
        return tuple(letters)

    # -- vectorized paths --------------------------------------------------

    def left_mult_indices(self, idx: np.ndarray, b: int) -> np.ndarray:
        return kernels.left_mult(idx, b, self.family, self.m, self.radius,
                                 self.offsets, self.cnt, self.level_of)

    def compose_left_word(self, letters) -> np.ndarray:
        """Index map i -> index of (word . element_i), composed letter by
        letter and cached per word."""
        key = tuple(letters)
        hit = self._compose_cache.get(key)
        if hit is not None:
            return hit
        idx = np.arange(self.size, dtype=np.int64)
        for b in reversed(key):
            idx = self.left_mult_indices(idx, b)
        self._compose_cache[key] = idx
        return idx

    def __repr__(self):
        return (f"<BallIndex {self.presentation.descriptor()} radius={self.radius} "
                f"size={self.size} backend={BACKEND_NAME}>")
