"""Compiled inner loops over single-word (uint64) bitsets.

Every kernel enumerates k-subsets of columns in colexicographic order using
Gosper's successor, starting from an explicit mask so callers can split the
combination space into contiguous ranges.  Widths are limited to 63 columns.
"""

from __future__ import annotations

from math import comb

import numpy as np
from numba import njit

MAX_WIDTH = 63

ZERO = np.uint64(0)
ONE = np.uint64(1)
TWO = np.uint64(2)


def to_words(ints) -> np.ndarray:
    return np.array([int(x) for x in ints], dtype=np.uint64)


def colex_unrank(rank: int, n: int, k: int) -> int:
    """Mask of the ``rank``-th k-subset of range(n) in colex order."""
    if not 0 <= rank < comb(n, k):
        raise ValueError("rank out of range")
    mask = 0
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        mask |= 1 << c
        rank -= comb(c, i)
    return mask


def chunks(n: int, k: int, size: int = 1 << 20):
    """Yield ``(start_mask, count)`` ranges covering all k-subsets of range(n)."""
    total = comb(n, k)
    for lo in range(0, total, size):
        yield colex_unrank(lo, n, k), min(size, total - lo)


@njit(cache=True, nogil=True)
def next_comb(x):
    c = x & (~x + ONE)
    r = x + c
    return (((r ^ x) >> TWO) // c) | r


@njit(cache=True, nogil=True)
def peel(rows, E):
    """Residual erasure mask after exhaustive peeling of ``E`` by ``rows``."""
    changed = True
    while changed and E != ZERO:
        changed = False
        for i in range(rows.shape[0]):
            x = rows[i] & E
            if x != ZERO and (x & (x - ONE)) == ZERO:
                E = E & ~x
                changed = True
    return E


@njit(cache=True, nogil=True)
def is_stopping(rows, S):
    for i in range(rows.shape[0]):
        x = rows[i] & S
        if x != ZERO and (x & (x - ONE)) == ZERO:
            return False
    return S != ZERO


@njit(cache=True, nogil=True)
def frames_residual(stack, E, memoryless):
    """Residual after trying each frame of ``stack`` in order.

    Partial progress carries over between frames unless ``memoryless``, in
    which case every frame starts from ``E``.  Zero means decoded.
    """
    cur = E
    for f in range(stack.shape[0]):
        start = E if memoryless else cur
        cur = peel(stack[f], start)
        if cur == ZERO:
            return ZERO
    return cur


@njit(cache=True, nogil=True)
def columns_independent(cols, n, E, vec, piv):
    # incremental elimination keyed on lowest set bit
    k = 0
    for j in range(n):
        if (E >> np.uint64(j)) & ONE:
            v = cols[j]
            for i in range(k):
                if v & piv[i]:
                    v ^= vec[i]
            if v == ZERO:
                return False
            vec[k] = v
            piv[k] = v & (~v + ONE)
            k += 1
    return True


@njit(cache=True, nogil=True)
def count_peel_failures(rows, start, count):
    x = start
    fails = 0
    for t in range(count):
        if peel(rows, x) != ZERO:
            fails += 1
        if t + 1 < count:
            x = next_comb(x)
    return fails


@njit(cache=True, nogil=True)
def count_rank_deficient(cols, n, start, count):
    vec = np.empty(64, dtype=np.uint64)
    piv = np.empty(64, dtype=np.uint64)
    x = start
    fails = 0
    for t in range(count):
        if not columns_independent(cols, n, x, vec, piv):
            fails += 1
        if t + 1 < count:
            x = next_comb(x)
    return fails


@njit(cache=True, nogil=True)
def count_frame_failures(stack, start, count, memoryless):
    x = start
    fails = 0
    for t in range(count):
        if frames_residual(stack, x, memoryless) != ZERO:
            fails += 1
        if t + 1 < count:
            x = next_comb(x)
    return fails


@njit(cache=True, nogil=True)
def count_stopping_sets(rows, start, count):
    x = start
    hits = 0
    for t in range(count):
        if is_stopping(rows, x):
            hits += 1
        if t + 1 < count:
            x = next_comb(x)
    return hits


@njit(cache=True, nogil=True)
def first_stopping_set(rows, start, count):
    x = start
    for t in range(count):
        if is_stopping(rows, x):
            return x
        if t + 1 < count:
            x = next_comb(x)
    return ZERO


@njit(cache=True, nogil=True)
def first_frame_failure(stack, start, count, weak):
    """First mask no frame resolves; ``weak`` only asks that the image not be a stopping set."""
    x = start
    for t in range(count):
        ok = False
        for f in range(stack.shape[0]):
            if weak:
                if not is_stopping(stack[f], x):
                    ok = True
                    break
            elif peel(stack[f], x) == ZERO:
                ok = True
                break
        if not ok:
            return x
        if t + 1 < count:
            x = next_comb(x)
    return ZERO


@njit(cache=True, nogil=True)
def collect_unresolved(rows, start, count, out, weak):
    x = start
    m = 0
    for t in range(count):
        if weak:
            bad = is_stopping(rows, x)
        else:
            bad = peel(rows, x) != ZERO
        if bad:
            out[m] = x
            m += 1
        if t + 1 < count:
            x = next_comb(x)
    return m


@njit(cache=True, nogil=True)
def resolved_flags(rows, masks, weak):
    out = np.zeros(masks.shape[0], dtype=np.bool_)
    for i in range(masks.shape[0]):
        if weak:
            out[i] = not is_stopping(rows, masks[i])
        else:
            out[i] = peel(rows, masks[i]) == ZERO
    return out
