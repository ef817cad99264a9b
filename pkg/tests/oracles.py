"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import random
from itertools import product


def weight_one(x: int) -> bool:
    return x != 0 and x & (x - 1) == 0


def random_order_peel(rows, E: int, rng: random.Random) -> int:
    """Remove one peelable position at a time, chosen uniformly at random."""
    while True:
        cands = sorted({r & E for r in rows if weight_one(r & E)})
        if not cands:
            return E
        E &= ~rng.choice(cands)


def is_stopping(rows, S: int) -> bool:
    return S != 0 and not any(weight_one(r & S) for r in rows)


def submasks(E: int):
    s = E
    while s:
        yield s
        s = (s - 1) & E


def largest_stopping_subset(rows, E: int) -> int:
    """Union of all stopping sets inside E, which is itself the maximal one."""
    out = 0
    for S in submasks(E):
        if is_stopping(rows, S):
            out |= S
    return out


def codewords(G) -> list[int]:
    out = []
    for coeffs in product((0, 1), repeat=G.nrows):
        w = 0
        for c, r in zip(coeffs, G.rows):
            if c:
                w ^= r
        out.append(w)
    return out


def ml_undecodable(words, E: int) -> bool:
    return any(w and w & ~E == 0 for w in words)
