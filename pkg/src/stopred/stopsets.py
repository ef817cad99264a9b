"""Stopping sets, peeling residuals, stopping distance, and undecodable-pattern counts."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels as K
from .codes import LinearCode, cyclic_shift_matrix, lex_key, shift
from .gf2 import BitMatrix, BitVector, BudgetExceededError, popcount, rank, row_reduce
from .patterns import ErasurePattern, as_mask
from .perms import PermSet, pullback

__all__ = [
    "ErasurePattern",
    "HierarchyRecord",
    "StoppingReport",
    "WitnessNotFoundError",
    "count_undecodable",
    "hierarchy_witness",
    "is_stopping_set",
    "peel",
    "stopping_distance",
    "undecodable_profile",
]

PATTERN_BUDGET = 1 << 25
CHUNK = 1 << 18


class WitnessNotFoundError(RuntimeError):
    """No matrix met the requested stopping distance within the search budget."""


def _words(H: BitMatrix) -> np.ndarray:
    if H.ncols > K.MAX_WIDTH:
        raise ValueError(f"compiled kernels support at most {K.MAX_WIDTH} columns")
    return K.to_words(H.rows)


def is_stopping_set(H: BitMatrix, S) -> bool:
    """No row of H restricted to S has weight exactly one (S nonempty)."""
    m = as_mask(S, H.ncols)
    if not m:
        return False
    return all(popcount(r & m) != 1 for r in H.rows)


def peel_mask(rows: Sequence[int], E: int) -> int:
    changed = True
    while changed and E:
        changed = False
        for r in rows:
            x = r & E
            if x and not x & (x - 1):
                E &= ~x
                changed = True
    return E


def peel(H: BitMatrix, E) -> ErasurePattern:
    """Largest stopping set inside ``E``; empty when peeling recovers everything."""
    m = as_mask(E, H.ncols)
    return ErasurePattern.from_mask(H.ncols, peel_mask(H.rows, m))


def _run_chunks(fn, n: int, sigma: int, workers: int) -> list:
    jobs = list(K.chunks(n, sigma, CHUNK))
    if workers <= 1 or len(jobs) == 1:
        return [fn(np.uint64(s), c) for s, c in jobs]
    with ThreadPoolExecutor(workers) as ex:
        return list(ex.map(lambda job: fn(np.uint64(job[0]), job[1]), jobs))


def stopping_distance(H: BitMatrix, bound: int | None = None) -> int | None:
    """Size of the smallest stopping set of size <= ``bound``, else None."""
    n = H.ncols
    bound = n if bound is None else bound
    if bound > n:
        raise ValueError("bound exceeds the number of columns")
    if bound >= 1 and any(H.column(j) == 0 for j in range(n)):
        return 1
    rows = _words(H)
    for sigma in range(2, bound + 1):
        for start, count in K.chunks(n, sigma, CHUNK):
            if K.first_stopping_set(rows, np.uint64(start), count):
                return sigma
    return None


def smallest_stopping_set(H: BitMatrix, bound: int | None = None) -> ErasurePattern | None:
    n = H.ncols
    bound = n if bound is None else bound
    for j in range(n):
        if H.column(j) == 0:
            return ErasurePattern(n, (j,))
    rows = _words(H)
    for sigma in range(2, bound + 1):
        for start, count in K.chunks(n, sigma, CHUNK):
            hit = int(K.first_stopping_set(rows, np.uint64(start), count))
            if hit:
                return ErasurePattern.from_mask(n, hit)
    return None


def frame_stack(H: BitMatrix, perms) -> np.ndarray:
    """Stacked row words of H seen through the identity and then each non-identity permutation."""
    mats = [H] + [pullback(H, p) for p in perms if not p.is_identity()]
    return np.stack([_words(M) for M in mats])


def count_undecodable(
    H: BitMatrix,
    sigma: int,
    mode: str = "peeling",
    perms: PermSet | Sequence | None = None,
    *,
    memoryless: bool = False,
    budget: int = PATTERN_BUDGET,
    workers: int = 1,
) -> int:
    """Number of size-``sigma`` erasure patterns the chosen decoder cannot recover.

    ``peeling``: peel(H, E) is nonempty.  ``ml``: the columns of H on E are
    dependent (H must span the dual code).  ``agd``: peeling fails under the
    identity and then each permutation of ``perms`` in order, with recovered
    positions carried over unless ``memoryless``.
    """
    n = H.ncols
    if not 0 <= sigma <= n:
        raise ValueError("sigma outside 0..n")
    total = comb(n, sigma)
    if total > budget:
        raise BudgetExceededError(f"C({n},{sigma}) = {total} patterns exceed budget {budget}")
    if sigma == 0:
        return 0
    if mode == "peeling":
        rows = _words(H)
        parts = _run_chunks(lambda s, c: K.count_peel_failures(rows, s, c), n, sigma, workers)
    elif mode == "ml":
        basis, _ = row_reduce(H)
        if basis.nrows > 64:
            raise ValueError("ML kernel supports at most 64 independent checks")
        cols = K.to_words(basis.columns())
        parts = _run_chunks(lambda s, c: K.count_rank_deficient(cols, n, s, c), n, sigma, workers)
    elif mode == "agd":
        if perms is None:
            raise ValueError("agd mode needs a permutation schedule")
        stack = frame_stack(H, perms)
        parts = _run_chunks(
            lambda s, c: K.count_frame_failures(stack, s, c, memoryless), n, sigma, workers
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return int(sum(parts))


@dataclass
class StoppingReport:
    matrix: str
    mode: str
    bound: int
    stopping_distance: int | None
    counts: dict[int, int] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["sigma,count,mode,matrix"]
        lines += [f"{s},{c},{self.mode},{self.matrix}" for s, c in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"


def undecodable_profile(
    H: BitMatrix,
    sigmas: Sequence[int],
    mode: str = "peeling",
    perms=None,
    name: str = "H",
    **kw,
) -> StoppingReport:
    counts = {s: count_undecodable(H, s, mode, perms, **kw) for s in sigmas}
    bound = max(sigmas) if sigmas else 0
    sd = stopping_distance(H, bound) if mode == "peeling" else None
    return StoppingReport(name, mode, bound, sd, counts)


@dataclass
class HierarchyRecord:
    level: int
    rows: int
    matrix: BitMatrix
    generator: BitVector
    offsets: tuple[int, ...]
    stopping_distance: int | None  # None: no stopping set up to the level checked

    def summary(self) -> str:
        sd = ">=" + str(self.level) if self.stopping_distance is None else str(self.stopping_distance)
        return (
            f"level={self.level} rows={self.rows} stopping_distance={sd} "
            f"generator={self.generator} offsets={','.join(map(str, self.offsets))}"
        )


def hierarchy_witness(
    C: LinearCode,
    level: int,
    pool: Sequence[BitVector],
    max_rows: int,
    *,
    min_rows: int | None = None,
    random_trials: int = 200,
    seed: int = 0,
) -> HierarchyRecord:
    """Smallest cyclic-shift matrix found with stopping distance >= ``level`` that spans the dual.

    Row counts are tried in increasing order.  For each count, every
    generator (one per cyclic orbit, lexicographic order) is tried with
    consecutive offsets, then ``random_trials`` seeded random offset sets.
    """
    target = C.n - C.k
    L = C.n - 1 if C.extended else C.n
    for g in pool:
        if C.generator.syndrome(g) != 0:
            raise ValueError(f"pool word {g} is not a dual codeword")
    gens: list[BitVector] = []
    seen: set[int] = set()
    for g in sorted(pool, key=lex_key):
        if g.bits in seen:
            continue
        seen.update(shift(g.bits, s, L) for s in range(L))
        gens.append(g)
    if not gens:
        raise ValueError("empty generator pool")
    lo = target if min_rows is None else min_rows
    rng = random.Random(seed)

    def check(g: BitVector, offsets: tuple[int, ...]) -> HierarchyRecord | None:
        M = cyclic_shift_matrix(g, len(offsets), offsets, extended=C.extended)
        if rank(M) != target:
            return None
        if stopping_distance(M, level - 1) is not None:
            return None
        return HierarchyRecord(level, len(offsets), M, g, offsets, stopping_distance(M, level))

    for m in range(lo, min(max_rows, L) + 1):
        for g in gens:
            rec = check(g, tuple(range(m)))
            if rec:
                return rec
        if m < L:
            for _ in range(random_trials):
                g = gens[rng.randrange(len(gens))]
                rec = check(g, tuple(sorted(rng.sample(range(L), m))))
                if rec:
                    return rec
    raise WitnessNotFoundError(
        f"no cyclic-shift matrix with <= {max_rows} rows reached stopping distance {level}"
    )
