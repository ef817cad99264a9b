"""SAD sets: permutation sets that move every small erasure set somewhere peeling succeeds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels as K
from .gf2 import BitMatrix, BudgetExceededError, bits_of, in_row_space, row_reduce
from .patterns import ErasurePattern, as_mask
from .perms import Permutation, PermSet, pullback
from .stopsets import CHUNK, PATTERN_BUDGET, _words, is_stopping_set, peel_mask


class CoverError(ValueError):
    """Some erasure set is resolved by no candidate permutation."""

    def __init__(self, pattern: ErasurePattern):
        super().__init__(f"no candidate resolves {pattern}")
        self.pattern = pattern


def resolves(H: BitMatrix, S, weak: bool = False) -> bool:
    """Whether H can decode erasures on S.

    The default asks that S contain no nonempty stopping set (peeling
    clears it).  ``weak`` only asks that S itself not be a stopping set.
    """
    m = as_mask(S, H.ncols)
    if not m:
        return True
    if weak:
        return not is_stopping_set(H, m)
    return peel_mask(H.rows, m) == 0


@dataclass
class SadResult:
    s: int
    perms: PermSet
    verified: bool
    certificate: dict[tuple[int, ...], int] = field(default_factory=dict)
    counterexample: ErasurePattern | None = None

    def summary(self) -> str:
        return f"s={self.s} size={len(self.perms)} verified={str(self.verified).lower()}"


def _stack(H: BitMatrix, perms: Sequence[Permutation]) -> np.ndarray:
    return np.stack([_words(pullback(H, p)) for p in perms])


def _check_budget(n: int, s: int, budget: int) -> None:
    total = sum(comb(n, b) for b in range(1, s + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} erasure sets exceed budget {budget}")


def _witness(H: BitMatrix, perms: Sequence[Permutation], m: int, weak: bool) -> int | None:
    for i, p in enumerate(perms):
        if resolves(H, p.permute_mask(m), weak):
            return i
    return None


def verify_sad(
    H: BitMatrix,
    S: PermSet | Sequence[Permutation],
    s: int,
    *,
    certificate_samples: int = 0,
    seed: int = 0,
    weak: bool = False,
    budget: int = PATTERN_BUDGET,
) -> SadResult:
    """Exhaustively check that every b-set, 1 <= b <= s, has a resolving image under some member of S.

    A seeded sample of ``certificate_samples`` sets gets its witness index recorded.
    """
    n = H.ncols
    perms = list(S)
    pset = S if isinstance(S, PermSet) else PermSet(n, tuple(perms))
    _check_budget(n, s, budget)
    if not perms:
        bad = None if s < 1 else ErasurePattern(n, (0,))
        return SadResult(s, pset, s < 1, counterexample=bad)
    stack = _stack(H, perms)
    for b in range(1, s + 1):
        for start, count in K.chunks(n, b, CHUNK):
            hit = int(K.first_frame_failure(stack, np.uint64(start), count, weak))
            if hit:
                return SadResult(s, pset, False, counterexample=ErasurePattern.from_mask(n, hit))
    cert: dict[tuple[int, ...], int] = {}
    rng = random.Random(seed)
    for _ in range(certificate_samples):
        b = rng.randint(1, s)
        B = tuple(sorted(rng.sample(range(n), b)))
        cert[B] = _witness(H, perms, sum(1 << i for i in B), weak)
    return SadResult(s, pset, True, cert)


def _unresolved_universe(H: BitMatrix, s: int, weak: bool) -> np.ndarray:
    rows = _words(H)
    found = []
    for b in range(1, s + 1):
        for start, count in K.chunks(H.ncols, b, CHUNK):
            out = np.empty(count, dtype=np.uint64)
            m = K.collect_unresolved(rows, np.uint64(start), count, out, weak)
            found.append(out[:m])
    return np.concatenate(found) if found else np.empty(0, dtype=np.uint64)


def greedy_sad(
    H: BitMatrix,
    candidates: PermSet | Sequence[Permutation],
    s: int,
    *,
    weak: bool = False,
    budget: int = PATTERN_BUDGET,
) -> SadResult:
    """Greedy set cover of the sets the identity leaves unresolved.

    The identity is always the first member.  Each round adds the candidate
    resolving the most still-uncovered sets, ties going to the earlier
    candidate.  The certificate maps every covered set to the index of its
    witness in the returned set.
    """
    n = H.ncols
    _check_budget(n, s, budget)
    eps = Permutation.identity(n)
    chosen = [eps]
    universe = _unresolved_universe(H, s, weak)
    cands = [p for p in candidates if not p.is_identity()]
    if universe.size == 0:
        return SadResult(s, PermSet(n, (eps,)), True)
    if cands:
        cover = np.stack([K.resolved_flags(_words(pullback(H, p)), universe, weak) for p in cands])
    else:
        cover = np.zeros((0, universe.size), dtype=bool)
    reachable = cover.any(axis=0)
    if not reachable.all():
        bad = int(universe[np.argmin(reachable)])
        raise CoverError(ErasurePattern.from_mask(n, bad))
    uncovered = np.ones(universe.size, dtype=bool)
    witness = np.zeros(universe.size, dtype=np.int64)
    while uncovered.any():
        gains = (cover & uncovered).sum(axis=1)
        best = int(np.argmax(gains))
        newly = cover[best] & uncovered
        witness[newly] = len(chosen)
        chosen.append(cands[best])
        uncovered &= ~cover[best]
    cert = {tuple(bits_of(int(m))): int(w) for m, w in zip(universe, witness)}
    result = verify_sad(H, chosen, s, weak=weak, budget=budget)
    result.certificate = cert
    return result


def expand_by_perms(H: BitMatrix, S: PermSet | Sequence[Permutation]) -> BitMatrix:
    """Stack one column-permuted copy of H per permutation, dropping repeated rows.

    The copy for ``p`` peels ``E`` exactly as H peels ``p(E)``.
    """
    basis, _ = row_reduce(H)
    out: list[int] = []
    for p in S:
        P = pullback(H, p)
        if any(not in_row_space(r, basis.rows) for r in P.rows):
            raise ValueError(f"{p} is not an automorphism of the code of H")
        out.extend(P.rows)
    return BitMatrix(H.ncols, tuple(dict.fromkeys(out)))

