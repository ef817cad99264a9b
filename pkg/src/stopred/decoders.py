"""Peeling, automorphism-group (AGD), and classical permutation decoders."""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass
from typing import Sequence

from .codes import LinearCode
from .gf2 import BitMatrix, BitVector, InconsistentSystemError, popcount, solve_erased
from .patterns import ErasurePattern
from .perms import Permutation, PermSet, c1_group, c2_group, is_automorphism


@lru_cache(maxsize=4096)
def _is_aut(C: LinearCode, p: Permutation) -> bool:
    return is_automorphism(C, p)


class ChannelContractError(ValueError):
    """Known (unerased) values violate a parity check, which a BEC cannot produce."""


@dataclass(frozen=True)
class ReceivedWord:
    """Channel output: ``values`` holds known bits, ``erased`` marks erased coordinates."""

    n: int
    values: int = 0
    erased: int = 0

    def __post_init__(self) -> None:
        if (self.values | self.erased) >> self.n:
            raise ValueError("word wider than n")
        object.__setattr__(self, "values", self.values & ~self.erased)

    @classmethod
    def from_str(cls, text: str) -> ReceivedWord:
        text = text.strip()
        values = erased = 0
        for i, ch in enumerate(text):
            if ch == "1":
                values |= 1 << i
            elif ch == "?":
                erased |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad symbol {ch!r}; expected 0, 1 or ?")
        return cls(len(text), values, erased)

    @classmethod
    def from_codeword(cls, c: BitVector, E=()) -> ReceivedWord:
        e = E.mask if isinstance(E, ErasurePattern) else sum(1 << i for i in E)
        return cls(c.n, c.bits, e)

    @property
    def erasures(self) -> ErasurePattern:
        return ErasurePattern.from_mask(self.n, self.erased)

    def permuted(self, p: Permutation) -> ReceivedWord:
        return ReceivedWord(self.n, p.permute_mask(self.values), p.permute_mask(self.erased))

    def __str__(self) -> str:
        return "".join(
            "?" if (self.erased >> i) & 1 else str((self.values >> i) & 1) for i in range(self.n)
        )


@dataclass(frozen=True)
class DecodeOutcome:
    status: str  # "recovered" or "failed"
    codeword: BitVector | None
    residual: ErasurePattern
    perms_tried: int
    iterations: int
    seed: int | None = None

    @property
    def recovered(self) -> bool:
        return self.status == "recovered"

    def summary(self) -> str:
        word = str(self.codeword) if self.codeword is not None else "-"
        return (
            f"{self.status} perms_tried={self.perms_tried} iterations={self.iterations} "
            f"residual={self.residual} word={word}"
        )


def _peel_values(rows: Sequence[int], word: int, erased: int) -> tuple[int, int, int]:
    """Flooding peeling: each round resolves every position pinned by a weight-one check."""
    rounds = 0
    while erased:
        resolved = 0
        for r in rows:
            x = r & erased
            if x and not x & (x - 1) and not resolved & x:
                if popcount(r & word) & 1:
                    word |= x
                resolved |= x
        if not resolved:
            break
        erased &= ~resolved
        rounds += 1
    return word, erased, rounds


def _check_known(rows: Sequence[int], y: ReceivedWord) -> None:
    for r in rows:
        if not r & y.erased and popcount(r & y.values) & 1:
            raise ChannelContractError("a fully known parity check is violated")


def _assert_valid(H: BitMatrix, y: ReceivedWord, c: int) -> None:
    if H.syndrome(c):
        raise AssertionError("recovered word has a nonzero syndrome")
    known = ~y.erased & ((1 << y.n) - 1)
    if (c ^ y.values) & known:
        raise AssertionError("recovered word disagrees with a known position")


def iterative_decode(H: BitMatrix, y: ReceivedWord) -> DecodeOutcome:
    """Peeling decoder for the BEC."""
    if y.n != H.ncols:
        raise ValueError("word length does not match matrix width")
    _check_known(H.rows, y)
    word, erased, rounds = _peel_values(H.rows, y.values, y.erased)
    if erased:
        return DecodeOutcome("failed", None, ErasurePattern.from_mask(y.n, erased), 1, rounds)
    if H.syndrome(word):
        raise ChannelContractError("known values are inconsistent with the code")
    _assert_valid(H, y, word)
    return DecodeOutcome("recovered", BitVector(y.n, word), ErasurePattern(y.n), 1, rounds)


@dataclass(frozen=True)
class Schedule:
    """Non-identity frames tried, in order, after plain peeling fails.

    Each permutation is the total map from received coordinates to the
    decoding frame; the identity frame is always tried first.
    """

    mode: str
    perms: tuple[Permutation, ...] = ()
    seed: int | None = None

    def __post_init__(self) -> None:
        perms = tuple(p for p in self.perms if not p.is_identity())
        if len(set(perms)) != len(perms):
            raise ValueError("schedule repeats a permutation")
        object.__setattr__(self, "perms", perms)

    def frames(self, n: int) -> list[Permutation]:
        return [Permutation.identity(n), *self.perms]


def agd_a_schedule(n: int, extended: bool = False, seed: int = 0) -> Schedule:
    """All nontrivial cyclic shifts in a seeded random order."""
    perms = list(c1_group(n, extended))[1:]
    random.Random(seed).shuffle(perms)
    return Schedule("AGD_A", tuple(perms), seed)


def agd_b_schedule(n: int, extended: bool = False, seed: int = 0) -> Schedule:
    """Shifts in random order, then the doubling maps in random order, no revisits."""
    rng = random.Random(seed)
    c1 = list(c1_group(n, extended))[1:]
    rng.shuffle(c1)
    c2 = [p for p in c2_group(n, extended) if not p.is_identity() and p not in set(c1)]
    rng.shuffle(c2)
    return Schedule("AGD_B", tuple(c1 + c2), seed)


def explicit_schedule(perms: PermSet | Sequence[Permutation]) -> Schedule:
    return Schedule("explicit", tuple(perms))


def agd_decode(
    C: LinearCode,
    H: BitMatrix,
    schedule: Schedule,
    y: ReceivedWord,
    memoryless: bool = False,
) -> DecodeOutcome:
    """Peel; when stuck, move the current word to the next frame and peel again.

    Positions recovered in earlier frames stay recovered unless
    ``memoryless``, in which case each frame restarts from ``y``.
    """
    if y.n != C.n or H.ncols != C.n:
        raise ValueError("length mismatch")
    if any(C.generator.syndrome(h) for h in H.rows):
        raise ValueError("H contains a row outside the dual code")
    for p in schedule.perms:
        if not _is_aut(C, p):
            raise ValueError(f"schedule permutation {p} is not an automorphism")
    _check_known(H.rows, y)

    frame = Permutation.identity(C.n)
    cur = y
    iterations = 0
    tried = 0
    for p in schedule.frames(C.n):
        if memoryless:
            cur = y.permuted(p)
        else:
            cur = cur.permuted(p * frame.inverse())
        frame = p
        tried += 1
        word, erased, rounds = _peel_values(H.rows, cur.values, cur.erased)
        iterations += rounds
        cur = ReceivedWord(C.n, word, erased)
        if not erased:
            break
    back = frame.inverse()
    if cur.erased:
        residual = ErasurePattern.from_mask(C.n, back.permute_mask(cur.erased))
        return DecodeOutcome("failed", None, residual, tried, iterations, schedule.seed)
    if H.syndrome(cur.values):
        raise ChannelContractError("known values are inconsistent with the code")
    c = back.permute_mask(cur.values)
    _assert_valid(C.parity, y, c)
    return DecodeOutcome(
        "recovered", BitVector(C.n, c), ErasurePattern(C.n), tried, iterations, schedule.seed
    )


def ml_decode(H: BitMatrix, y: ReceivedWord) -> DecodeOutcome:
    """Maximum-likelihood erasure decoding by solving for the erased positions."""
    try:
        c = solve_erased(H, BitVector(y.n, y.values), y.erasures)
    except InconsistentSystemError as exc:
        raise ChannelContractError(str(exc)) from None
    if c is None:
        return DecodeOutcome("failed", None, y.erasures, 1, 0)
    _assert_valid(H, y, c.bits)
    return DecodeOutcome("recovered", c, ErasurePattern(y.n), 1, 0)


def check_positions(H_sys: BitMatrix) -> list[int]:
    """Column index of the unit vector for each row of a systematic matrix."""
    unit = {H_sys.column(j): j for j in reversed(range(H_sys.ncols))}
    try:
        return [unit[1 << i] for i in range(H_sys.nrows)]
    except KeyError:
        raise ValueError("matrix has no identity part") from None


def classical_pd_decode(
    C: LinearCode,
    H_sys: BitMatrix,
    pd: PermSet | Sequence[Permutation],
    y: ReceivedWord,
    t: int,
) -> DecodeOutcome:
    """Syndrome-weight permutation decoding on the BSC.

    Correct only when ``2t + 1 <= d``; that precondition is not rechecked here.
    """
    if y.erased:
        raise ValueError("permutation decoding expects a hard-decision word")
    checks = check_positions(H_sys)
    frames = [Permutation.identity(C.n)] + [p for p in pd if not p.is_identity()]
    for p in frames:
        if not _is_aut(C, p):
            raise ValueError(f"{p} is not an automorphism")
    for tried, p in enumerate(frames, start=1):
        w = p.permute_mask(y.values)
        z = H_sys.syndrome(w)
        if popcount(z) <= t:
            for i in range(H_sys.nrows):
                if (z >> i) & 1:
                    w ^= 1 << checks[i]
            c = p.inverse().permute_mask(w)
            if C.parity.syndrome(c):
                raise AssertionError("corrected word is not a codeword")
            return DecodeOutcome("recovered", BitVector(C.n, c), ErasurePattern(C.n), tried, 0)
    return DecodeOutcome("failed", None, ErasurePattern(C.n), len(frames), 0)
