"""Erasure patterns: sorted coordinate sets over a fixed ambient length."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .gf2 import bits_of, mask_of


@dataclass(frozen=True)
class ErasurePattern:
    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise ValueError("repeated index in erasure pattern")
        if idx and not (0 <= idx[0] and idx[-1] < self.n):
            raise IndexError(f"index out of range for length {self.n}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> ErasurePattern:
        return cls(n, tuple(bits_of(mask)))

    @classmethod
    def of(cls, n: int, indices: Iterable[int]) -> ErasurePattern:
        return cls(n, tuple(indices))

    @property
    def mask(self) -> int:
        return mask_of(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"


def as_mask(E, n: int | None = None) -> int:
    """Bitmask of an ErasurePattern, an int mask, or an iterable of indices."""
    if isinstance(E, ErasurePattern):
        if n is not None and E.n != n:
            raise ValueError(f"pattern length {E.n} differs from {n}")
        return E.mask
    if isinstance(E, int):
        m = E
    else:
        m = mask_of(E)
    if n is not None and m >> n:
        raise IndexError(f"index out of range for length {n}")
    return m
