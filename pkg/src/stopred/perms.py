"""Coordinate permutations, the cyclic and Frobenius automorphism families, and transitivity.

Action convention: a permutation ``p`` moves the value at coordinate ``i`` to
coordinate ``p(i)``, so ``apply(p, v)[p(i)] == v[i]`` and an erasure pattern
``E`` maps to ``{p(i) : i in E}``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .codes import LinearCode
from .gf2 import BitMatrix, BitVector, bits_of
from .patterns import ErasurePattern


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``self ∘ other``: apply ``other`` first."""
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            j = self.images[s]
            while j != s:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def permute_mask(self, mask: int) -> int:
        out = 0
        for i in bits_of(mask):
            out |= 1 << self.images[i]
        return out


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``(0,12)(1,13)`` or ``(0 1 2)``; unlisted points are fixed."""
    images = list(range(n))
    seen: set[int] = set()
    body = text.strip()
    if re.sub(r"\([^()]*\)", "", body).strip(" \t*x×"):
        raise ValueError(f"malformed cycle text {text!r}")
    for group in re.findall(r"\(([^()]*)\)", body):
        pts = [int(t) for t in re.split(r"[,\s]+", group.strip()) if t]
        for p in pts:
            if not 0 <= p < n:
                raise ValueError(f"point {p} out of range for degree {n}")
            if p in seen:
                raise ValueError(f"point {p} repeated")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(tuple(images))


def apply(p: Permutation, v):
    """Permute a BitVector, ErasurePattern, or BitMatrix (columns)."""
    if isinstance(v, BitVector):
        if v.n != p.n:
            raise ValueError("degree mismatch")
        return BitVector(v.n, p.permute_mask(v.bits))
    if isinstance(v, ErasurePattern):
        if v.n != p.n:
            raise ValueError("degree mismatch")
        return ErasurePattern.from_mask(v.n, p.permute_mask(v.mask))
    if isinstance(v, BitMatrix):
        if v.ncols != p.n:
            raise ValueError("degree mismatch")
        return BitMatrix(v.ncols, tuple(p.permute_mask(r) for r in v.rows))
    raise TypeError(f"cannot permute {type(v).__name__}")


def pullback(H: BitMatrix, p: Permutation) -> BitMatrix:
    """Matrix whose column ``i`` is column ``p(i)`` of ``H``.

    Peeling ``E`` against the result is the same as peeling ``p(E)`` against ``H``.
    """
    return apply(p.inverse(), H)


@dataclass(frozen=True)
class PermSet:
    n: int
    perms: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perms", tuple(self.perms))
        if any(p.n != self.n for p in self.perms):
            raise ValueError("permutations of unequal degree")
        if len(set(self.perms)) != len(self.perms):
            raise ValueError("duplicate permutations")

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.perms)

    def __getitem__(self, i):
        return self.perms[i]

    def __contains__(self, p) -> bool:
        return p in self.perms


def cyclic_shift(n: int, extended: bool = False) -> Permutation:
    L = n - 1 if extended else n
    return Permutation(tuple((i + 1) % L for i in range(L)) + ((n - 1,) if extended else ()))


def c1_group(n: int, extended: bool = False) -> PermSet:
    """Identity followed by the nontrivial cyclic shifts (coordinate ``n-1`` fixed when extended)."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    g = cyclic_shift(n, extended)
    L = n - 1 if extended else n
    out = [Permutation.identity(n)]
    for _ in range(L - 1):
        out.append(g * out[-1])
    return PermSet(n, tuple(out))


def frobenius(n: int, extended: bool = False) -> Permutation:
    L = n - 1 if extended else n
    if L % 2 == 0:
        raise ValueError("doubling is not invertible for even cycle length")
    return Permutation(tuple((2 * i) % L for i in range(L)) + ((n - 1,) if extended else ()))


def c2_group(n: int, extended: bool = False) -> PermSet:
    """``zeta, zeta^2, ..., zeta^m`` for ``zeta: i -> 2i``; the last element is the identity."""
    z = frobenius(n, extended)
    out = [z]
    while not out[-1].is_identity():
        out.append(z * out[-1])
    return PermSet(n, tuple(out))


def is_automorphism(C: LinearCode, p: Permutation) -> bool:
    if p.n != C.n:
        raise ValueError("degree mismatch")
    return all(C.parity.syndrome(p.permute_mask(g)) == 0 for g in C.generator.rows)


THETA = "(0,12)(1,13)(2,14)(3,15)(4,16)(5,17)(6,18)(7,19)(8,20)(9,21)(10,22)(11,23)"
PI = "(3,6,15,9,21,18,12)(4,7,16,10,22,19,13)(5,8,17,11,23,20,14)"


def wolfmann_set() -> PermSet:
    """The 14 products ``theta^i * pi^j`` (i in 0..1, j in 0..6) on 24 points."""
    theta = parse_cycles(THETA, 24)
    pi = parse_cycles(PI, 24)
    return PermSet(24, tuple((theta ** i) * (pi ** j) for i in range(2) for j in range(7)))


def is_t_transitive(generators: Iterable[Permutation], t: int, n: int) -> bool:
    """Whether the group generated acts transitively on ordered t-tuples of distinct points."""
    if not 1 <= t <= 2:
        raise ValueError("only t in {1, 2} is supported")
    gens = list(generators)
    if any(g.n != n for g in gens):
        raise ValueError("degree mismatch")
    if t > n:
        return False
    start = tuple(range(t))
    seen = {start}
    queue = deque([start])
    while queue:
        tup = queue.popleft()
        for g in gens:
            img = tuple(g.images[i] for i in tup)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    target = 1
    for i in range(t):
        target *= n - i
    return len(seen) == target


def read_perms(path: str) -> PermSet:
    """Header line with the degree, then one cycle-notation permutation per line."""
    with open(path) as fh:
        return parse_perm_text(fh.read())


def parse_perm_text(text: str) -> PermSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty permutation file")
    n = int(lines[0].split()[-1])
    return PermSet(n, tuple(parse_cycles(ln, n) for ln in lines[1:]))


def format_perms(S: PermSet | Sequence[Permutation], n: int | None = None) -> str:
    perms = list(S)
    n = S.n if isinstance(S, PermSet) else n
    return "\n".join([f"degree {n}"] + [str(p) for p in perms]) + "\n"
