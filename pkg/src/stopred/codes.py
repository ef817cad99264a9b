"""Binary linear codes, cyclic orbit generators, and redundant parity-check matrices.

Polynomials over GF(2) are ints with bit ``i`` holding the coefficient of
``x**i``; codeword coordinate ``i`` corresponds to ``x**i``, so multiplying by
``x`` is the cyclic shift ``(c0, ..., c_{n-1}) -> (c_{n-1}, c0, ..., c_{n-2})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf2 import (
    BitMatrix,
    BitVector,
    BudgetExceededError,
    in_row_space,
    null_space,
    popcount,
    rank,
    reverse_bits,
    row_reduce,
)

ENUM_BUDGET = 1 << 16


# -- polynomial arithmetic ---------------------------------------------------

def poly_deg(p: int) -> int:
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = poly_deg(b)
    while a and poly_deg(a) >= db:
        s = poly_deg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def parse_poly(text: str) -> int:
    """Parse a generator polynomial, highest degree on the left.

    Accepts ``0b``/``0o`` prefixes; unprefixed text is binary when it is made
    of 0/1 only and octal otherwise.
    """
    t = text.strip().lower().replace("_", "")
    if t.startswith("0b"):
        return int(t[2:], 2)
    if t.startswith("0o"):
        return int(t[2:], 8)
    if set(t) <= {"0", "1"}:
        return int(t, 2)
    return int(t, 8)


def parse_octal_word(text: str, n: int, leftmost: str = "first") -> BitVector:
    """Read an octal string (MSB on the left) as an ``n``-bit word.

    Surplus leading bits of the octal expansion must be zero and are dropped.
    ``leftmost="first"`` maps the leftmost remaining bit to coordinate 0;
    ``"last"`` maps it to coordinate ``n - 1`` (polynomial reading).
    """
    digits = text.strip().strip("[]")
    bits = "".join(format(int(d, 8), "03b") for d in digits)
    extra = len(bits) - n
    if extra < 0:
        bits = "0" * -extra + bits
    elif "1" in bits[:extra]:
        raise ValueError(f"octal word {text!r} does not fit in {n} bits")
    else:
        bits = bits[extra:]
    if leftmost == "first":
        return BitVector.from_str(bits)
    if leftmost == "last":
        return BitVector.from_str(bits[::-1])
    raise ValueError("leftmost must be 'first' or 'last'")


def cyclotomic_coset(s: int, n: int) -> list[int]:
    out = [s % n]
    x = (2 * s) % n
    while x != out[0]:
        out.append(x)
        x = (2 * x) % n
    return out


def _gf_mul(a: int, b: int, prim: int, m: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= prim
    return out


def minimal_polynomial(i: int, prim: int) -> int:
    """Minimal polynomial over GF(2) of alpha**i, alpha a root of ``prim``."""
    m = poly_deg(prim)
    n = (1 << m) - 1
    alpha_pow = [1]
    for _ in range(n - 1):
        alpha_pow.append(_gf_mul(alpha_pow[-1], 2, prim, m))
    # coefficients in GF(2^m), lowest degree first
    coeffs = [1]
    for e in cyclotomic_coset(i, n):
        root = alpha_pow[e % n]
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] ^= c
            nxt[d] ^= _gf_mul(c, root, prim, m)
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise ArithmeticError("minimal polynomial left GF(2)")
    return sum(c << d for d, c in enumerate(coeffs))


# -- codes -------------------------------------------------------------------

def lex_key(word: BitVector | int, n: int | None = None) -> int:
    """Sort key ordering words lexicographically by (c0, c1, ..., c_{n-1})."""
    if isinstance(word, BitVector):
        return reverse_bits(word.bits, word.n)
    return reverse_bits(word, n)


@dataclass(frozen=True)
class LinearCode:
    """An ``[n, k]`` binary code with a generator and a full-rank parity matrix.

    ``extended`` marks an overall parity bit at coordinate ``n - 1`` whose
    companion cyclic action rotates coordinates ``0..n-2`` only.
    """

    n: int
    k: int
    generator: BitMatrix
    parity: BitMatrix
    cyclic: bool = False
    extended: bool = False
    name: str = ""

    def __post_init__(self) -> None:
        G, H = self.generator, self.parity
        if G.ncols != self.n or H.ncols != self.n:
            raise ValueError("matrix width differs from n")
        if G.nrows != self.k or rank(G) != self.k:
            raise ValueError("generator rows must be k independent vectors")
        if H.nrows != self.n - self.k or rank(H) != self.n - self.k:
            raise ValueError("parity matrix must have n-k independent rows")
        if any(H.syndrome(g) for g in G.rows):
            raise ValueError("G H^T != 0")
        if self.cyclic:
            L = self.n - 1 if self.extended else self.n
            if any(H.syndrome(shift(g, 1, L)) for g in G.rows):
                raise ValueError("code is not invariant under the cyclic shift")
        if self.extended and any(popcount(g) & 1 for g in G.rows):
            raise ValueError("extended code has odd-weight codewords")

    @classmethod
    def from_generator(cls, G: BitMatrix, **kw) -> LinearCode:
        return cls(G.ncols, G.nrows, G, null_space(G), **kw)

    @classmethod
    def from_parity(cls, H: BitMatrix, **kw) -> LinearCode:
        G = null_space(H)
        H_basis, _ = row_reduce(H)
        return cls(H.ncols, G.nrows, G, H_basis if H_basis.nrows != H.nrows else H, **kw)

    def contains(self, word: BitVector | int) -> bool:
        return self.parity.syndrome(word) == 0

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[int]:
        """All codewords as ints, in Gray-code order."""
        if 1 << self.k > budget:
            raise BudgetExceededError(f"2^{self.k} codewords exceed budget {budget}")
        rows = self.generator.rows
        w = 0
        yield w
        for i in range(1, 1 << self.k):
            w ^= rows[(i & -i).bit_length() - 1]
            yield w

    def weight_distribution(self, budget: int = ENUM_BUDGET) -> dict[int, int]:
        counts = np.bincount(
            np.fromiter((popcount(c) for c in self.codewords(budget)), dtype=np.int64),
            minlength=self.n + 1,
        )
        return {w: int(c) for w, c in enumerate(counts) if c}

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        return min(w for w in self.weight_distribution(budget) if w)

    def encode(self, message: Sequence[int]) -> BitVector:
        if len(message) != self.k:
            raise ValueError("message length differs from k")
        w = 0
        for b, g in zip(message, self.generator.rows):
            if b:
                w ^= g
        return BitVector(self.n, w)


def shift(word: int, s: int, length: int) -> int:
    """Rotate the low ``length`` bits of ``word`` by ``s`` (coordinate i -> i+s); higher bits stay."""
    s %= length
    full = (1 << length) - 1
    low = word & full
    return (word & ~full) | (((low << s) | (low >> (length - s))) & full)


def cyclic_code(n: int, g: int | str, name: str = "") -> LinearCode:
    """Cyclic code of length ``n`` generated by ``g(x)``."""
    if isinstance(g, str):
        g = parse_poly(g)
    if g == 0:
        raise ValueError("zero generator polynomial")
    h, r = poly_divmod((1 << n) | 1, g)
    if r:
        raise ValueError("generator polynomial does not divide x^n - 1")
    k = n - poly_deg(g)
    G = BitMatrix(n, tuple(g << i for i in range(k)))
    h_rev = reverse_bits(h, k + 1)
    H = BitMatrix(n, tuple(h_rev << i for i in range(n - k)))
    return LinearCode(n, k, G, H, cyclic=True, name=name or f"cyclic[{n},{k}]")


def dual(C: LinearCode) -> LinearCode:
    even = not any(popcount(h) & 1 for h in C.parity.rows)
    return LinearCode(
        C.n,
        C.n - C.k,
        C.parity,
        C.generator,
        cyclic=C.cyclic,
        extended=C.extended and even,
        name=f"dual({C.name})" if C.name else "",
    )


def extend(C: LinearCode) -> LinearCode:
    """Append an overall parity bit at coordinate ``n``."""
    n = C.n
    G = BitMatrix(n + 1, tuple(g | ((popcount(g) & 1) << n) for g in C.generator.rows))
    H = BitMatrix(n + 1, C.parity.rows + ((1 << (n + 1)) - 1,))
    return LinearCode(
        n + 1, C.k, G, H, cyclic=C.cyclic, extended=True,
        name=f"ext({C.name})" if C.name else "",
    )


def golay24_wolfmann() -> BitMatrix:
    """The 12x24 matrix [I12 | M] with M built from powers of a 3x3 block."""
    A = np.array([[1, 1, 1], [1, 0, 0], [1, 0, 1]], dtype=np.int64)
    I3 = np.eye(3, dtype=np.int64)
    A2 = (A @ A) % 2
    A4 = (A2 @ A2) % 2
    M = np.block([
        [I3, A, A2, A4],
        [A, I3, A4, A2],
        [A2, A4, I3, A],
        [A4, A2, A, I3],
    ])
    return BitMatrix.from_numpy(np.hstack([np.eye(12, dtype=np.int64), M]))


def hamming7() -> LinearCode:
    return cyclic_code(7, 0b1011, name="hamming[7,4]")


GOLAY23_GENERATOR = 0b110001110101  # x^11+x^10+x^6+x^5+x^4+x^2+1


def golay23() -> LinearCode:
    return cyclic_code(23, GOLAY23_GENERATOR, name="golay[23,12]")


def golay24_extended() -> LinearCode:
    return extend(golay23())


def golay24() -> LinearCode:
    """The [24,12,8] code whose parity matrix is the Wolfmann matrix."""
    return LinearCode.from_parity(golay24_wolfmann(), name="golay[24,12]")


BCH31_PRIMITIVE = 0b100101  # x^5 + x^2 + 1


def bch31_16_generator() -> int:
    g = 1
    for i in (1, 3, 5):
        g = poly_mul(g, minimal_polynomial(i, BCH31_PRIMITIVE))
    return g


def bch31_16() -> LinearCode:
    """The triple-error-correcting primitive BCH code of length 31."""
    return cyclic_code(31, bch31_16_generator(), name="bch[31,16]")


def min_weight_words(C: LinearCode, w: int, budget: int = ENUM_BUDGET) -> list[BitVector]:
    """All codewords of weight exactly ``w``, sorted lexicographically."""
    if w < 1:
        raise ValueError("weight must be positive")
    words = [c for c in C.codewords(budget) if popcount(c) == w]
    words.sort(key=lambda c: lex_key(c, C.n))
    return [BitVector(C.n, c) for c in words]


@dataclass(frozen=True)
class Cog:
    """Representative of one orbit of words under the (extended) cyclic shift."""

    representative: BitVector
    orbit_size: int
    extended: bool = False

    @property
    def cycle_length(self) -> int:
        n = self.representative.n
        return n - 1 if self.extended else n

    def orbit(self) -> list[BitVector]:
        v = self.representative
        return [BitVector(v.n, shift(v.bits, s, self.cycle_length)) for s in range(self.orbit_size)]


def cogs(words: Sequence[BitVector], n: int, extended: bool = False) -> list[Cog]:
    """Partition shift-closed ``words`` into cyclic orbits.

    Each orbit is represented by its lexicographically smallest member and
    the cogs come back sorted by representative.
    """
    if any(w.n != n for w in words):
        raise ValueError("words must all have length n")
    L = n - 1 if extended else n
    pool = {w.bits for w in words}
    seen: set[int] = set()
    out = []
    for c in sorted(pool, key=lambda x: lex_key(x, n)):
        if c in seen:
            continue
        orbit = {shift(c, s, L) for s in range(L)}
        missing = orbit - pool
        if missing:
            raise ValueError(f"input is not closed under cyclic shifts (missing {len(missing)} words)")
        seen |= orbit
        out.append(Cog(BitVector(n, c), len(orbit), extended))
    return out


def cog_matrix(cog_list: Sequence[Cog], target_rows: int) -> BitMatrix:
    """A full-rank matrix with one member from each of ``target_rows`` cog orbits.

    Greedy in cog order: each cog contributes its representative if that
    raises the rank, otherwise the first shift of it that does; cogs whose
    whole orbit lies in the current span are skipped.
    """
    if len(cog_list) < target_rows:
        raise ValueError(f"{len(cog_list)} cogs cannot fill {target_rows} rows")
    n = cog_list[0].representative.n
    chosen: list[int] = []
    for c in cog_list:
        for s in range(c.orbit_size):
            w = shift(c.representative.bits, s, c.cycle_length)
            if not in_row_space(w, chosen):
                chosen.append(w)
                break
        if len(chosen) == target_rows:
            return BitMatrix(n, tuple(chosen))
    raise ValueError(f"cogs span only rank {len(chosen)} < {target_rows}")


def orbit_matrix(cog_list: Sequence[Cog], n: int | None = None, extended: bool | None = None) -> BitMatrix:
    """Every cyclic shift of every cog, duplicates removed, in cog then shift order."""
    if not cog_list:
        raise ValueError("no cogs")
    n = cog_list[0].representative.n if n is None else n
    rows = []
    for c in cog_list:
        ext = c.extended if extended is None else extended
        L = n - 1 if ext else n
        rows.extend(shift(c.representative.bits, s, L) for s in range(L))
    return BitMatrix(n, tuple(dict.fromkeys(rows)))


def cyclic_shift_matrix(
    g: BitVector,
    m: int,
    offsets: Sequence[int] | None = None,
    extended: bool = False,
) -> BitMatrix:
    """Rows ``g`` shifted by each offset (default ``0..m-1``)."""
    L = g.n - 1 if extended else g.n
    if not 1 <= m <= L:
        raise ValueError(f"row count {m} outside 1..{L}")
    offsets = list(range(m)) if offsets is None else [o % L for o in offsets]
    if len(offsets) != m:
        raise ValueError("need exactly m offsets")
    if len(set(offsets)) != m:
        raise ValueError("duplicate offsets")
    return BitMatrix(g.n, tuple(shift(g.bits, o, L) for o in offsets))


def format_cogs(cog_list: Sequence[Cog]) -> str:
    """Matrix-file text of the representatives followed by an orbit-size line per row."""
    n = cog_list[0].representative.n
    lines = [f"{len(cog_list)} {n}"]
    lines += [str(c.representative) for c in cog_list]
    lines += [f"orbit {c.orbit_size}" for c in cog_list]
    return "\n".join(lines) + "\n"
