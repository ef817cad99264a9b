"""Dense GF(2) vectors and matrices stored as Python int bitsets.

Coordinate ``j`` of a vector (or column ``j`` of a matrix row) lives in bit
``j`` of the integer, so bit 0 is the leftmost coordinate when printed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class InconsistentSystemError(ValueError):
    """The known part of a word cannot be completed to any codeword."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int) -> list[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def reverse_bits(x: int, n: int) -> int:
    return int(format(x, f"0{n}b")[::-1], 2) if n else 0


@dataclass(frozen=True)
class BitVector:
    """A binary word of length ``n``; ``bits`` holds coordinate ``i`` at bit ``i``."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("vector length must be positive")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits do not fit in length {self.n}")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        return cls(len(values), mask_of(i for i, v in enumerate(values) if v))

    @classmethod
    def from_str(cls, text: str) -> BitVector:
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls.from_list([int(c) for c in text])

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> list[int]:
        return bits_of(self.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def dot(self, other: BitVector) -> int:
        return popcount(self.bits & other.bits) & 1

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.to_list())

    def __xor__(self, other: BitVector) -> BitVector:
        if other.n != self.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """Row-major binary matrix; each row is an int bitset of width ``ncols``."""

    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.ncols < 0:
            raise ValueError("negative column count")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row {r:b} wider than {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not rows:
                raise ValueError("cannot infer width of an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(ncols, tuple(mask_of(i for i, v in enumerate(r) if v) for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        return cls.from_lists([[int(c) for c in r.strip()] for r in rows])

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> BitMatrix:
        if not vectors:
            raise ValueError("no vectors")
        n = vectors[0].n
        if any(v.n != n for v in vectors):
            raise ValueError("vectors of unequal length")
        return cls(n, tuple(v.bits for v in vectors))

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> BitMatrix:
        arr = np.asarray(arr)
        return cls.from_lists((arr % 2).astype(int).tolist(), ncols=arr.shape[1])

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(ncols, (0,) * nrows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> int:
        """Column ``j`` as a bitset over row indices."""
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                c |= 1 << i
        return c

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.nrows, tuple(self.columns()))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.ncols != self.ncols:
            raise ValueError("width mismatch")
        return BitMatrix(self.ncols, self.rows + other.rows)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if other.nrows != self.nrows:
            raise ValueError("height mismatch")
        return BitMatrix(
            self.ncols + other.ncols,
            tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows)),
        )

    def drop_zero_rows(self) -> BitMatrix:
        return BitMatrix(self.ncols, tuple(r for r in self.rows if r))

    def dedup_rows(self) -> BitMatrix:
        """Remove repeated rows, keeping first occurrences in order."""
        return BitMatrix(self.ncols, tuple(dict.fromkeys(self.rows)))

    def syndrome(self, word: BitVector | int) -> int:
        """``H @ word`` as a bitset over row indices."""
        w = word.bits if isinstance(word, BitVector) else word
        s = 0
        for i, r in enumerate(self.rows):
            if popcount(r & w) & 1:
                s |= 1 << i
        return s

    def __mul__(self, other: BitMatrix) -> BitMatrix:
        """Matrix product over GF(2)."""
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        out = []
        for r in self.rows:
            acc = 0
            for j in bits_of(r):
                acc ^= other.rows[j]
            out.append(acc)
        return BitMatrix(other.ncols, tuple(out))

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.nrows))


def _as_indices(I) -> list[int]:
    if hasattr(I, "indices"):
        return list(I.indices)
    return sorted(I)


def rank(M: BitMatrix) -> int:
    """GF(2) rank of ``M``."""
    return len(_xor_basis(M.rows))


def _xor_basis(rows: Iterable[int]) -> dict[int, int]:
    # leading-bit -> basis vector
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in basis:
                basis[lead] = r
                break
            r ^= basis[lead]
    return basis


def in_row_space(v: int | BitVector, rows: Iterable[int]) -> bool:
    x = v.bits if isinstance(v, BitVector) else v
    basis = _xor_basis(rows)
    while x:
        lead = x.bit_length() - 1
        if lead not in basis:
            return False
        x ^= basis[lead]
    return True


def same_row_space(A: BitMatrix, B: BitMatrix) -> bool:
    if A.ncols != B.ncols:
        return False
    ra = rank(A)
    return ra == rank(B) and rank(A.vstack(B)) == ra


def row_reduce(M: BitMatrix, keep_zero_rows: bool = False) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns.

    Columns are scanned left to right (bit 0 first); the pivot for a column is
    the lowest-indexed remaining row with a one there.  Zero rows are dropped
    unless ``keep_zero_rows`` is set, in which case the shape is preserved.
    """
    work = list(M.rows)
    pivots: list[int] = []
    top = 0
    for col in range(M.ncols):
        bit = 1 << col
        piv = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    if not keep_zero_rows:
        work = work[:top]
    return BitMatrix(M.ncols, tuple(work)), pivots


def null_space(M: BitMatrix) -> BitMatrix:
    """A basis of ``{x : M x = 0}`` as matrix rows."""
    R, pivots = row_reduce(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = 1 << f
        for r, p in zip(R.rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(M.ncols, tuple(basis))


def restrict(M: BitMatrix, I, drop_zero_rows: bool = False) -> BitMatrix:
    """Submatrix on the columns ``I`` (in increasing index order)."""
    idx = _as_indices(I)
    for j in idx:
        if not 0 <= j < M.ncols:
            raise IndexError(f"column {j} out of range for width {M.ncols}")
    out = []
    for r in M.rows:
        v = 0
        for new, old in enumerate(idx):
            if (r >> old) & 1:
                v |= 1 << new
        out.append(v)
    R = BitMatrix(len(idx), tuple(out))
    return R.drop_zero_rows() if drop_zero_rows else R


def solve_erased(H: BitMatrix, known: BitVector, E) -> BitVector | None:
    """Complete ``known`` on the erased positions ``E`` to a codeword of ker(H).

    Returns the unique completion, or None when several codewords agree with
    the known part.  Values of ``known`` inside ``E`` are ignored.  Raises
    InconsistentSystemError when no codeword agrees with the known part.
    """
    if known.n != H.ncols:
        raise ValueError("word length does not match matrix width")
    idx = _as_indices(E)
    emask = mask_of(idx)
    base = known.bits & ~emask
    m = len(idx)
    # each equation: bits 0..m-1 unknown coefficients, bit m right-hand side
    eqs = []
    for r in H.rows:
        coeff = 0
        for new, old in enumerate(idx):
            if (r >> old) & 1:
                coeff |= 1 << new
        rhs = popcount(r & base) & 1
        eqs.append(coeff | (rhs << m))
    top = 0
    pivots = []
    for col in range(m):
        bit = 1 << col
        piv = next((i for i in range(top, len(eqs)) if eqs[i] & bit), None)
        if piv is None:
            continue
        eqs[top], eqs[piv] = eqs[piv], eqs[top]
        for i in range(len(eqs)):
            if i != top and eqs[i] & bit:
                eqs[i] ^= eqs[top]
        pivots.append(col)
        top += 1
    if any(e == 1 << m for e in eqs[top:]):
        raise InconsistentSystemError("known positions violate a parity check")
    if top < m:
        return None
    word = base
    for row, col in zip(eqs, pivots):
        if (row >> m) & 1:
            word |= 1 << idx[col]
    return BitVector(H.ncols, word)


def read_matrix(path_or_text: str, is_text: bool = False) -> BitMatrix:
    """Parse the ``rows cols`` header followed by one 0/1 line per row."""
    if is_text:
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        nrows, ncols = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != nrows:
        raise ValueError(f"header says {nrows} rows, found {len(body)}")
    if nrows == 0:
        return BitMatrix(ncols, ())
    M = BitMatrix.from_strings(body)
    if M.ncols != ncols:
        raise ValueError(f"header says {ncols} columns, rows have {M.ncols}")
    return M


def format_matrix(M: BitMatrix) -> str:
    lines = [f"{M.nrows} {M.ncols}"]
    lines += [str(M.row(i)) for i in range(M.nrows)]
    return "\n".join(lines) + "\n"


def write_matrix(M: BitMatrix, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(M))
