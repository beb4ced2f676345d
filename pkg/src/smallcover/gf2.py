"""
Dense linear algebra over GF(2).

Rows are packed into Python integers (bit ``j`` of a row is the entry in
column ``j``), so elimination is word-parallel XOR.  All indices exposed
to callers are 1-based; internally everything is 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class NonSquareError(ValueError):
    pass


class MatrixParseError(ValueError):
    """Malformed matrix text; carries the 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("BitVector length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit in the declared length")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for j, e in enumerate(entries):
            if e not in (0, 1):
                raise ValueError(f"entry {e!r} is not 0 or 1")
            if e:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVector":
        """Standard basis vector e_i (1-based)."""
        if not 1 <= i <= length:
            raise IndexError(f"index {i} out of range 1..{length}")
        return cls(length, 1 << (i - 1))

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __iter__(self):
        return iter(self.to_list())

    def __len__(self) -> int:
        return self.length

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def support(self) -> frozenset[int]:
        """1-based positions of the nonzero entries."""
        return frozenset(j + 1 for j in range(self.length) if (self.bits >> j) & 1)

    def weight(self) -> int:
        return _popcount(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """An ``nrows x ncols`` matrix over GF(2), one packed int per row."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 1 or self.ncols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row does not fit in ncols bits")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        if not rows:
            raise ValueError("empty matrix")
        width = len(rows[0])
        packed = []
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            packed.append(BitVector.from_list(row).bits)
        return cls(len(rows), width, tuple(packed))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector]) -> "BitMatrix":
        if not columns:
            raise ValueError("no columns")
        n = columns[0].length
        rows = [0] * n
        for j, col in enumerate(columns):
            if col.length != n:
                raise ValueError("columns of unequal length")
            for i in range(n):
                if (col.bits >> i) & 1:
                    rows[i] |= 1 << j
        return cls(n, len(columns), tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> int:
        """Entry in row ``i``, column ``j`` (both 1-based)."""
        return (self.rows[i - 1] >> (j - 1)) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i - 1])

    def column(self, j: int) -> BitVector:
        if not 1 <= j <= self.ncols:
            raise IndexError(f"column {j} out of range 1..{self.ncols}")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> (j - 1)) & 1:
                bits |= 1 << i
        return BitVector(self.nrows, bits)

    def columns(self) -> list[BitVector]:
        return [self.column(j) for j in range(1, self.ncols + 1)]

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_columns([self.row(i) for i in range(1, self.nrows + 1)])

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return BitMatrix(
            self.nrows,
            self.ncols + other.ncols,
            tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows)),
        )

    def select_columns(self, cols: Sequence[int]) -> "BitMatrix":
        return BitMatrix.from_columns([self.column(j) for j in cols])

    def permute(self, order: Sequence[int]) -> "BitMatrix":
        """Simultaneous row/column relabelling: new (s, t) = old (order[s], order[t])."""
        lists = self.to_lists()
        idx = [k - 1 for k in order]
        return BitMatrix.from_rows([[lists[a][b] for b in idx] for a in idx])

    # text format ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [" ".join(str(x) for x in row) for row in self.to_lists()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, first_line: int = 1) -> "BitMatrix":
        """Parse the ``n m`` header followed by ``n`` rows of ``m`` digits."""
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise MatrixParseError("missing header", first_line)
        header = lines[0].split()
        if len(header) != 2 or not all(h.isdigit() for h in header):
            raise MatrixParseError("header must be 'n m'", first_line)
        n, m = int(header[0]), int(header[1])
        if n < 1 or m < 1:
            raise MatrixParseError("dimensions must be positive", first_line)
        body = lines[1:]
        if len(body) != n:
            raise MatrixParseError(f"expected {n} rows, found {len(body)}", first_line + len(body))
        rows = []
        for k, ln in enumerate(body):
            lineno = first_line + 1 + k
            tokens = list(re.finditer(r"\S+", ln))
            if len(tokens) != m:
                raise MatrixParseError(f"expected {m} entries, found {len(tokens)}", lineno)
            for tok in tokens:
                if tok.group() not in ("0", "1"):
                    raise MatrixParseError(f"entry {tok.group()!r} is not 0 or 1", lineno, tok.start() + 1)
            rows.append([int(tok.group()) for tok in tokens])
        return cls.from_rows(rows)


# elimination ---------------------------------------------------------------


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduce packed rows; returns {pivot bit: reduced row}."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            piv = basis.get(lead)
            if piv is None:
                basis[lead] = r
                break
            r ^= piv
    return basis


def packed_rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def rank(M: BitMatrix) -> int:
    return packed_rank(M.rows)


def is_invertible(M: BitMatrix) -> bool:
    if M.nrows != M.ncols:
        raise NonSquareError(f"{M.nrows}x{M.ncols} matrix is not square")
    return rank(M) == M.nrows


def column_sum(M: BitMatrix, J: Iterable[int]) -> BitVector:
    acc = 0
    for j in J:
        if not 1 <= j <= M.ncols:
            raise IndexError(f"column {j} out of range 1..{M.ncols}")
        acc ^= M.column(j).bits
    return BitVector(M.nrows, acc)


def nullspace(M: BitMatrix) -> list[BitVector]:
    """Basis of {x : M x = 0}, as length-``ncols`` vectors."""
    n, m = M.nrows, M.ncols
    # reduced row echelon form, pivoting on low bits first
    rows = list(M.rows)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        bit = 1 << c
        p = next((i for i in range(r, n) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in set(pivots)]
    basis = []
    for f in free:
        v = 1 << f
        for k, pc in enumerate(pivots):
            if (rows[k] >> f) & 1:
                v |= 1 << pc
        basis.append(BitVector(m, v))
    return basis


def minimal_dependent_sets(columns: Sequence[BitVector], max_size: int | None = None) -> list[tuple[int, ...]]:
    """Circuits of the binary matroid on ``columns``, up to ``max_size`` elements.

    Subsets are visited by increasing size; any subset containing a circuit
    already found is skipped, so a dependent survivor has only independent
    proper subsets.  Results are 1-based sorted tuples, ordered by
    (size, lexicographic).
    """
    m = len(columns)
    if max_size is None:
        max_size = m
    if m and len({c.length for c in columns}) != 1:
        raise ValueError("columns of unequal length")
    packed = [c.bits for c in columns]
    found: list[int] = []
    out: list[tuple[int, ...]] = []
    for size in range(1, min(max_size, m) + 1):
        for combo in combinations(range(m), size):
            mask = 0
            for j in combo:
                mask |= 1 << j
            if any(c & mask == c for c in found):
                continue
            if packed_rank(packed[j] for j in combo) < size:
                found.append(mask)
                out.append(tuple(j + 1 for j in combo))
    return out
