"""Sparse linear algebra over the two-element field.

Rows are stored as python ints used as bitsets (bit c = entry in column c),
which doubles as the packed representation; sorted column-index lists are
accepted on input and produced on demand.  Elimination never mutates the
matrix it is given.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

from .errors import ComposeNonzero, DimensionMismatch

# Lists sparser than this fraction of columns are kept as index lists when
# round-tripping through rows_as_indices; elimination always runs on bitsets.
DENSITY_THRESHOLD = 0.05


class SparseGF2Matrix:
    """An immutable rows x cols matrix over GF(2)."""

    __slots__ = ("rows", "cols", "_bits")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int]):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative dimensions")
        if len(row_bits) != rows:
            raise DimensionMismatch(f"expected {rows} rows, got {len(row_bits)}")
        mask = (1 << cols) - 1
        for r, b in enumerate(row_bits):
            if b < 0 or b & ~mask:
                raise DimensionMismatch(f"row {r} has bits outside {cols} columns")
        self.rows = rows
        self.cols = cols
        self._bits = tuple(row_bits)

    # --- constructors ---

    @staticmethod
    def from_rows(rows_idx: Iterable[Iterable[int]], cols: int) -> "SparseGF2Matrix":
        bits = []
        for row in rows_idx:
            b = 0
            seen = set()
            for c in row:
                if c in seen:
                    raise DimensionMismatch(f"duplicate column entry {c}")
                seen.add(c)
                b |= 1 << c
            bits.append(b)
        return SparseGF2Matrix(len(bits), cols, bits)

    @staticmethod
    def from_columns(cols_idx: Sequence[Iterable[int]], rows: int) -> "SparseGF2Matrix":
        bits = [0] * rows
        for c, col in enumerate(cols_idx):
            for r in col:
                bits[r] ^= 1 << c
        return SparseGF2Matrix(rows, len(cols_idx), bits)

    @staticmethod
    def zero(rows: int, cols: int) -> "SparseGF2Matrix":
        return SparseGF2Matrix(rows, cols, [0] * rows)

    @staticmethod
    def identity(n: int) -> "SparseGF2Matrix":
        return SparseGF2Matrix(n, n, [1 << i for i in range(n)])

    # --- views ---

    def row_bits(self) -> tuple:
        return self._bits

    def rows_as_indices(self) -> List[List[int]]:
        out = []
        for b in self._bits:
            idx = []
            while b:
                low = b & -b
                idx.append(low.bit_length() - 1)
                b ^= low
            out.append(idx)
        return out

    def nnz(self) -> int:
        return sum(b.bit_count() for b in self._bits)

    def density(self) -> float:
        size = self.rows * self.cols
        return self.nnz() / size if size else 0.0

    def transpose(self) -> "SparseGF2Matrix":
        bits = [0] * self.cols
        for r, b in enumerate(self._bits):
            while b:
                low = b & -b
                bits[low.bit_length() - 1] |= 1 << r
                b ^= low
        return SparseGF2Matrix(self.cols, self.rows, bits)

    def __matmul__(self, other: "SparseGF2Matrix") -> "SparseGF2Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        bits = []
        for b in self._bits:
            acc = 0
            bb = b
            while bb:
                low = bb & -bb
                acc ^= other._bits[low.bit_length() - 1]
                bb ^= low
            bits.append(acc)
        return SparseGF2Matrix(self.rows, other.cols, bits)

    def is_zero(self) -> bool:
        return all(b == 0 for b in self._bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseGF2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._bits == other._bits
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._bits))

    def __repr__(self) -> str:
        return f"SparseGF2Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def rank(m: SparseGF2Matrix) -> int:
    """GF(2) rank by row elimination on a private copy.

    Pivot choice: scan columns left to right; among rows with a 1 in the
    pivot column take the sparsest (fewest bits), lowest index on ties.
    """
    work = list(m.row_bits())
    r = 0
    n_rows = len(work)
    for col in range(m.cols):
        colbit = 1 << col
        pivot = -1
        best = -1
        for i in range(r, n_rows):
            if work[i] & colbit:
                w = work[i].bit_count()
                if pivot < 0 or w < best:
                    pivot, best = i, w
        if pivot < 0:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        for i in range(n_rows):
            if i != r and work[i] & colbit:
                work[i] ^= prow
        r += 1
        if r == n_rows:
            break
    return r


def kernel_dim(m: SparseGF2Matrix) -> int:
    """Dimension of the null space: cols - rank."""
    return m.cols - rank(m)


def homology_dim(d_in: SparseGF2Matrix, d_out: SparseGF2Matrix, *, check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) for maps  . --d_in--> C --d_out--> .

    Columns index the middle space: cols(d_out) == rows is not required,
    but d_in's target and d_out's source must both be C.
    """
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(
            f"middle space mismatch: d_in target {d_in.rows}, d_out source {d_out.cols}"
        )
    if check and not (d_out @ d_in).is_zero():
        raise ComposeNonzero("d_out . d_in != 0")
    return kernel_dim(d_out) - rank(d_in)
