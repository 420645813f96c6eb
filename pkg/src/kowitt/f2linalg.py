"""Dense linear algebra over GF(2).

Rows are stored as Python ints used as bitsets: bit ``j`` of a row is the
entry in column ``j``. Vectors are ints in the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.bits) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.bits)}")
        limit = 1 << self.cols
        for r in self.bits:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        bits = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            bits.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(len(bits), cols, tuple(bits))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "F2Matrix":
        """Build a matrix whose ``j``-th column is the bit vector ``columns[j]``."""
        bits = [0] * rows
        for j, col in enumerate(columns):
            while col:
                low = col & -col
                bits[low.bit_length() - 1] |= 1 << j
                col ^= low
        return cls(rows, len(columns), tuple(bits))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.bits]

    def column(self, j: int) -> int:
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.bits))

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_columns(self.bits, self.cols)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def apply(self, v: int) -> int:
        """Matrix-vector product ``self * v``."""
        out = 0
        for i, r in enumerate(self.bits):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.bits:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.bits[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def echelon_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced echelon form of a list of row bitsets, zero rows dropped.

    Pivots are chosen leftmost-first (lowest column index), so the output is
    sorted by strictly increasing pivot column.
    """
    pivot_rows: dict[int, int] = {}
    for r in rows:
        for p, pr in pivot_rows.items():
            if (r >> p) & 1:
                r ^= pr
        if not r:
            continue
        p = _lowest_bit(r)
        for q in list(pivot_rows):
            if (pivot_rows[q] >> p) & 1:
                pivot_rows[q] ^= r
        pivot_rows[p] = r
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def row_echelon(m: F2Matrix) -> tuple[F2Matrix, list[int]]:
    """Reduced row-echelon form and its pivot columns.

    Zero rows are moved to the bottom so the shape is preserved.
    """
    rows, pivots = echelon_rows(m.bits)
    rows += [0] * (m.rows - len(rows))
    return F2Matrix(m.rows, m.cols, tuple(rows)), pivots


def rank(m: F2Matrix) -> int:
    return len(echelon_rows(m.bits)[0])


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of the right kernel ``{v : m v = 0}``, itself in reduced echelon form."""
    rows, pivots = echelon_rows(m.bits)
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivots, rows):
            if (r >> f) & 1:
                v |= 1 << p
        vectors.append(v)
    return echelon_rows(vectors)[0]


def span_reduce(vector: int, echelon: Sequence[int], pivots: Sequence[int]) -> int:
    """Reduce ``vector`` against rows in reduced echelon form."""
    for p, r in zip(pivots, echelon):
        if (vector >> p) & 1:
            vector ^= r
    return vector
