"""Bit-packed vectors and square matrices over GF(2).

A vector of length ``n`` is an ``int`` bitmask (bit ``j`` is coordinate ``j``,
0-based). A matrix stores one such mask per row, so ``M @ x`` is a popcount
parity per row and matrix products are row XORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class F2Vector:
    bits: int
    size: int

    def __post_init__(self):
        if self.size < 0 or self.bits < 0 or self.bits >> self.size:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.size}")

    @classmethod
    def from_support(cls, support: Iterable[int], size: int) -> "F2Vector":
        """Indicator vector of 1-based positions."""
        bits = 0
        for i in support:
            if not 1 <= i <= size:
                raise ValueError(f"position {i} outside 1..{size}")
            bits ^= 1 << (i - 1)
        return cls(bits, size)

    @classmethod
    def zero(cls, size: int) -> "F2Vector":
        return cls(0, size)

    def support(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.size) if self.bits >> j & 1)

    def dot(self, other: "F2Vector") -> int:
        """Diagonal form: the parity of the common support."""
        self._check(other)
        return _parity(self.bits & other.bits)

    def __add__(self, other: "F2Vector") -> "F2Vector":
        self._check(other)
        return F2Vector(self.bits ^ other.bits, self.size)

    def to_list(self) -> list[int]:
        return [self.bits >> j & 1 for j in range(self.size)]

    def _check(self, other: "F2Vector") -> None:
        if self.size != other.size:
            raise ValueError(f"length mismatch: {self.size} vs {other.size}")


@dataclass(frozen=True)
class F2Matrix:
    rows: tuple[int, ...]

    def __post_init__(self):
        n = len(self.rows)
        for r in self.rows:
            if r < 0 or r >> n:
                raise ValueError("row does not fit in a square matrix")

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "F2Matrix":
        n = len(rows)
        packed = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
            packed.append(sum((int(v) & 1) << j for j, v in enumerate(row)))
        return cls(tuple(packed))

    @classmethod
    def from_columns(cls, columns: Sequence[F2Vector]) -> "F2Matrix":
        n = len(columns)
        rows = [0] * n
        for j, col in enumerate(columns):
            if col.size != n:
                raise ValueError("column length mismatch")
            for i in range(n):
                if col.bits >> i & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows))

    def to_lists(self) -> list[list[int]]:
        n = self.size
        return [[r >> j & 1 for j in range(n)] for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def apply(self, x: F2Vector) -> F2Vector:
        if x.size != self.size:
            raise ValueError(f"length mismatch: {x.size} vs {self.size}")
        out = 0
        for i, r in enumerate(self.rows):
            if _parity(r & x.bits):
                out |= 1 << i
        return F2Vector(out, self.size)

    def __matmul__(self, other):
        if isinstance(other, F2Vector):
            return self.apply(other)
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return F2Matrix(tuple(out))

    def transpose(self) -> "F2Matrix":
        n = self.size
        cols = [0] * n
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return F2Matrix(tuple(cols))

    def column(self, j: int) -> F2Vector:
        return F2Vector(sum((r >> j & 1) << i for i, r in enumerate(self.rows)), self.size)

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def to_hex(self) -> list[str]:
        """Rows as zero-padded hex strings, least significant bit = column 1."""
        width = max(1, (self.size + 3) // 4)
        return [format(r, f"0{width}x") for r in self.rows]

    @classmethod
    def from_hex(cls, rows: Sequence[str]) -> "F2Matrix":
        return cls(tuple(int(r, 16) for r in rows))
