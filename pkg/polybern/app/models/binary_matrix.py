from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class BinaryMatrix:
    """Rectangular 0/1 matrix; row *i* is an int whose bit *j* is entry (i, j)."""

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("matrix dimensions must be >= 0")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(rows)}")
        limit = 1 << self.n_cols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row bitset {r} has bits beyond column {self.n_cols - 1}")
        object.__setattr__(self, "rows", rows)

    # ------------------------------------------------------------------
    #  Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], n_cols: int | None = None) -> "BinaryMatrix":
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        rows = []
        for line in entries:
            if len(line) != n_cols:
                raise ValueError("ragged matrix")
            bits = 0
            for j, v in enumerate(line):
                if v not in (0, 1):
                    raise ValueError(f"entries must be 0/1, got {v!r}")
                bits |= int(v) << j
            rows.append(bits)
        return cls(len(rows), n_cols, tuple(rows))

    @classmethod
    def from_strings(cls, lines: Sequence[str], n_cols: int | None = None) -> "BinaryMatrix":
        """Inverse of :meth:`to_strings`: ``"1101"`` lists columns left to right."""
        return cls.from_lists([[int(ch) for ch in line] for line in lines], n_cols)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BinaryMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def ones(cls, n_rows: int, n_cols: int) -> "BinaryMatrix":
        return cls(n_rows, n_cols, ((1 << n_cols) - 1,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> "BinaryMatrix":
        array = np.asarray(array)
        if array.ndim != 2:
            raise ValueError("expected a 2-D array")
        n_rows, n_cols = array.shape
        rows = tuple(
            sum(1 << int(j) for j in np.flatnonzero(array[i])) for i in range(n_rows)
        )
        return cls(n_rows, n_cols, rows)

    # ------------------------------------------------------------------
    #  Views
    # ------------------------------------------------------------------
    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.n_cols)) for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.int8).reshape(self.n_rows, self.n_cols)

    def column(self, j: int) -> int:
        """Column *j* as a bitset over row indices."""
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return bits

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.n_cols, self.n_rows, tuple(self.column(j) for j in range(self.n_cols)))

    def row_sums(self) -> list[int]:
        return [bin(r).count("1") for r in self.rows]

    def col_sums(self) -> list[int]:
        return [bin(self.column(j)).count("1") for j in range(self.n_cols)]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "BinaryMatrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        return BinaryMatrix.from_lists(
            [[self.entry(i, j) for j in col_idx] for i in row_idx], n_cols=len(col_idx))

    def has_zero_row(self) -> bool:
        return any(r == 0 for r in self.rows)

    def has_zero_column(self) -> bool:
        full = (1 << self.n_cols) - 1
        seen = 0
        for r in self.rows:
            seen |= r
        return seen != full

    def __str__(self) -> str:
        return "\n".join(self.to_strings())
