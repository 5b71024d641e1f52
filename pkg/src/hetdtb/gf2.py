"""GF(2) matrices, rank and linear solving.

Rows are handled internally as Python ints (bit ``c`` = column ``c``) and
handed to the row-reduction kernel bit-packed into ``uint64`` words.  The
compiled kernel is used when its extension module imports; otherwise (or
when ``HETDTB_PURE_PYTHON=1``) the pure-Python twin is used.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from hetdtb.errors import DimensionError, NoUniqueSolution

if os.environ.get("HETDTB_PURE_PYTHON") == "1":
    from hetdtb import _gf2_fallback as _kernel

    BACKEND = "python"
else:
    try:
        from hetdtb import _gf2_kernel as _kernel

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from hetdtb import _gf2_fallback as _kernel

        BACKEND = "python"


def pack(rows: Sequence[int], ncols: int) -> np.ndarray:
    """Pack int bitmasks into a C-contiguous ``(len(rows), words)`` uint64 array."""
    nwords = max(1, (ncols + 63) // 64)
    nbytes = nwords * 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    out = np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(rows), nwords)
    return np.ascontiguousarray(out)


def unpack(M: np.ndarray) -> list[int]:
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in M]


def rref_masks(rows: Sequence[int], ncols: int, width: int | None = None) -> tuple[list[int], list[int]]:
    """Row-reduce bitmask rows, pivoting only on the first ``ncols`` columns.

    ``width`` is the total bit width carried along (defaults to ``ncols``).
    Returns ``(basis_rows, pivot_columns)``.
    """
    if not rows:
        return [], []
    M = pack(rows, width if width is not None else ncols)
    pivots = _kernel.rref(M, ncols)
    return unpack(M[: len(pivots)]), [int(p) for p in pivots]


def reduce_masks(basis: Sequence[int], pivots: Sequence[int], targets: Sequence[int], width: int) -> list[int]:
    if not basis:
        return list(targets)
    B = pack(basis, width)
    T = pack(targets, width)
    _kernel.reduce_rows(B, np.asarray(pivots, dtype=np.int64), T)
    return unpack(T)


def rank_masks(rows: Sequence[int], ncols: int) -> int:
    return len(rref_masks(rows, ncols)[1])


def combination_decoder(rows: Sequence[int], ncols: int, targets: Sequence[int]) -> list[int | None]:
    """For each target functional, find which rows XOR to it.

    Returns one mask over row indices per target, or ``None`` when the
    target is outside the row space.
    """
    nrows = len(rows)
    width = ncols + nrows
    tagged = [r | (1 << (ncols + i)) for i, r in enumerate(rows)]
    basis, pivots = rref_masks(tagged, ncols, width)
    reduced = reduce_masks(basis, pivots, targets, width)
    low = (1 << ncols) - 1
    return [None if v & low else v >> ncols for v in reduced]


@dataclass(frozen=True)
class Gf2Matrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if any(e not in (0, 1) for e in self.entries):
            raise ValueError("entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> Gf2Matrix:
        rows = [tuple(int(v) for v in r) for r in rows]
        if not rows or len({len(r) for r in rows}) != 1:
            raise DimensionError("rows must be non-empty and of equal length")
        return cls(len(rows), len(rows[0]), tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, k: int) -> Gf2Matrix:
        return cls(k, k, tuple(int(i == j) for i in range(k) for j in range(k)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_masks(self) -> list[int]:
        return [sum(b << j for j, b in enumerate(self.row(i))) for i in range(self.rows)]

    def matvec(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise DimensionError(f"vector length {len(x)} != cols {self.cols}")
        xm = sum(int(b) << j for j, b in enumerate(x))
        return tuple((m & xm).bit_count() & 1 for m in self.row_masks())

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        cols_t = [other.entries[j::other.cols] for j in range(other.cols)]
        return Gf2Matrix(
            self.rows,
            other.cols,
            tuple(
                sum(a & b for a, b in zip(self.row(i), cols_t[j])) & 1
                for i in range(self.rows)
                for j in range(other.cols)
            ),
        )

    def rank(self) -> int:
        return rank_masks(self.row_masks(), self.cols)


def rank(A: Gf2Matrix) -> int:
    return A.rank()


def solve_gf2(A: Gf2Matrix, y: Sequence[int]) -> tuple[int, ...]:
    """Return the unique ``x`` with ``A x = y`` over GF(2).

    Raises :class:`NoUniqueSolution` if ``A`` has a non-trivial kernel or
    the system is inconsistent.
    """
    if len(y) != A.rows:
        raise DimensionError(f"rhs length {len(y)} != rows {A.rows}")
    n = A.cols
    aug = [m | (int(b) << n) for m, b in zip(A.row_masks(), y)]
    basis, pivots = rref_masks(aug, n, n + 1)
    if len(pivots) < n:
        raise NoUniqueSolution(f"rank {len(pivots)} < {n} unknowns")
    low = (1 << n) - 1
    inconsistent = reduce_masks(basis, pivots, [m for m in aug], n + 1)
    if any(v for v in inconsistent):
        raise NoUniqueSolution("inconsistent system")
    x = [0] * n
    for row, col in zip(basis, pivots):
        # full-rank RREF: each basis row is e_col plus the rhs bit
        assert row & low == 1 << col
        x[col] = (row >> n) & 1
    return tuple(x)
