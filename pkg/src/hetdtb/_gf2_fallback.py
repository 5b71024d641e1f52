"""Pure-Python twin of the compiled GF(2) kernel (same signatures)."""

from __future__ import annotations

import numpy as np


def _to_ints(M: np.ndarray) -> list[int]:
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in M]


def _store(M: np.ndarray, rows: list[int]) -> None:
    nbytes = M.shape[1] * 8
    for i, v in enumerate(rows):
        M[i] = np.frombuffer(v.to_bytes(nbytes, "little"), dtype="<u8")


def rref(M: np.ndarray, ncols: int) -> np.ndarray:
    rows = _to_ints(M)
    rank = 0
    pivots = []
    for col in range(ncols):
        if rank == len(rows):
            break
        bit = 1 << col
        piv = next((r for r in range(rank, len(rows)) if rows[r] & bit), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= p
        pivots.append(col)
        rank += 1
    _store(M, rows)
    return np.asarray(pivots, dtype=np.int64)


def reduce_rows(basis: np.ndarray, pivots: np.ndarray, targets: np.ndarray) -> None:
    base = _to_ints(basis[: len(pivots)])
    tgt = _to_ints(targets)
    for t, v in enumerate(tgt):
        for row, col in zip(base, pivots):
            if (v >> int(col)) & 1:
                v ^= row
        tgt[t] = v
    _store(targets, tgt)
