"""Rank over GF(2).

Two kernels: dense bit-packed row elimination for general matrices, and
sparse column reduction with pivot lookup for boundary matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def pack_rows(matrix) -> list[int]:
    """Pack a 0/1 matrix (array-like) into one int per row, bit j = column j."""
    a = np.asarray(matrix, dtype=np.uint8) & 1
    if a.ndim != 2 or a.shape[1] == 0:
        return [0] * (a.shape[0] if a.ndim == 2 else 0)
    packed = np.packbits(a, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def gf2_rank(matrix) -> int:
    """Rank over GF(2).

    Accepts a 2-D 0/1 array-like, or a list of ints already bit-packed by row.
    """
    if isinstance(matrix, list) and all(isinstance(r, int) for r in matrix):
        rows = list(matrix)
    else:
        rows = pack_rows(matrix)
    rank = 0
    pivots: dict[int, int] = {}  # lowest set bit -> reduced row
    for row in rows:
        while row:
            low = row & -row
            p = pivots.get(low)
            if p is None:
                pivots[low] = row
                rank += 1
                break
            row ^= p
    return rank


def reduce_columns(columns: Iterable[Sequence[int]], skip=frozenset()) -> tuple[int, dict[int, set]]:
    """Standard column reduction of a sparse GF(2) matrix.

    ``columns`` yields the nonzero row indices of each column.  Columns whose
    position is in ``skip`` are known to reduce to zero and are not touched
    (the clearing optimisation).  Returns the rank and the map
    pivot row -> reduced column.
    """
    pivots: dict[int, set] = {}
    for j, col in enumerate(columns):
        if j in skip:
            continue
        col = set(col)
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            col ^= other
    return len(pivots), pivots
