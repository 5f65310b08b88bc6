"""Exact rank via fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _integral_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        scale = math.lcm(*dens) if dens else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank of an integer or rational matrix, computed exactly.

    Rational rows are scaled to integers first; elimination then stays in
    the integers, with every division exact (Bareiss).
    """
    m = _integral_rows(matrix)
    if not m:
        return 0
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    nrows = len(m)
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def is_symmetric(matrix: Sequence[Sequence]) -> bool:
    n = len(matrix)
    return all(len(row) == n for row in matrix) and all(
        matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i)
    )
