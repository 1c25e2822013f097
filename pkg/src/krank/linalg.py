"""Exact rank of integer matrices over the rationals.

Matrices are sequences of equal-length rows of Python ints; arithmetic is
fraction-free (Bareiss) elimination over arbitrary-precision integers, so
no floating point is involved anywhere.
"""

from __future__ import annotations


def as_int_matrix(matrix) -> list[list[int]]:
    """Copy and validate a rectangular integer matrix (possibly empty)."""
    rows = []
    width = None
    for i, row in enumerate(matrix):
        entries = list(row)
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ValueError(f"row {i} has length {len(entries)}, expected {width}")
        for x in entries:
            if not isinstance(x, int):
                raise ValueError(f"entry {x!r} in row {i} is not an integer")
        rows.append(entries)
    return rows


def rational_rank(matrix) -> int:
    """Rank of an integer matrix over Q via fraction-free elimination."""
    m = as_int_matrix(matrix)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    row = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(row, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            m[row], m[pivot] = m[pivot], m[row]
        for i in range(row + 1, n_rows):
            for j in range(col + 1, n_cols):
                # Bareiss: this division is always exact
                m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) // prev
            m[i][col] = 0
        prev = m[row][col]
        row += 1
        if row == n_rows:
            break
    return row


def matmul(a, b) -> list[list[int]]:
    """Integer matrix product (rows x cols), tolerating empty factors."""
    am = as_int_matrix(a)
    bm = as_int_matrix(b)
    if not am:
        return []
    inner = len(am[0])
    if inner != len(bm):
        raise ValueError(f"shape mismatch: {inner} columns vs {len(bm)} rows")
    if not bm:
        return [[] for _ in am]
    cols = len(bm[0])
    return [
        [sum(arow[t] * bm[t][j] for t in range(inner)) for j in range(cols)]
        for arow in am
    ]
