"""GF(2) linear algebra on int-bitmask rows."""

from __future__ import annotations


def rank(rows: list[int]) -> int:
    """Rank of a list of bitmask rows via Gaussian elimination."""
    pivots: list[int] = []
    for row in rows:
        row = _reduce(row, pivots)
        if row:
            pivots.append(row)
    return len(pivots)


def in_span(vec: int, rows: list[int]) -> bool:
    return rank(rows) == rank(rows + [vec])


def _reduce(row: int, pivots: list[int]) -> int:
    for p in pivots:
        row = min(row, row ^ p)
    return row


def reduce_against(vec: int, rows: list[int]) -> int:
    """Reduce ``vec`` against the row space (returns 0 iff vec in span)."""
    pivots: list[int] = []
    for row in rows:
        row = _reduce(row, pivots)
        if row:
            pivots.append(row)
    return _reduce(vec, pivots)


def solve(rows: list[int], rhs: list[int], n_cols: int) -> int | None:
    """One solution of ``rows @ x = rhs`` over GF(2), or None if inconsistent.

    Rows are bitmasks of width ``n_cols``; free variables are set to 0.
    """
    pivots: dict[int, int] = {}  # pivot column -> augmented row (RREF)
    for i, row in enumerate(rows):
        arow = (row << 1) | (rhs[i] & 1)
        for col, prow in pivots.items():
            if (arow >> (col + 1)) & 1:
                arow ^= prow
        body = arow >> 1
        if body == 0:
            if arow & 1:
                return None
            continue
        col = body.bit_length() - 1
        for c2, prow in list(pivots.items()):
            if (prow >> (col + 1)) & 1:
                pivots[c2] = prow ^ arow
        pivots[col] = arow
    x = 0
    for col, prow in pivots.items():
        if prow & 1:
            x |= 1 << col
    return x


def nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of the solution space of ``rows @ x = 0``."""
    pivots: dict[int, int] = {}
    for row in rows:
        for col, prow in pivots.items():
            if (row >> col) & 1:
                row ^= prow
        if row:
            col = row.bit_length() - 1
            for c2, prow in list(pivots.items()):
                if (prow >> col) & 1:
                    pivots[c2] = prow ^ row
            pivots[col] = row
    basis = []
    for free in range(n_cols):
        if free in pivots:
            continue
        vec = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis
