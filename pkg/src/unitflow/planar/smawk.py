"""Row minima of totally monotone matrices.

Matrices are implicit: ``lookup(row, col)`` returns an entry.  A matrix is
Monge when ``M[a][x] + M[b][y] <= M[a][y] + M[b][x]`` for ``a < b`` and
``x < y``; its leftmost row minima then move right (weakly) going down.
"""
from __future__ import annotations

from typing import Callable, Sequence


def smawk(rows: Sequence, cols: Sequence, lookup: Callable) -> dict:
    """Leftmost minimum column of every row, in O(len(rows) + len(cols)) lookups."""
    result: dict = {}
    if not cols:
        return result

    def solve(rows, cols):
        if not rows:
            return
        # reduce: keep at most one candidate column per row
        stack = []
        for c in cols:
            while stack:
                r = rows[len(stack) - 1]
                if lookup(r, stack[-1]) > lookup(r, c):
                    stack.pop()
                else:
                    break
            if len(stack) < len(rows):
                stack.append(c)
        cols = stack
        solve(rows[1::2], cols)
        # interpolate the even rows between the odd-row answers
        j = 0
        for i in range(0, len(rows), 2):
            row = rows[i]
            stop = result[rows[i + 1]] if i + 1 < len(rows) else cols[-1]
            best, bv = cols[j], lookup(row, cols[j])
            while cols[j] != stop:
                j += 1
                v = lookup(row, cols[j])
                if v < bv:
                    best, bv = cols[j], v
            result[row] = best

    solve(list(rows), list(cols))
    return result


def rightmost_minima(rows: Sequence, cols: Sequence, lookup: Callable) -> dict:
    """Rightmost minimum column per row of a Monge matrix (reverse both axes)."""
    return smawk(list(reversed(rows)), list(reversed(cols)), lookup)


def column_minima(rows: Sequence, cols: Sequence, lookup: Callable) -> dict:
    """Topmost minimum row of every column (SMAWK on the transpose)."""
    return smawk(cols, rows, lambda c, r: lookup(r, c))


def brute_row_minima(rows, cols, lookup, rightmost: bool = False) -> dict:
    out = {}
    for r in rows:
        best, bv = None, None
        for c in cols:
            v = lookup(r, c)
            if bv is None or v < bv or (rightmost and v == bv):
                best, bv = c, v
        out[r] = best
    return out


def is_monge(rows: Sequence, cols: Sequence, lookup: Callable) -> bool:
    """Adjacent 2x2 check, which is equivalent to the full Monge condition."""
    for i in range(len(rows) - 1):
        a, b = rows[i], rows[i + 1]
        for j in range(len(cols) - 1):
            x, y = cols[j], cols[j + 1]
            if lookup(a, x) + lookup(b, y) > lookup(a, y) + lookup(b, x):
                return False
    return True
