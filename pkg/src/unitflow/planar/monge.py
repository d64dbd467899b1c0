"""Interval-encoded zero-cost reachability between boundary vertices of a piece.

When all boundary vertices of a piece lie once on a single hole, the
boundary-to-boundary distance matrix splits into Monge blocks: recursively
halve the cyclic boundary order and take the two off-diagonal blocks
(first half to second half and back).  Inside a Monge block with
nonnegative reduced entries the zero entries of each row form an interval of
the zero columns, so each row needs only its leftmost and rightmost zero.
Pieces without that structure, and pieces with very few boundary vertices
(where the halving costs more than it saves), use one explicit block per row.
Small blocks are scanned entry by entry, which gives the same intervals and
verifies them; larger ones are checked for the Monge property and use SMAWK.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import InvariantError
from .smawk import column_minima, is_monge, rightmost_minima, smawk

# blocks with at most this many entries are scanned directly instead of by SMAWK
BRUTE_LIMIT = 1024
# below this many boundary vertices the explicit per-row layout is cheaper
DENSE_BELOW = 8


@dataclass
class Block:
    cols: list[int]
    parent: list[int] = field(repr=False)
    pos: dict[int, int] = field(repr=False)

    def find(self, i: int) -> int:
        """First position >= ``i`` whose column is still present (len if none)."""
        parent = self.parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def delete(self, i: int) -> None:
        self.parent[i] = i + 1


class MongeReach:
    """Reachability structure for one piece.

    ``rows_of[v]`` lists ``(block, lpos, rpos)`` for every block in which ``v``
    is a row with at least one zero entry; ``cols_of[w]`` lists
    ``(block, pos)`` for every block in which ``w`` is a zero column.
    Vertices are local boundary indices ``0..nb-1``.
    """

    def __init__(self, nb: int, dist, p, cycle=None, removed=(), brute_limit: int = BRUTE_LIMIT,
                 dense_below: int = DENSE_BELOW):
        self.nb = nb
        self.blocks: list[Block] = []
        self.rows_of: list[list[tuple[int, int, int]]] = [[] for _ in range(nb)]
        self.cols_of: list[list[tuple[int, int]]] = [[] for _ in range(nb)]
        self.dense = cycle is None or nb < dense_below
        self.monge_failed = False
        # reduced clique, computed once; every entry must be nonnegative
        R = []
        for a in range(nb):
            pa, row = p[a], dist[a]
            Ra = [row[x] - pa + p[x] for x in range(nb)]
            Ra[a] = 0
            if min(Ra, default=0) < 0:
                raise InvariantError("negative reduced clique entry")
            R.append(Ra)
        self.R = R

        def red(a, x):
            return R[a][x]

        if not self.dense:
            pairs = []
            self._halve(list(cycle), pairs)
            plan = []
            for rows, cols in pairs:
                if len(rows) * len(cols) <= brute_limit:
                    iv = self._intervals(rows, cols, R)
                    if iv is None:
                        iv = self._intervals(rows, cols[::-1], R)
                    if iv is None:
                        self.monge_failed = True
                        break
                    plan.append(("scan", *iv))
                elif is_monge(rows, cols, red):
                    plan.append(("smawk", rows, cols))
                elif is_monge(rows, cols[::-1], red):
                    plan.append(("smawk", rows, cols[::-1]))
                else:
                    self.monge_failed = True
                    break
            if self.monge_failed:
                self.dense = True
            else:
                for how, a, b in plan:
                    if how == "smawk":
                        self._add_monge(a, b, red)
                    else:
                        self._add_intervals(a, b)
        if self.dense:
            for v in range(nb):
                Rv = R[v]
                zs = [w for w in range(nb) if w != v and Rv[w] == 0]
                if zs:
                    j = self._new_block(zs)
                    self.rows_of[v].append((j, 0, len(zs) - 1))
        for w in removed:
            self.delete(w)

    @staticmethod
    def _intervals(rows, cols, R):
        """Zero entries of a small block as intervals of its zero columns.

        Returns ``(B, spans)`` where ``B`` lists the columns holding a zero
        and ``spans`` maps each row to the positions of its first and last
        zero in ``B``, or ``None`` when some row's zeros are not contiguous
        in ``B`` (the order is then not a Monge order for this block).
        """
        zero_col = [any(R[a][x] == 0 for a in rows) for x in cols]
        B = [x for x, z in zip(cols, zero_col) if z]
        spans = []
        for a in rows:
            Ra = R[a]
            hits = [i for i, x in enumerate(B) if Ra[x] == 0]
            if not hits:
                continue
            if hits[-1] - hits[0] + 1 != len(hits):
                return None
            spans.append((a, hits[0], hits[-1]))
        return B, spans

    def _add_intervals(self, B, spans):
        if not spans:
            return
        j = self._new_block(B)
        for a, lo, hi in spans:
            self.rows_of[a].append((j, lo, hi))

    @staticmethod
    def _halve(seq, out):
        if len(seq) < 2:
            return
        mid = len(seq) // 2
        L, R = seq[:mid], seq[mid:]
        out.append((L, R))
        out.append((R, L))
        MongeReach._halve(L, out)
        MongeReach._halve(R, out)

    def _new_block(self, cols) -> int:
        j = len(self.blocks)
        self.blocks.append(Block(list(cols), list(range(len(cols) + 1)), {c: i for i, c in enumerate(cols)}))
        for i, c in enumerate(cols):
            self.cols_of[c].append((j, i))
        return j

    def _add_monge(self, rows, cols, red):
        left = smawk(rows, cols, red)
        A = []
        for a in rows:
            v = red(a, left[a])
            if v < 0:
                raise InvariantError("negative reduced clique entry")
            if v == 0:
                A.append(a)
        if not A:
            return
        top = column_minima(rows, cols, red)
        B = [x for x in cols if red(top[x], x) == 0]
        right = rightmost_minima(A, cols, red)
        j = self._new_block(B)
        pos = self.blocks[j].pos
        for a in A:
            self.rows_of[a].append((j, pos[left[a]], pos[right[a]]))

    def delete(self, w: int) -> None:
        """Remove ``w`` from every successor structure (it joined the dead set)."""
        for j, i in self.cols_of[w]:
            self.blocks[j].delete(i)

    def decode(self, v: int) -> set[int]:
        """Boundary vertices reachable from ``v`` at zero reduced cost, ignoring deletions."""
        out = set()
        for j, lo, hi in self.rows_of[v]:
            out.update(self.blocks[j].cols[lo:hi + 1])
        return out

    def cursors(self, v: int) -> list[list[int]]:
        """Fresh scan cursors ``[block, next, rpos]`` for the rows of ``v``."""
        return [[j, lo, hi] for j, lo, hi in self.rows_of[v]]

    def next_target(self, cur: list[list[int]]) -> int:
        """Next unscanned live target for a cursor list, or -1; exhausted cursors are dropped."""
        while cur:
            c = cur[-1]
            blk = self.blocks[c[0]]
            x = blk.find(c[1])
            if x > c[2]:
                cur.pop()
                continue
            c[1] = x + 1
            return blk.cols[x]
        return -1

    def stats(self) -> dict:
        return {
            "blocks": len(self.blocks),
            "dense": self.dense,
            "max_rows_per_vertex": max((len(r) for r in self.rows_of), default=0),
            "max_cols_per_vertex": max((len(c) for c in self.cols_of), default=0),
        }
