"""Per-piece residual graphs, boundary distance cliques and local price extension.

Local vertex ids put the boundary first.  Parallel multigraph edges between
the same ordered pair share one local arc whose cost is the cheapest
residual edge.  Every support edge also carries a large dummy arc in both
directions so that boundary distances are always finite; a distance counts
as real only when it is below ``2 * M``.
"""
from __future__ import annotations

from heapq import heapify, heappop, heappush
from typing import Optional

from ..graph import INF, InvariantError, MultiGraph
from .monge import MongeReach
from .rdivision import Piece


class PieceGraph:
    def __init__(self, piece: Piece, g: MultiGraph, owned: list[int]):
        self.index = piece.index
        self.nb = len(piece.boundary)
        bset = set(piece.boundary)
        self.glob = list(piece.boundary) + [v for v in piece.vertices if v not in bset]
        self.loc = {v: k for k, v in enumerate(self.glob)}
        self.cycle = [self.loc[v] for v in piece.cycle] if piece.cycle is not None else None
        nl = len(self.glob)
        pairs: dict[tuple[int, int], int] = {}
        tail: list[int] = []
        head: list[int] = []
        edges: list[list[int]] = []

        def pair(a, b):
            pid = pairs.get((a, b))
            if pid is None:
                pid = pairs[a, b] = len(tail)
                tail.append(a)
                head.append(b)
                edges.append([])
            return pid

        for x, y in sorted(piece.support):
            pair(self.loc[x], self.loc[y])
            pair(self.loc[y], self.loc[x])
        self.edges_owned = []
        for i in owned:
            e = 2 * i
            u, v = g.tail[e], g.head[e]
            if u == v:
                continue
            a, b = self.loc[u], self.loc[v]
            edges[pair(a, b)].append(e)
            edges[pair(b, a)].append(e + 1)
            self.edges_owned.append(i)
        self.ptail = tail
        self.phead = head
        self.pedges = edges
        self.out: list[list[int]] = [[] for _ in range(nl)]
        self.inn: list[list[int]] = [[] for _ in range(nl)]
        for pid in range(len(tail)):
            self.out[tail[pid]].append(pid)
            self.inn[head[pid]].append(pid)
        self.pcost = [INF] * len(tail)
        self.prep = [-1] * len(tail)
        self.p = [0] * nl
        self.epoch = 0
        self.clique: list[list] = []
        self.preds: list[list[int]] = []
        self.t_col: list = []
        self.t_via: list[int] = []
        self.s_row: list = []
        # into[k]: (global tail, length) of the legit clique edges entering k
        self.into: list[list[tuple[int, int]]] = []
        self.s_t = INF
        self.s_via = -1
        self.s_pred: list[int] = []
        self.reach: Optional[MongeReach] = None
        # zero-cost s-edges of the current phase and the scan position in them
        self.s_targets: list[int] = []
        self.s_cur = 0
        self.s_queued = False

    @property
    def n_local(self) -> int:
        return len(self.glob)

    def set_costs(self, cprime) -> None:
        for lst in self.pedges:
            lst.sort(key=lambda e: (cprime[e], e))

    def refresh(self, f, cprime, big: int) -> None:
        """Pick the cheapest residual edge of every local arc."""
        pcost, prep = self.pcost, self.prep
        for pid, lst in enumerate(self.pedges):
            rep = -1
            for e in lst:
                if f[e] < 1 - (e & 1):
                    rep = e
                    break
            prep[pid] = rep
            pcost[pid] = cprime[rep] if rep >= 0 else big

    def _forward(self, seeds, p):
        """Dijkstra from weighted seeds; returns (true distances, arc predecessors)."""
        nl = len(self.glob)
        key = [INF] * nl
        pred = [-1] * nl
        heap = []
        for v, lab in seeds:
            k = lab + p[v]
            if k < key[v]:
                key[v] = k
                heap.append((k, v))
        heapify(heap)
        done = bytearray(nl)
        out, phead, pcost = self.out, self.phead, self.pcost
        while heap:
            d, v = heappop(heap)
            if done[v]:
                continue
            done[v] = 1
            pv = p[v]
            for pid in out[v]:
                w = phead[pid]
                if done[w]:
                    continue
                r = pcost[pid] - pv + p[w]
                if r < 0:
                    raise InvariantError(f"piece {self.index}: local prices are infeasible")
                nd = d + r
                if nd < key[w]:
                    key[w] = nd
                    pred[w] = pid
                    heappush(heap, (nd, w))
        return [key[v] - p[v] if key[v] != INF else INF for v in range(nl)], pred

    def build_clique(self, exc, M: int) -> None:
        """Boundary clique plus s-row, t-column and s-t distance of the piece."""
        nb, glob, p = self.nb, self.glob, self.p
        interior = range(nb, len(glob))
        sink = [0 if exc[glob[v]] < 0 else M for v in range(len(glob))]
        self.clique, self.preds, self.t_col, self.t_via = [], [], [], []
        for k in range(nb):
            dist, pred = self._forward(((k, 0),), p)
            self.clique.append(dist[:nb])
            self.preds.append(pred)
            best, via = INF, -1
            for v in interior:
                c = dist[v] + sink[v]
                if c < best:
                    best, via = c, v
            self.t_col.append(best)
            self.t_via.append(via)
        seeds = [(v, 0) for v in interior if exc[glob[v]] > 0]
        if seeds:
            dist, pred = self._forward(seeds, p)
            self.s_row = dist[:nb]
            best, via = INF, -1
            for v in interior:
                c = dist[v] + sink[v]
                if c < best:
                    best, via = c, v
            self.s_t, self.s_via, self.s_pred = best, via, pred
        else:
            self.s_row, self.s_t, self.s_via, self.s_pred = [INF] * nb, INF, -1, []
        lim = 2 * M
        clique = self.clique
        self.into = [[(glob[j], clique[j][k]) for j in range(nb) if j != k and clique[j][k] < lim]
                     for k in range(nb)]

    def build_reach(self, pstar, removed) -> None:
        """Zero-cost boundary reachability wrt ``pstar`` (indexed by global vertex)."""
        pb = [pstar[v] for v in self.glob[: self.nb]]
        self.reach = MongeReach(self.nb, self.clique, pb, self.cycle, removed)

    def _walk(self, pred, v) -> tuple[list[int], int]:
        out = []
        ptail, prep = self.ptail, self.prep
        while pred[v] >= 0:
            pid = pred[v]
            e = prep[pid]
            if e < 0:
                raise InvariantError(f"piece {self.index}: translated path uses a dummy arc")
            out.append(e)
            v = ptail[pid]
        out.reverse()
        return out, self.glob[v]

    def path(self, k: int, w: int) -> list[int]:
        """Multigraph edges of the stored shortest path between boundary vertices."""
        edges, start = self._walk(self.preds[k], w)
        if start != self.glob[k]:
            raise InvariantError("clique path does not start at its source")
        return edges

    def path_to_t(self, k: int) -> tuple[list[int], int]:
        """Edges from boundary ``k`` to the deficit vertex ending its t-path."""
        via = self.t_via[k]
        edges, _ = self._walk(self.preds[k], via)
        return edges, self.glob[via]

    def path_from_s(self, w: int) -> tuple[list[int], int]:
        """Edges from the excess vertex starting the s-path to local vertex ``w``."""
        return self._walk(self.s_pred, w)

    def extend(self, pstar, exc, M: int) -> list:
        """Distances to t for every local vertex, given ``pstar`` on the boundary.

        Reverse Dijkstra where interior vertices reach t through their own
        sink edge and boundary vertices through an exit edge of cost
        ``pstar``.  Only those seed labels may be negative in reduced terms,
        so seeding the queue with them keeps Dijkstra exact.  The result is
        stored as the new local price function and returned.
        """
        nb, glob, p = self.nb, self.glob, self.p
        nl = len(glob)
        key = [INF] * nl
        heap = []
        for v in range(nl):
            lab = pstar[glob[v]] if v < nb else (0 if exc[glob[v]] < 0 else M)
            key[v] = lab - p[v]
            heap.append((key[v], v))
        heapify(heap)
        done = bytearray(nl)
        inn, ptail, prep, pcost = self.inn, self.ptail, self.prep, self.pcost
        while heap:
            d, v = heappop(heap)
            if done[v]:
                continue
            done[v] = 1
            pv = p[v]
            for pid in inn[v]:
                if prep[pid] < 0:
                    continue
                u = ptail[pid]
                if done[u]:
                    continue
                r = pcost[pid] - p[u] + pv
                if r < 0:
                    raise InvariantError(f"piece {self.index}: local prices are infeasible")
                nd = d + r
                if nd < key[u]:
                    key[u] = nd
                    heappush(heap, (nd, u))
        newp = [key[v] + p[v] for v in range(nl)]
        for k in range(nb):
            if newp[k] != pstar[glob[k]]:
                raise InvariantError(f"piece {self.index}: boundary price disagrees with the distance graph")
        self.p = newp
        return newp
