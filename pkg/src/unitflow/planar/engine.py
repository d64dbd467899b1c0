"""Refine driven by a dense distance graph over the boundary of an r-division.

Each phase computes distances to the super-sink only on the boundary
vertices plus ``s`` and ``t``, in a graph ``H`` made of per-piece boundary
distance cliques.  Zero-cost paths are then searched in ``H`` with the
per-piece interval structures, translated back to multigraph edges, and
sent.  Only the pieces a path touches are rebuilt, after their interior
prices have been extended from the phase-start boundary distances.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import Callable, Optional

from ..graph import INF, ExtendedView, FlowState, InvariantError, MultiGraph, debug_level
from ..oracles import bellman_ford
from ..refine import PhaseStats, RefineStats
from .embedding import PlanarEmbedding, build_embedding
from .pieces import PieceGraph
from .rdivision import RDivision, build_r_division, validate_r_division


def default_r(n: int, m: int) -> int:
    """Piece size balancing clique rebuilds against distance-graph size."""
    if n < 4:
        return max(n, 1)
    r = math.ceil((n * n / max(m, 1)) ** (1 / 3))
    return min(max(r, 4), n)


@dataclass
class PlanarPhase:
    """Extra counters of one planar phase."""

    ddg_vertices: int
    ddg_edges: int
    ddg_relaxations: int
    rebuilds: int
    max_affected: int


@dataclass
class PlanarTotals:
    refines: int = 0
    phases: list[PlanarPhase] = field(default_factory=list)
    rebuilds: int = 0
    # reachability structures built with Monge intervals / explicit rows
    monge_builds: int = 0
    dense_builds: int = 0


class PlanarContext:
    """Embedding, r-division and piece graphs shared by every scale of a solve."""

    def __init__(self, g: MultiGraph, emb: PlanarEmbedding, rd: RDivision, report: dict):
        self.g = g
        self.emb = emb
        self.rd = rd
        self.report = report
        owned: list[list[int]] = [[] for _ in rd.pieces]
        for i, o in enumerate(rd.owner):
            owned[o].append(i)
        self.pieces = [PieceGraph(p, g, owned[p.index]) for p in rd.pieces]
        self.owner = rd.owner
        self.boundary = rd.boundary
        # (piece, local id) for every boundary vertex
        self.bpieces: dict[int, list[tuple[int, int]]] = {v: [] for v in rd.boundary}
        for pg in self.pieces:
            for k in range(pg.nb):
                self.bpieces[pg.glob[k]].append((pg.index, k))
        self.totals = PlanarTotals()
        self.check_hook: Optional[Callable] = None

    @classmethod
    def build(cls, g: MultiGraph, r: Optional[int] = None, rotation=None) -> "PlanarContext":
        emb = build_embedding(g, rotation)
        if r is None:
            r = default_r(g.n, g.m)
        rd = build_r_division(emb, g, r)
        report = validate_r_division(rd, emb, g)
        return cls(g, emb, rd, report)

    def summary(self) -> dict:
        t = self.totals
        ph = t.phases
        return {
            **{k: v for k, v in self.report.items()},
            "refines": t.refines,
            "phases": len(ph),
            "rebuilds": t.rebuilds,
            "monge_builds": t.monge_builds,
            "dense_builds": t.dense_builds,
            "ddg_relaxations": sum(p.ddg_relaxations for p in ph),
            "ddg_edges_mean": sum(p.ddg_edges for p in ph) / len(ph) if ph else 0.0,
        }

    def refine(
        self,
        g: MultiGraph,
        f0: FlowState,
        p0,
        eps: int,
        *,
        on_phase: Optional[Callable[[PhaseStats], None]] = None,
    ) -> tuple[FlowState, list[int], RefineStats]:
        """Same contract as the general refine, on the graph this context was built for."""
        return _PlanarRefine(self, g, f0, p0, eps, on_phase).run()


class _PlanarRefine:
    def __init__(self, ctx: PlanarContext, g, f0, p0, eps, on_phase):
        if g.n != ctx.g.n or g.m != ctx.g.m:
            raise ValueError("graph does not match the planar context")
        self.ctx = ctx
        self.g = g
        self.f0 = f0
        self.p0 = p0
        self.eps = eps
        self.on_phase = on_phase
        self.checks = debug_level()

    # distance graph ------------------------------------------------------

    def _ddg(self, pH):
        """Distances to t in the dense distance graph, with ``pH`` feasible on it.

        Returns a list over ``V + {s, t}`` holding true distances on the
        boundary, ``s`` and ``t`` (``INF`` elsewhere or when unreachable) and
        the number of relaxations.
        """
        ctx, f, M = self.ctx, self.f, self.M
        n, s, t = self.n, self.s, self.t
        exc = f.exc
        lim = 2 * M
        pieces, bpieces = ctx.pieces, ctx.bpieces
        key = [INF] * (n + 2)
        dist = [INF] * (n + 2)
        done = bytearray(n + 2)
        pt = pH[t]
        heap = []
        nedges = 0

        def seed(u, c):
            r = c - pH[u] + pt
            if r < 0:
                raise InvariantError("distance-graph potentials are infeasible")
            if r < key[u]:
                key[u] = r
                heap.append((r, u))

        # edges into t: global sink edges, piece t-columns and piece s-t edges
        for v in ctx.boundary:
            seed(v, 0 if exc[v] < 0 else M)
            nedges += 1
        for pg in pieces:
            glob, tcol = pg.glob, pg.t_col
            for k in range(pg.nb):
                if tcol[k] < lim:
                    seed(glob[k], tcol[k])
                    nedges += 1
            if pg.s_t < lim:
                seed(s, pg.s_t)
                nedges += 1
        heapify(heap)
        relax = 0
        done[t] = 1
        dist[t] = 0
        while heap:
            d, v = heappop(heap)
            if done[v]:
                continue
            done[v] = 1
            pv = pH[v]
            dist[v] = d + pv - pt
            if v == s:
                continue
            cand = []
            if exc[v] > 0:
                cand.append((s, 0))
            for i, k in bpieces[v]:
                pg = pieces[i]
                cand.extend(pg.into[k])
                c = pg.s_row[k]
                if c < lim:
                    cand.append((s, c))
            relax += len(cand)
            for u, c in cand:
                if done[u]:
                    continue
                r = c - pH[u] + pv
                if r < 0:
                    raise InvariantError("distance-graph potentials are infeasible")
                nd = d + r
                if nd < key[u]:
                    key[u] = nd
                    heappush(heap, (nd, u))
        nedges += relax
        nverts = len(ctx.boundary) + 2
        return dist, nverts, nedges, relax

    # path search ---------------------------------------------------------

    def _start_phase(self, pstar):
        ctx = self.ctx
        self.W = bytearray(self.n + 2)
        self.state: dict[tuple[int, int], list] = {}
        self.extended: set[int] = set()
        ps = pstar[self.s]
        self.xs = sorted(v for v in ctx.boundary if self.f.exc[v] > 0 and pstar[v] == ps)
        self.sp = 0
        self.squeue: deque[int] = deque()
        for pg in ctx.pieces:
            # reachability structures are built on first use in the phase
            pg.reach = None
            self._s_targets(pg, pstar)

    def _s_targets(self, pg: PieceGraph, pstar):
        lim = 2 * self.M
        ps = pstar[self.s]
        tg = [k for k in range(pg.nb) if pg.s_row[k] < lim and pg.s_row[k] - ps + pstar[pg.glob[k]] == 0]
        if pg.s_t < lim and pg.s_t - ps + pstar[self.t] == 0:
            tg.append(-1)
        pg.s_targets = tg
        pg.s_cur = 0
        if tg and not pg.s_queued:
            pg.s_queued = True
            self.squeue.append(pg.index)

    def _next(self, y, pstar):
        """Next zero-cost edge of ``H`` out of ``y`` whose head is not dead."""
        ctx, W, exc = self.ctx, self.W, self.f.exc
        if y == self.s:
            xs = self.xs
            while self.sp < len(xs):
                v = xs[self.sp]
                if exc[v] > 0 and not W[v]:
                    return ("S", -1, v)
                self.sp += 1
            sq = self.squeue
            while sq:
                pg = ctx.pieces[sq[0]]
                tg = pg.s_targets
                while pg.s_cur < len(tg):
                    k = tg[pg.s_cur]
                    pg.s_cur += 1
                    if k < 0:
                        return ("st", pg.index, -1)
                    if not W[pg.glob[k]]:
                        return ("s", pg.index, k)
                pg.s_queued = False
                sq.popleft()
            return None
        # the global sink edge stays available while the deficit lasts
        if exc[y] < 0 and pstar[y] == pstar[self.t]:
            return ("T", -1, y)
        py = pstar[y]
        for i, k in ctx.bpieces[y]:
            pg = ctx.pieces[i]
            if pg.reach is None:
                pg.build_reach(pstar, [j for j in range(pg.nb) if self.W[pg.glob[j]]])
                if self.checks > 1 and pg.nb <= 64:
                    self._check_reach(pg)
                if pg.reach.dense:
                    ctx.totals.dense_builds += 1
                else:
                    ctx.totals.monge_builds += 1
            st = self.state.get((y, i))
            if st is None or st[0] != pg.epoch:
                st = [pg.epoch, False, pg.reach.cursors(k)]
                self.state[y, i] = st
            if not st[1]:
                st[1] = True
                if pg.t_col[k] < 2 * self.M and pg.t_col[k] - py + pstar[self.t] == 0:
                    return ("t", i, k)
            w = pg.reach.next_target(st[2])
            if w >= 0:
                return ("c", i, (k, w))
        return None

    def _head(self, e):
        kind, i, x = e
        if kind in ("S", "T"):
            return x if kind == "S" else self.t
        if kind in ("st", "t"):
            return self.t
        pg = self.ctx.pieces[i]
        if kind == "s":
            return pg.glob[x]
        return pg.glob[x[1]]

    def _kill(self, y):
        self.W[y] = 1
        if y < self.n:
            for i, k in self.ctx.bpieces.get(y, ()):
                reach = self.ctx.pieces[i].reach
                if reach is not None:
                    reach.delete(k)

    def _translate(self, Q) -> list[int]:
        """Multigraph edges of an ``s -> t`` path of ``H``."""
        ctx = self.ctx
        edges: list[int] = []
        start = end = -1
        for kind, i, x in Q:
            pg = ctx.pieces[i] if i >= 0 else None
            if kind == "S":
                start = x
            elif kind == "T":
                end = x
            elif kind == "s":
                part, start = pg.path_from_s(x)
                edges += part
            elif kind == "st":
                part, start = pg.path_from_s(pg.s_via)
                edges += part
                end = pg.glob[pg.s_via]
            elif kind == "t":
                part, end = pg.path_to_t(x)
                edges += part
            else:
                edges += pg.path(*x)
        exc = self.f.exc
        if start < 0 or end < 0 or exc[start] <= 0 or exc[end] >= 0:
            raise InvariantError("translated path does not join an excess to a deficit")
        return edges

    def _send(self, Q, pstar, delta) -> tuple[int, int]:
        ctx, f, g = self.ctx, self.f, self.red
        edges = self._translate(Q)
        if len(set(edges)) != len(edges):
            raise InvariantError("translated path repeats an edge")
        ff = f.f
        cp = self.cp
        total = 0
        for e in edges:
            if ff[e] >= 1 - (e & 1):
                raise InvariantError("translated path uses a saturated edge")
            total += cp[e]
        # Q ends in a sink edge of cost 0 (deficit) so the path cost is delta
        if total != delta:
            raise InvariantError(f"translated path costs {total}, expected {delta}")
        affected = sorted({ctx.owner[e >> 1] for e in edges})
        touched = sum(1 for kind, _, _ in Q if kind in ("S", "s", "c"))
        if len(affected) > 1 + 2 * touched:
            raise InvariantError("path touches more pieces than its boundary crossings allow")
        for i in affected:
            if i not in self.extended:
                ctx.pieces[i].extend(pstar, f.exc, self.M)
                self.extended.add(i)
        for e in edges:
            f.push(e, g)
        for i in affected:
            pg = ctx.pieces[i]
            pg.refresh(ff, cp, self.big)
            pg.build_clique(f.exc, self.M)
            pg.epoch += 1
            pg.reach = None
            self._s_targets(pg, pstar)
        return len(edges), len(affected)

    def _phase_paths(self, pstar, delta):
        self._start_phase(pstar)
        s, t = self.s, self.t
        W = self.W
        Q: list = []
        y = s
        paths = path_edges = rebuilds = max_aff = 0
        while not W[s]:
            if y == t:
                k, a = self._send(Q, pstar, delta)
                paths += 1
                path_edges += k
                rebuilds += a
                max_aff = max(max_aff, a)
                Q = []
                y = s
                continue
            e = self._next(y, pstar)
            if e is not None:
                Q.append(e)
                y = self._head(e)
                continue
            self._kill(y)
            if Q:
                Q.pop()
                y = self._head(Q[-1]) if Q else s
        for pg in self.ctx.pieces:
            pg.s_queued = False
        return paths, path_edges, rebuilds, max_aff

    # driver --------------------------------------------------------------

    def _extend_all(self, pstar):
        price = [0] * self.n
        for v in self.ctx.boundary:
            price[v] = pstar[v]
        for pg in self.ctx.pieces:
            loc = pg.extend(pstar, self.f.exc, self.M)
            for k in range(pg.nb, pg.n_local):
                price[pg.glob[k]] = loc[k]
        return price

    def run(self):
        ctx, g, p0, eps = self.ctx, self.g, self.p0, self.eps
        n, m = g.n, g.m
        tail, head = g.tail, g.head
        if self.checks and not self.f0.is_circulation():
            raise InvariantError("refine needs a circulation on input")
        red = g.with_costs(c - p0[tail[e]] + p0[head[e]] for e, c in enumerate(g.cost))
        f = self.f0.copy()
        for e in range(g.num_edges):
            if f.f[e] < 1 - (e & 1) and red.cost[e] < 0:
                f.push(e, g)
        view = ExtendedView(red, f, eps)
        self.red, self.f, self.view = red, f, view
        self.n, self.s, self.t = n, view.s, view.t
        self.cp, self.M = view.cprime, view.M
        self.big = 4 * view.M
        stats = RefineStats(eps=eps, m=m, initial_excess=f.psi)
        tot = ctx.totals
        tot.refines += 1
        for pg in ctx.pieces:
            pg.set_costs(self.cp)
            pg.refresh(f.f, self.cp, self.big)
            pg.p = [0] * pg.n_local
            pg.epoch += 1
            pg.build_clique(f.exc, self.M)

        pH = [0] * (n + 2)
        prev = None
        while f.X:
            psi = f.psi
            pstar, hv, he, relax = self._ddg(pH)
            delta = pstar[self.s]
            if delta >= self.M:
                raise InvariantError("shortest excess-to-deficit path uses a sentinel edge")
            if prev is not None and delta <= prev:
                raise InvariantError(f"delta did not increase ({prev} -> {delta})")
            if self.checks and psi * delta > 6 * eps * m:
                raise InvariantError("psi * delta exceeds 6 * eps * m")
            prev = delta
            if ctx.check_hook is not None:
                ctx.check_hook(self, pstar)
            if self.checks > 1 and ctx.boundary:
                self.check_translate(pstar, [ctx.boundary[len(stats.phases) % len(ctx.boundary)]])
            paths, pe, rb, aff = self._phase_paths(pstar, delta)
            if not paths:
                raise InvariantError("no zero-reduced-cost path although excess remains")
            stats.rebuilds += rb
            tot.rebuilds += rb
            tot.phases.append(PlanarPhase(hv, he, relax, rb, aff))
            ph = PhaseStats(len(stats.phases), delta, psi, f.psi, paths, pe)
            stats.phases.append(ph)
            if on := self.on_phase:
                on(ph)
            pH = pstar

        pstar, _, _, _ = self._ddg(pH)
        loc = self._extend_all(pstar)
        prices = [loc[v] + p0[v] for v in range(n)]
        if self.checks:
            if len(stats.phases) > stats.phase_bound():
                raise InvariantError("phase count exceeds 8*sqrt(m)+2")
            if stats.path_edges > stats.path_length_bound():
                raise InvariantError("total augmenting path length exceeds 4m+6m(1+ln m)")
            if stats.rebuilds > stats.path_length_bound() + stats.paths:
                raise InvariantError("piece rebuilds exceed the path-length budget")
        if self.checks > 1:
            f.check(g)
        return f, prices, stats

    # inspection ----------------------------------------------------------

    def _check_reach(self, pg: PieceGraph) -> None:
        R = pg.reach.R
        for v in range(pg.nb):
            want = {w for w in range(pg.nb) if w != v and R[v][w] == 0}
            if pg.reach.decode(v) != want:
                raise InvariantError(f"piece {pg.index}: interval reachability disagrees with the clique")

    def check_translate(self, pstar, sources) -> int:
        """Compare boundary-to-boundary distances in ``H`` with the full residual graph.

        Returns the number of pairs compared; raises on the first mismatch.
        """
        view = self.view
        arcs = [(u, v, c) for u, v, c, tag in view.edges() if tag is not None]
        pairs = 0
        for u in sources:
            full = bellman_ford(self.n, arcs, u)
            h = self.h_distances_from(u, pstar)
            for w in self.ctx.boundary:
                want, got = full[w], h.get(w, INF)
                if got != want:
                    raise InvariantError(f"distance {u}->{w}: compressed {got}, full graph {want}")
                pairs += 1
        return pairs

    def h_distances_from(self, u: int, pstar) -> dict[int, int]:
        """True distances from boundary vertex ``u`` to every boundary vertex in ``H``.

        Only the clique edges join boundary vertices, and ``pstar`` (distances
        to t) is feasible on them.
        """
        ctx = self.ctx
        lim = 2 * self.M
        key = {u: 0}
        heap = [(0, u)]
        out = {}
        while heap:
            d, v = heappop(heap)
            if v in out:
                continue
            out[v] = d
            for i, k in ctx.bpieces[v]:
                pg = ctx.pieces[i]
                row = pg.clique[k]
                for w in range(pg.nb):
                    c = row[w]
                    if w == k or c >= lim:
                        continue
                    x = pg.glob[w]
                    nd = d + c - pstar[v] + pstar[x]
                    if nd < key.get(x, INF):
                        key[x] = nd
                        heappush(heap, (nd, x))
        return {v: d - pstar[v] + pstar[u] for v, d in out.items()}
