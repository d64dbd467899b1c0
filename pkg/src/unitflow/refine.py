"""One scale of the cost-scaling algorithm: successive approximate shortest paths.

A refine call turns a circulation that is ``2*eps``-optimal into one that is
``eps``-optimal.  It first saturates every residual edge of negative reduced
cost, then repeatedly

1. computes distances to the super-sink in the rounded residual network,
2. extracts a maximal set of edge-disjoint zero-reduced-cost paths from the
   super-source to the super-sink, and
3. sends one unit along each of them,

until no excess remains.  Every quantity is an integer in scaled units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import Callable, Optional

from .graph import (
    INF,
    ExtendedView,
    FlowState,
    InvariantError,
    MultiGraph,
    debug_level,
    send_flow,
)


@dataclass
class PhaseStats:
    phase: int
    delta: int
    psi_before: int
    psi_after: int
    paths: int
    path_edges: int
    buckets: int = 0

    def as_dict(self) -> dict:
        return {
            "phase": self.phase,
            "delta": self.delta,
            "psi_before": self.psi_before,
            "psi_after": self.psi_after,
            "paths": self.paths,
            "path_edges": self.path_edges,
        }


@dataclass
class RefineStats:
    eps: int
    m: int
    phases: list[PhaseStats] = field(default_factory=list)
    initial_excess: int = 0
    rebuilds: int = 0

    @property
    def path_edges(self) -> int:
        return sum(ph.path_edges for ph in self.phases)

    @property
    def paths(self) -> int:
        return sum(ph.paths for ph in self.phases)

    def phase_bound(self) -> float:
        return 8 * math.sqrt(self.m) + 2

    def path_length_bound(self) -> float:
        m = self.m
        return 4 * m + 6 * m * (1 + math.log(m)) if m else 0

    def bound_violations(self) -> list[str]:
        """Combinatorial bounds every refine call must respect."""
        out = []
        for ph in self.phases:
            if ph.psi_before * ph.delta > 6 * self.eps * self.m:
                out.append(f"phase {ph.phase}: psi*delta={ph.psi_before * ph.delta} > 6*eps*m")
        if len(self.phases) > self.phase_bound():
            out.append(f"{len(self.phases)} phases > 8*sqrt(m)+2")
        if self.path_edges > self.path_length_bound():
            out.append(f"{self.path_edges} path edges > 4m+6m(1+ln m)")
        return out


def _check_feasible(r) -> None:
    if r < 0:
        raise InvariantError("price function is not feasible for the extended view")


def distances_to(view: ExtendedView, p) -> list:
    """Distances to the super-sink for every vertex of the extended view.

    ``p`` must be a feasible price function of the view (indexed over
    ``V + {s, t}``); it only serves to make the Dijkstra keys nonnegative.
    Unreachable vertices (only ``s`` when there is no excess) get ``INF``.
    """
    g = view.g
    n, s, t = view.n, view.s, view.t
    cp, M = view.cprime, view.M
    f, exc = view.flow.f, view.flow.exc
    head, adj = g.head, g.adj
    pt, ps = p[t], p[s]

    dist = [INF] * (n + 2)
    dist[t] = 0
    heap = []
    for v in range(n):
        r = (0 if exc[v] < 0 else M) - p[v] + pt
        _check_feasible(r)
        dist[v] = r
        heap.append((r, v))
    heapify(heap)
    done = bytearray(n + 2)
    done[t] = 1
    while heap:
        d, v = heappop(heap)
        if done[v]:
            continue
        done[v] = 1
        if v == s:
            continue
        pv = p[v]
        if exc[v] > 0:
            r = pv - ps
            _check_feasible(r)
            if d + r < dist[s]:
                dist[s] = d + r
                heappush(heap, (d + r, s))
        for e2 in adj[v]:
            e = e2 ^ 1
            if f[e] < 1 - (e & 1):
                u = head[e2]
                r = cp[e] - p[u] + pv
                if r < 0:
                    _check_feasible(r)
                nd = d + r
                if nd < dist[u]:
                    dist[u] = nd
                    heappush(heap, (nd, u))
    return [dist[v] + p[v] - pt if dist[v] != INF else INF for v in range(n + 2)]


def dial_distances_to(view: ExtendedView, p: list) -> tuple[int, int]:
    """Bucket-queue Dijkstra towards the super-sink, stopped once ``s`` settles.

    Updates ``p`` in place: every settled vertex ``v`` gets
    ``dist(v, t) - dist(s, t)``; the rest keep their old price.  Requires
    ``p[s] == 0`` and ``p[t] <= 0``; afterwards ``p[s] == 0`` and
    ``p[t] == -delta``.  Returns ``(delta, buckets_scanned)``.
    """
    g = view.g
    n, s, t = view.n, view.s, view.t
    cp, M, half = view.cprime, view.M, view.half
    f, exc = view.flow.f, view.flow.exc
    head, adj = g.head, g.adj
    if p[s] != 0 or p[t] > 0:
        raise InvariantError("Dial step needs p(s) == 0 and p(t) <= 0")
    if not view.flow.X:
        raise InvariantError("Dial step called without excess vertices")
    pt = p[t]
    # delta <= 6*eps*m, so s settles within 12m + 1 buckets of width eps/2
    limit = 12 * g.m + 1

    dist = [INF] * (n + 2)
    dist[t] = 0
    buckets: list[list[int]] = [[]]
    for v in range(n):
        r = (0 if exc[v] < 0 else M) - p[v] + pt
        _check_feasible(r)
        k = r // half
        if k <= limit:
            dist[v] = r
            while len(buckets) <= k:
                buckets.append([])
            buckets[k].append(v)
    settled = []
    done = bytearray(n + 2)
    done[t] = 1
    idx = 0
    found = False
    while idx < len(buckets) and not found:
        bucket = buckets[idx]
        while bucket:
            v = bucket.pop()
            if done[v]:
                continue
            d = dist[v]
            if d // half != idx:
                continue
            done[v] = 1
            settled.append(v)
            if v == s:
                found = True
                break
            pv = p[v]
            if exc[v] > 0:
                r = pv
                _check_feasible(r)
                nd = d + r
                if nd < dist[s]:
                    k = nd // half
                    if k <= limit:
                        dist[s] = nd
                        while len(buckets) <= k:
                            buckets.append([])
                        buckets[k].append(s)
            for e2 in adj[v]:
                e = e2 ^ 1
                if f[e] < 1 - (e & 1):
                    u = head[e2]
                    if done[u]:
                        continue
                    r = cp[e] - p[u] + pv
                    if r < 0:
                        _check_feasible(r)
                    nd = d + r
                    if nd < dist[u]:
                        k = nd // half
                        if k <= limit:
                            dist[u] = nd
                            while len(buckets) <= k:
                                buckets.append([])
                            buckets[k].append(u)
        if not found:
            idx += 1
    if not found:
        raise InvariantError("super-source not settled within the 12m bucket budget")
    # dist is the reduced distance; delta = dist[s] + p[s] - p[t]
    delta = dist[s] - pt
    for v in settled:
        p[v] = dist[v] + p[v] - pt - delta
    p[t] = -delta
    return delta, idx + 1


def maximal_zero_paths(view: ExtendedView, p) -> list[list[int]]:
    """A maximal set of edge-disjoint zero-reduced-cost ``s -> t`` paths.

    Each path is returned as its list of multigraph edges (the auxiliary
    first and last edges are implicit).  Edges of the same path set are never
    reused.  An auxiliary edge ``s -> x`` (``d -> t``) is available again
    after use as long as ``x`` (``d``) keeps positive (negative) excess,
    which is exactly the graph the next round would see after sending flow.
    The zero subgraph must be acyclic.
    """
    g = view.g
    n, s, t = view.n, view.s, view.t
    cp = view.cprime
    f, exc = view.flow.f, view.flow.exc
    head, adj = g.head, g.adj
    ps, pt = p[s], p[t]

    W = bytearray(n + 2)
    ptr = [0] * n
    used = bytearray(g.num_edges)
    left = {v: exc[v] for v in view.flow.X}
    sinks = {v: -exc[v] for v in view.flow.D}
    xs = [x for x in sorted(left) if p[x] == ps]
    sp = 0
    paths = []
    Q: list[int] = []  # multigraph edges after the leading s -> x
    start = -1  # x of the current path, -1 while Q is only at s
    y = s
    while True:
        if y == s:
            while sp < len(xs) and (W[xs[sp]] or not left[xs[sp]]):
                sp += 1
            if sp == len(xs):
                W[s] = 1
                break
            start = y = xs[sp]
            continue
        # sink edge first: y -> t has cost 0 while y is a deficit vertex
        if sinks.get(y, 0) > 0 and pt == p[y]:
            paths.append(Q[:])
            for e in Q:
                used[e] = 1
            left[start] -= 1
            sinks[y] -= 1
            Q.clear()
            start = -1
            y = s
            continue
        lst = adj[y]
        i = ptr[y]
        py = p[y]
        nxt = -1
        while i < len(lst):
            e = lst[i]
            i += 1
            if used[e] or f[e] >= 1 - (e & 1):
                continue
            v = head[e]
            if W[v] or cp[e] - py + p[v]:
                continue
            nxt = e
            break
        ptr[y] = i
        if nxt >= 0:
            Q.append(nxt)
            y = head[nxt]
        else:
            W[y] = 1
            if Q:
                Q.pop()
                y = head[Q[-1]] if Q else start
            else:
                start = -1
                y = s
    return paths


def refine(
    g: MultiGraph,
    f0: FlowState,
    p0,
    eps: int,
    *,
    engine: str = "dial",
    on_phase: Optional[Callable[[PhaseStats], None]] = None,
) -> tuple[FlowState, list[int], RefineStats]:
    """Turn a ``2*eps``-optimal circulation into an ``eps``-optimal one.

    ``g`` carries scaled integer costs, ``p0`` is the incoming price function
    and ``eps`` an even power of two.  Returns ``(f, p, stats)`` with ``f`` a
    circulation that is ``eps``-optimal with respect to ``p``.
    """
    if engine not in ("dial", "heap"):
        raise ValueError(f"unknown engine {engine!r}")
    n, m = g.n, g.m
    tail, head = g.tail, g.head
    checks = debug_level()
    if checks and not f0.is_circulation():
        raise InvariantError("refine needs a circulation on input")

    red = g.with_costs(c - p0[tail[e]] + p0[head[e]] for e, c in enumerate(g.cost))
    f = f0.copy()
    for e in range(g.num_edges):
        if f.f[e] < 1 - (e & 1) and red.cost[e] < 0:
            f.push(e, g)
    view = ExtendedView(red, f, eps)
    s, t = view.s, view.t
    stats = RefineStats(eps=eps, m=m, initial_excess=f.psi)

    p = [0] * (n + 2)
    prev_delta = None
    while f.X:
        psi = f.psi
        buckets = 0
        if engine == "dial":
            delta, buckets = dial_distances_to(view, p)
        else:
            p = distances_to(view, p)
            delta = p[s] - p[t]
        if delta >= view.M:
            raise InvariantError("shortest excess-to-deficit path uses a sentinel edge")
        if prev_delta is not None and delta <= prev_delta:
            raise InvariantError(f"delta did not increase ({prev_delta} -> {delta})")
        if checks and psi * delta > 6 * eps * m:
            raise InvariantError("psi * delta exceeds 6 * eps * m")
        prev_delta = delta
        paths = maximal_zero_paths(view, p)
        if not paths:
            raise InvariantError("no zero-reduced-cost path although excess remains")
        edges = [e for P in paths for e in P]
        if checks > 1:
            send_flow(red, f, edges)  # validates disjointness and capacities
        for e in edges:
            f.push(e, g)
        ph = PhaseStats(len(stats.phases), delta, psi, f.psi, len(paths), len(edges), buckets)
        stats.phases.append(ph)
        if on_phase is not None:
            on_phase(ph)

    if engine == "dial" and p[s] != 0:
        raise InvariantError("Dial invariant p(s) == 0 lost")
    dist = distances_to(view, p)
    prices = [dist[v] + p0[v] for v in range(n)]
    if checks:
        if len(stats.phases) > stats.phase_bound():
            raise InvariantError("phase count exceeds 8*sqrt(m)+2")
        if stats.path_edges > stats.path_length_bound():
            raise InvariantError("total augmenting path length exceeds 4m+6m(1+ln m)")
    if checks > 1:
        f.check(g)
    return f, prices, stats
