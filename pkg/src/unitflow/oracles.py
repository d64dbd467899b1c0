"""Independent ground-truth solvers for unit-capacity min-cost circulation.

Nothing here imports the scaling or refine code, so agreement between these
oracles and the solvers is a genuine cross-check.
"""
from __future__ import annotations

import numpy as np

from .graph import MultiGraph

EXHAUSTIVE_LIMIT = 20


def exhaustive_oracle(g: MultiGraph, chunk_bits: int = 16) -> int:
    """Minimum cost over every 0/1 assignment to the original edges with zero excess."""
    m = g.m
    if m > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive oracle supports m <= {EXHAUSTIVE_LIMIT}, got {m}")
    if m == 0:
        return 0
    arcs = list(g.arcs())
    inc = np.zeros((m, g.n), dtype=np.int64)
    for i, (u, v, _) in enumerate(arcs):
        inc[i, u] -= 1
        inc[i, v] += 1
    cost = np.array([c for _, _, c in arcs], dtype=np.int64)
    shifts = np.arange(m, dtype=np.int64)
    best = 0
    total = 1 << m
    step = 1 << min(chunk_bits, m)
    for lo in range(0, total, step):
        codes = np.arange(lo, lo + step, dtype=np.int64)
        bits = (codes[:, None] >> shifts) & 1
        balanced = ~np.any(bits @ inc, axis=1)
        if balanced.any():
            best = min(best, int((bits[balanced] @ cost).min()))
    return best


def residual_arcs(g: MultiGraph, x) -> list[tuple[int, int, int, int]]:
    """Residual arcs ``(u, v, cost, i)`` of the 0/1 flow ``x`` on original edges.

    ``i`` is the original edge index; the arc toggles ``x[i]`` when used.
    """
    out = []
    for i, (u, v, c) in enumerate(g.arcs()):
        if x[i]:
            out.append((v, u, -c, i))
        else:
            out.append((u, v, c, i))
    return out


def find_negative_cycle(n: int, arcs, dist=None) -> list[int] | None:
    """Bellman-Ford negative cycle search over ``(u, v, cost, tag)`` arcs.

    Every vertex starts as a source with label 0, or with the warm-start
    labels ``dist`` (updated in place); any finite start labels give the same
    verdict.  After each pass the predecessor graph
    is walked with visit stamps; any cycle found there is checked to be
    negative and returned as a list of arc positions in ``arcs`` (in path
    order).  Returns ``None`` when no negative cycle exists.
    """
    if dist is None:
        dist = [0] * n
    pred = [-1] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for k, a in enumerate(arcs):
        out[a[0]].append(k)
    queue = list(range(n))
    inq = bytearray([1]) * n
    passes = 0
    while queue:
        passes += 1
        nxt = []
        for u in queue:
            inq[u] = 0
        for u in queue:
            du = dist[u]
            for k in out[u]:
                _, v, c, _ = arcs[k]
                if du + c < dist[v]:
                    dist[v] = du + c
                    pred[v] = k
                    if not inq[v]:
                        inq[v] = 1
                        nxt.append(v)
        queue = nxt
        if queue and (passes % 4 == 0 or passes > n):
            cyc = _pred_cycle(n, arcs, pred)
            if cyc is not None:
                return cyc
            if passes > 4 * n + 4:
                raise AssertionError("Bellman-Ford did not settle without a predecessor cycle")
    return None


def _pred_cycle(n, arcs, pred) -> list[int] | None:
    stamp = [0] * n
    for root in range(n):
        if stamp[root]:
            continue
        v = root
        while v >= 0 and not stamp[v]:
            stamp[v] = root + 1
            k = pred[v]
            v = arcs[k][0] if k >= 0 else -1
        if v >= 0 and stamp[v] == root + 1:
            cyc = []
            w = v
            while True:
                k = pred[w]
                cyc.append(k)
                w = arcs[k][0]
                if w == v:
                    break
            cyc.reverse()
            if sum(arcs[k][2] for k in cyc) < 0:
                return cyc
    return None


def has_negative_cycle(n: int, arcs) -> bool:
    return find_negative_cycle(n, arcs) is not None


def cycle_canceling(g: MultiGraph) -> tuple[int, list[int]]:
    """Optimal circulation by repeated negative-cycle canceling.

    Returns ``(cost, x)`` with ``x`` the 0/1 flow on original edges.
    """
    x = [0] * g.m
    # negative self-loops are cycles of length one
    for i, (u, v, c) in enumerate(g.arcs()):
        if u == v and c < 0:
            x[i] = 1
    dist = [0] * g.n
    while True:
        arcs = residual_arcs(g, x)
        cyc = find_negative_cycle(g.n, arcs, dist)
        if cyc is None:
            break
        for k in cyc:
            x[arcs[k][3]] ^= 1
        # any finite start labels work; the old ones are close to feasible
    cost = sum(c for (_, _, c), xi in zip(g.arcs(), x) if xi)
    return cost, x


def cycle_canceling_oracle(g: MultiGraph) -> int:
    return cycle_canceling(g)[0]


def bellman_ford(n: int, arcs, src: int) -> list[float]:
    """Single-source distances over ``(u, v, cost, ...)`` arcs; ``inf`` when unreachable.

    Raises ``ValueError`` when a negative cycle is reachable from ``src``.
    """
    inf = float("inf")
    dist = [inf] * n
    dist[src] = 0
    for _ in range(n):
        changed = False
        for a in arcs:
            u, v, c = a[0], a[1], a[2]
            du = dist[u]
            if du != inf and du + c < dist[v]:
                dist[v] = du + c
                changed = True
        if not changed:
            return dist
    raise ValueError("negative cycle reachable from the source")
