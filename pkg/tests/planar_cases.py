"""Shared builders for the planar tests."""
import random
from dataclasses import dataclass
from heapq import heappop, heappush

from unitflow.generators import InstanceSpec, generate
from unitflow.graph import FlowState
from unitflow.planar.engine import PlanarContext


def random_monge(rng, h, w, spread=6):
    """Random Monge matrix: a negated 2-D prefix sum of nonnegative weights plus row/column offsets."""
    wt = [[rng.randint(0, spread) for _ in range(w)] for _ in range(h)]
    pre = [[0] * (w + 1) for _ in range(h + 1)]
    for i in range(h):
        for j in range(w):
            pre[i + 1][j + 1] = wt[i][j] + pre[i][j + 1] + pre[i + 1][j] - pre[i][j]
    u = [rng.randint(-20, 20) for _ in range(h)]
    v = [rng.randint(-20, 20) for _ in range(w)]
    return [[-pre[i + 1][j + 1] + u[i] + v[j] for j in range(w)] for i in range(h)]


def local_distances_to(pg, targets):
    """Distances to a virtual sink joined from ``targets`` (local id -> offset), over every local arc."""
    nl = pg.n_local
    dist = [float("inf")] * nl
    heap = []
    for z, off in targets.items():
        dist[z] = off
        heappush(heap, (off, z))
    while heap:
        d, v = heappop(heap)
        if d > dist[v]:
            continue
        for pid in pg.inn[v]:
            u = pg.ptail[pid]
            nd = d + pg.pcost[pid]
            if nd < dist[u]:
                dist[u] = nd
                heappush(heap, (nd, u))
    return dist


@dataclass
class PieceCase:
    pg: object
    ptrue: list
    cp: list
    exc: list
    M: int

    def sink(self, v):
        return 0 if self.exc[self.pg.glob[v]] < 0 else self.M


_CACHE = {}


def planar_context(kind, size, r, seed):
    key = (kind, size, r, seed)
    if key not in _CACHE:
        if kind == "grid":
            spec = InstanceSpec("grid", rows=size, cols=size, seed=seed)
        else:
            spec = InstanceSpec("triangulation", n=size, seed=seed)
        inst = generate(spec)
        _CACHE[key] = (inst, PlanarContext.build(inst.graph, r, inst.rotation))
    return _CACHE[key]


def random_piece_case(rng: random.Random, max_boundary: int = 64):
    """A piece with random nonnegative arc costs and a random residual state.

    Returns a ``PieceCase``; ``ptrue`` is a feasible price function on
    every local vertex with plenty of zero reduced-cost arcs.
    """
    while True:
        kind = rng.choice(["grid", "triangulation"])
        size = rng.choice([8, 10, 12]) if kind == "grid" else rng.choice([60, 100, 150])
        r = rng.choice([16, 32, 64])
        inst, ctx = planar_context(kind, size, r, rng.randrange(4))
        pg = rng.choice(ctx.pieces)
        if 2 <= pg.nb <= max_boundary:
            break
    g = inst.graph
    f = FlowState.zero(g)
    for e in range(0, g.num_edges, 2):
        if rng.random() < 0.3:
            f.push(e, g)
    cp = [rng.randint(0, 3) for _ in range(g.num_edges)]
    M = 100
    pg.set_costs(cp)
    pg.refresh(f.f, cp, 4 * M)
    pg.p = [0] * pg.n_local
    pg.build_clique(f.exc, M)
    k = rng.randint(1, 3)
    targets = {z: rng.randint(0, 3) for z in rng.sample(range(pg.n_local), k)}
    ptrue = local_distances_to(pg, targets)
    return PieceCase(pg, ptrue, cp, f.exc, M)
