"""Multigraph, flow and price bookkeeping shared by every solver.

Edges live in a flat array: original edge ``i`` of the input is stored at
index ``2*i`` and its reverse at ``2*i + 1``, so ``rev(e) == e ^ 1``.
Costs are plain Python ints; the solvers premultiply them by a power of two
so that every epsilon, half-epsilon, price and distance stays integral.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

INF = float("inf")


class InvariantError(AssertionError):
    """An internal invariant of the algorithm was violated."""


class CapacityError(ValueError):
    """Flow was pushed through an edge without residual capacity."""


def debug_level() -> int:
    """Runtime invariant checking level taken from ``UNITFLOW_DEBUG``.

    0 disables optional checks, 1 enables cheap per-operation assertions,
    2 additionally runs oracle cross-checks inside the solvers.
    """
    try:
        return int(os.environ.get("UNITFLOW_DEBUG", "1"))
    except ValueError:
        return 1


def rev(e: int) -> int:
    return e ^ 1


@dataclass(frozen=True)
class MultiGraph:
    """Directed multigraph with unit capacities and paired reverse edges."""

    n: int
    tail: tuple[int, ...]
    head: tuple[int, ...]
    cost: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "MultiGraph":
        """Build from ``(u, v, cost)`` triples with 0-based vertices."""
        tail, head, cost = [], [], []
        for u, v, c in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if int(c) != c:
                raise ValueError("costs must be integral")
            c = int(c)
            tail += (u, v)
            head += (v, u)
            cost += (c, -c)
        adj = [[] for _ in range(n)]
        for e, u in enumerate(tail):
            adj[u].append(e)
        return cls(n, tuple(tail), tuple(head), tuple(cost), tuple(map(tuple, adj)))

    def with_costs(self, cost) -> "MultiGraph":
        """Same topology, new per-edge costs (must stay antisymmetric)."""
        return MultiGraph(self.n, self.tail, self.head, tuple(cost), self.adj)

    def scaled(self, factor: int) -> "MultiGraph":
        return self.with_costs(c * factor for c in self.cost)

    @property
    def m(self) -> int:
        """Number of original edges."""
        return len(self.tail) // 2

    @property
    def num_edges(self) -> int:
        return len(self.tail)

    def capacity(self, e: int) -> int:
        return 1 - (e & 1)

    def is_original(self, e: int) -> bool:
        return not e & 1

    def arcs(self):
        for i in range(self.m):
            yield self.tail[2 * i], self.head[2 * i], self.cost[2 * i]

    @property
    def max_abs_cost(self) -> int:
        return max((abs(c) for c in self.cost), default=0)

    def check(self) -> None:
        for e in range(self.num_edges):
            r = e ^ 1
            if self.tail[r] != self.head[e] or self.head[r] != self.tail[e]:
                raise InvariantError(f"edge {e} and its reverse disagree on endpoints")
            if self.cost[r] != -self.cost[e]:
                raise InvariantError(f"edge {e} and its reverse disagree on cost")


@dataclass
class FlowState:
    """Antisymmetric 0/1 flow together with incrementally maintained excesses."""

    f: list[int]
    exc: list[int]
    X: set[int]
    D: set[int]
    psi: int = 0

    @classmethod
    def zero(cls, g: MultiGraph) -> "FlowState":
        return cls([0] * g.num_edges, [0] * g.n, set(), set(), 0)

    @classmethod
    def from_original(cls, g: MultiGraph, x) -> "FlowState":
        """Flow that puts ``x[i]`` units on original edge ``i``."""
        st = cls.zero(g)
        for i, xi in enumerate(x):
            if xi not in (0, 1):
                raise CapacityError(f"flow {xi} on original edge {i} is not 0/1")
            if xi:
                st.push(2 * i, g)
        return st

    def copy(self) -> "FlowState":
        return FlowState(self.f[:], self.exc[:], set(self.X), set(self.D), self.psi)

    def residual(self, e: int) -> bool:
        return self.f[e] < 1 - (e & 1)

    def original(self) -> list[int]:
        return self.f[0::2]

    def is_circulation(self) -> bool:
        return not self.X

    def cost(self, g: MultiGraph) -> int:
        f = self.f
        return sum(g.cost[e] for e in range(0, g.num_edges, 2) if f[e])

    def _bump(self, v: int, delta: int) -> None:
        old = self.exc[v]
        new = old + delta
        self.exc[v] = new
        if old > 0:
            self.psi -= old
            self.X.discard(v)
        elif old < 0:
            self.D.discard(v)
        if new > 0:
            self.psi += new
            self.X.add(v)
        elif new < 0:
            self.D.add(v)

    def push(self, e: int, g: MultiGraph) -> None:
        """Send one unit through residual edge ``e``."""
        f = self.f
        if f[e] >= 1 - (e & 1):
            raise CapacityError(f"edge {e} is saturated")
        f[e] += 1
        f[e ^ 1] -= 1
        u, v = g.tail[e], g.head[e]
        if u != v:
            self._bump(u, -1)
            self._bump(v, 1)

    def check(self, g: MultiGraph) -> None:
        f = self.f
        exc = [0] * g.n
        for e in range(g.num_edges):
            if f[e] != -f[e ^ 1]:
                raise InvariantError(f"antisymmetry broken on edge {e}")
            if not (-(e & 1) <= f[e] <= 1 - (e & 1)):
                raise InvariantError(f"capacity broken on edge {e}")
            exc[g.head[e]] += f[e]
        if exc != self.exc:
            raise InvariantError("stored excesses are stale")
        X = {v for v in range(g.n) if exc[v] > 0}
        D = {v for v in range(g.n) if exc[v] < 0}
        if X != self.X or D != self.D:
            raise InvariantError("excess/deficit sets are stale")
        if self.psi != sum(exc[v] for v in X) or self.psi != -sum(exc[v] for v in D):
            raise InvariantError("total excess is stale")


def send_flow(g: MultiGraph, f: FlowState, edges) -> FlowState:
    """Return a new flow with one extra unit on every edge of ``edges``."""
    edges = list(edges)
    chosen = set(edges)
    if len(chosen) != len(edges):
        raise CapacityError("edge listed twice")
    for e in edges:
        if e ^ 1 in chosen:
            raise CapacityError(f"edge {e} listed together with its reverse")
        if not f.residual(e):
            raise CapacityError(f"edge {e} is saturated")
    out = f.copy()
    for e in edges:
        out.push(e, g)
    return out


def round_to(y: int, z: int) -> int:
    """Least integer multiple of ``z`` strictly greater than ``y``."""
    if z <= 0:
        raise ValueError("z must be positive")
    return (y // z + 1) * z


def approx_cost(c: int, eps: int) -> int:
    """Cost rounded up to the half-epsilon lattice after a half-epsilon shift."""
    half = eps // 2
    return round_to(c + half, half)


def reduced_cost(g: MultiGraph, e: int, p) -> int:
    return g.cost[e] - p[g.tail[e]] + p[g.head[e]]


def is_eps_optimal(g: MultiGraph, f: FlowState, p, eps) -> bool:
    ff, tail, head, cost = f.f, g.tail, g.head, g.cost
    for e in range(g.num_edges):
        if ff[e] < 1 - (e & 1) and cost[e] - p[tail[e]] + p[head[e]] < -eps:
            return False
    return True


@dataclass(frozen=True)
class CostScale:
    """Fixed-point bookkeeping for the epsilon schedule.

    Costs are multiplied by ``unit = 2**shift``; ``eps`` is an integer power
    of two in those units.
    """

    n: int
    shift: int
    c_max: int
    eps: int

    @classmethod
    def for_graph(cls, g: MultiGraph) -> "CostScale":
        # ceil(log2(n + 1)) == n.bit_length()
        shift = g.n.bit_length() + 2
        c_max = g.max_abs_cost
        scaled = c_max << shift
        eps = 1 << (scaled.bit_length() - 1) if scaled else 0
        return cls(g.n, shift, c_max, eps)

    @property
    def unit(self) -> int:
        return 1 << self.shift

    def final(self) -> bool:
        """True once eps <= 1/(n+1) in original units."""
        return self.eps * (self.n + 1) <= self.unit

    def halved(self) -> "CostScale":
        return CostScale(self.n, self.shift, self.c_max, self.eps // 2)

    def expected_scales(self) -> int:
        """Number of refine calls the schedule makes from the initial eps."""
        if self.eps == 0:
            return 0
        # the last eps satisfying eps * (n + 1) <= 2**shift is always 4
        return self.eps.bit_length() - 2


class ExtendedView:
    """Residual network with rounded costs plus a super-source and super-sink.

    Vertex ``n`` is the super-source ``s`` and ``n + 1`` the super-sink ``t``.
    ``cprime`` holds the rounded cost of every edge of the multigraph (the
    residual ones are those with ``flow.residual(e)``).
    """

    def __init__(self, g: MultiGraph, flow: FlowState, eps: int, cprime=None):
        if eps < 2 or eps & (eps - 1):
            raise ValueError("eps must be a power of two >= 2 in scaled units")
        self.g = g
        self.flow = flow
        self.eps = eps
        self.half = eps // 2
        self.cprime = cprime if cprime is not None else [approx_cost(c, eps) for c in g.cost]
        self.M = sum(abs(c) for c in self.cprime) + eps
        self.n = g.n
        self.s = g.n
        self.t = g.n + 1

    def sink_cost(self, v: int) -> int:
        return 0 if self.flow.exc[v] < 0 else self.M

    def edges(self):
        """Yield ``(u, v, cost, tag)`` for every edge of the extended view.

        ``tag`` is the multigraph edge id for real edges and ``None`` for the
        auxiliary ones.
        """
        g, f, cp = self.g, self.flow, self.cprime
        for e in range(g.num_edges):
            if f.f[e] < 1 - (e & 1):
                yield g.tail[e], g.head[e], cp[e], e
        for v in range(self.n):
            yield v, self.t, self.sink_cost(v), None
        for x in sorted(f.X):
            yield self.s, x, 0, None


def build_extended(g: MultiGraph, f: FlowState, eps: int) -> ExtendedView:
    return ExtendedView(g, f, eps)
