"""Outer epsilon-scaling loop, the s,t-flow endpoint and optimality certificates."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import (
    CostScale,
    FlowState,
    InvariantError,
    MultiGraph,
    debug_level,
    is_eps_optimal,
)
from .oracles import find_negative_cycle, residual_arcs
from .refine import PhaseStats, RefineStats, refine


class InfeasibleError(ValueError):
    """No flow of the requested value exists."""


@dataclass
class SolverConfig:
    """``engine`` is ``"dial"`` (bucket queue), ``"heap"`` (binary heap) or ``"planar"``."""

    engine: str = "dial"
    r: Optional[int] = None
    rotation: Optional[list] = None
    certify_each_scale: bool = False
    on_phase: Optional[Callable[[int, PhaseStats], None]] = None
    # called after every scale with (scale, flow on original edges, prices, eps)
    on_scale: Optional[Callable[[int, list, list, int], None]] = None


@dataclass
class Solution:
    flow: list[int]
    cost: int
    prices: list[int]
    unit: int
    eps: int
    scales: list[RefineStats] = field(default_factory=list)
    certified: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @property
    def phases(self) -> int:
        return sum(len(s.phases) for s in self.scales)

    @property
    def path_edges(self) -> int:
        return sum(s.path_edges for s in self.scales)


def certify_report(g: MultiGraph, x, p, eps: int, unit: int = 1) -> list[str]:
    """Reasons why ``(x, p)`` fails to certify; empty when it passes.

    ``x`` is the 0/1 flow on original edges, ``p`` prices in units of
    ``1/unit`` and ``eps`` the claimed optimality gap in the same units.
    """
    out = []
    if len(x) != g.m or any(v not in (0, 1) for v in x):
        return ["flow must assign 0 or 1 to every arc"]
    exc = [0] * g.n
    for (u, v, _), xi in zip(g.arcs(), x):
        if xi:
            exc[u] -= 1
            exc[v] += 1
    bad = [v for v in range(g.n) if exc[v]]
    if bad:
        out.append(f"conservation violated at vertex {bad[0] + 1} (excess {exc[bad[0]]})")
    if len(p) < g.n:
        out.append("price vector too short")
        return out
    for i, (u, v, c) in enumerate(g.arcs()):
        if x[i]:
            u, v, c = v, u, -c
        if c * unit - p[u] + p[v] < -eps:
            out.append(f"arc {i + 1} residual reduced cost {c * unit - p[u] + p[v]} < -{eps}")
            break
    if not bad and eps * (g.n + 1) <= unit:
        cyc = find_negative_cycle(g.n, residual_arcs(g, x))
        if cyc is not None:
            out.append(f"negative residual cycle through {len(cyc)} arcs")
    return out


def certify(g: MultiGraph, x, p, eps: int, unit: int = 1) -> bool:
    """True iff ``x`` is a circulation, ``eps``-optimal wrt ``p``, and, once
    ``eps <= unit/(n+1)``, its residual graph has no negative cycle."""
    return not certify_report(g, x, p, eps, unit)


def _refine_fn(g: MultiGraph, cfg: SolverConfig):
    if cfg.engine in ("dial", "heap"):
        def run(gs, f, p, eps, cb):
            return refine(gs, f, p, eps, engine=cfg.engine, on_phase=cb)
        return run
    if cfg.engine == "planar":
        from .planar.engine import PlanarContext

        ctx = PlanarContext.build(g, cfg.r, cfg.rotation)

        def run(gs, f, p, eps, cb):
            return ctx.refine(gs, f, p, eps, on_phase=cb)
        run.context = ctx
        return run
    raise ValueError(f"unknown engine {cfg.engine!r}")


def min_cost_circulation(g: MultiGraph, config: Optional[SolverConfig] = None) -> Solution:
    """Minimum-cost circulation of a unit-capacity multigraph by epsilon scaling."""
    cfg = config or SolverConfig()
    checks = debug_level()
    sc = CostScale.for_graph(g)
    run = _refine_fn(g, cfg)
    if sc.eps == 0:
        return Solution([0] * g.m, 0, [0] * g.n, sc.unit, 0, certified=True)
    gs = g.scaled(sc.unit)
    f = FlowState.zero(gs)
    p = [0] * g.n
    scales = []
    expected = sc.expected_scales()
    while True:
        if checks and not is_eps_optimal(gs, f, p, 2 * sc.eps):
            raise InvariantError(f"flow is not 2eps-optimal entering the scale eps={sc.eps}")
        k = len(scales)
        cb = (lambda ph, k=k: cfg.on_phase(k, ph)) if cfg.on_phase else None
        f, p, st = run(gs, f, p, sc.eps, cb)
        scales.append(st)
        if not f.is_circulation():
            raise InvariantError("refine returned a flow with excess")
        if checks and not is_eps_optimal(gs, f, p, sc.eps):
            raise InvariantError(f"refine output is not eps-optimal at eps={sc.eps}")
        if cfg.certify_each_scale and not certify(g, f.original(), p, sc.eps, sc.unit):
            raise InvariantError(f"certificate failed after the scale eps={sc.eps}")
        if cfg.on_scale is not None:
            cfg.on_scale(k, f.original(), list(p), sc.eps)
        if sc.final():
            break
        sc = sc.halved()
    if len(scales) != expected:
        raise InvariantError(f"ran {len(scales)} scales, schedule predicts {expected}")
    x = f.original()
    sol = Solution(x, f.cost(g), p, sc.unit, sc.eps, scales)
    if hasattr(run, "context"):
        sol.extra["planar"] = run.context.summary()
    return sol


def _augment_bfs(g: MultiGraph, s: int, t: int, k: int) -> list[int]:
    """Unit-capacity s,t-flow of value ``k`` by BFS augmenting paths."""
    x = [0] * g.m
    if k == 0 or s == t:
        if k and s == t:
            raise InfeasibleError("source equals sink")
        return x
    f = FlowState.zero(g)
    for _ in range(k):
        pred = [-1] * g.n
        seen = bytearray(g.n)
        seen[s] = 1
        dq = deque([s])
        while dq and not seen[t]:
            u = dq.popleft()
            for e in g.adj[u]:
                v = g.head[e]
                if not seen[v] and f.residual(e):
                    seen[v] = 1
                    pred[v] = e
                    dq.append(v)
        if not seen[t]:
            raise InfeasibleError(f"maximum flow is below the requested value {k}")
        v = t
        while v != s:
            e = pred[v]
            f.push(e, g)
            v = g.tail[e]
    return f.original()


def min_cost_st_flow(g: MultiGraph, s: int, t: int, k: int, config: Optional[SolverConfig] = None) -> Solution:
    """Minimum-cost s,t-flow of value ``k``.

    Any flow of value ``k`` is found first; the cheapest one then differs
    from it by a min-cost circulation in its residual multigraph.  Raises
    ``InfeasibleError`` when the value is not attainable.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("source or sink out of range")
    if k < 0:
        raise ValueError("flow value must be nonnegative")
    x0 = _augment_bfs(g, s, t, k)
    res = MultiGraph.from_arcs(g.n, [(u, v, c) for u, v, c, _ in residual_arcs(g, x0)])
    # the residual multigraph has the same support, so a rotation still applies
    sol = min_cost_circulation(res, config)
    x = [a ^ b for a, b in zip(x0, sol.flow)]
    cost = sum(c for (_, _, c), xi in zip(g.arcs(), x) if xi)
    return Solution(x, cost, sol.prices, sol.unit, sol.eps, sol.scales, sol.certified, sol.extra)


def certify_st_flow(g: MultiGraph, s: int, t: int, k: int, sol: Solution) -> list[str]:
    """Certificate check for an s,t-flow: value, conservation and optimality."""
    x = sol.flow
    exc = [0] * g.n
    for (u, v, _), xi in zip(g.arcs(), x):
        if xi:
            exc[u] -= 1
            exc[v] += 1
    want = [0] * g.n
    if s != t:
        want[s] -= k
        want[t] += k
    if exc != want:
        return ["flow does not have the requested value with conservation elsewhere"]
    # with s and t balanced by an extra t->s path of value k, the residual
    # graph is the same as that of the circulation solved internally
    out = []
    for i, (u, v, c) in enumerate(g.arcs()):
        if x[i]:
            u, v, c = v, u, -c
        if c * sol.unit - sol.prices[u] + sol.prices[v] < -sol.eps:
            out.append(f"arc {i + 1} violates eps-optimality")
            break
    if find_negative_cycle(g.n, residual_arcs(g, x)) is not None:
        out.append("negative residual cycle")
    return out
