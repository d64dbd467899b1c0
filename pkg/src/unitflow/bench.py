"""Run reports and benchmark sweeps with one JSON object per line."""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from .dimacs import parse_instance
from .generators import InstanceSpec, generate
from .graph import MultiGraph
from .scaling import SolverConfig, certify, min_cost_circulation

SCHEMA = 1

# command-line algorithm name -> (solver engine, report name)
ALGOS = {
    "general": ("heap", "general"),
    "dial": ("dial", "dial-general"),
    "planar": ("planar", "planar"),
}


@dataclass
class RunReport:
    instance: str
    algorithm: str
    n: int
    m: int
    cost: int
    scales: int
    phases: list[list[dict]]
    path_edges: int
    certified: bool
    wall_time: Optional[float] = None
    planar: Optional[dict] = None
    schema: int = SCHEMA

    def to_json(self) -> str:
        d = asdict(self)
        if d["wall_time"] is None:
            del d["wall_time"]
        if d["planar"] is None:
            del d["planar"]
        return json.dumps(d, sort_keys=True)


def run_instance(
    g: MultiGraph,
    instance: str,
    algo: str = "dial",
    *,
    r: Optional[int] = None,
    rotation=None,
    timing: bool = False,
) -> RunReport:
    engine, name = ALGOS[algo]
    cfg = SolverConfig(engine=engine, r=r, rotation=rotation)
    t0 = time.perf_counter()
    sol = min_cost_circulation(g, cfg)
    wall = time.perf_counter() - t0
    ok = certify(g, sol.flow, sol.prices, sol.eps, sol.unit)
    return RunReport(
        instance=instance,
        algorithm=name,
        n=g.n,
        m=g.m,
        cost=sol.cost,
        scales=len(sol.scales),
        phases=[[ph.as_dict() for ph in st.phases] for st in sol.scales],
        path_edges=sol.path_edges,
        certified=ok,
        wall_time=round(wall, 6) if timing else None,
        planar=sol.extra.get("planar"),
    )


def bench_dir(path, algos=("dial",), *, r=None, timing=False) -> Iterator[RunReport]:
    """Solve every ``*.mcf`` file under ``path`` (sorted by name) with each algorithm."""
    for f in sorted(Path(path).glob("*.mcf")):
        inst = parse_instance(f.read_text())
        for algo in algos:
            yield run_instance(inst.graph, f.name, algo, r=r, rotation=inst.rotation, timing=timing)


@dataclass
class TrendRow:
    rows: int
    cols: int
    n: int
    m: int
    r: int
    scales: int
    max_phases: int
    mean_phases: float
    sqrt_m: float
    ddg_work_per_phase: float
    n_over_sqrt_r: float
    boundary: int
    wall_time: Optional[float] = None
    extra: dict = field(default_factory=dict)


def grid_trend(sides, *, seed: int = 0, multiplicity: int = 1, cost: int = 10, r=None, timing=True) -> list[TrendRow]:
    """Planar solves over square grids of the given side lengths.

    Reports phases per refine next to ``sqrt(m)`` and the mean number of
    distance-graph relaxations per phase next to ``n / sqrt(r)``.
    """
    out = []
    for k in sides:
        spec = InstanceSpec("grid", rows=k, cols=k, cost=cost, multiplicity=multiplicity, seed=seed)
        inst = generate(spec)
        g = inst.graph
        t0 = time.perf_counter()
        sol = min_cost_circulation(g, SolverConfig(engine="planar", r=r, rotation=inst.rotation))
        wall = time.perf_counter() - t0
        pl = sol.extra["planar"]
        counts = [len(st.phases) for st in sol.scales]
        nph = max(pl["phases"], 1)
        out.append(TrendRow(
            rows=k,
            cols=k,
            n=g.n,
            m=g.m,
            r=pl["r"],
            scales=len(sol.scales),
            max_phases=max(counts, default=0),
            mean_phases=sum(counts) / max(len(counts), 1),
            sqrt_m=math.sqrt(g.m),
            ddg_work_per_phase=pl["ddg_relaxations"] / nph,
            n_over_sqrt_r=g.n / math.sqrt(pl["r"]),
            boundary=pl["total_boundary"],
            wall_time=round(wall, 3) if timing else None,
        ))
    return out
