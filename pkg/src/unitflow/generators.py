"""Seeded instance generators: grids, random planar triangulations, random multigraphs.

Planar kinds come with a rotation system: ``rotation[v]`` lists the distinct
neighbours of ``v`` in counter-clockwise order, using the convention that the
face to the left of the half-edge ``v -> w`` continues with
``w -> ccw_next(w, v)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .graph import MultiGraph

KINDS = ("grid", "triangulation", "random")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    n: int = 0
    m: int = 0
    rows: int = 0
    cols: int = 0
    cost: int = 10
    multiplicity: int = 1
    seed: int = 0

    def validate(self) -> "InstanceSpec":
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.cost < 0:
            raise ValueError("cost bound must be nonnegative")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be at least 1")
        if self.kind == "grid":
            if self.rows < 1 or self.cols < 1:
                raise ValueError("grid needs rows >= 1 and cols >= 1")
            if self.n and self.n != self.rows * self.cols:
                raise ValueError(f"grid {self.rows}x{self.cols} has {self.rows * self.cols} vertices, not n={self.n}")
            if self.m:
                raise ValueError("edge count of a grid follows from its shape; leave m unset")
        elif self.kind == "triangulation":
            if self.n < 3:
                raise ValueError("triangulation needs n >= 3")
            if self.rows or self.cols:
                raise ValueError("rows/cols only apply to grids")
            if self.m:
                raise ValueError("edge count of a triangulation is 3n-6 times multiplicity; leave m unset")
        else:
            if self.n < 1 and self.m:
                raise ValueError("arcs need at least one vertex")
            if self.m < 0 or self.n < 0:
                raise ValueError("sizes must be nonnegative")
            if self.rows or self.cols:
                raise ValueError("rows/cols only apply to grids")
        return self

    @property
    def planar(self) -> bool:
        return self.kind != "random"

    def label(self) -> str:
        if self.kind == "grid":
            size = f"{self.rows}x{self.cols}"
        elif self.kind == "triangulation":
            size = f"n{self.n}"
        else:
            size = f"n{self.n}m{self.m}"
        return f"{self.kind}-{size}-C{self.cost}-k{self.multiplicity}-s{self.seed}"


@dataclass
class Instance:
    spec: Optional[InstanceSpec]
    graph: MultiGraph
    rotation: Optional[list[list[int]]] = field(default=None, repr=False)


def _arcs_for_support(edges, spec: InstanceSpec, rng: random.Random):
    arcs = []
    C = spec.cost
    for a, b in edges:
        for _ in range(spec.multiplicity):
            c = rng.randint(-C, C)
            arcs.append((a, b, c) if rng.random() < 0.5 else (b, a, c))
    return arcs


def grid_rotation(rows: int, cols: int) -> list[list[int]]:
    rot = []
    for i in range(rows):
        for j in range(cols):
            nb = []
            # right, up, left, down is counter-clockwise with rows growing downwards
            for di, dj in ((0, 1), (-1, 0), (0, -1), (1, 0)):
                a, b = i + di, j + dj
                if 0 <= a < rows and 0 <= b < cols:
                    nb.append(a * cols + b)
            rot.append(nb)
    return rot


def _grid(spec: InstanceSpec, rng: random.Random) -> Instance:
    R, Cc = spec.rows, spec.cols
    edges = []
    for i in range(R):
        for j in range(Cc):
            v = i * Cc + j
            if j + 1 < Cc:
                edges.append((v, v + 1))
            if i + 1 < R:
                edges.append((v, v + Cc))
    g = MultiGraph.from_arcs(R * Cc, _arcs_for_support(edges, spec, rng))
    return Instance(spec, g, grid_rotation(R, Cc))


def random_triangulation_faces(n: int, rng: random.Random, flips: Optional[int] = None) -> list[tuple[int, int, int]]:
    """Faces of a random simple triangulation on ``n >= 3`` vertices.

    Vertices are inserted into uniformly chosen faces, then random edge
    flips mix the degree distribution.
    """
    faces: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        k = rng.randrange(len(faces))
        a, b, c = faces[k]
        faces[k] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    if n < 4:
        return faces
    where: dict[tuple[int, int], int] = {}
    for k, (a, b, c) in enumerate(faces):
        where[a, b] = k
        where[b, c] = k
        where[c, a] = k
    flips = 2 * n if flips is None else flips
    for _ in range(flips):
        k = rng.randrange(len(faces))
        a, b, c = faces[k]
        # rotate so that the flipped edge is (a, b)
        r = rng.randrange(3)
        a, b, c = ((a, b, c), (b, c, a), (c, a, b))[r]
        k2 = where[b, a]
        f2 = faces[k2]
        i = f2.index(b)
        d = f2[(i + 2) % 3]
        if c == d or (c, d) in where or (d, c) in where:
            continue
        for x, y in ((a, b), (b, c), (c, a), (b, a)):
            del where[x, y]
        del where[a, d]
        del where[d, b]
        faces[k] = (c, a, d)
        faces[k2] = (d, b, c)
        for kk in (k, k2):
            x, y, z = faces[kk]
            where[x, y] = kk
            where[y, z] = kk
            where[z, x] = kk
    return faces


def rotation_from_faces(n: int, faces) -> list[list[int]]:
    """Counter-clockwise neighbour orders implied by a list of oriented faces."""
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for a, b, c in faces:
        # face a -> b -> c: at b the neighbour after a is c
        succ[b][a] = c
        succ[c][b] = a
        succ[a][c] = b
    rot = []
    for v in range(n):
        s = succ[v]
        if not s:
            rot.append([])
            continue
        start = min(s)
        order = [start]
        w = s[start]
        while w != start:
            order.append(w)
            w = s[w]
        if len(order) != len(s):
            raise ValueError(f"faces around vertex {v} do not form a single cycle")
        rot.append(order)
    return rot


def _triangulation(spec: InstanceSpec, rng: random.Random) -> Instance:
    faces = random_triangulation_faces(spec.n, rng)
    rot = rotation_from_faces(spec.n, faces)
    edges = sorted({(min(x, y), max(x, y)) for a, b, c in faces for x, y in ((a, b), (b, c), (c, a))})
    g = MultiGraph.from_arcs(spec.n, _arcs_for_support(edges, spec, rng))
    return Instance(spec, g, rot)


def _random(spec: InstanceSpec, rng: random.Random) -> Instance:
    arcs = []
    C = spec.cost
    for _ in range(spec.m):
        u, v = rng.randrange(spec.n), rng.randrange(spec.n)
        c = rng.randint(-C, C)
        arcs.append((u, v, c))
        for _ in range(spec.multiplicity - 1):
            c = rng.randint(-C, C)
            arcs.append((u, v, c) if rng.random() < 0.5 else (v, u, c))
    return Instance(spec, MultiGraph.from_arcs(spec.n, arcs))


def generate(spec: InstanceSpec) -> Instance:
    """Deterministic instance for ``spec``; planar kinds include a rotation system."""
    spec.validate()
    rng = random.Random(f"{spec.kind}:{spec.seed}")
    if spec.kind == "grid":
        return _grid(spec, rng)
    if spec.kind == "triangulation":
        return _triangulation(spec, rng)
    return _random(spec, rng)
