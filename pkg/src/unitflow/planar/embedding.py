"""Combinatorial embedding of the simplified, triangulated support graph.

A rotation system is stored as ``rot[v]``: the distinct neighbours of ``v``
in counter-clockwise order.  Faces are traced with
``next(v -> w) = (w, ccw_next(w, v))``, the same convention networkx uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
from networkx.algorithms.planar_drawing import triangulate_embedding

from ..graph import MultiGraph


class NonPlanarError(ValueError):
    """The support graph has no planar embedding."""

    def __init__(self, msg: str, witness: Optional[list[tuple[int, int]]] = None):
        super().__init__(msg)
        self.witness = witness or []


def support_edges(g: MultiGraph) -> set[tuple[int, int]]:
    """Undirected simple support of ``g`` with self-loops dropped."""
    out = set()
    for u, v, _ in g.arcs():
        if u != v:
            out.add((u, v) if u < v else (v, u))
    return out


def to_nx_embedding(n: int, rot) -> nx.PlanarEmbedding:
    emb = nx.PlanarEmbedding()
    emb.add_nodes_from(range(n))
    emb.set_data({v: list(reversed(rot[v])) for v in range(n) if rot[v]})
    return emb


def _from_nx(n: int, emb: nx.PlanarEmbedding) -> list[list[int]]:
    return [list(reversed(list(emb.neighbors_cw_order(v)))) if emb.degree(v) else [] for v in range(n)]


def trace_faces(rot, keep=None) -> list[list[int]]:
    """Faces of the rotation system as vertex walks.

    ``keep(v, w)`` optionally restricts the system to a subgraph; rotations
    are then taken over the kept neighbours only.
    """
    n = len(rot)
    if keep is not None:
        rot = [[w for w in rot[v] if keep(v, w)] for v in range(n)]
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    seen = set()
    faces = []
    for v in range(n):
        for w in rot[v]:
            if (v, w) in seen:
                continue
            face = []
            a, b = v, w
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                rb = rot[b]
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
            faces.append(face)
    return faces


@dataclass
class PlanarEmbedding:
    """Triangulated simple support graph of a multigraph.

    ``rot`` is the rotation system of the triangulation, ``real`` the support
    edges present in the input (the rest are infinite-cost dummies) and
    ``edge_support[i]`` the support edge of original edge ``i`` (``None`` for
    self-loops).
    """

    n: int
    rot: list[list[int]]
    real: set[tuple[int, int]]
    edge_support: list[Optional[tuple[int, int]]] = field(repr=False)

    @property
    def num_support_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def faces(self) -> list[list[int]]:
        return trace_faces(self.rot)

    def is_dummy(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) not in self.real

    def check(self) -> None:
        """Euler check for a simple triangulation plus the networkx structure check."""
        n = self.n
        if n < 3:
            return
        emb = to_nx_embedding(n, self.rot)
        emb.check_structure()
        faces = self.faces()
        if any(len(f) != 3 for f in faces):
            raise ValueError("embedding is not triangulated")
        if self.num_support_edges != 3 * n - 6:
            raise ValueError(f"{self.num_support_edges} support edges, expected 3n-6={3 * n - 6}")


def build_embedding(g: MultiGraph, rotation=None) -> PlanarEmbedding:
    """Embed and triangulate the support of ``g``.

    ``rotation`` may supply an embedding of the support (ccw neighbour lists);
    otherwise one is computed.  Raises ``NonPlanarError`` (carrying a
    Kuratowski subgraph as ``witness``) for non-planar input.
    """
    n = g.n
    real = support_edges(g)
    edge_support = []
    for u, v, _ in g.arcs():
        edge_support.append(None if u == v else (min(u, v), max(u, v)))
    if rotation is not None:
        if len(rotation) != n:
            raise ValueError("rotation must list neighbours for every vertex")
        given = {(min(v, w), max(v, w)) for v in range(n) for w in rotation[v]}
        if given != real:
            raise ValueError("rotation system does not match the support of the graph")
        emb = to_nx_embedding(n, [list(r) for r in rotation])
        try:
            emb.check_structure()
        except nx.NetworkXException as exc:
            raise ValueError(f"rotation system is not a planar embedding: {exc}") from None
    else:
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(real)
        ok, cert = nx.check_planarity(G, counterexample=True)
        if not ok:
            raise NonPlanarError("support graph is not planar", sorted(cert.edges()))
        emb = cert
    if n < 3:
        return PlanarEmbedding(n, _from_nx(n, emb), real, edge_support)
    tri, _ = triangulate_embedding(emb, fully_triangulate=True)
    return PlanarEmbedding(n, _from_nx(n, tri), real, edge_support)
