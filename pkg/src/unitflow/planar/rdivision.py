"""Recursive fundamental-cycle separators producing an r-division.

A region is a set of triangles of the triangulated support.  To split it we
close every hole of the region with a star vertex, grow a BFS tree from an
approximate centre, and cut the dual tree of the non-tree edges at the edge
that best balances the weight on both sides.  The fundamental cycle of that
edge separates the two halves.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..graph import InvariantError, MultiGraph
from .embedding import PlanarEmbedding, trace_faces

BOUNDARY_FACTOR = 8.0

# bounds the validator enforces; measured over the generator families
PINNED = {"c1": 8.0, "c2": 3.0, "c3": 3 * BOUNDARY_FACTOR, "c4": 12.0}


@dataclass
class Piece:
    index: int
    vertices: list[int]
    boundary: list[int]
    support: set[tuple[int, int]] = field(repr=False)
    triangles: list[tuple[int, int, int]] = field(repr=False)
    holes: list[list[int]] = field(default_factory=list, repr=False)
    # boundary vertices in the cyclic order of the single hole holding them
    cycle: Optional[list[int]] = None

    @property
    def boundary_cycle(self) -> bool:
        return self.cycle is not None


@dataclass
class RDivision:
    r: int
    pieces: list[Piece]
    owner: list[int]
    boundary: list[int]
    n: int

    def report(self) -> dict:
        n = max(self.n, 1)
        # a piece never exceeds the whole graph, so larger r measures like r = n
        r = min(self.r, n)
        lam = len(self.pieces)
        vmax = max((len(p.vertices) for p in self.pieces), default=0)
        bmax = max((len(p.boundary) for p in self.pieces), default=0)
        sr = math.sqrt(r)
        return {
            "r": r,
            "pieces": lam,
            "max_piece_vertices": vmax,
            "max_piece_boundary": bmax,
            "total_boundary": len(self.boundary),
            "single_hole_pieces": sum(p.boundary_cycle for p in self.pieces),
            "c1": lam * r / n,
            "c2": vmax / r,
            "c3": bmax / sr,
            "c4": len(self.boundary) * sr / n,
        }


def _triangles(rot) -> list[tuple[int, int, int]]:
    faces = trace_faces(rot)
    for f in faces:
        if len(f) != 3:
            raise ValueError("r-division needs a triangulated embedding")
    return [tuple(f) for f in faces]


class _Region:
    """Region closed with star vertices, with the plumbing needed for one split."""

    def __init__(self, rot, tris, S):
        self.rot = rot
        self.tris = tris
        self.S = S
        edges = set()
        verts = set()
        for k in S:
            a, b, c = tris[k]
            verts.update((a, b, c))
            for x, y in ((a, b), (b, c), (c, a)):
                edges.add((min(x, y), max(x, y)))
        self.verts = verts
        self.edges = edges
        keep = lambda v, w: (min(v, w), max(v, w)) in edges  # noqa: E731
        sub = [[w for w in rot[v] if keep(v, w)] if v in verts else [] for v in range(len(rot))]
        faces = trace_faces(sub)
        own = {}
        for k in S:
            a, b, c = tris[k]
            own[a, b] = own[b, c] = own[c, a] = k
        # face ids: S triangles keep their triangle id, star triangles get new ids
        face_of = {}  # half-edge -> face id
        nf = len(tris)
        next_vertex = len(rot)
        stars = []
        adj: dict[int, list[tuple[int, int]]] = {}  # vertex -> [(nbr, edge id)]
        edge_faces: list[tuple[int, int]] = []
        edge_ends: list[tuple[int, int]] = []

        def add_edge(u, v, f1, f2):
            eid = len(edge_ends)
            edge_ends.append((u, v))
            edge_faces.append((f1, f2))
            adj.setdefault(u, []).append((v, eid))
            adj.setdefault(v, []).append((u, eid))

        for face in faces:
            k = len(face)
            if k == 3 and (face[0], face[1]) in own and own[face[0], face[1]] == own.get((face[1], face[2])):
                t = own[face[0], face[1]]
                for i in range(3):
                    face_of[face[i], face[(i + 1) % 3]] = t
                continue
            h = next_vertex
            next_vertex += 1
            stars.append(h)
            ids = []
            for i in range(k):
                ids.append(nf)
                face_of[face[i], face[(i + 1) % k]] = nf
                nf += 1
            for i in range(k):
                # spoke to the i-th walk position separates star triangles i-1 and i
                add_edge(h, face[i], ids[i - 1], ids[i])
        for u, v in edges:
            add_edge(u, v, face_of[u, v], face_of[v, u])
        self.stars = stars
        self.adj = adj
        self.edge_faces = edge_faces
        self.edge_ends = edge_ends
        self.nfaces = nf

    def _bfs(self, root):
        dist = {root: 0}
        par = {root: -1}
        order = [root]
        dq = deque([root])
        while dq:
            u = dq.popleft()
            for v, eid in self.adj.get(u, ()):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    par[v] = eid
                    order.append(v)
                    dq.append(v)
        return dist, par, order

    def centre(self):
        start = min(self.verts)
        dist, _, order = self._bfs(start)
        a = order[-1]
        dist, par, order = self._bfs(a)
        b = order[-1]
        path = [b]
        while par[path[-1]] >= 0:
            u, v = self.edge_ends[par[path[-1]]]
            path.append(u if v == path[-1] else v)
        return path[len(path) // 2]

    def split(self, weights: dict[int, float]):
        """Two nonempty triangle sets separated by a fundamental cycle."""
        root = self.centre()
        _, par, _ = self._bfs(root)
        tree = {e for e in par.values() if e >= 0}
        dadj: dict[int, list[tuple[int, int]]] = {}
        for eid, (f1, f2) in enumerate(self.edge_faces):
            if eid in tree:
                continue
            dadj.setdefault(f1, []).append((f2, eid))
            dadj.setdefault(f2, []).append((f1, eid))
        droot = self.S[0]
        dpar = {droot: (-1, -1)}
        order = [droot]
        dq = deque([droot])
        while dq:
            f = dq.popleft()
            for g2, eid in dadj.get(f, ()):
                if g2 not in dpar:
                    dpar[g2] = (f, eid)
                    order.append(g2)
                    dq.append(g2)
        sub_w = {f: weights.get(f, 0.0) for f in order}
        sub_c = {f: (1 if f in weights else 0) for f in order}
        for f in reversed(order):
            p = dpar[f][0]
            if p >= 0:
                sub_w[p] += sub_w[f]
                sub_c[p] += sub_c[f]
        total_w = sub_w[droot]
        total_c = sub_c[droot]
        best, best_f = None, None
        for f in order:
            if f == droot:
                continue
            c = sub_c[f]
            if c == 0 or c == total_c:
                continue
            w = sub_w[f]
            score = (max(w, total_w - w), max(c, total_c - c))
            if best is None or score < best:
                best, best_f = score, f
        if best_f is None:
            raise InvariantError("region with two triangles has no balanced dual edge")
        inside = set()
        stack = [best_f]
        kids: dict[int, list[int]] = {}
        for f in order:
            p = dpar[f][0]
            if p >= 0:
                kids.setdefault(p, []).append(f)
        while stack:
            f = stack.pop()
            inside.add(f)
            stack.extend(kids.get(f, ()))
        A = [k for k in self.S if k in inside]
        B = [k for k in self.S if k not in inside]
        return A, B


def _components(tris, S) -> list[list[int]]:
    """Split a triangle set into edge-connected components."""
    by_edge: dict[tuple[int, int], list[int]] = {}
    for k in S:
        a, b, c = tris[k]
        for x, y in ((a, b), (b, c), (c, a)):
            by_edge.setdefault((min(x, y), max(x, y)), []).append(k)
    seen = set()
    out = []
    for k in S:
        if k in seen:
            continue
        comp = []
        stack = [k]
        seen.add(k)
        while stack:
            t = stack.pop()
            comp.append(t)
            a, b, c = tris[t]
            for x, y in ((a, b), (b, c), (c, a)):
                for t2 in by_edge[min(x, y), max(x, y)]:
                    if t2 not in seen:
                        seen.add(t2)
                        stack.append(t2)
        out.append(sorted(comp))
    return out


def _divide(rot, tris, r: int, cb: float) -> list[list[int]]:
    n = len(rot)
    tri_of = [[] for _ in range(n)]
    for k, t in enumerate(tris):
        for v in t:
            tri_of[v].append(k)
    region_of = [0] * len(tris)

    def verts_of(S):
        vs = set()
        for k in S:
            vs.update(tris[k])
        return vs

    def boundary_of(S, rid):
        out = set()
        for v in verts_of(S):
            if any(region_of[k] != rid for k in tri_of[v]):
                out.add(v)
        return out

    limit = cb * math.sqrt(r)
    done = []
    work = [sorted(range(len(tris)))]
    next_id = 1
    while work:
        S = work.pop()
        rid = region_of[S[0]]
        V = verts_of(S)
        bd = boundary_of(S, rid)
        if len(S) == 1 or (len(V) <= r and len(bd) <= limit):
            done.append(S)
            continue
        region = _Region(rot, tris, S)
        if len(V) > r:
            weights = {k: 1.0 for k in S}
        else:
            weights = {k: 0.0 for k in S}
            for v in bd:
                weights[min(k for k in tri_of[v] if region_of[k] == rid)] += 1.0
            # faces break ties so that both sides stay nonempty and balanced
            for k in S:
                weights[k] += 1e-3
        A, B = region.split(weights)
        for part in (A, B):
            for comp in _components(tris, part):
                for k in comp:
                    region_of[k] = next_id
                next_id += 1
                work.append(comp)
    return done


def _piece_holes(rot, tris_in, verts, support):
    keep = lambda v, w: (min(v, w), max(v, w)) in support  # noqa: E731
    sub = [[w for w in rot[v] if keep(v, w)] if v in verts else [] for v in range(len(rot))]
    own = set()
    for a, b, c in tris_in:
        own.update(((a, b), (b, c), (c, a)))
    holes = []
    for face in trace_faces(sub):
        k = len(face)
        if all((face[i], face[(i + 1) % k]) in own for i in range(k)) and k == 3:
            continue
        holes.append(face)
    return holes


def build_r_division(emb: PlanarEmbedding, g: MultiGraph, r: int, cb: float = BOUNDARY_FACTOR) -> RDivision:
    """r-division of the triangulated support of ``g`` with owner pieces for every arc."""
    n = emb.n
    if r < 1:
        raise ValueError("r must be at least 1")
    if n < 3:
        vs = list(range(n))
        piece = Piece(0, vs, [], set(emb.real), [], [], None)
        return RDivision(r, [piece], [0] * g.m, [], n)
    tris = _triangles(emb.rot)
    regions = _divide(emb.rot, tris, r, cb)
    regions.sort(key=lambda S: S[0])
    pieces = []
    member: list[list[int]] = [[] for _ in range(n)]
    sup_owner: dict[tuple[int, int], int] = {}
    for i, S in enumerate(regions):
        tri_list = [tris[k] for k in S]
        vs = sorted({v for t in tri_list for v in t})
        support = set()
        for a, b, c in tri_list:
            for x, y in ((a, b), (b, c), (c, a)):
                e = (min(x, y), max(x, y))
                support.add(e)
                sup_owner.setdefault(e, i)
        for v in vs:
            member[v].append(i)
        pieces.append(Piece(i, vs, [], support, tri_list))
    bset = {v for v in range(n) if len(member[v]) >= 2}
    for p in pieces:
        p.boundary = [v for v in p.vertices if v in bset]
        p.holes = _piece_holes(emb.rot, p.triangles, set(p.vertices), p.support)
        p.cycle = _single_cycle(p)
    owner = []
    for i, sup in enumerate(emb.edge_support):
        if sup is None:
            u = g.tail[2 * i]
            owner.append(member[u][0])
        else:
            owner.append(sup_owner[sup])
    return RDivision(r, pieces, owner, sorted(bset), n)


def _single_cycle(p: Piece) -> Optional[list[int]]:
    if not p.boundary:
        return None
    bset = set(p.boundary)
    with_b = [h for h in p.holes if any(v in bset for v in h)]
    if len(with_b) != 1:
        return None
    walk = [v for v in with_b[0] if v in bset]
    if len(walk) != len(bset):
        return None
    return walk


def validate_r_division(rd: RDivision, emb: PlanarEmbedding, g: MultiGraph, pinned=None) -> dict:
    """Recompute every r-division property from scratch; raises on violation.

    Returns the measured report, including the constants ``c1..c4``.
    """
    pinned = PINNED if pinned is None else pinned
    n = emb.n
    member: list[set[int]] = [set() for _ in range(n)]
    seen_tris = set()
    for i, p in enumerate(rd.pieces):
        if p.index != i:
            raise InvariantError("piece indices out of order")
        vs = set()
        for t in p.triangles:
            i0 = t.index(min(t))
            key = t[i0:] + t[:i0]  # oriented, so the two faces of a triangle differ
            if key in seen_tris:
                raise InvariantError(f"triangle {t} lies in two pieces")
            seen_tris.add(key)
            vs.update(t)
        if n >= 3 and vs != set(p.vertices):
            raise InvariantError(f"piece {i} vertex list disagrees with its triangles")
        for v in p.vertices:
            member[v].add(i)
    if n >= 3 and len(seen_tris) != 2 * n - 4:
        raise InvariantError("pieces do not cover every face exactly once")
    bset = {v for v in range(n) if len(member[v]) >= 2}
    if bset != set(rd.boundary):
        raise InvariantError("global boundary disagrees with piece memberships")
    for p in rd.pieces:
        if set(p.boundary) != bset & set(p.vertices):
            raise InvariantError(f"piece {p.index} boundary is wrong")
        if p.cycle is not None:
            if sorted(p.cycle) != sorted(p.boundary):
                raise InvariantError(f"piece {p.index} boundary cycle is not a permutation of its boundary")
    if len(rd.owner) != g.m:
        raise InvariantError("every arc needs an owner piece")
    for i, (u, v, _) in enumerate(g.arcs()):
        p = rd.pieces[rd.owner[i]]
        if rd.owner[i] not in member[u] or rd.owner[i] not in member[v]:
            raise InvariantError(f"arc {i} is owned by a piece missing one of its endpoints")
        if u != v and (min(u, v), max(u, v)) not in p.support:
            raise InvariantError(f"arc {i} is owned by a piece without its support edge")
    rep = rd.report()
    if n >= 3:
        for key, bound in pinned.items():
            if rep[key] > bound:
                raise InvariantError(f"r-division constant {key}={rep[key]:.2f} exceeds pinned {bound}")
    return rep
