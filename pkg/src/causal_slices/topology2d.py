"""Combinatorial surface checks for complexes of polygons.

A face is a tuple of pairwise distinct vertex ids in cyclic order.  Nothing
here knows about colours; the coloured midsection layer and the boundary
analysis of 3D complexes both sit on top of it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ._dsu import DisjointSet
from .errors import (
    CellsShareTwoEdges,
    Disconnected,
    EdgeInTooManyCells,
    MalformedCell,
    NonSurfaceLink,
    NotADisc,
    NotASphere,
)

Edge = tuple  # sorted vertex pair


def edge_key(u, v) -> Edge:
    return (u, v) if u < v else (v, u)


def face_edges(face: Sequence[int]) -> list[Edge]:
    n = len(face)
    return [edge_key(face[i], face[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class Topology:
    """Result of :func:`classify`: Euler characteristic and boundary data."""

    kind: str  # "disc", "sphere" or "other"
    euler: int
    n_boundaries: int
    vertices: int
    edges: int
    faces: int


class PolygonComplex:
    """Validated pure 2-complex of polygons that is a connected surface.

    Construction raises if an edge lies in more than two faces, two faces
    share more than one edge, a vertex link is neither a simple path nor a
    simple cycle, or the faces are not edge-connected.
    """

    def __init__(self, faces: Sequence[Sequence[int]], *, check_connected: bool = True):
        self.faces = tuple(tuple(f) for f in faces)
        if not self.faces:
            raise MalformedCell("empty face list")
        for f in self.faces:
            if len(f) < 3 or len(set(f)) != len(f):
                raise MalformedCell(f"face {f} needs >= 3 distinct vertices")
        self.edge_faces = self._edge_table()
        self._check_pairs()
        self._check_links()
        if check_connected and not self.is_connected():
            raise Disconnected("faces are not edge-connected")

    @classmethod
    def _trusted(cls, faces: tuple, edge_faces: dict) -> "PolygonComplex":
        # caller guarantees the surface conditions; used by incremental growth
        pc = cls.__new__(cls)
        pc.faces = faces
        pc.edge_faces = edge_faces
        return pc

    def _edge_table(self) -> dict[Edge, list[int]]:
        table: dict[Edge, list[int]] = defaultdict(list)
        for i, f in enumerate(self.faces):
            for e in face_edges(f):
                table[e].append(i)
        for e, fs in table.items():
            if len(fs) > 2:
                raise EdgeInTooManyCells(f"edge {e} lies in {len(fs)} faces")
        return dict(table)

    def _check_pairs(self) -> None:
        seen: dict[tuple[int, int], Edge] = {}
        for e, fs in self.edge_faces.items():
            if len(fs) == 2:
                pair = (min(fs), max(fs))
                if pair[0] == pair[1]:
                    raise CellsShareTwoEdges(f"face {pair[0]} uses edge {e} twice")
                if pair in seen:
                    raise CellsShareTwoEdges(
                        f"faces {pair} share edges {seen[pair]} and {e}"
                    )
                seen[pair] = e

    def _check_links(self) -> None:
        # link of v: nodes are edges at v, one link segment per incident face
        link: dict[int, list[tuple[Edge, Edge]]] = defaultdict(list)
        for f in self.faces:
            n = len(f)
            for i, v in enumerate(f):
                link[v].append((edge_key(v, f[i - 1]), edge_key(v, f[(i + 1) % n])))
        for v, segs in link.items():
            dsu = DisjointSet()
            degree: dict[Edge, int] = defaultdict(int)
            for a, b in segs:
                degree[a] += 1
                degree[b] += 1
                dsu.union(a, b)
            roots = {dsu.find(x) for x in degree}
            if len(roots) != 1:
                raise NonSurfaceLink(f"link of vertex {v} is disconnected")
            # degrees <= 2 follow from the edge table; a connected graph with
            # |E| = |V| is a cycle, |E| = |V| - 1 a path
            if len(segs) not in (len(degree), len(degree) - 1):
                raise NonSurfaceLink(f"link of vertex {v} is not a path or cycle")

    def is_connected(self) -> bool:
        dsu = DisjointSet(range(len(self.faces)))
        for fs in self.edge_faces.values():
            if len(fs) == 2:
                dsu.union(fs[0], fs[1])
        return len({dsu.find(i) for i in range(len(self.faces))}) == 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.faces for v in f}))

    @cached_property
    def boundary_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(e for e, fs in self.edge_faces.items() if len(fs) == 1))

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Boundary components as vertex cycles.

        Each cycle starts at its smallest vertex and heads to the smaller of
        the two neighbours, so the result is deterministic.
        """
        adj: dict[int, list[int]] = defaultdict(list)
        for u, v in self.boundary_edges:
            adj[u].append(v)
            adj[v].append(u)
        seen: set[int] = set()
        cycles = []
        for start in sorted(adj):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            prev, cur = start, min(adj[start])
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            cycles.append(tuple(cyc))
        return tuple(cycles)

    @cached_property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edge_faces) + len(self.faces)

    def classify(self) -> Topology:
        nb = len(self.boundary_cycles)
        chi = self.euler
        if chi == 1 and nb == 1:
            kind = "disc"
        elif chi == 2 and nb == 0:
            kind = "sphere"
        else:
            kind = "other"
        return Topology(kind, chi, nb, len(self.vertices), len(self.edge_faces), len(self.faces))

    def face_neighbours(self, i: int) -> list[int | None]:
        """Face across each edge of face i (None on the boundary), in edge order."""
        out: list[int | None] = []
        for e in face_edges(self.faces[i]):
            fs = self.edge_faces[e]
            out.append(next((j for j in fs if j != i), None))
        return out


def require_disc(faces) -> PolygonComplex:
    try:
        pc = PolygonComplex(faces)
    except (MalformedCell, NonSurfaceLink, EdgeInTooManyCells, CellsShareTwoEdges, Disconnected) as exc:
        raise NotADisc(str(exc)) from exc
    if pc.classify().kind != "disc":
        raise NotADisc(f"topology {pc.classify()} is not a disc")
    return pc


def require_sphere(faces) -> PolygonComplex:
    try:
        pc = PolygonComplex(faces)
    except (MalformedCell, NonSurfaceLink, EdgeInTooManyCells, CellsShareTwoEdges, Disconnected) as exc:
        raise NotASphere(str(exc)) from exc
    if pc.classify().kind != "sphere":
        raise NotASphere(f"topology {pc.classify()} is not a sphere")
    return pc


def is_kind(faces, kind: str) -> bool:
    try:
        return PolygonComplex(faces).classify().kind == kind
    except (MalformedCell, NonSurfaceLink, EdgeInTooManyCells, CellsShareTwoEdges, Disconnected):
        return False
