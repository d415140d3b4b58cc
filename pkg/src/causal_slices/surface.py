"""Coloured 2-dimensional cell complexes (candidate midsections).

Cells are red triangles, blue triangles, and quadrangles.  A quadrangle
``(a, b, c, d)`` has red edges ``ab`` and ``cd`` and blue edges ``bc`` and
``da``.  Edges of triangles carry the triangle's colour.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ._dsu import DisjointSet
from .errors import (
    EdgeColourConflict,
    MalformedCell,
    NoArcs,
    NotADisc,
    ParseError,
)
from .topology2d import Edge, PolygonComplex, Topology, edge_key, face_edges


class Colour(enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED

    def __lt__(self, other):
        return self.value > other.value  # red sorts before blue

    def __repr__(self):
        return self.name


RED, BLUE = Colour.RED, Colour.BLUE


class CellKind(enum.Enum):
    RED = "red"
    BLUE = "blue"
    QUAD = "quad"


def _quad_symmetries(vs):
    a, b, c, d = vs
    # colour-preserving symmetries of <abcd>
    return ((a, b, c, d), (d, c, b, a), (c, d, a, b), (b, a, d, c))


@dataclass(frozen=True, eq=False)
class Cell:
    kind: CellKind
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        want = 4 if self.kind is CellKind.QUAD else 3
        if len(self.vertices) != want:
            raise MalformedCell(f"{self.kind.value} cell needs {want} vertices: {self.vertices}")
        if len(set(self.vertices)) != want:
            raise MalformedCell(f"repeated vertex in cell {self.vertices}")

    @staticmethod
    def red(*vs) -> "Cell":
        return Cell(CellKind.RED, vs)

    @staticmethod
    def blue(*vs) -> "Cell":
        return Cell(CellKind.BLUE, vs)

    @staticmethod
    def quad(*vs) -> "Cell":
        return Cell(CellKind.QUAD, vs)

    @property
    def is_triangle(self) -> bool:
        return self.kind is not CellKind.QUAD

    def triangle_colour(self) -> Colour | None:
        if self.kind is CellKind.RED:
            return RED
        if self.kind is CellKind.BLUE:
            return BLUE
        return None

    def edge_colours(self) -> tuple[tuple[Edge, Colour], ...]:
        """Edges in cyclic order starting with (v0, v1)."""
        return self._edge_colours

    @cached_property
    def _edge_colours(self) -> tuple[tuple[Edge, Colour], ...]:
        es = face_edges(self.vertices)
        if self.kind is CellKind.QUAD:
            cols = (RED, BLUE, RED, BLUE)
        else:
            c = self.triangle_colour()
            cols = (c, c, c)
        return tuple(zip(es, cols))

    def position_colour(self, i: int, step: int) -> Colour:
        """Colour of the edge from position i to position i+step (step = +-1)."""
        if self.kind is CellKind.QUAD:
            j = i if step == 1 else (i - 1) % 4
            return RED if j % 2 == 0 else BLUE
        return self.triangle_colour()

    def key(self) -> tuple:
        if self.kind is CellKind.QUAD:
            return (self.kind.value, min(_quad_symmetries(self.vertices)))
        return (self.kind.value, tuple(sorted(self.vertices)))

    def relabel(self, mapping) -> "Cell":
        return Cell(self.kind, tuple(mapping[v] for v in self.vertices))

    def __eq__(self, other):
        return isinstance(other, Cell) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        tag = {"red": "R", "blue": "B", "quad": "Q"}[self.kind.value]
        return f"{tag}{self.vertices}"


@dataclass(frozen=True)
class Arc:
    colour: Colour
    vertices: tuple[int, ...]  # ordered along the boundary cycle

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.vertices[0], self.vertices[-1])

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]


@dataclass(frozen=True)
class BoundaryArcs:
    arcs: tuple[Arc, ...]
    cycle: tuple[int, ...]

    def of_colour(self, c: Colour) -> list[Arc]:
        return [a for a in self.arcs if a.colour is c]


@dataclass(frozen=True)
class QuadChain:
    """Maximal path or cycle of quadrangles glued along edges of one colour.

    ``edges`` lists the colour-c edges in order, ``quads`` the cell indices
    joining consecutive edges.  For a cycle the last quad joins the last
    edge back to the first.
    """

    colour: Colour
    edges: tuple[Edge, ...]
    quads: tuple[int, ...]
    closed: bool


@dataclass(frozen=True)
class SurfaceComplex:
    """Validated coloured cell complex.  Build with :func:`build_complex`."""

    cells: tuple[Cell, ...]
    poly: PolygonComplex = field(repr=False, compare=False)
    edge_colour: dict = field(repr=False, compare=False)

    @property
    def edge_cells(self) -> dict[Edge, list[int]]:
        return self.poly.edge_faces

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.poly.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.poly.edge_faces))

    @cached_property
    def topology(self) -> Topology:
        return self.poly.classify()

    @property
    def is_disc(self) -> bool:
        return self.topology.kind == "disc"

    @property
    def is_sphere(self) -> bool:
        return self.topology.kind == "sphere"

    def edges_of(self, c: Colour) -> list[Edge]:
        return sorted(e for e, col in self.edge_colour.items() if col is c)

    def is_boundary(self, e: Edge) -> bool:
        return len(self.poly.edge_faces[e]) == 1

    def count(self, kind: CellKind) -> int:
        return sum(1 for c in self.cells if c.kind is kind)

    @cached_property
    def _components(self) -> dict:
        out = {}
        for c in Colour:
            dsu = DisjointSet(self.vertices)
            for u, v in self.edges_of(c):
                dsu.union(u, v)
            out[c] = {v: dsu.find(v) for v in self.vertices}
        return out

    def component_of(self, c: Colour) -> dict[int, int]:
        """Vertex -> representative of its colour-c component."""
        return self._components[c]

    def connected(self, c: Colour, u: int, v: int) -> bool:
        comp = self._components[c]
        return comp[u] == comp[v]

    def to_json(self) -> str:
        return dumps_midsection(self)

    def __len__(self):
        return len(self.cells)


def build_complex(cells: Iterable[Cell]) -> SurfaceComplex:
    cells = tuple(cells)
    if not cells:
        raise MalformedCell("a complex needs at least one cell")
    colour: dict[Edge, Colour] = {}
    for cell in cells:
        for e, c in cell.edge_colours():
            prev = colour.setdefault(e, c)
            if prev is not c:
                raise EdgeColourConflict(f"edge {e} is both {prev.value} and {c.value}")
    poly = PolygonComplex([c.vertices for c in cells])
    return SurfaceComplex(cells, poly, colour)


def extend_complex(S: SurfaceComplex, cell: Cell) -> SurfaceComplex | None:
    """Glue ``cell`` onto S along edges that are boundary edges of S.

    Only the conditions a single gluing can break are checked: edge colours,
    edges already used twice, and a pair of cells sharing two edges.  The
    caller is responsible for the result being a surface.
    """
    colour = dict(S.edge_colour)
    table = dict(S.poly.edge_faces)
    i = len(S.cells)
    touched = set()
    for e, c in cell.edge_colours():
        prev = colour.setdefault(e, c)
        if prev is not c:
            return None
        fs = table.get(e)
        if fs is None:
            table[e] = [i]
            continue
        if len(fs) != 1 or fs[0] in touched:
            return None
        touched.add(fs[0])
        table[e] = [fs[0], i]
    cells = S.cells + (cell,)
    poly = PolygonComplex._trusted(tuple(c.vertices for c in cells), table)
    return SurfaceComplex(cells, poly, colour)


def classify_surface_topology(S: SurfaceComplex) -> Topology:
    return S.topology


def boundary_arcs(S: SurfaceComplex) -> BoundaryArcs:
    """Maximal monochromatic boundary paths in cyclic order.

    A fully monochromatic boundary yields a single closed arc.  Otherwise
    the list starts with the red arc whose first vertex is smallest and
    follows the boundary in the direction of that arc.
    """
    if not S.is_disc:
        raise NotADisc(f"boundary arcs need a disc, got {S.topology.kind}")
    cycle = S.poly.boundary_cycles[0]
    n = len(cycle)
    cols = [S.edge_colour[edge_key(cycle[i], cycle[(i + 1) % n])] for i in range(n)]
    if len(set(cols)) == 1:
        return BoundaryArcs((Arc(cols[0], cycle + (cycle[0],)),), cycle)
    # rotate so position 0 starts an arc
    start = next(i for i in range(n) if cols[i] is not cols[i - 1])
    arcs = _split_arcs(cycle, cols, start)
    # canonical orientation and starting point
    rev_cycle = tuple(reversed(cycle))
    rev_cols = [cols[(n - 2 - i) % n] for i in range(n)]
    rstart = next(i for i in range(n) if rev_cols[i] is not rev_cols[i - 1])
    candidates = [(arcs, cycle), (_split_arcs(rev_cycle, rev_cols, rstart), rev_cycle)]
    best = None
    for arc_list, cyc in candidates:
        for k, a in enumerate(arc_list):
            if a.colour is RED:
                rot = tuple(arc_list[k:] + arc_list[:k])
                key = (rot[0].vertices[0], rot[0].vertices[1])
                if best is None or key < best[0]:
                    best = (key, rot, cyc)
    return BoundaryArcs(best[1], best[2])


def _split_arcs(cycle, cols, start) -> list[Arc]:
    n = len(cycle)
    arcs = []
    i = 0
    while i < n:
        j = i
        col = cols[(start + i) % n]
        verts = [cycle[(start + i) % n]]
        while j < n and cols[(start + j) % n] is col:
            verts.append(cycle[(start + j + 1) % n])
            j += 1
        arcs.append(Arc(col, tuple(verts)))
        i = j
    return arcs


def arc_membership(arcs: BoundaryArcs) -> dict[int, list[int]]:
    """Boundary vertex -> indices of the arcs containing it (endpoints in two)."""
    out: dict[int, list[int]] = defaultdict(list)
    for k, a in enumerate(arcs.arcs):
        for v in set(a.vertices):
            out[v].append(k)
    return dict(out)


def monochrome_vertex_components(S: SurfaceComplex, c: Colour) -> list[list[int]]:
    comp = S.component_of(c)
    blocks: dict[int, list[int]] = defaultdict(list)
    for v in S.vertices:
        blocks[comp[v]].append(v)
    return sorted(sorted(b) for b in blocks.values())


def quad_chains(S: SurfaceComplex, c: Colour) -> list[QuadChain]:
    """Decompose the colour-c edge / quadrangle incidence graph.

    Every colour-c edge appears in exactly one chain; isolated edges give
    chains with no quads.
    """
    links: dict[Edge, list[tuple[int, Edge]]] = defaultdict(list)
    for i, cell in enumerate(S.cells):
        if cell.kind is not CellKind.QUAD:
            continue
        es = [e for e, col in cell.edge_colours() if col is c]
        links[es[0]].append((i, es[1]))
        links[es[1]].append((i, es[0]))
    done: set[Edge] = set()
    chains = []
    nodes = S.edges_of(c)
    # paths first, walked from their smaller end
    for e in nodes:
        if e in done or len(links[e]) == 2:
            continue
        chains.append(_walk(e, links, done, c, closed=False))
    for e in nodes:
        if e not in done:
            chains.append(_walk(e, links, done, c, closed=True))
    return chains


def _walk(start, links, done, c, closed) -> QuadChain:
    edges = [start]
    quads = []
    done.add(start)
    prev_quad = None
    cur = start
    while True:
        nxt = [(q, e) for q, e in links[cur] if q != prev_quad]
        if not nxt:
            break
        if closed and len(nxt) == 2:
            nxt = [min(nxt, key=lambda qe: qe[1])]
        q, e = nxt[0]
        quads.append(q)
        if e == start:
            break
        edges.append(e)
        done.add(e)
        prev_quad, cur = q, e
    return QuadChain(c, tuple(edges), tuple(quads), closed)


def chain_index(chains: Sequence[QuadChain]) -> dict[Edge, int]:
    return {e: k for k, ch in enumerate(chains) for e in ch.edges}


# ---------------------------------------------------------------------------
# canonical code

_KIND_TAG = {CellKind.RED: 0, CellKind.BLUE: 1, CellKind.QUAD: 2}


class _Traversal:
    """Flag-based breadth-first relabelling used for canonical forms."""

    def __init__(self, S: SurfaceComplex):
        self.S = S
        self.cells = [c.vertices for c in S.cells]
        self.tags = [_KIND_TAG[c.kind] for c in S.cells]
        self.pos = [{v: i for i, v in enumerate(vs)} for vs in self.cells]
        # (cell, u, v) -> cell on the other side of edge uv
        ef = S.poly.edge_faces
        self.across = {}
        for e, fs in ef.items():
            if len(fs) == 2:
                self.across[(fs[0], e)] = fs[1]
                self.across[(fs[1], e)] = fs[0]

    def flags(self):
        """Start flags of the least invariant class.

        Any isomorphism-invariant restriction keeps the minimum a complete
        invariant; this one cuts the number of traversals several-fold.
        """
        deg: dict[int, int] = defaultdict(int)
        for vs in self.cells:
            for v in vs:
                deg[v] += 1
        cell_key = [(len(vs), sorted(deg[v] for v in vs)) for vs in self.cells]
        keyed = []
        for f, vs in enumerate(self.cells):
            n = len(vs)
            for i in range(n):
                for d in (1, -1):
                    col = self.S.cells[f].position_colour(i, d) is RED
                    keyed.append(((self.tags[f], col, cell_key[f], deg[vs[i]], deg[vs[(i + d) % n]]), (f, i, d)))
        least = min(k for k, _ in keyed)
        return [flag for k, flag in keyed if k == least]

    def run(self, flag, best=None):
        """Return (code, labelling) from a start flag, or None if worse than best."""
        cells, tags, pos, across = self.cells, self.tags, self.pos, self.across
        S = self.S
        labels: dict[int, int] = {}
        code = []
        f0, i0, d0 = flag
        queue = deque([(f0, i0, d0)])
        seen = {f0}
        k = 0
        better = best is None
        while queue:
            f, i, d = queue.popleft()
            vs = cells[f]
            n = len(vs)
            seq = [vs[(i + d * j) % n] for j in range(n)]
            for v in seq:
                if v not in labels:
                    labels[v] = len(labels)
            tag = tags[f]
            if tag == 2:
                tag = 2 if S.cells[f].position_colour(i, d) is RED else 3
            item = (tag, *[labels[v] for v in seq])
            if not better:
                b = best[k]
                if item > b:
                    return None
                if item < b:
                    better = True
            code.append(item)
            k += 1
            for j in range(n):
                a, b2 = seq[j], seq[(j + 1) % n]
                g = across.get((f, edge_key(a, b2)))
                if g is not None and g not in seen:
                    seen.add(g)
                    gp = pos[g]
                    ia, ib = gp[a], gp[b2]
                    m = len(cells[g])
                    queue.append((g, ia, 1 if (ia + 1) % m == ib else -1))
        return tuple(code), labels


def canonical_form(S: SurfaceComplex, all_labellings: bool = False):
    """Minimal traversal code and the labellings that achieve it."""
    tr = _Traversal(S)
    best = None
    labs = []
    for flag in tr.flags():
        res = tr.run(flag, best)
        if res is None:
            continue
        code, lab = res
        if best is None or code < best:
            best, labs = code, [lab]
        elif all_labellings:
            labs.append(lab)
    return best, labs


def canonical_code(S: SurfaceComplex) -> bytes:
    """Complete invariant under colour-preserving isomorphism (reflections included)."""
    code, _ = canonical_form(S)
    return encode_code(code)


def encode_code(code) -> bytes:
    tag = "RBQq"
    return "|".join(tag[item[0]] + ".".join(map(str, item[1:])) for item in code).encode()


def relabel(S: SurfaceComplex, mapping) -> SurfaceComplex:
    return build_complex(c.relabel(mapping) for c in S.cells)


def canonical_complex(S: SurfaceComplex) -> SurfaceComplex:
    _, labs = canonical_form(S)
    return relabel(S, labs[0])


# ---------------------------------------------------------------------------
# midsection/1 files

_KINDS = {"red": CellKind.RED, "blue": CellKind.BLUE, "quad": CellKind.QUAD}


def midsection_to_dict(S: SurfaceComplex) -> dict:
    return {
        "format": "midsection/1",
        "cells": [{"kind": c.kind.value, "vertices": list(c.vertices)} for c in S.cells],
    }


def dumps_midsection(S: SurfaceComplex) -> str:
    return json.dumps(midsection_to_dict(S), indent=1) + "\n"


def midsection_from_dict(data) -> SurfaceComplex:
    if not isinstance(data, dict) or set(data) != {"format", "cells"}:
        raise ParseError("midsection file needs exactly the keys 'format' and 'cells'")
    if data["format"] != "midsection/1":
        raise ParseError(f"unsupported format {data['format']!r}")
    if not isinstance(data["cells"], list):
        raise ParseError("'cells' must be a list")
    cells = []
    for raw in data["cells"]:
        if not isinstance(raw, dict) or set(raw) != {"kind", "vertices"}:
            raise ParseError(f"bad cell entry {raw!r}")
        if raw["kind"] not in _KINDS:
            raise ParseError(f"unknown cell kind {raw['kind']!r}")
        vs = raw["vertices"]
        if not isinstance(vs, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in vs
        ):
            raise ParseError(f"vertices must be non-negative integers: {vs!r}")
        try:
            cells.append(Cell(_KINDS[raw["kind"]], tuple(vs)))
        except MalformedCell as exc:
            raise ParseError(str(exc)) from exc
    return build_complex(cells)


def loads_midsection(text: str) -> SurfaceComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return midsection_from_dict(data)
