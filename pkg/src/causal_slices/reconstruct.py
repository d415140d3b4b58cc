"""From a coloured midsection back to the slice, plus slice builders.

The slice of a midsection S has one red vertex per blue component of S and
one blue vertex per red component.  A red triangle <abc> becomes the
tetrahedron (r_a, r_b, r_c, b_a), a blue one (b_a, b_b, b_c, r_a), and a
quadrangle <abcd> becomes (r_a, r_b, b_a, b_c).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ._dsu import DisjointSet
from .complex3 import (
    Complex3,
    SliceKind,
    build_complex3,
    euler3,
    euler_of_tetras,
    euler_of_triangles,
    structural_checks,
)
from .conditions import MidsectionKind, membership
from .errors import CausalSliceError, MembershipFailed, NotADisc, NotASphere
from .surface import (
    BLUE,
    RED,
    Cell,
    CellKind,
    SurfaceComplex,
    build_complex,
    canonical_form,
    quad_chains,
)
from .topology2d import PolygonComplex, edge_key, face_edges, require_disc, require_sphere


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class VertexPairs:
    """Midsection vertex a -> (r_a, b_a) in the reconstructed slice."""

    red: dict
    blue: dict


def star_vertices(S: SurfaceComplex) -> VertexPairs:
    blue_comp, red_comp = S.component_of(BLUE), S.component_of(RED)
    # red vertices first, numbered by smallest member of the blue component
    reps_r = sorted({blue_comp[v] for v in S.vertices}, key=lambda c: min(
        v for v in S.vertices if blue_comp[v] == c))
    reps_b = sorted({red_comp[v] for v in S.vertices}, key=lambda c: min(
        v for v in S.vertices if red_comp[v] == c))
    rid = {c: i for i, c in enumerate(reps_r)}
    bid = {c: len(reps_r) + i for i, c in enumerate(reps_b)}
    return VertexPairs(
        {v: rid[blue_comp[v]] for v in S.vertices},
        {v: bid[red_comp[v]] for v in S.vertices},
    )


def cell_tetra(cell: Cell, r, b) -> tuple[int, int, int, int]:
    vs = cell.vertices
    if cell.kind is CellKind.RED:
        return (r[vs[0]], r[vs[1]], r[vs[2]], b[vs[0]])
    if cell.kind is CellKind.BLUE:
        return (b[vs[0]], b[vs[1]], b[vs[2]], r[vs[0]])
    a, _, c, _ = vs
    return (r[a], r[vs[1]], b[a], b[c])


def reconstruct_unchecked(S: SurfaceComplex) -> Complex3:
    pairs = star_vertices(S)
    colour = {i: RED for i in pairs.red.values()}
    colour.update({i: BLUE for i in pairs.blue.values()})
    tets = [cell_tetra(c, pairs.red, pairs.blue) for c in S.cells]
    return build_complex3(colour, tets)


def reconstruct(S: SurfaceComplex, kind: MidsectionKind | SliceKind | str = "disc") -> Complex3:
    kind = MidsectionKind(kind.value if isinstance(kind, SliceKind) else kind)
    rep = membership(S, kind)
    if not rep.verdict:
        raise MembershipFailed(f"not a {kind.value} midsection: {rep.witness}", rep)
    return reconstruct_unchecked(S)


def reconstruct_by_gluing(S: SurfaceComplex) -> Complex3:
    """One tetrahedron per cell, then glue pairs across interior edges.

    Each cell F gets private vertices r^F_a, b^F_a, with r^F_a = r^F_b for a
    blue edge ab of F and b^F_a = b^F_b for a red one.  Cells sharing a red
    edge ab have their triangles (r_a r_b b_a) identified; blue edges
    likewise.  The result must coincide with :func:`reconstruct_unchecked`.
    """
    dsu = DisjointSet()
    for f, cell in enumerate(S.cells):
        for a in cell.vertices:
            dsu.find(("r", f, a))
            dsu.find(("b", f, a))
        for (a, b), col in cell.edge_colours():
            if col is BLUE:
                dsu.union(("r", f, a), ("r", f, b))
            else:
                dsu.union(("b", f, a), ("b", f, b))
    for (a, b), fs in S.edge_cells.items():
        if len(fs) != 2:
            continue
        f1, f2 = fs
        same = "r" if S.edge_colour[(a, b)] is RED else "b"
        cross = "b" if same == "r" else "r"
        dsu.union((same, f1, a), (same, f2, a))
        dsu.union((same, f1, b), (same, f2, b))
        dsu.union((cross, f1, a), (cross, f2, a))
    roots = sorted({dsu.find(x) for x in dsu.parent})
    ids = {r: i for i, r in enumerate(roots)}
    colour = {ids[r]: (RED if r[0] == "r" else BLUE) for r in roots}
    tets = []
    for f, cell in enumerate(S.cells):
        r = {a: ids[dsu.find(("r", f, a))] for a in cell.vertices}
        b = {a: ids[dsu.find(("b", f, a))] for a in cell.vertices}
        tets.append(cell_tetra(cell, r, b))
    return build_complex3(colour, tets)


def gluing_equivalent(S: SurfaceComplex) -> bool:
    """Gluing along interior edges gives the same complex as the direct quotient."""
    from .complex3 import isomorphic3

    direct = reconstruct_unchecked(S)
    glued = reconstruct_by_gluing(S)
    if direct.counts() != glued.counts():
        return False
    return isomorphic3(direct, glued)


# ---------------------------------------------------------------------------
# local construction


@dataclass(frozen=True)
class GlueCell:
    cell: object  # Cell, or a vertex tuple for uncoloured discs
    edge: tuple[int, int]


@dataclass(frozen=True)
class IdentifyEdges:
    """Merge boundary edge (pivot, drop) into (pivot, keep); ``drop`` disappears."""

    pivot: int
    keep: int
    drop: int


@dataclass(frozen=True)
class MoveSequence:
    initial: object
    moves: tuple = field(default=())

    def __len__(self):
        return len(self.moves)

    def counts(self) -> dict[str, int]:
        glue = sum(isinstance(m, GlueCell) for m in self.moves)
        return {"glue": glue, "identify": len(self.moves) - glue}


def _verts(face):
    return face.vertices if isinstance(face, Cell) else tuple(face)


def _relabel_face(face, mapping):
    full = {v: mapping.get(v, v) for v in _verts(face)}
    if isinstance(face, Cell):
        return face.relabel(full)
    return tuple(full[v] for v in face)


def _as_faces(D) -> list:
    if isinstance(D, SurfaceComplex):
        return list(D.cells)
    return [tuple(f) for f in D]


def local_construction(D) -> MoveSequence:
    """Moves building the disc D from one cell.

    Works backwards: peel a cell that meets the rest in exactly one edge and
    has no other shared vertex, or, when none exists, cut open an interior
    edge from an interior vertex to a boundary vertex.  In a disc without
    interior vertices the dual graph is a tree, so a peelable leaf exists;
    otherwise some interior vertex is adjacent to the boundary.  Both steps
    keep a disc, so the greedy search never gets stuck.
    """
    faces = _as_faces(D)
    try:
        require_disc([_verts(f) for f in faces])
    except NotADisc:
        raise
    except CausalSliceError as exc:
        raise NotADisc(str(exc)) from exc
    fresh = max(v for f in faces for v in _verts(f)) + 1
    moves = []
    while len(faces) > 1:
        pc = PolygonComplex([_verts(f) for f in faces])
        step = _peel(faces, pc)
        if step is not None:
            i, edge = step
            moves.append(GlueCell(faces[i], edge))
            faces = faces[:i] + faces[i + 1:]
            continue
        cut = _cut(faces, pc, fresh)
        if cut is None:  # pragma: no cover - excluded by the argument above
            raise AssertionError("no reverse move applies to a disc")
        faces, move = cut
        fresh += 1
        moves.append(move)
    return MoveSequence(faces[0], tuple(reversed(moves)))


def _peel(faces, pc: PolygonComplex):
    count: dict[int, int] = {}
    for f in faces:
        for v in _verts(f):
            count[v] = count.get(v, 0) + 1
    # triangles go first, so a quadrangle (if any) is left as the seed cell
    for i in sorted(range(len(faces)), key=lambda i: len(_verts(faces[i]))):
        f = faces[i]
        inner = [e for e in face_edges(_verts(f)) if len(pc.edge_faces[e]) == 2]
        if len(inner) != 1:
            continue
        shared = [v for v in _verts(f) if count[v] > 1]
        if sorted(shared) == sorted(inner[0]):
            return i, inner[0]
    return None


def _cut(faces, pc: PolygonComplex, fresh: int):
    bverts = {v for e in pc.boundary_edges for v in e}
    for v in pc.vertices:
        if v in bverts:
            continue
        for x in sorted(bverts):
            e = edge_key(v, x)
            if e not in pc.edge_faces:
                continue
            # faces around x, walking from one boundary edge to the other
            side = _fan_side(faces, pc, x, e)
            new = [_relabel_face(f, {x: fresh}) if i in side else f for i, f in enumerate(faces)]
            return new, IdentifyEdges(v, x, fresh)
    return None


def _fan_side(faces, pc: PolygonComplex, x: int, e) -> set[int]:
    """Indices of faces at x lying on one side of edge e in the fan around x."""
    start = pc.edge_faces[e][0]
    side = {start}
    came = e
    cur = start
    while True:
        vs = _verts(faces[cur])
        nxt_edge = next(
            g for g in face_edges(vs) if x in g and g != came
        )
        others = [j for j in pc.edge_faces[nxt_edge] if j != cur]
        if not others:
            return side
        cur = others[0]
        side.add(cur)
        came = nxt_edge


def replay(seq: MoveSequence):
    """Rebuild the complex; a SurfaceComplex when cells are coloured."""
    faces = [seq.initial]
    for m in seq.moves:
        if isinstance(m, GlueCell):
            pc = PolygonComplex([_verts(f) for f in faces])
            if m.edge not in pc.boundary_edges:
                raise ValueError(f"glue edge {m.edge} is not on the boundary")
            present = set(pc.vertices)
            extra = [v for v in _verts(m.cell) if v not in m.edge]
            if any(v in present for v in extra) or m.edge not in face_edges(_verts(m.cell)):
                raise ValueError(f"cell {m.cell} does not attach along {m.edge} alone")
            faces.append(m.cell)
        else:
            pc = PolygonComplex([_verts(f) for f in faces])
            e1, e2 = edge_key(m.pivot, m.keep), edge_key(m.pivot, m.drop)
            if e1 not in pc.boundary_edges or e2 not in pc.boundary_edges:
                raise ValueError("identified edges must lie on the boundary")
            faces = [_relabel_face(f, {m.drop: m.keep}) for f in faces]
        try:
            require_disc([_verts(f) for f in faces])
        except CausalSliceError as exc:
            raise ValueError(f"intermediate complex is not a disc: {exc}") from exc
    if isinstance(seq.initial, Cell):
        return build_complex(faces)
    return faces


# ---------------------------------------------------------------------------
# slice builders


def _disc_faces(D) -> list[tuple[int, ...]]:
    faces = [tuple(f) for f in D]
    if any(len(f) != 3 for f in faces):
        raise NotADisc("triangulated disc expected")
    require_disc(faces)
    return faces


def _index(vertices, offset=0) -> dict[int, int]:
    return {v: offset + i for i, v in enumerate(sorted(vertices))}


def _boundary_start(pc: PolygonComplex) -> tuple[int, int]:
    cyc = pc.boundary_cycles[0]
    return cyc[0], cyc[1]


def build_disc_slice(D1, D2) -> Complex3:
    """Disc-slice with red disc D1 and blue disc D2 (both triangulated discs).

    Cone D1 to a blue boundary vertex y, cone D2 to a red boundary vertex x,
    and join the cones by the (2,2) tetrahedron on a boundary edge xx' of D1
    and a boundary edge yy' of D2.  Red vertices are numbered 0.. in the
    sorted order of D1's labels, blue vertices follow in D2's order.
    """
    f1, f2 = _disc_faces(D1), _disc_faces(D2)
    r = _index({v for f in f1 for v in f})
    b = _index({v for f in f2 for v in f}, len(r))
    x, x2 = _boundary_start(PolygonComplex(f1))
    y, y2 = _boundary_start(PolygonComplex(f2))
    return _cone_join(f1, f2, r, b, (r[x], r[x2]), (b[y], b[y2]))


def _cone_join(f1, f2, r, b, xs, ys, bridge=True) -> Complex3:
    colour = {i: RED for i in r.values()}
    colour.update({i: BLUE for i in b.values()})
    tets = [tuple(r[v] for v in t) + (ys[0],) for t in f1]
    tets += [tuple(b[v] for v in t) + (xs[0],) for t in f2]
    if bridge:
        tets.append((xs[0], xs[1], ys[0], ys[1]))
    return build_complex3(colour, tets)


def _sphere_faces(S) -> list[tuple[int, ...]]:
    faces = [tuple(f) for f in S]
    if any(len(f) != 3 for f in faces):
        raise NotASphere("triangulated sphere expected")
    try:
        require_sphere(faces)
    except NotASphere:
        raise
    except CausalSliceError as exc:
        raise NotASphere(str(exc)) from exc
    if len(faces) < 4:
        raise NotASphere("a sphere needs at least 4 triangles")
    return faces


def _candidate_plugs(reds: Sequence[int], blues: Sequence[int]):
    """All two-coloured tetrahedra on three red and three blue vertices."""
    out = [tuple(reds) + (y,) for y in blues]
    out += [tuple(blues) + (x,) for x in reds]
    out += [p + q for p in itertools.combinations(reds, 2) for q in itertools.combinations(blues, 2)]
    return [tuple(sorted(t)) for t in out]


def build_sphere_slice(S1, S2, max_plug: int = 6) -> Complex3:
    """Sphere-slice with red sphere S1 and blue sphere S2.

    One triangle t1 is removed from S1 and t2 from S2.  The punctured red
    sphere is coned to a vertex of t2 and the punctured blue sphere to a
    vertex of t1.  The gap between the cones is bounded by t1, t2 and a
    cylinder on their six vertices; it is filled by the smallest set of
    two-coloured tetrahedra on those six vertices that makes the union a
    valid sphere-slice.  Choices are tried in a fixed order.
    """
    f1, f2 = _sphere_faces(S1), _sphere_faces(S2)
    r = _index({v for f in f1 for v in f})
    b = _index({v for f in f2 for v in f}, len(r))
    want = {tuple(sorted(r[v] for v in t)) for t in f1} | {tuple(sorted(b[v] for v in t)) for t in f2}
    for t1 in sorted(f1):
        for t2 in sorted(f2):
            d1 = [t for t in f1 if t != t1]
            d2 = [t for t in f2 if t != t2]
            reds = sorted(r[v] for v in t1)
            blues = sorted(b[v] for v in t2)
            for x, y in itertools.product(reds, blues):
                K = _plug(d1, d2, r, b, x, y, reds, blues, want, max_plug)
                if K is not None:
                    return K
    raise CausalSliceError("no plug found")  # pragma: no cover


def _plug(d1, d2, r, b, x, y, reds, blues, want, max_plug):
    colour = {i: RED for i in r.values()}
    colour.update({i: BLUE for i in b.values()})
    base = [tuple(sorted(tuple(r[v] for v in t) + (y,))) for t in d1]
    base += [tuple(sorted(tuple(b[v] for v in t) + (x,))) for t in d2]
    tri_count: dict = {}
    for t in base:
        for f in itertools.combinations(t, 3):
            tri_count[f] = tri_count.get(f, 0) + 1
    cands = [t for t in _candidate_plugs(reds, blues) if t not in base]
    for k in range(1, max_plug + 1):
        for plug in itertools.combinations(cands, k):
            cnt = dict(tri_count)
            ok = True
            for t in plug:
                for f in itertools.combinations(t, 3):
                    c = cnt.get(f, 0) + 1
                    if c > 2:
                        ok = False
                        break
                    cnt[f] = c
                if not ok:
                    break
            if not ok or {f for f, c in cnt.items() if c == 1} != want:
                continue
            try:
                K = build_complex3(colour, base + list(plug))
            except CausalSliceError:
                continue
            if structural_checks(K, SliceKind.SPHERE).verdict:
                return K
    return None


# ---------------------------------------------------------------------------
# sphere -> disc cut


@dataclass(frozen=True)
class CutResult:
    red_cluster: tuple[int, ...]  # indices into the input cells
    strip: tuple[int, ...]
    end_triangles: tuple[int, int]
    disc: SurfaceComplex
    disc_cells: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "red_cluster": list(self.red_cluster),
            "strip": list(self.strip),
            "end_triangles": list(self.end_triangles),
            "disc_cells": list(self.disc_cells),
        }


def cut_to_disc(S0: SurfaceComplex) -> CutResult:
    """Cut a sphere midsection open to a disc midsection.

    Remove a maximal edge-connected cluster of red triangles, then the blue
    path of quadrangles through a quadrangle on the new boundary, then the
    two blue triangles capping that path.
    """
    rep = membership(S0, MidsectionKind.SPHERE)
    if not rep.verdict:
        raise MembershipFailed(f"not a sphere midsection: {rep.witness}", rep)
    _, labs = canonical_form(S0)
    lab = labs[0]

    def rank(i):
        return sorted(lab[v] for v in S0.cells[i].vertices)

    cells = S0.cells
    reds = [i for i, c in enumerate(cells) if c.kind is CellKind.RED]
    seed = min(reds, key=rank)
    cluster = {seed}
    todo = [seed]
    while todo:
        i = todo.pop()
        for e, _ in cells[i].edge_colours():
            for j in S0.edge_cells[e]:
                if j not in cluster and cells[j].kind is CellKind.RED:
                    cluster.add(j)
                    todo.append(j)
    rest = [i for i in range(len(cells)) if i not in cluster]
    S = build_complex(cells[i] for i in rest)
    back = dict(enumerate(rest))
    rim = [i for i, c in enumerate(S.cells) if c.kind is CellKind.QUAD and any(
        S.is_boundary(e) for e, _ in c.edge_colours())]
    if not rim:
        raise MembershipFailed("no quadrangle on the rim of the red cluster")
    q = min(rim, key=lambda i: rank(back[i]))
    chain = next(ch for ch in quad_chains(S, BLUE) if q in ch.quads)
    ends = []
    for e in (chain.edges[0], chain.edges[-1]):
        tri = [i for i in S.edge_cells[e] if S.cells[i].kind is CellKind.BLUE]
        if len(tri) != 1 or chain.closed:
            raise MembershipFailed(f"strip end {e} is not capped by a blue triangle")
        ends.append(tri[0])
    drop = set(chain.quads) | set(ends)
    keep = [i for i in range(len(S.cells)) if i not in drop]
    disc = build_complex(S.cells[i] for i in keep)
    res = CutResult(
        tuple(sorted(cluster)),
        tuple(back[i] for i in chain.quads),
        (back[ends[0]], back[ends[1]]),
        disc,
        tuple(back[i] for i in keep),
    )
    rep2 = membership(disc, MidsectionKind.DISC)
    if not rep2.verdict:
        raise MembershipFailed(f"cut result is not a disc midsection: {rep2.witness}", rep2)
    return res


def euler_audit(S0: SurfaceComplex) -> dict[str, int]:
    """Euler characteristics of the pieces a sphere-slice splits into.

    With K the slice of S0 and R the red cluster removed by the cut:
    the tetrahedra outside the cluster, the cone over the cluster's red
    disc and their common boundary satisfy
    chi(K) = chi(outside) + chi(cone) - chi(common).
    """
    cut = cut_to_disc(S0)
    K = reconstruct_unchecked(S0)
    pairs = star_vertices(S0)
    tets = [cell_tetra(c, pairs.red, pairs.blue) for c in S0.cells]
    inside = [tets[i] for i in cut.red_cluster]
    outside = [tets[i] for i in range(len(tets)) if i not in set(cut.red_cluster)]
    # the cluster's tetrahedra all share one blue apex: a cone over a red disc
    faces_in = {f for t in inside for f in itertools.combinations(sorted(t), 3)}
    faces_out = {f for t in outside for f in itertools.combinations(sorted(t), 3)}
    common = faces_in & faces_out
    v_in = {v for t in inside for v in t}
    v_out = {v for t in outside for v in t}
    e_in = {e for t in inside for e in itertools.combinations(sorted(t), 2)}
    e_out = {e for t in outside for e in itertools.combinations(sorted(t), 2)}
    common_chi = len(v_in & v_out) - len(e_in & e_out) + len(common)
    return {
        "slice": euler3(K),
        "outside": euler_of_tetras(outside),
        "cluster_cone": euler_of_tetras(inside),
        "common": common_chi,
        "red_boundary": euler_of_triangles(
            [f for f in K.boundary_triangles if K.mono(f) is RED]
        ),
    }
