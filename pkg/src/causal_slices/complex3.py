"""Coloured 3-dimensional simplicial complexes (candidate causal slices).

Simplices are vertex sets, so two tetrahedra never share more than one
triangle and no triangle is glued to itself; the regularity conditions of
simplicial complexes hold by construction.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ._dsu import DisjointSet
from .errors import (
    CausalSliceError,
    Complex3Error,
    Disconnected,
    DuplicateTetra,
    EmptyBoundary,
    InterfaceMismatch,
    MonochromePartNotDisc,
    MonochromePartNotSphere,
    MonochromeTetra,
    NonPseudomanifold,
    ParseError,
    SideNotCylinder,
)
from .surface import BLUE, RED, Colour
from .topology2d import PolygonComplex, edge_key, is_kind

Tri = tuple  # sorted vertex triple


class SliceKind(enum.Enum):
    DISC = "disc"
    SPHERE = "sphere"


@dataclass(frozen=True)
class Complex3:
    colour: Mapping[int, Colour]
    tetras: tuple[tuple[int, int, int, int], ...]
    triangle_tetras: dict = field(repr=False, compare=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.colour))

    @cached_property
    def triangles(self) -> tuple[Tri, ...]:
        return tuple(sorted(self.triangle_tetras))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({e for t in self.tetras for e in itertools.combinations(t, 2)}))

    @cached_property
    def boundary_triangles(self) -> tuple[Tri, ...]:
        return tuple(t for t in self.triangles if len(self.triangle_tetras[t]) == 1)

    @cached_property
    def boundary_edges(self) -> frozenset:
        return frozenset(e for t in self.boundary_triangles for e in itertools.combinations(t, 2))

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(v for t in self.boundary_triangles for v in t)

    def mono(self, simplex) -> Colour | None:
        cols = {self.colour[v] for v in simplex}
        return cols.pop() if len(cols) == 1 else None

    def tetra_type(self, t) -> tuple[int, int]:
        r = sum(1 for v in t if self.colour[v] is RED)
        return (r, 4 - r)

    def counts(self) -> dict[str, int]:
        return {
            "vertices": len(self.colour),
            "edges": len(self.edges),
            "triangles": len(self.triangles),
            "tetrahedra": len(self.tetras),
        }

    def to_json(self) -> str:
        return dumps_slice(self)

    def __len__(self):
        return len(self.tetras)


def _norm_colour(c) -> Colour:
    return c if isinstance(c, Colour) else Colour(c)


def build_complex3(vertices, tetrahedra: Iterable[Sequence[int]]) -> Complex3:
    """Validate and build a coloured 3-complex.

    ``vertices`` maps id -> colour (a :class:`Colour` or "red"/"blue"), or
    is an iterable of ``(id, colour)`` pairs.
    """
    items = vertices.items() if isinstance(vertices, Mapping) else vertices
    colour: dict[int, Colour] = {}
    for v, c in items:
        if v in colour:
            raise Complex3Error(f"vertex {v} listed twice")
        colour[v] = _norm_colour(c)
    tets = []
    seen = set()
    for raw in tetrahedra:
        t = tuple(sorted(raw))
        if len(t) != 4 or len(set(t)) != 4:
            raise NonPseudomanifold(f"tetrahedron {raw} needs 4 distinct vertices")
        for v in t:
            if v not in colour:
                raise Complex3Error(f"tetrahedron {raw} uses unknown vertex {v}")
        if len({colour[v] for v in t}) == 1:
            raise MonochromeTetra(f"tetrahedron {t} is monochromatic")
        if t in seen:
            raise DuplicateTetra(f"tetrahedron {t} occurs twice")
        seen.add(t)
        tets.append(t)
    if not tets:
        raise Complex3Error("no tetrahedra")
    tets.sort()
    tri: dict[Tri, list[int]] = defaultdict(list)
    for i, t in enumerate(tets):
        for f in itertools.combinations(t, 3):
            tri[f].append(i)
    for f, ts in tri.items():
        if len(ts) > 2:
            raise NonPseudomanifold(f"triangle {f} lies in {len(ts)} tetrahedra")
    used = {v for t in tets for v in t}
    if used != set(colour):
        raise Disconnected(f"vertices {sorted(set(colour) - used)} lie in no tetrahedron")
    dsu = DisjointSet(range(len(tets)))
    for ts in tri.values():
        if len(ts) == 2:
            dsu.union(ts[0], ts[1])
    if len({dsu.find(i) for i in range(len(tets))}) != 1:
        raise Disconnected("tetrahedra are not connected through triangles")
    return Complex3(dict(colour), tuple(tets), dict(tri))


def euler3(M: Complex3) -> int:
    return len(M.colour) - len(M.edges) + len(M.triangles) - len(M.tetras)


def euler_of_tetras(tetras: Iterable[Sequence[int]]) -> int:
    """V - E + F - T of the complex generated by a set of tetrahedra."""
    ts = {tuple(sorted(t)) for t in tetras}
    faces = [set() for _ in range(4)]
    for t in ts:
        for k in range(1, 5):
            faces[k - 1].update(itertools.combinations(t, k))
    return len(faces[0]) - len(faces[1]) + len(faces[2]) - len(faces[3])


def euler_of_triangles(triangles: Iterable[Sequence[int]]) -> int:
    ts = {tuple(sorted(t)) for t in triangles}
    vs = {v for t in ts for v in t}
    es = {e for t in ts for e in itertools.combinations(t, 2)}
    return len(vs) - len(es) + len(ts)


# ---------------------------------------------------------------------------
# boundary


@dataclass(frozen=True)
class BoundarySplit:
    d_red: tuple[Tri, ...]
    d_blue: tuple[Tri, ...]
    side: tuple[Tri, ...]  # cyclic order of the side walk (empty for spheres)

    def side_word(self, colour: Mapping[int, Colour]) -> str:
        return side_word(self.side, colour)


def _boundary_cycle_edges(triangles) -> set:
    pc = PolygonComplex(triangles)
    return set(pc.boundary_edges)


def boundary_split(M: Complex3, kind: SliceKind | str = SliceKind.DISC) -> BoundarySplit:
    kind = SliceKind(kind)
    bd = M.boundary_triangles
    if not bd:
        raise EmptyBoundary("complex has no boundary triangles")
    d_red = tuple(t for t in bd if M.mono(t) is RED)
    d_blue = tuple(t for t in bd if M.mono(t) is BLUE)
    side = [t for t in bd if M.mono(t) is None]
    if kind is SliceKind.SPHERE:
        for name, part in (("red", d_red), ("blue", d_blue)):
            if not part or not is_kind(part, "sphere"):
                raise MonochromePartNotSphere(f"{name} boundary part is not a 2-sphere")
        if side:
            raise SideNotCylinder(f"sphere-slice has {len(side)} two-coloured boundary triangles")
        return BoundarySplit(d_red, d_blue, ())
    for name, part in (("red", d_red), ("blue", d_blue)):
        if not part or not is_kind(part, "disc"):
            raise MonochromePartNotDisc(f"{name} boundary part is not a disc")
    if not side:
        raise SideNotCylinder("no two-coloured boundary triangles")
    try:
        pc = PolygonComplex(side)
    except CausalSliceError as exc:
        raise SideNotCylinder(f"side is not a surface: {exc}") from exc
    topo = pc.classify()
    rim = _boundary_cycle_edges(d_red) | _boundary_cycle_edges(d_blue)
    if topo.euler != 0 or topo.n_boundaries != 2 or set(pc.boundary_edges) != rim:
        raise SideNotCylinder(f"side has topology {topo} and does not span both discs")
    return BoundarySplit(d_red, d_blue, tuple(_side_walk(M, d_red, side)))


def _side_walk(M: Complex3, d_red, side) -> list[Tri]:
    cyc = PolygonComplex(d_red).boundary_cycles[0]
    return side_walk(side, M.colour, cyc)


def side_walk(side, colour: Mapping[int, Colour], red_cycle: Sequence[int]) -> list[Tri]:
    """Order a side cylinder along its red rim.

    Emits the forward triangle of each red rim edge followed by the fan of
    backward triangles at the edge's far end, in the direction of
    ``red_cycle``.
    """
    by_edge: dict = defaultdict(list)
    for t in side:
        for e in itertools.combinations(sorted(t), 2):
            by_edge[e].append(tuple(sorted(t)))
    v0, v1 = red_cycle[0], red_cycle[1]
    first = by_edge[edge_key(v0, v1)]
    if len(first) != 1:
        raise SideNotCylinder(f"red rim edge {(v0, v1)} is not in exactly one side triangle")
    cur = first[0]
    pivot = v1  # red vertex of the time-like edge we leave through
    other = next(v for v in cur if v not in (v0, v1))
    order = [cur]
    while True:
        e = edge_key(pivot, other)
        nxt = [t for t in by_edge[e] if t != cur]
        if len(nxt) != 1:
            raise SideNotCylinder(f"time-like edge {e} is not shared by two side triangles")
        cur = nxt[0]
        if cur == order[0]:
            break
        if len(order) > len(side):
            raise SideNotCylinder("side walk does not close up")
        order.append(cur)
        third = next(v for v in cur if v not in e)
        if colour[third] is RED:
            pivot = third  # forward triangle: continue along the red rim
        else:
            other = third  # backward triangle: continue along the blue rim
    if len(order) != len(side):
        raise SideNotCylinder("side walk does not cover the side")
    return order


def side_word(triangles, colour: Mapping[int, Colour]) -> str:
    """'F' for triangles with two red vertices, 'B' for two blue ones."""
    return "".join("F" if sum(colour[v] is RED for v in t) == 2 else "B" for t in triangles)


# ---------------------------------------------------------------------------
# validation


@dataclass
class SliceReport:
    kind: str
    checks: list[tuple[str, bool, object]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __bool__(self):
        return self.verdict

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "checks": [{"check": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
        }


def vertex_link(M: Complex3, v: int) -> list[Tri]:
    return [tuple(u for u in t if u != v) for t in M.tetras if v in t]


def structural_checks(M: Complex3, kind: SliceKind | str) -> SliceReport:
    """Every slice check except the midsection round trip."""
    kind = SliceKind(kind)
    rep = SliceReport(kind.value)
    inner = []
    for v in M.colour:
        if v not in M.boundary_vertices:
            inner.append([v])
    for e in M.edges:
        if M.mono(e) is not None and e not in M.boundary_edges:
            inner.append(list(e))
    for t in M.triangles:
        if M.mono(t) is not None and len(M.triangle_tetras[t]) != 1:
            inner.append(list(t))
    rep.checks.append(("monochrome_on_boundary", not inner, {"interior": inner[:5]}))
    if inner:
        return rep
    try:
        split = boundary_split(M, kind)
    except CausalSliceError as exc:
        rep.checks.append(("boundary_split", False, {"error": type(exc).__name__, "message": str(exc)}))
        return rep
    rep.checks.append(("boundary_split", True, {"red": len(split.d_red), "blue": len(split.d_blue), "side": len(split.side)}))
    stray = []
    for c, part in ((RED, split.d_red), (BLUE, split.d_blue)):
        pv = {v for t in part for v in t}
        pe = {e for t in part for e in itertools.combinations(t, 2)}
        stray += [[v] for v in M.colour if M.colour[v] is c and v not in pv]
        stray += [list(e) for e in M.edges if M.mono(e) is c and e not in pe]
    rep.checks.append(("monochrome_parts", not stray, {"outside": stray[:5]}))
    bad_links = [v for v in M.vertices if not is_kind(vertex_link(M, v), "disc")]
    rep.checks.append(("vertex_links", not bad_links, {"vertices": bad_links[:5]}))
    chi = euler3(M)
    want = 1 if kind is SliceKind.DISC else 2
    rep.checks.append(("euler", chi == want, {"euler": chi, "expected": want}))
    return rep


def validate_slice(M: Complex3, kind: SliceKind | str, certificate: bool = True) -> SliceReport:
    rep = structural_checks(M, kind)
    if certificate and rep.verdict:
        from .midsection import midsection
        from .conditions import membership
        from .reconstruct import reconstruct

        S, _ = midsection(M)
        mem = membership(S, SliceKind(kind).value)
        rep.checks.append(("midsection_membership", mem.verdict, mem.witness))
        if mem.verdict:
            same = isomorphic3(reconstruct(S, SliceKind(kind).value), M)
            rep.checks.append(("round_trip", same, None))
    return rep


# ---------------------------------------------------------------------------
# layered union


def layered_union(
    slices: Sequence[Complex3],
    interfaces: Sequence[Mapping[int, int]] = (),
    kind: SliceKind | str = SliceKind.DISC,
) -> Complex3:
    """Glue slices in time order.

    ``interfaces[i]`` maps the vertices of the blue boundary part of slice i
    to the red boundary part of slice i+1.  Vertices of the result are
    renumbered and coloured by the parity of their time layer, so every
    tetrahedron stays two-coloured.
    """
    kind = SliceKind(kind)
    slices = list(slices)
    if len(interfaces) != max(0, len(slices) - 1):
        raise InterfaceMismatch("need one vertex bijection per consecutive pair of slices")
    if len(slices) == 1:
        return slices[0]
    splits = [boundary_split(K, kind) for K in slices]
    # global ids: (slice index, local id) -> int, merged through the bijections
    dsu = DisjointSet()
    for i, bij in enumerate(interfaces):
        lower, upper = splits[i].d_blue, splits[i + 1].d_red
        lower_v = {v for t in lower for v in t}
        upper_v = {v for t in upper for v in t}
        if set(bij) != lower_v or set(bij.values()) != upper_v or len(set(bij.values())) != len(bij):
            raise InterfaceMismatch(f"bijection {i} is not onto the interface vertices")
        mapped = {tuple(sorted(bij[v] for v in t)) for t in lower}
        if mapped != set(upper):
            raise InterfaceMismatch(f"interface {i}: blue part does not match the next red part")
        for v, w in bij.items():
            dsu.union((i, v), (i + 1, w))
    ids: dict = {}
    colour: dict[int, Colour] = {}
    tets = []
    for i, K in enumerate(slices):
        for v in K.vertices:
            root = dsu.find((i, v))
            if root not in ids:
                ids[root] = len(ids)
                # time layer: red vertices of slice i sit at i, blue ones at i+1
                layer = i + (0 if K.colour[v] is RED else 1)
                colour[ids[root]] = RED if layer % 2 == 0 else BLUE
        for t in K.tetras:
            tets.append(tuple(ids[dsu.find((i, v))] for v in t))
    return build_complex3(colour, tets)


# ---------------------------------------------------------------------------
# isomorphism


def isomorphic3(M1: Complex3, M2: Complex3) -> bool:
    """Colour-preserving simplicial isomorphism by backtracking."""
    if (len(M1.colour), len(M1.edges), len(M1.triangles), len(M1.tetras)) != (
        len(M2.colour), len(M2.edges), len(M2.triangles), len(M2.tetras)
    ):
        return False
    inv1, inv2 = _vertex_invariants(M1), _vertex_invariants(M2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return False
    adj1, adj2 = _adjacency(M1), _adjacency(M2)
    tets2 = set(M2.tetras)
    tets_at1: dict[int, list] = defaultdict(list)
    for t in M1.tetras:
        for v in t:
            tets_at1[v].append(t)
    # BFS order keeps the partial map connected, which prunes hard
    start = min(M1.vertices, key=lambda v: (inv1[v], v))
    order, seen = [], {start}
    q = deque([start])
    while q:
        v = q.popleft()
        order.append(v)
        for w in sorted(adj1[v]):
            if w not in seen:
                seen.add(w)
                q.append(w)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in M2.vertices:
            if w in used or inv2[w] != inv1[v]:
                continue
            if any(mapping[u] not in adj2[w] for u in adj1[v] if u in mapping):
                continue
            mapping[v] = w
            ok = True
            for t in tets_at1[v]:
                if all(u in mapping for u in t) and tuple(sorted(mapping[u] for u in t)) not in tets2:
                    ok = False
                    break
            if ok:
                used.add(w)
                if extend(k + 1):
                    return True
                used.discard(w)
            del mapping[v]
        return False

    return extend(0)


def _adjacency(M: Complex3) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = defaultdict(set)
    for u, v in M.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _vertex_invariants(M: Complex3) -> dict[int, tuple]:
    deg: dict[int, int] = defaultdict(int)
    tdeg: dict[int, int] = defaultdict(int)
    for u, v in M.edges:
        deg[u] += 1
        deg[v] += 1
    for t in M.tetras:
        for v in t:
            tdeg[v] += 1
    bd = M.boundary_vertices
    return {v: (M.colour[v].value, deg[v], tdeg[v], v in bd) for v in M.colour}


def canonical_code3(M: Complex3) -> bytes:
    """Minimal breadth-first relabelling over all ordered start tetrahedra."""
    tets = M.tetras
    across: dict = {}
    for f, ts in M.triangle_tetras.items():
        if len(ts) == 2:
            across[(ts[0], f)] = ts[1]
            across[(ts[1], f)] = ts[0]
    col = {v: (0 if c is RED else 1) for v, c in M.colour.items()}
    # restrict start tetrahedra to the rarest (type, colour pattern) class
    best = None
    for ti, t in enumerate(tets):
        for perm in itertools.permutations(t):
            code = _walk3(perm, ti, tets, across, col, best)
            if code is not None and (best is None or code < best):
                best = code
    return ";".join(".".join(map(str, item)) for item in best).encode()


def _walk3(start, ti, tets, across, col, best):
    labels: dict[int, int] = {}
    code = []
    queue = deque([(ti, start)])
    seen = {ti}
    k = 0
    better = best is None
    while queue:
        i, order = queue.popleft()
        item = []
        for v in order:
            if v not in labels:
                labels[v] = len(labels)
            item.append(labels[v] * 2 + col[v])
        item = tuple(item)
        if not better:
            b = best[k]
            if item > b:
                return None
            if item < b:
                better = True
        code.append(item)
        k += 1
        for drop in range(3, -1, -1):
            face = order[:drop] + order[drop + 1:]
            j = across.get((i, tuple(sorted(face))))
            if j is not None and j not in seen:
                seen.add(j)
                apex = next(v for v in tets[j] if v not in face)
                queue.append((j, face + (apex,)))
    return tuple(code)


def relabel3(M: Complex3, mapping: Mapping[int, int]) -> Complex3:
    return build_complex3(
        {mapping[v]: c for v, c in M.colour.items()},
        [tuple(mapping[v] for v in t) for t in M.tetras],
    )


def swap_colours(M: Complex3) -> Complex3:
    return build_complex3({v: c.other for v, c in M.colour.items()}, M.tetras)


# ---------------------------------------------------------------------------
# slice/1 files


def slice_to_dict(M: Complex3) -> dict:
    return {
        "format": "slice/1",
        "vertices": [{"id": v, "colour": M.colour[v].value} for v in M.vertices],
        "tetrahedra": [list(t) for t in M.tetras],
    }


def dumps_slice(M: Complex3) -> str:
    return json.dumps(slice_to_dict(M), indent=1) + "\n"


def slice_from_dict(data) -> Complex3:
    if not isinstance(data, dict) or set(data) != {"format", "vertices", "tetrahedra"}:
        raise ParseError("slice file needs exactly the keys 'format', 'vertices', 'tetrahedra'")
    if data["format"] != "slice/1":
        raise ParseError(f"unsupported format {data['format']!r}")
    verts = []
    if not isinstance(data["vertices"], list) or not isinstance(data["tetrahedra"], list):
        raise ParseError("'vertices' and 'tetrahedra' must be lists")
    for raw in data["vertices"]:
        if not isinstance(raw, dict) or set(raw) != {"id", "colour"}:
            raise ParseError(f"bad vertex entry {raw!r}")
        if not isinstance(raw["id"], int) or isinstance(raw["id"], bool) or raw["id"] < 0:
            raise ParseError(f"vertex id must be a non-negative integer: {raw['id']!r}")
        if raw["colour"] not in ("red", "blue"):
            raise ParseError(f"unknown colour {raw['colour']!r}")
        verts.append((raw["id"], raw["colour"]))
    tets = []
    for raw in data["tetrahedra"]:
        if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
            raise ParseError(f"bad tetrahedron entry {raw!r}")
        tets.append(tuple(raw))
    return build_complex3(verts, tets)


def loads_slice(text: str) -> Complex3:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return slice_from_dict(data)
