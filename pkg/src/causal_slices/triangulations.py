"""Small uncoloured triangulated spheres and discs.

Spheres on n vertices are generated from one stellar subdivision of an
(n-1)-vertex sphere and closed under edge flips; the flip graph of
triangulated spheres with a fixed number of vertices is connected, so this
reaches every isomorphism class.  Classes are told apart with the coloured
canonical code, colouring every triangle red.
"""

from __future__ import annotations

import itertools
import json
import random
from functools import lru_cache

from .errors import ParseError
from .surface import Cell, build_complex, canonical_code, canonical_complex
from .topology2d import PolygonComplex, edge_key

Triangle = tuple[int, int, int]

TETRA_SPHERE: tuple[Triangle, ...] = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def triangulation_code(triangles) -> bytes:
    return canonical_code(build_complex([Cell.red(*t) for t in triangles]))


def _normal(triangles) -> tuple[Triangle, ...]:
    """Relabel by the canonical labelling so isomorphic inputs give equal output."""
    S = build_complex([Cell.red(*t) for t in triangles])
    S = canonical_complex(S)
    return tuple(sorted(tuple(sorted(c.vertices)) for c in S.cells))


def flips(triangles) -> list[tuple[Triangle, ...]]:
    """All triangulations one edge flip away."""
    tris = [tuple(sorted(t)) for t in triangles]
    edges = {e for t in tris for e in itertools.combinations(t, 2)}
    on: dict = {}
    for t in tris:
        for e in itertools.combinations(t, 2):
            on.setdefault(e, []).append(t)
    out = []
    for e, (t1, t2) in on.items():
        (c,) = set(t1) - set(e)
        (d,) = set(t2) - set(e)
        if edge_key(c, d) in edges:
            continue
        a, b = e
        rest = [t for t in tris if t not in (t1, t2)]
        out.append(tuple(sorted(rest + [tuple(sorted((a, c, d))), tuple(sorted((b, c, d)))])))
    return out


def stellar(triangles, t: Triangle) -> tuple[Triangle, ...]:
    """Subdivide triangle t with a new vertex."""
    v = max(x for s in triangles for x in s) + 1
    a, b, c = t
    rest = [tuple(sorted(s)) for s in triangles if tuple(sorted(s)) != tuple(sorted(t))]
    return tuple(sorted(rest + [(a, b, v), (a, c, v), (b, c, v)]))


@lru_cache(maxsize=None)
def simplicial_spheres(n_vertices: int) -> tuple[tuple[Triangle, ...], ...]:
    """One representative per isomorphism class of spheres on n vertices."""
    if n_vertices < 4:
        return ()
    if n_vertices == 4:
        return (TETRA_SPHERE,)
    start = simplicial_spheres(n_vertices - 1)[0]
    first = _normal(stellar(start, start[0]))
    seen = {triangulation_code(first): first}
    todo = [first]
    while todo:
        cur = todo.pop()
        for nxt in flips(cur):
            code = triangulation_code(nxt)
            if code not in seen:
                seen[code] = _normal(nxt)
                todo.append(nxt)
    return tuple(seen[k] for k in sorted(seen))


def spheres_with_triangles(n_triangles: int) -> tuple[tuple[Triangle, ...], ...]:
    if n_triangles % 2 or n_triangles < 4:
        return ()
    return simplicial_spheres(n_triangles // 2 + 2)


def random_disc(n_triangles: int, rng: random.Random) -> tuple[Triangle, ...]:
    """A random triangulated disc grown by gluing triangles to the boundary."""
    tris: list[Triangle] = [(0, 1, 2)]
    fresh = 3
    while len(tris) < n_triangles:
        pc = PolygonComplex(tris)
        cyc = pc.boundary_cycles[0]
        n = len(cyc)
        options = [("ear", i) for i in range(n)]
        if n > 3:
            options += [("fill", i) for i in range(n)]
        kind, i = rng.choice(options)
        a, b = cyc[i], cyc[(i + 1) % n]
        if kind == "ear":
            tris.append(tuple(sorted((a, b, fresh))))
            fresh += 1
        else:
            c = cyc[(i + 2) % n]
            if edge_key(a, c) in pc.edge_faces:
                continue
            tris.append(tuple(sorted((a, b, c))))
    return tuple(tris)


def random_sphere(max_triangles: int, rng: random.Random) -> tuple[Triangle, ...]:
    choices = [s for n in range(4, max_triangles + 1, 2) for s in spheres_with_triangles(n)]
    return rng.choice(choices)


# ---------------------------------------------------------------------------
# triangulation/1 files: uncoloured discs and spheres fed to the builders


def triangulation_to_dict(triangles) -> dict:
    return {"format": "triangulation/1", "triangles": [list(t) for t in triangles]}


def dumps_triangulation(triangles) -> str:
    return json.dumps(triangulation_to_dict(triangles)) + "\n"


def triangulation_from_dict(data) -> list[Triangle]:
    if not isinstance(data, dict) or set(data) != {"format", "triangles"}:
        raise ParseError("triangulation file needs exactly the keys 'format' and 'triangles'")
    if data["format"] != "triangulation/1":
        raise ParseError(f"unsupported format {data['format']!r}")
    out = []
    for raw in data["triangles"]:
        if not isinstance(raw, list) or len(raw) != 3 or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in raw
        ):
            raise ParseError(f"bad triangle entry {raw!r}")
        out.append(tuple(raw))
    return out


def loads_triangulation(text: str) -> list[Triangle]:
    try:
        return triangulation_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
