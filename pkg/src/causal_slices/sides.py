"""Two-coloured cylinders between a red triangle and a blue triangle.

These are the possible sides of a disc-slice whose boundary discs are
single triangles.  The census below searches all six-element sets of two-coloured
triangles on three red and three blue vertices, keeps the simplicial
cylinders whose rims are the two triangles, and reads off the cyclic
F/B word of each along both orientations of the red rim.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .complex3 import side_walk, side_word
from .errors import CausalSliceError, ParseError
from .surface import BLUE, RED, Colour
from .topology2d import PolygonComplex

RED_RIM = (0, 1, 2)
BLUE_RIM = (3, 4, 5)
COLOUR = {v: RED for v in RED_RIM} | {v: BLUE for v in BLUE_RIM}


def min_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word)))


def min_dihedral(word: str) -> str:
    return min(min_rotation(word), min_rotation(word[::-1]))


def two_coloured_triangles() -> list[tuple[int, int, int]]:
    out = [p + (b,) for p in itertools.combinations(RED_RIM, 2) for b in BLUE_RIM]
    out += [(r,) + q for r in RED_RIM for q in itertools.combinations(BLUE_RIM, 2)]
    return sorted(tuple(sorted(t)) for t in out)


def is_side_cylinder(triangles) -> bool:
    try:
        pc = PolygonComplex(triangles)
    except CausalSliceError:
        return False
    topo = pc.classify()
    rims = {tuple(sorted(c)) for c in pc.boundary_cycles}
    return topo.euler == 0 and topo.n_boundaries == 2 and rims == {RED_RIM, BLUE_RIM}


@dataclass(frozen=True)
class SideClass:
    word: str  # least rotation of the F/B word
    triangles: tuple[tuple[int, int, int], ...]  # one labelled representative
    labelled: int  # labelled cylinders realising this oriented word


def side_census(oriented: bool = True) -> list[SideClass]:
    """Equivalence classes of side cylinders with triangle rims.

    With ``oriented`` the classes are F/B words up to rotation, which is
    equivalence under maps preserving the orientation of the cylinder;
    otherwise reflections are allowed too.
    """
    norm = min_rotation if oriented else min_dihedral
    found: dict[str, list] = {}
    tris = two_coloured_triangles()
    rim = {e for c in (RED_RIM, BLUE_RIM) for e in itertools.combinations(c, 2)}
    # six vertices, six rim edges and euler characteristic 0 force 6 triangles
    for cand in itertools.combinations(tris, 6):
        uses: dict = {}
        for t in cand:
            for e in itertools.combinations(t, 2):
                uses[e] = uses.get(e, 0) + 1
        if any(uses.get(e, 0) != 1 for e in rim) or any(
            n != 2 for e, n in uses.items() if e not in rim
        ):
            continue
        if not is_side_cylinder(cand):
            continue
        for cyc in (RED_RIM, RED_RIM[::-1]):
            w = norm(side_word(side_walk(cand, COLOUR, cyc), COLOUR))
            found.setdefault(w, []).append(cand)
    return [
        SideClass(w, tuple(reps[0]), len({frozenset(r) for r in reps}))
        for w, reps in sorted(found.items())
    ]


def cylinder_from_word(word: str) -> list[tuple[int, int, int]]:
    """Lay out a side word along the rims (0,1,2) and (3,4,5)."""
    if sorted(word) != sorted("FFFBBB"):
        raise ValueError("a triangle-rim side has three F and three B triangles")
    i = j = 0
    out = []
    for ch in word:
        if ch == "F":
            out.append(tuple(sorted((RED_RIM[i % 3], RED_RIM[(i + 1) % 3], BLUE_RIM[j % 3]))))
            i += 1
        else:
            out.append(tuple(sorted((RED_RIM[i % 3], BLUE_RIM[j % 3], BLUE_RIM[(j + 1) % 3]))))
            j += 1
    return out


# ---------------------------------------------------------------------------
# side/1 fixture files


def side_to_dict(triangles, colour=COLOUR) -> dict:
    vs = sorted({v for t in triangles for v in t})
    return {
        "format": "side/1",
        "vertices": [{"id": v, "colour": colour[v].value} for v in vs],
        "triangles": [list(t) for t in triangles],
    }


def side_from_dict(data) -> tuple[list[tuple[int, ...]], dict[int, Colour]]:
    if not isinstance(data, dict) or set(data) != {"format", "vertices", "triangles"}:
        raise ParseError("side file needs exactly the keys 'format', 'vertices', 'triangles'")
    if data["format"] != "side/1":
        raise ParseError(f"unsupported format {data['format']!r}")
    colour = {}
    for raw in data["vertices"]:
        if not isinstance(raw, dict) or set(raw) != {"id", "colour"} or raw["colour"] not in ("red", "blue"):
            raise ParseError(f"bad vertex entry {raw!r}")
        colour[raw["id"]] = Colour(raw["colour"])
    tris = []
    for raw in data["triangles"]:
        if not isinstance(raw, list) or len(raw) != 3 or any(v not in colour for v in raw):
            raise ParseError(f"bad triangle entry {raw!r}")
        tris.append(tuple(raw))
    return tris, colour


def loads_side(text: str):
    try:
        return side_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
