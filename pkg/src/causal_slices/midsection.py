"""The coloured cross-section of a slice halfway between its two boundaries.

Cutting a two-coloured tetrahedron at half height meets it in a triangle
(three red vertices, or three blue ones) or in a quadrangle (two of each).
Every two-coloured edge of the slice is cut in one point, and every
two-coloured triangle in one segment, coloured by the triangle's
monochromatic edge.  All of this is done combinatorially.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .complex3 import Complex3, SliceKind, boundary_split
from .errors import Complex3Error
from .surface import BLUE, RED, Cell, SurfaceComplex, build_complex
from .topology2d import edge_key


@dataclass(frozen=True)
class MidsectionLabels:
    vertex: dict  # (red, blue) edge of K -> midsection vertex
    cell: dict  # tetra of K -> index into S.cells
    edge: dict  # two-coloured triangle of K -> midsection edge

    def to_dict(self) -> dict:
        return {
            "vertices": [{"edge": list(e), "vertex": v} for e, v in sorted(self.vertex.items())],
            "cells": [{"tetrahedron": list(t), "cell": c} for t, c in sorted(self.cell.items())],
            "edges": [{"triangle": list(t), "edge": list(e)} for t, e in sorted(self.edge.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _precheck(K: Complex3, kind) -> None:
    for e in K.edges:
        if K.mono(e) is not None and e not in K.boundary_edges:
            raise Complex3Error(f"monochromatic edge {e} is interior")
    for t in K.triangles:
        if K.mono(t) is not None and len(K.triangle_tetras[t]) != 1:
            raise Complex3Error(f"monochromatic triangle {t} is interior")
    if kind is None:
        side = [t for t in K.boundary_triangles if K.mono(t) is None]
        kind = SliceKind.DISC if side else SliceKind.SPHERE
    boundary_split(K, kind)


def midsection(K: Complex3, kind: SliceKind | str | None = None, check: bool = True):
    """Return ``(S, labels)``.

    ``kind`` defaults to sphere mode when the boundary has no two-coloured
    triangles and disc mode otherwise.
    """
    if check:
        _precheck(K, None if kind is None else SliceKind(kind))
    col = K.colour

    def rb(u, v):
        return (u, v) if col[u] is RED else (v, u)

    mixed = sorted(rb(u, v) for u, v in K.edges if col[u] is not col[v])
    vid = {e: i for i, e in enumerate(mixed)}
    cells = []
    cell_of = {}
    for t in K.tetras:
        reds = [v for v in t if col[v] is RED]
        blues = [v for v in t if col[v] is BLUE]
        if len(blues) == 1:
            b = blues[0]
            cell = Cell.red(*(vid[(r, b)] for r in reds))
        elif len(reds) == 1:
            r = reds[0]
            cell = Cell.blue(*(vid[(r, b)] for b in blues))
        else:
            (r1, r2), (b1, b2) = reds, blues
            cell = Cell.quad(vid[(r1, b1)], vid[(r2, b1)], vid[(r2, b2)], vid[(r1, b2)])
        cell_of[t] = len(cells)
        cells.append(cell)
    edge_of = {}
    for f in K.triangles:
        if K.mono(f) is not None:
            continue
        reds = [v for v in f if col[v] is RED]
        blues = [v for v in f if col[v] is BLUE]
        if len(reds) == 2:
            a, b = vid[(reds[0], blues[0])], vid[(reds[1], blues[0])]
        else:
            a, b = vid[(reds[0], blues[0])], vid[(reds[0], blues[1])]
        edge_of[f] = edge_key(a, b)
    S = build_complex(cells)
    return S, MidsectionLabels(vid, cell_of, edge_of)


def midsection_complex(K: Complex3, kind=None) -> SurfaceComplex:
    return midsection(K, kind)[0]
