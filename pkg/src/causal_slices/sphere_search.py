"""Exhaustive search for sphere-slices with prescribed boundary spheres.

Every vertex of a sphere-slice lies on its red or blue boundary sphere,
every monochromatic simplex is a boundary simplex, and each boundary
triangle lies in exactly one tetrahedron.  So a sphere-slice with
boundaries S1 and S2 is a set of tetrahedra of three shapes:

* a triangle of S1 with a blue apex,
* a triangle of S2 with a red apex,
* an edge of S1 joined to an edge of S2 (these become quadrangles),

covering every boundary triangle once and every two-coloured triangle
zero or two times.  The search below is an exact cover with
fewest-candidates branching, followed by the structural slice checks.
Since the midsection has one cell per tetrahedron, running it over all
boundary pairs with |S1| + |S2| + #quads = n gives every sphere
midsection with n cells.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .complex3 import Complex3, SliceKind, build_complex3, structural_checks
from .errors import CausalSliceError
from .surface import BLUE, RED, Cell, build_complex, canonical_form

Tetra = tuple[int, int, int, int]


def _automorphisms(triangles) -> list[dict[int, int]]:
    S = build_complex([Cell.red(*t) for t in triangles])
    _, labs = canonical_form(S, all_labellings=True)
    inv0 = {v: k for k, v in labs[0].items()}
    return [{v: inv0[lab[v]] for v in lab} for lab in labs]


def _orbit_reps(autos, vertices) -> list[int]:
    reps, seen = [], set()
    for v in sorted(vertices):
        if v not in seen:
            reps.append(v)
            seen.update(a[v] for a in autos)
    return reps


class _Search:
    def __init__(self, S1, S2, max_quads: int):
        self.reds = sorted({v for t in S1 for v in t})
        off = max(self.reds) + 1
        self.S2 = [tuple(sorted(v + off for v in t)) for t in S2]
        self.blues = sorted({v for t in self.S2 for v in t})
        self.colour = {v: RED for v in self.reds} | {v: BLUE for v in self.blues}
        self.rtri = sorted(tuple(sorted(t)) for t in S1)
        self.btri = sorted(self.S2)
        redges = sorted({e for t in self.rtri for e in itertools.combinations(t, 2)})
        bedges = sorted({e for t in self.btri for e in itertools.combinations(t, 2)})
        cands = [tuple(sorted(t + (b,))) for t in self.rtri for b in self.blues]
        cands += [tuple(sorted(t + (r,))) for t in self.btri for r in self.reds]
        cands += [tuple(sorted(e + f)) for e in redges for f in bedges]
        self.faces = {c: list(itertools.combinations(c, 3)) for c in cands}
        self.is_quad = {c: sum(self.colour[v] is RED for v in c) == 2 for c in cands}
        self.by_face: dict = {}
        for c in cands:
            for f in self.faces[c]:
                self.by_face.setdefault(f, []).append(c)
        self.mono = {f for f in self.by_face if len({self.colour[v] for v in f}) == 1}
        self.max_quads = max_quads
        self.count: dict = {}
        self.chosen: list[Tetra] = []
        self.quads = 0

    def _ok(self, c) -> bool:
        if self.is_quad[c] and self.quads >= self.max_quads:
            return False
        for f in self.faces[c]:
            k = self.count.get(f, 0)
            if k >= 2 or (k >= 1 and f in self.mono):
                return False
        return True

    def _open(self):
        for f in itertools.chain(self.rtri, self.btri):
            if self.count.get(f, 0) == 0:
                yield f
        for f, k in self.count.items():
            if k == 1 and f not in self.mono:
                yield f

    def _push(self, c) -> None:
        for f in self.faces[c]:
            self.count[f] = self.count.get(f, 0) + 1
        self.chosen.append(c)
        self.quads += self.is_quad[c]

    def _pop(self) -> None:
        c = self.chosen.pop()
        self.quads -= self.is_quad[c]
        for f in self.faces[c]:
            self.count[f] -= 1

    def run(self, first: list[Tetra]) -> Iterator[list[Tetra]]:
        """Solutions whose tetra on the first red triangle is one of ``first``."""
        for c in first:
            self._push(c)
            yield from self._rec()
            self._pop()

    def _rec(self) -> Iterator[list[Tetra]]:
        best = None
        for f in self._open():
            opts = [c for c in self.by_face[f] if c not in self.chosen and self._ok(c)]
            if best is None or len(opts) < len(best):
                best = opts
                if not opts:
                    return
        if best is None:
            yield list(self.chosen)
            return
        for c in best:
            self._push(c)
            yield from self._rec()
            self._pop()


def sphere_slices(S1, S2, max_quads: int, part: tuple[int, int] | None = None) -> Iterator[Complex3]:
    """Valid sphere-slices with boundaries S1 (red) and S2 (blue), up to max_quads quadrangles.

    Blue vertices are S2's labels shifted past the red ones.  Solutions are
    distinct as tetra sets, but may be isomorphic: only the apex of the
    first red triangle is reduced by the automorphisms of S2.  ``part``
    as ``(i, k)`` keeps the i-th of k slices of the top-level choices.
    """
    search = _Search(S1, S2, max_quads)
    off = max(search.reds) + 1
    autos = _automorphisms(S2)
    t0 = search.rtri[0]
    reps = _orbit_reps(autos, [v - off for v in search.blues])
    first = [tuple(sorted(t0 + (b + off,))) for b in reps]
    if part is not None:
        i, k = part
        first = first[i::k]
    for tetras in search.run(first):
        try:
            K = build_complex3(search.colour, tetras)
        except CausalSliceError:
            continue
        if structural_checks(K, SliceKind.SPHERE).verdict:
            yield K
