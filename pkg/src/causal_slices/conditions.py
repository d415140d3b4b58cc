"""Decision procedures for the midsection conditions.

Condition names used in reports:

``alpha``      no two vertices joined by both a red and a blue path
``beta1``      (disc) a closed c-path encloses only c-triangles
``beta2``      (disc) c-paths between different arcs of the other colour
               only join the two ends of a c-arc
``beta``       (sphere) closed c-paths bound a region of c-triangles
``gamma``      disjoint c-edges with paired-up endpoints lie in one
               quadrangle chain
``delta``      no two c-triangles with vertices matched by other-colour paths

The beta checks use reachability in the dual graph instead of cycle
enumeration; :mod:`causal_slices.oracles` cross-checks them.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Any

from .errors import NoArcs, NotADisc, NotASphere
from .surface import (
    BLUE,
    RED,
    CellKind,
    Colour,
    SurfaceComplex,
    arc_membership,
    boundary_arcs,
    chain_index,
    quad_chains,
)


class MidsectionKind(enum.Enum):
    DISC = "disc"
    SPHERE = "sphere"


@dataclass
class ConditionReport:
    condition: str
    verdict: bool
    witness: Any = None
    parts: list["ConditionReport"] = field(default_factory=list)

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        out = {"condition": self.condition, "verdict": self.verdict, "witness": self.witness}
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out


def _name(base: str, c: Colour | None) -> str:
    return base if c is None else f"{base}_{c.value}"


def check_alpha(S: SurfaceComplex) -> ConditionReport:
    red, blue = S.component_of(RED), S.component_of(BLUE)
    seen: dict[tuple[int, int], int] = {}
    bad = []
    for v in S.vertices:
        key = (red[v], blue[v])
        if key in seen:
            bad.append((seen[key], v))
        else:
            seen[key] = v
    if not bad:
        return ConditionReport("alpha", True)
    return ConditionReport("alpha", False, {"vertices": list(min(bad))})


def _non_c_reach(S: SurfaceComplex, c: Colour, starts) -> set[int]:
    """Cells reachable from ``starts`` crossing only interior edges not of colour c."""
    seen = set(starts)
    queue = deque(starts)
    cells = S.cells
    ef = S.edge_cells
    while queue:
        i = queue.popleft()
        for e, col in cells[i].edge_colours():
            if col is c:
                continue
            for j in ef[e]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    return seen


def _cut_edges(S: SurfaceComplex, comp: set[int]) -> list:
    cut = set()
    for i in comp:
        for e, _ in S.cells[i].edge_colours():
            if any(j not in comp for j in S.edge_cells[e]) or S.is_boundary(e):
                cut.add(e)
    return sorted(cut)


def _is_c_triangle(cell, c: Colour) -> bool:
    return cell.triangle_colour() is c


def check_beta1(S: SurfaceComplex, c: Colour) -> ConditionReport:
    if not S.is_disc:
        raise NotADisc("beta1 is defined on discs")
    starts = [
        i
        for i, cell in enumerate(S.cells)
        if any(col is not c and S.is_boundary(e) for e, col in cell.edge_colours())
    ]
    reach = _non_c_reach(S, c, starts)
    stuck = [i for i, cell in enumerate(S.cells) if i not in reach and not _is_c_triangle(cell, c)]
    if not stuck:
        return ConditionReport(_name("beta1", c), True)
    i = stuck[0]
    comp = _non_c_reach(S, c, [i])
    return ConditionReport(
        _name("beta1", c),
        False,
        {"cell": i, "cut": [list(e) for e in _cut_edges(S, comp)]},
    )


def check_beta2(S: SurfaceComplex) -> ConditionReport:
    if not S.is_disc:
        raise NotADisc("beta2 is defined on discs")
    arcs = boundary_arcs(S)
    if len(arcs.arcs) == 1:
        raise NoArcs(f"boundary is entirely {arcs.arcs[0].colour.value}")
    member = arc_membership(arcs)
    for c in (RED, BLUE):
        exempt = {frozenset(a.endpoints) for a in arcs.of_colour(c)}
        # vertex -> index of the other-colour arc containing it
        other_arc = {}
        for v, ks in member.items():
            for k in ks:
                if arcs.arcs[k].colour is c.other:
                    other_arc[v] = k
        comp = S.component_of(c)
        groups: dict[int, list[int]] = defaultdict(list)
        for v in sorted(other_arc):
            groups[comp[v]].append(v)
        bad = []
        for vs in groups.values():
            for u, v in itertools.combinations(vs, 2):
                if other_arc[u] != other_arc[v] and frozenset((u, v)) not in exempt:
                    bad.append((u, v))
        if bad:
            u, v = min(bad)
            return ConditionReport(
                "beta2",
                False,
                {
                    "path_colour": c.value,
                    "vertices": [u, v],
                    "arcs": [list(arcs.arcs[other_arc[u]].vertices), list(arcs.arcs[other_arc[v]].vertices)],
                },
            )
    return ConditionReport("beta2", True)


def check_beta_sphere(S: SurfaceComplex, c: Colour) -> ConditionReport:
    if not S.is_sphere:
        raise NotASphere("beta is defined on spheres")
    pending = [i for i, cell in enumerate(S.cells) if not _is_c_triangle(cell, c)]
    comps = []
    left = set(pending)
    for i in pending:
        if i in left:
            comp = _non_c_reach(S, c, [i])
            comps.append(comp)
            left -= comp
    if len(comps) <= 1:
        return ConditionReport(_name("beta", c), True)
    a, b = min(comps[0]), min(comps[1])
    return ConditionReport(
        _name("beta", c),
        False,
        {"cells": [a, b], "cut": [list(e) for e in _cut_edges(S, comps[0])]},
    )


def check_gamma(S: SurfaceComplex) -> ConditionReport:
    for c in (BLUE, RED):
        chains = quad_chains(S, c)
        where = chain_index(chains)
        conn = S.component_of(c.other)
        edges = S.edges_of(c)
        for (a, b), (x, y) in itertools.combinations(edges, 2):
            if len({a, b, x, y}) < 4:
                continue
            paired = (conn[a] == conn[x] and conn[b] == conn[y]) or (
                conn[a] == conn[y] and conn[b] == conn[x]
            )
            if paired and where[(a, b)] != where[(x, y)]:
                return ConditionReport(
                    "gamma", False, {"edge_colour": c.value, "edges": [[a, b], [x, y]]}
                )
    return ConditionReport("gamma", True)


def check_delta(S: SurfaceComplex) -> ConditionReport:
    for kind, c in ((CellKind.RED, RED), (CellKind.BLUE, BLUE)):
        conn = S.component_of(c.other)
        sig: dict[tuple, int] = {}
        for i, cell in enumerate(S.cells):
            if cell.kind is not kind:
                continue
            key = tuple(sorted(conn[v] for v in cell.vertices))
            if key in sig:
                return ConditionReport(
                    "delta", False, {"triangle_colour": c.value, "cells": [sig[key], i]}
                )
            sig[key] = i
    return ConditionReport("delta", True)


def membership(S: SurfaceComplex, kind: MidsectionKind | str) -> ConditionReport:
    """All conditions for the requested class; stops at the first failure."""
    kind = MidsectionKind(kind)
    name = f"membership_{kind.value}"
    parts: list[ConditionReport] = []

    def fail():
        return ConditionReport(name, False, parts[-1].to_dict(), parts)

    topo = S.topology
    parts.append(ConditionReport("topology", topo.kind == kind.value, {"kind": topo.kind, "euler": topo.euler}))
    if not parts[-1]:
        return fail()
    need = 1 if kind is MidsectionKind.DISC else 4
    nred, nblue = S.count(CellKind.RED), S.count(CellKind.BLUE)
    parts.append(ConditionReport("triangles", nred >= need and nblue >= need, {"red": nred, "blue": nblue}))
    if not parts[-1]:
        return fail()
    parts.append(check_alpha(S))
    if not parts[-1]:
        return fail()
    for c in (RED, BLUE):
        parts.append(check_beta1(S, c) if kind is MidsectionKind.DISC else check_beta_sphere(S, c))
        if not parts[-1]:
            return fail()
    if kind is MidsectionKind.DISC:
        try:
            parts.append(check_beta2(S))
        except NoArcs as exc:
            parts.append(ConditionReport("beta2", False, {"reason": str(exc)}))
        if not parts[-1]:
            return fail()
    parts.append(check_gamma(S))
    if not parts[-1]:
        return fail()
    return ConditionReport(name, True, None, parts)


def is_member(S: SurfaceComplex, kind) -> bool:
    return membership(S, kind).verdict


def condition_summary(S: SurfaceComplex) -> dict[str, bool]:
    """Every applicable condition evaluated independently (no short-circuit)."""
    out = {"alpha": check_alpha(S).verdict}
    if S.is_disc:
        out["beta1_red"] = check_beta1(S, RED).verdict
        out["beta1_blue"] = check_beta1(S, BLUE).verdict
        try:
            out["beta2"] = check_beta2(S).verdict
        except NoArcs:
            out["beta2"] = False
    elif S.is_sphere:
        out["beta_red"] = check_beta_sphere(S, RED).verdict
        out["beta_blue"] = check_beta_sphere(S, BLUE).verdict
    out["gamma"] = check_gamma(S).verdict
    out["delta"] = check_delta(S).verdict
    return out
