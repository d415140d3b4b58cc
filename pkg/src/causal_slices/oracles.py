"""Brute-force versions of the midsection conditions.

These enumerate simple monochromatic paths and cycles explicitly and scan
the regions cut out by each cycle.  They are exponential and exist only to
cross-check :mod:`causal_slices.conditions` on small complexes.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .conditions import ConditionReport
from .errors import BudgetExceeded, NoArcs
from .surface import BLUE, RED, CellKind, Colour, SurfaceComplex, arc_membership, boundary_arcs
from .topology2d import edge_key

DEFAULT_BUDGET = 12


def _adjacency(S: SurfaceComplex, c: Colour) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in S.edges_of(c):
        adj[u].append(v)
        adj[v].append(u)
    return adj


def has_simple_path(adj, u, v) -> bool:
    """Depth-first search over simple paths from u; True once one reaches v."""
    if u == v:
        return True
    stack = [(u, (u,))]
    while stack:
        x, path = stack.pop()
        for y in adj.get(x, ()):
            if y == v:
                return True
            if y not in path:
                stack.append((y, path + (y,)))
    return False


def simple_cycles(adj) -> list[tuple[int, ...]]:
    """All simple cycles (length >= 3) of an undirected simple graph, each once."""
    out = []
    for s in sorted(adj):
        stack = [(s, (s,))]
        while stack:
            x, path = stack.pop()
            for y in adj[x]:
                if y == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(path)
                elif y > s and y not in path:
                    stack.append((y, path + (y,)))
    return out


def _regions(S: SurfaceComplex, cut: set) -> list[set[int]]:
    """Cells grouped by adjacency across edges not in ``cut``."""
    comps = []
    left = set(range(len(S.cells)))
    while left:
        i = min(left)
        comp = {i}
        todo = [i]
        while todo:
            j = todo.pop()
            for e, _ in S.cells[j].edge_colours():
                if e in cut:
                    continue
                for k in S.edge_cells[e]:
                    if k not in comp:
                        comp.add(k)
                        todo.append(k)
        comps.append(comp)
        left -= comp
    return comps


def _cycle_edges(cyc) -> set:
    n = len(cyc)
    return {edge_key(cyc[i], cyc[(i + 1) % n]) for i in range(n)}


def oracle_alpha(S: SurfaceComplex) -> ConditionReport:
    red, blue = _adjacency(S, RED), _adjacency(S, BLUE)
    for u, v in itertools.combinations(S.vertices, 2):
        if has_simple_path(red, u, v) and has_simple_path(blue, u, v):
            return ConditionReport("alpha", False, {"vertices": [u, v]})
    return ConditionReport("alpha", True)


def oracle_beta1(S: SurfaceComplex, c: Colour) -> ConditionReport:
    name = f"beta1_{c.value}"
    boundary = {e for e in S.edges if S.is_boundary(e)}
    for cyc in simple_cycles(_adjacency(S, c)):
        cut = _cycle_edges(cyc)
        for comp in _regions(S, cut):
            touches = any(
                e in boundary and e not in cut
                for i in comp
                for e, _ in S.cells[i].edge_colours()
            )
            if touches:
                continue
            bad = [i for i in comp if S.cells[i].triangle_colour() is not c]
            if bad:
                return ConditionReport(name, False, {"cycle": list(cyc), "cell": min(bad)})
    return ConditionReport(name, True)


def oracle_beta_sphere(S: SurfaceComplex, c: Colour) -> ConditionReport:
    name = f"beta_{c.value}"
    for cyc in simple_cycles(_adjacency(S, c)):
        comps = _regions(S, _cycle_edges(cyc))
        mono = [all(S.cells[i].triangle_colour() is c for i in comp) for comp in comps]
        if len(comps) != 2 or not any(mono):
            return ConditionReport(name, False, {"cycle": list(cyc)})
    return ConditionReport(name, True)


def oracle_beta2(S: SurfaceComplex) -> ConditionReport:
    arcs = boundary_arcs(S)
    if len(arcs.arcs) == 1:
        raise NoArcs("monochromatic boundary")
    member = arc_membership(arcs)
    for c in (RED, BLUE):
        adj = _adjacency(S, c)
        ends = {frozenset(a.endpoints) for a in arcs.of_colour(c)}
        on_other = {
            v: {k for k in ks if arcs.arcs[k].colour is c.other} for v, ks in member.items()
        }
        for u, v in itertools.combinations(sorted(member), 2):
            if not on_other[u] or not on_other[v]:
                continue
            if not any(p != q for p in on_other[u] for q in on_other[v]):
                continue
            if frozenset((u, v)) in ends:
                continue
            if has_simple_path(adj, u, v):
                return ConditionReport("beta2", False, {"path_colour": c.value, "vertices": [u, v]})
    return ConditionReport("beta2", True)


def _quad_path_exists(S: SurfaceComplex, c: Colour, e, f) -> bool:
    """Search sequences of quadrangles consecutively sharing c-edges from e to f."""
    through: dict = defaultdict(list)  # c-edge -> (quad, opposite c-edge)
    for i, cell in enumerate(S.cells):
        if cell.kind is CellKind.QUAD:
            es = [x for x, col in cell.edge_colours() if col is c]
            through[es[0]].append((i, es[1]))
            through[es[1]].append((i, es[0]))
    stack = [(e, ())]
    while stack:
        x, used = stack.pop()
        for q, y in through[x]:
            if q in used:
                continue
            if y == f:
                return True
            stack.append((y, used + (q,)))
    return False


def oracle_gamma(S: SurfaceComplex) -> ConditionReport:
    for c in (BLUE, RED):
        adj = _adjacency(S, c.other)
        for (a, b), (x, y) in itertools.combinations(S.edges_of(c), 2):
            if len({a, b, x, y}) < 4:
                continue
            paired = (has_simple_path(adj, a, x) and has_simple_path(adj, b, y)) or (
                has_simple_path(adj, a, y) and has_simple_path(adj, b, x)
            )
            if paired and not _quad_path_exists(S, c, (a, b), (x, y)):
                return ConditionReport("gamma", False, {"edge_colour": c.value, "edges": [[a, b], [x, y]]})
    return ConditionReport("gamma", True)


def oracle_delta(S: SurfaceComplex) -> ConditionReport:
    for kind, c in ((CellKind.RED, RED), (CellKind.BLUE, BLUE)):
        adj = _adjacency(S, c.other)
        tris = [cell.vertices for cell in S.cells if cell.kind is kind]
        for t1, t2 in itertools.combinations(tris, 2):
            for perm in itertools.permutations(t2):
                if all(has_simple_path(adj, a, b) for a, b in zip(t1, perm)):
                    return ConditionReport("delta", False, {"triangles": [list(t1), list(t2)]})
    return ConditionReport("delta", True)


def oracle_conditions(S: SurfaceComplex, budget: int = DEFAULT_BUDGET) -> dict[str, ConditionReport]:
    """Brute-force verdicts, keyed like :func:`conditions.condition_summary`."""
    if len(S.cells) > budget:
        raise BudgetExceeded(f"{len(S.cells)} cells exceed the oracle budget of {budget}")
    out = {"alpha": oracle_alpha(S)}
    if S.is_disc:
        out["beta1_red"] = oracle_beta1(S, RED)
        out["beta1_blue"] = oracle_beta1(S, BLUE)
        try:
            out["beta2"] = oracle_beta2(S)
        except NoArcs:
            out["beta2"] = ConditionReport("beta2", False, {"reason": "monochromatic boundary"})
    elif S.is_sphere:
        out["beta_red"] = oracle_beta_sphere(S, RED)
        out["beta_blue"] = oracle_beta_sphere(S, BLUE)
    out["gamma"] = oracle_gamma(S)
    out["delta"] = oracle_delta(S)
    return out
