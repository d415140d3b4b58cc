"""Isomorph-free enumeration of midsections and of small slices.

Midsections are generated by canonical augmentation.  A disc with n cells
is grown from a disc with n-1 cells by gluing one cell along a path of
consecutive boundary edges; all other vertices of the new cell are fresh.
A child is kept only when its new cell lies in the automorphism orbit of
the child's canonical removable cell, so every isomorphism class is
produced from exactly one parent.

With pruning on, discs failing a condition that passes to sub-discs are
discarded early: (alpha), (beta1) for both colours and (delta).  Every
cell-removal sub-disc of a disc midsection satisfies them.

Sphere members are found on the slice side instead: for every pair of
boundary spheres that fits the cell budget, an exact-cover search lists
the sphere-slices between them (see sphere_search), and their midsections
are deduplicated by canonical code.  The smallest member has 12 cells, far
past the depth the augmentation tree reaches.  Closing discs by one cell
glued along the whole boundary is kept for listing all small spheres,
members or not.

Slices are enumerated independently by gluing tetrahedra one at a time
and deduplicating each level with a 3D canonical code.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator

from .complex3 import (
    Complex3,
    SliceKind,
    build_complex3,
    canonical_code3,
    isomorphic3,
    structural_checks,
)
from .conditions import (
    check_alpha,
    check_beta1,
    check_delta,
    condition_summary,
    membership,
)
from .errors import BudgetExceeded, CausalSliceError
from .midsection import midsection
from .reconstruct import reconstruct_unchecked
from .surface import (
    BLUE,
    RED,
    Cell,
    CellKind,
    SurfaceComplex,
    build_complex,
    extend_complex,
    canonical_code,
    canonical_complex,
    canonical_form,
    encode_code,
    loads_midsection,
)
from .sphere_search import sphere_slices
from .topology2d import edge_key
from .triangulations import spheres_with_triangles

DEFAULT_MAX_CELLS = 9
# the smallest sphere midsection already has 12 cells
DEFAULT_MAX_SPHERE_CELLS = 14
DEFAULT_MAX_TETRAS = 6


class Kind(enum.Enum):
    DISC = "disc"
    SPHERE = "sphere"


@dataclass
class CensusRecord:
    kind: str
    size: int
    codes: list[str] = field(default_factory=list)
    summaries: list[dict] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.codes)

    def to_lines(self) -> str:
        out = []
        for code, summ in zip(self.codes, self.summaries):
            out.append(json.dumps({"code": code, "conditions": summ}, sort_keys=True))
        return "".join(line + "\n" for line in out)


@dataclass(frozen=True)
class EnumConfig:
    kind: Kind
    max_cells: int
    prune: bool = True
    members_only: bool = True
    shards: int = 1
    shard: int | None = None  # None runs every shard
    split_size: int = 3  # subtrees rooted at this size are dealt to shards
    # sphere members come from the boundary-pair search unless this is set
    augment_spheres: bool = False
    budget: int | None = None  # None picks the default for the kind


# ---------------------------------------------------------------------------
# growth moves


def _boundary(D: SurfaceComplex):
    cyc = D.poly.boundary_cycles[0]
    n = len(cyc)
    cols = [D.edge_colour[edge_key(cyc[i], cyc[(i + 1) % n])] for i in range(n)]
    return cyc, cols


def _cell_on(vs, cols) -> Cell | None:
    """Cell with cyclic vertices vs whose leading edges have colours cols."""
    m = len(vs)
    if m == 3:
        if len(set(cols)) != 1:
            return None
        return Cell.red(*vs) if cols[0] is RED else Cell.blue(*vs)
    if any(cols[i] is cols[i + 1] for i in range(len(cols) - 1)):
        return None
    if len(cols) == 4 and cols[3] is cols[0]:
        return None
    if cols[0] is RED:
        return Cell.quad(*vs)
    return Cell.quad(*vs[1:], vs[0])


def grow_disc(D: SurfaceComplex) -> Iterator[SurfaceComplex]:
    """Every disc obtained by gluing one cell along a boundary path."""
    cyc, cols = _boundary(D)
    n = len(cyc)
    fresh = max(D.vertices) + 1
    for m in (3, 4):
        for k in range(1, m):
            if k >= n:
                break
            for i in range(n):
                path = [cyc[(i + j) % n] for j in range(k + 1)]
                pcols = [cols[(i + j) % n] for j in range(k)]
                new = list(range(fresh, fresh + m - k - 1))
                if not new and edge_key(path[0], path[-1]) in D.edge_cells:
                    continue
                vs = path + new
                if m == 3:
                    if len(set(pcols)) != 1:
                        continue
                    cell = Cell.red(*vs) if pcols[0] is RED else Cell.blue(*vs)
                else:
                    cell = _cell_on(vs, pcols)
                    if cell is None:
                        continue
                # fresh vertices and a boundary path keep the result a disc
                C = extend_complex(D, cell)
                if C is not None:
                    yield C


def close_disc(D: SurfaceComplex, quads_only: bool) -> Iterator[SurfaceComplex]:
    """Spheres obtained by capping the boundary of D with one cell."""
    cyc, cols = _boundary(D)
    if len(cyc) == 3:
        if quads_only or len(set(cols)) != 1:
            return
        cell = Cell.red(*cyc) if cols[0] is RED else Cell.blue(*cyc)
    elif len(cyc) == 4:
        cell = _cell_on(list(cyc), cols)
        if cell is None:
            return
    else:
        return
    try:
        S = build_complex(D.cells + (cell,))
    except CausalSliceError:
        return
    if S.is_sphere:
        yield S


# ---------------------------------------------------------------------------
# canonical parent test


def _removable_in_disc(C: SurfaceComplex) -> list[int]:
    """Cells whose removal is the reverse of a growth move."""
    if len(C.cells) < 2:
        return []
    count: dict[int, int] = defaultdict(int)
    for cell in C.cells:
        for v in cell.vertices:
            count[v] += 1
    bverts = {v for e, fs in C.edge_cells.items() if len(fs) == 1 for v in e}
    out = []
    for i, cell in enumerate(C.cells):
        vs = cell.vertices
        m = len(vs)
        inner = [len(C.edge_cells[edge_key(vs[j], vs[(j + 1) % m])]) == 2 for j in range(m)]
        k = sum(inner)
        if k == 0 or k == m:
            continue
        # rotate so the run of interior edges starts at position 0
        s = next(j for j in range(m) if inner[j] and not inner[j - 1])
        if not all(inner[(s + j) % m] for j in range(k)):
            continue
        path = [vs[(s + j) % m] for j in range(k + 1)]
        others = [v for v in vs if v not in path]
        if any(count[v] != 1 for v in others):
            continue
        if any(v in bverts for v in path[1:-1]):
            continue
        out.append(i)
    return out


def _cell_rank(cell: Cell, lab) -> tuple:
    return (cell.kind.value, tuple(sorted(lab[v] for v in cell.vertices)))


def _cell_invariant(C: SurfaceComplex, i: int, deg) -> tuple:
    cell = C.cells[i]
    inner = sum(len(C.edge_cells[e]) == 2 for e, _ in cell.edge_colours())
    return (cell.kind.value, inner, tuple(sorted(deg[v] for v in cell.vertices)))


def canonical_parent_ok(C: SurfaceComplex, new: int, removable: list[int]):
    """Return the canonical code of C if cell ``new`` is its canonical removal, else None.

    The canonical removal is, among removable cells of least invariant, the
    one with least canonical labels; ``new`` qualifies when some canonical
    labelling gives it those labels, i.e. when it lies in that cell's orbit.
    """
    deg: dict[int, int] = defaultdict(int)
    for cell in C.cells:
        for v in cell.vertices:
            deg[v] += 1
    inv = {i: _cell_invariant(C, i, deg) for i in removable}
    low = min(inv.values())
    if inv[new] != low:
        return None
    code, labs = canonical_form(C, all_labellings=True)
    lab0 = labs[0]
    best = min(_cell_rank(C.cells[i], lab0) for i in removable if inv[i] == low)
    cell = C.cells[new]
    if any(_cell_rank(cell, lab) == best for lab in labs):
        return encode_code(code)
    return None


def _hereditary_ok(D: SurfaceComplex) -> bool:
    return (
        check_alpha(D).verdict
        and check_beta1(D, RED).verdict
        and check_beta1(D, BLUE).verdict
        and check_delta(D).verdict
    )


# ---------------------------------------------------------------------------
# midsection enumeration


def _seeds() -> list[SurfaceComplex]:
    return [
        build_complex([Cell.red(0, 1, 2)]),
        build_complex([Cell.blue(0, 1, 2)]),
        build_complex([Cell.quad(0, 1, 2, 3)]),
    ]


def _disc_tree(cfg: EnumConfig, max_disc: int) -> Iterator[tuple[SurfaceComplex, bytes]]:
    """Depth-first walk over the (pruned) disc tree, restricted to the shard."""
    counter = [0]

    def mine_at_split() -> bool:
        k = counter[0]
        counter[0] += 1
        return cfg.shard is None or k % cfg.shards == cfg.shard

    def visit(D, code):
        n = len(D.cells)
        if n == cfg.split_size and not mine_at_split():
            return
        if n < cfg.split_size and cfg.shard not in (None, 0):
            pass  # small discs are reported by shard 0 only
        else:
            yield D, code
        if n >= max_disc:
            return
        seen = set()
        for C in grow_disc(D):
            new = len(C.cells) - 1
            rem = _removable_in_disc(C)
            if new not in rem:
                continue
            c_code = canonical_parent_ok(C, new, rem)
            if c_code is None or c_code in seen:
                continue
            seen.add(c_code)
            if cfg.prune and not _hereditary_ok(C):
                continue
            yield from visit(C, c_code)

    for D in _seeds():
        if cfg.prune and not _hereditary_ok(D):
            continue
        yield from visit(D, canonical_code(D))


def default_budget(kind: Kind) -> int:
    return DEFAULT_MAX_SPHERE_CELLS if kind is Kind.SPHERE else DEFAULT_MAX_CELLS


def _check_budget(cfg: EnumConfig) -> None:
    budget = default_budget(cfg.kind) if cfg.budget is None else cfg.budget
    if cfg.max_cells > budget:
        raise BudgetExceeded(f"max_cells {cfg.max_cells} exceeds the budget {budget}")


def iter_midsections(cfg: EnumConfig) -> Iterator[tuple[SurfaceComplex, bytes]]:
    """Yield ``(S, code)`` for every generated complex of the requested kind.

    With ``members_only`` only membership-passing complexes are yielded.
    """
    _check_budget(cfg)
    if cfg.kind is Kind.DISC:
        for D, code in _disc_tree(cfg, cfg.max_cells):
            if not cfg.members_only or membership(D, "disc").verdict:
                yield D, code
        return
    if cfg.members_only and not cfg.augment_spheres:
        for S, code, _ in sphere_members(cfg):
            yield S, code
        return
    for D, _ in _disc_tree(cfg, cfg.max_cells - 1):
        seen = set()
        for S in close_disc(D, quads_only=cfg.prune):
            new = len(S.cells) - 1
            rem = [
                i for i, c in enumerate(S.cells) if c.kind is CellKind.QUAD or not cfg.prune
            ]
            code = canonical_parent_ok(S, new, rem)
            if code is None or code in seen:
                continue
            seen.add(code)
            if not cfg.members_only or membership(S, "sphere").verdict:
                yield S, code


def boundary_pairs(max_cells: int) -> list[tuple[tuple, tuple, int]]:
    """(S1, S2, quad budget) for every pair of boundary spheres that fits in max_cells."""
    out = []
    for n1 in range(4, max_cells + 1, 2):
        for n2 in range(4, max_cells - n1 + 1, 2):
            for S1 in spheres_with_triangles(n1):
                for S2 in spheres_with_triangles(n2):
                    out.append((S1, S2, max_cells - n1 - n2))
    return out


def sphere_members(cfg: EnumConfig) -> Iterator[tuple[SurfaceComplex, bytes, Complex3]]:
    """Sphere midsection members up to cfg.max_cells with one slice for each.

    A member with n cells is the midsection of a sphere-slice whose red
    and blue boundaries have as many triangles as it has red and blue
    triangles, so searching all boundary pairs is complete.  Every shard
    takes its share of the top-level choices of every pair.
    """
    _check_budget(cfg)
    part = None if cfg.shard is None else (cfg.shard, cfg.shards)
    seen = set()
    for S1, S2, q in boundary_pairs(cfg.max_cells):
        for K in sphere_slices(S1, S2, q, part=part):
            S, _ = midsection(K, SliceKind.SPHERE, check=False)
            code = canonical_code(S)
            if code in seen:
                continue
            seen.add(code)
            if membership(S, "sphere").verdict:
                yield canonical_complex(S), code, K


def _run_shard(cfg: EnumConfig) -> dict[int, list[tuple[str, dict]]]:
    out: dict[int, list] = defaultdict(list)
    for S, code in iter_midsections(cfg):
        out[len(S.cells)].append((code.decode(), condition_summary(S)))
    return out


def enumerate_midsections(
    kind: Kind | str,
    max_cells: int,
    prune: bool = True,
    members_only: bool = True,
    shards: int = 1,
    jobs: int = 1,
    budget: int | None = None,
) -> dict[int, CensusRecord]:
    """Census records by cell count, sizes 1..max_cells."""
    kind = Kind(kind)
    base = EnumConfig(kind, max_cells, prune, members_only, shards, None, budget=budget)
    _check_budget(base)
    cfgs = [
        EnumConfig(kind, max_cells, prune, members_only, shards, i, budget=budget)
        for i in range(shards)
    ]
    if jobs > 1 and shards > 1:
        with Pool(jobs) as pool:
            parts = pool.map(_run_shard, cfgs)
    else:
        parts = [_run_shard(c) for c in cfgs]
    return merge_shards(kind.value, max_cells, parts)


def merge_shards(kind: str, max_size: int, parts) -> dict[int, CensusRecord]:
    records = {n: CensusRecord(kind, n) for n in range(1, max_size + 1)}
    for n in records:
        # shards of the sphere search may meet the same class
        rows = sorted({row[0]: row for part in parts for row in part.get(n, ())}.values())
        for code, summ in rows:
            records[n].codes.append(code)
            records[n].summaries.append(summ)
    return records


def decode_midsection(code: str) -> SurfaceComplex:
    """Rebuild a complex from its canonical code string."""
    kinds = {"R": "red", "B": "blue", "Q": "quad", "q": "quad"}
    cells = []
    for item in code.split("|"):
        tag, rest = item[0], item[1:]
        vs = [int(x) for x in rest.split(".")]
        if tag == "q":
            vs = vs[1:] + vs[:1]  # first edge was blue
        cells.append({"kind": kinds[tag], "vertices": vs})
    return loads_midsection(json.dumps({"format": "midsection/1", "cells": cells}))


# ---------------------------------------------------------------------------
# brute-force slice enumeration


def _seed_tetras() -> list[Complex3]:
    out = []
    for reds in (3, 2, 1):
        colour = {i: (RED if i < reds else BLUE) for i in range(4)}
        out.append(build_complex3(colour, [(0, 1, 2, 3)]))
    return out


def _grow_slice(M: Complex3) -> Iterator[Complex3]:
    fresh = max(M.colour) + 1
    tets = set(M.tetras)
    for f in M.boundary_triangles:
        if M.mono(f) is not None:
            continue  # a monochromatic triangle must stay on the boundary
        apexes = [(v, M.colour[v]) for v in M.vertices if v not in f]
        apexes += [(fresh, RED), (fresh, BLUE)]
        for a, col in apexes:
            t = tuple(sorted(f + (a,)))
            if t in tets:
                continue
            colour = dict(M.colour)
            colour[a] = col
            shared = [g for g in itertools.combinations(t, 3) if g in M.triangle_tetras]
            if any(len(M.triangle_tetras[g]) >= 2 or M.mono(g) is not None for g in shared):
                continue
            try:
                yield build_complex3(colour, M.tetras + (t,))
            except CausalSliceError:
                continue


def _mono_interior_triangle(M: Complex3) -> bool:
    return any(len(ts) == 2 and M.mono(f) is not None for f, ts in M.triangle_tetras.items())


def enumerate_slices_bruteforce(
    kind: Kind | str, max_tetras: int, budget: int = DEFAULT_MAX_TETRAS
) -> dict[int, CensusRecord]:
    """Valid slices by tetrahedron count, from direct gluing search.

    Only the structural slice checks filter the result; the midsection
    round trip is not consulted.
    """
    kind = Kind(kind)
    if max_tetras > budget:
        raise BudgetExceeded(f"max_tetras {max_tetras} exceeds the budget {budget}")
    skind = SliceKind(kind.value)
    records = {n: CensusRecord(f"{kind.value}-slice", n) for n in range(1, max_tetras + 1)}
    level = {canonical_code3(M): M for M in _seed_tetras()}
    for n in range(1, max_tetras + 1):
        for code in sorted(level):
            M = level[code]
            if structural_checks(M, skind).verdict:
                records[n].codes.append(code.decode())
                records[n].summaries.append(M.counts())
        if n == max_tetras:
            break
        nxt: dict[bytes, Complex3] = {}
        for code in sorted(level):
            for C in _grow_slice(level[code]):
                if _mono_interior_triangle(C):
                    continue
                c = canonical_code3(C)
                if c not in nxt:
                    nxt[c] = C
        level = nxt
    return records


def iter_slices(kind: Kind | str, max_tetras: int) -> Iterator[Complex3]:
    """The slices counted by :func:`enumerate_slices_bruteforce`, as complexes."""
    kind = Kind(kind)
    skind = SliceKind(kind.value)
    level = {canonical_code3(M): M for M in _seed_tetras()}
    for n in range(1, max_tetras + 1):
        for code in sorted(level):
            if structural_checks(level[code], skind).verdict:
                yield level[code]
        if n == max_tetras:
            return
        nxt: dict[bytes, Complex3] = {}
        for code in sorted(level):
            for C in _grow_slice(level[code]):
                if not _mono_interior_triangle(C):
                    nxt.setdefault(canonical_code3(C), C)
        level = nxt


# ---------------------------------------------------------------------------
# round trips


@dataclass
class RoundTripReport:
    kind: str
    midsections_checked: int = 0
    slices_checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "midsections_checked": self.midsections_checked,
            "slices_checked": self.slices_checked,
            "failures": self.failures,
        }


def roundtrip_midsection(S: SurfaceComplex) -> str | None:
    """None if S -> slice -> midsection returns S, else a failure message."""
    try:
        K = reconstruct_unchecked(S)
        back, _ = midsection(K)
    except CausalSliceError as exc:
        return f"{type(exc).__name__}: {exc}"
    if canonical_code(back) != canonical_code(S):
        return "midsection of the reconstruction differs"
    return None


def roundtrip_slice(K: Complex3) -> str | None:
    try:
        S, _ = midsection(K)
        back = reconstruct_unchecked(S)
    except CausalSliceError as exc:
        return f"{type(exc).__name__}: {exc}"
    if not isomorphic3(back, K):
        return "reconstruction of the midsection differs"
    return None


def _roundtrip_shard(args) -> tuple[set[bytes], set[bytes], list[dict]]:
    cfg, min_cells = args
    checked: set[bytes] = set()
    slices: set[bytes] = set()
    failures = []
    if cfg.kind is Kind.SPHERE:
        for S, code, K in sphere_members(cfg):
            if len(S.cells) < min_cells:
                continue
            checked.add(code)
            slices.add(code)
            for key, err in (("midsection", roundtrip_midsection(S)), ("slice", roundtrip_slice(K))):
                if err:
                    failures.append({key: code.decode(), "error": err})
    else:
        for S, code in iter_midsections(cfg):
            if len(S.cells) < min_cells:
                continue
            checked.add(code)
            err = roundtrip_midsection(S)
            if err:
                failures.append({"midsection": code.decode(), "error": err})
    return checked, slices, failures


def roundtrip_report(
    kind: Kind | str,
    max_cells: int,
    min_cells: int = 1,
    max_tetras: int = 0,
    budget: int | None = None,
    jobs: int = 1,
) -> RoundTripReport:
    """Round trips over the midsection census and, optionally, brute-force slices.

    For spheres the slice found for each census member is round-tripped too.
    With ``jobs > 1`` the census is split into that many shards.
    """
    kind = Kind(kind)
    rep = RoundTripReport(kind.value)
    if max_cells >= min_cells:
        _check_budget(EnumConfig(kind, max_cells, budget=budget))
        shards = max(jobs, 1)
        tasks = [
            (EnumConfig(kind, max_cells, shards=shards, shard=i if shards > 1 else None, budget=budget), min_cells)
            for i in range(shards)
        ]
        if shards > 1:
            with Pool(jobs) as pool:
                parts = pool.map(_roundtrip_shard, tasks)
        else:
            parts = [_roundtrip_shard(tasks[0])]
        # sphere shards can meet the same class, so count distinct codes
        rep.midsections_checked = len(set().union(*(p[0] for p in parts)))
        rep.slices_checked = len(set().union(*(p[1] for p in parts)))
        seen = set()
        for _, _, fails in parts:
            for f in fails:
                key = json.dumps(f, sort_keys=True)
                if key not in seen:
                    seen.add(key)
                    rep.failures.append(f)
        rep.failures.sort(key=lambda f: json.dumps(f, sort_keys=True))
    if max_tetras:
        for K in iter_slices(kind, max_tetras):
            rep.slices_checked += 1
            err = roundtrip_slice(K)
            if err:
                rep.failures.append({"slice": canonical_code3(K).decode(), "error": err})
    return rep


# ---------------------------------------------------------------------------
# census directories


def write_census(records: dict[int, CensusRecord], outdir: str | Path, kind: str) -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for n, rec in sorted(records.items()):
        (out / f"{kind}-{n:02d}.jsonl").write_text(rec.to_lines())
    counts = {str(n): rec.count for n, rec in sorted(records.items())}
    (out / "counts.json").write_text(json.dumps({"kind": kind, "counts": counts}, indent=1) + "\n")
    (out / "counts.txt").write_text(counts_table(kind, {n: r.count for n, r in records.items()}))


def counts_table(kind: str, counts: dict[int, int]) -> str:
    rows = [("size", kind)] + [(str(n), str(c)) for n, c in sorted(counts.items())]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    return "".join(f"{a:>{w0}}  {b:>{w1}}\n" for a, b in rows)


def read_census(indir: str | Path) -> tuple[str, dict[int, int]]:
    data = json.loads((Path(indir) / "counts.json").read_text())
    return data["kind"], {int(n): c for n, c in data["counts"].items()}
