"""End-to-end acceptance checks, one test per criterion.

Each test carries ``@pytest.mark.criterion(n, title)``; the hooks in
conftest.py print one PASS/FAIL line per criterion after the run.
"""

import random
import time

import pytest

from causal_slices.census import (
    EnumConfig,
    Kind,
    enumerate_midsections,
    enumerate_slices_bruteforce,
    iter_midsections,
    roundtrip_report,
    sphere_members,
)
from causal_slices.complex3 import boundary_split, euler3, isomorphic3, validate_slice
from causal_slices.conditions import check_delta, condition_summary, membership
from causal_slices.midsection import midsection
from causal_slices.oracles import oracle_conditions
from causal_slices.reconstruct import build_disc_slice, build_sphere_slice, cut_to_disc, reconstruct
from causal_slices.sides import side_census
from causal_slices.surface import BLUE, RED, boundary_arcs, canonical_code, quad_chains
from causal_slices.triangulations import random_disc, random_sphere, triangulation_code

DISC_CELLS = 7
SPHERE_CELLS = 14  # two smallest occupied sizes are 12 and 13
SMALL = 7  # every complex up to this size goes through the oracles


@pytest.fixture(scope="session")
def disc_members():
    return [S for S, _ in iter_midsections(EnumConfig(Kind.DISC, DISC_CELLS))]


@pytest.fixture(scope="session")
def sphere_census():
    return [S for S, _, _ in sphere_members(EnumConfig(Kind.SPHERE, SPHERE_CELLS))]


@pytest.fixture(scope="session")
def small_complexes():
    """(S, fast verdicts, oracle verdicts) for every disc and sphere with <= SMALL cells."""
    out = []
    for kind in (Kind.DISC, Kind.SPHERE):
        cfg = EnumConfig(kind, SMALL, prune=False, members_only=False, augment_spheres=True)
        for S, _ in iter_midsections(cfg):
            oracle = {k: r.verdict for k, r in oracle_conditions(S).items()}
            out.append((S, condition_summary(S), oracle))
    return out


@pytest.mark.criterion(1, "prism fixture")
def test_prism(prism, chain):
    t0 = time.perf_counter()
    assert validate_slice(prism, "disc").verdict
    S, _ = midsection(prism)
    assert canonical_code(S) == canonical_code(chain)
    K = reconstruct(S)
    assert isomorphic3(K, prism)
    assert K.counts() == {"vertices": 6, "edges": 12, "triangles": 10, "tetrahedra": 3}
    assert euler3(K) == 1
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(2, "side census")
def test_side_census():
    t0 = time.perf_counter()
    classes = side_census()
    assert time.perf_counter() - t0 < 1.0
    assert len(classes) == 3


@pytest.mark.slow
@pytest.mark.criterion(3, "bijection at desk scale")
def test_bijection():
    slices = enumerate_slices_bruteforce("disc", 5)
    mids = enumerate_midsections("disc", 5)
    for n in range(1, 6):
        assert slices[n].count == mids[n].count, n
    disc = roundtrip_report("disc", DISC_CELLS)
    assert disc.ok, disc.failures
    assert disc.midsections_checked == 1453
    sphere = roundtrip_report("sphere", 13)
    assert sphere.ok, sphere.failures
    assert sphere.midsections_checked == sphere.slices_checked == 6


@pytest.mark.slow
@pytest.mark.criterion(4, "member invariants")
def test_member_invariants(disc_members, sphere_census):
    assert len(disc_members) == 1453 and len(sphere_census) == 26
    for S in disc_members + sphere_census:
        assert check_delta(S).verdict
        for c in (RED, BLUE):
            assert not any(ch.closed for ch in quad_chains(S, c))
    for S in disc_members:
        arcs = boundary_arcs(S).arcs
        cols = [a.colour for a in arcs]
        assert RED in cols and BLUE in cols
        assert all(cols[i] is not cols[(i + 1) % len(cols)] for i in range(len(cols)))


@pytest.mark.slow
@pytest.mark.criterion(5, "gamma is independent of the other conditions")
def test_gamma_witness(small_complexes):
    witnesses = [
        S for S, fast, _ in small_complexes
        if S.is_disc and fast["alpha"] and fast["beta1_red"] and fast["beta1_blue"]
        and fast["beta2"] and not fast["gamma"]
    ]
    assert witnesses
    # the smallest ones fail delta as well, but some pass it
    assert any(check_delta(S).verdict for S in witnesses)


@pytest.mark.slow
@pytest.mark.criterion(6, "fast checkers agree with the oracles")
def test_oracles(small_complexes):
    assert len(small_complexes) > 45_000
    bad = [canonical_code(S) for S, fast, oracle in small_complexes if fast != oracle]
    assert not bad


@pytest.mark.slow
@pytest.mark.criterion(7, "constructors")
def test_constructors():
    rng = random.Random(20240607)
    for _ in range(200):
        red = random_disc(rng.randint(1, 8), rng)
        blue = random_disc(rng.randint(1, 8), rng)
        K = build_disc_slice(red, blue)
        assert validate_slice(K, "disc").verdict
        split = boundary_split(K, "disc")
        assert triangulation_code(split.d_red) == triangulation_code(red)
        assert triangulation_code(split.d_blue) == triangulation_code(blue)
    for _ in range(20):
        red, blue = random_sphere(8, rng), random_sphere(8, rng)
        K = build_sphere_slice(red, blue)
        assert validate_slice(K, "sphere").verdict
        assert euler3(K) == 2


@pytest.mark.slow
@pytest.mark.criterion(8, "sphere cut")
def test_cut(sphere_census):
    assert sphere_census
    for S in sphere_census:
        res = cut_to_disc(S)
        assert membership(res.disc, "disc").verdict
