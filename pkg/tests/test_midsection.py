import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_slices.complex3 import build_complex3, relabel3
from causal_slices.conditions import membership
from causal_slices.errors import Complex3Error
from causal_slices.midsection import midsection
from causal_slices.reconstruct import build_disc_slice
from causal_slices.surface import BLUE, RED, CellKind, canonical_code
from causal_slices.triangulations import random_disc


def test_prism_gives_the_chain(prism, chain):
    S, labels = midsection(prism)
    assert canonical_code(S) == canonical_code(chain)
    assert [S.count(k) for k in CellKind] == [1, 1, 1]
    # one vertex per two-coloured edge, one cell per tetrahedron
    assert len(labels.vertex) == len(S.vertices) == 9 - 3
    assert sorted(labels.cell.values()) == [0, 1, 2]
    assert set(labels.edge.values()) == set(S.edge_colour)


def test_quadrangle_edge_colours(prism):
    S, labels = midsection(prism)
    for tri, e in labels.edge.items():
        cols = [prism.colour[v] for v in tri]
        mono = RED if cols.count(RED) == 2 else BLUE
        assert S.edge_colour[e] is mono


def test_lone_tetra_is_rejected():
    M = build_complex3({0: RED, 1: RED, 2: BLUE, 3: BLUE}, [(0, 1, 2, 3)])
    with pytest.raises(Complex3Error):
        midsection(M)


def test_sphere_slice_midsection(sphere_member):
    S = sphere_member
    assert S.is_sphere
    assert S.count(CellKind.RED) == S.count(CellKind.BLUE) == 4
    assert membership(S, "sphere").verdict


def test_labels_json(prism):
    _, labels = midsection(prism)
    d = json.loads(labels.dumps())
    assert set(d) == {"vertices", "cells", "edges"}
    assert len(d["cells"]) == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_midsection_properties(seed, n1, n2, rng):
    r = random.Random(seed)
    K = build_disc_slice(random_disc(n1, r), random_disc(n2, r))
    S, labels = midsection(K)
    types = [K.tetra_type(t) for t in K.tetras]
    assert S.count(CellKind.RED) == types.count((3, 1))
    assert S.count(CellKind.BLUE) == types.count((1, 3))
    assert S.count(CellKind.QUAD) == types.count((2, 2))
    two_coloured = [e for e in K.edges if K.mono(e) is None]
    assert len(S.vertices) == len(two_coloured)
    assert membership(S, "disc").verdict
    vs = list(K.vertices)
    perm = vs[:]
    rng.shuffle(perm)
    moved, _ = midsection(relabel3(K, dict(zip(vs, perm))))
    assert canonical_code(moved) == canonical_code(S)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
def test_shared_endpoints_match_components(seed, n1, n2):
    r = random.Random(seed)
    K = build_disc_slice(random_disc(n1, r), random_disc(n2, r))
    S, labels = midsection(K)
    blue_comp, red_comp = S.component_of(BLUE), S.component_of(RED)
    edges = list(labels.vertex.items())
    for (r1, b1), a in edges:
        for (r2, b2), b in edges:
            assert (r1 == r2) == (blue_comp[a] == blue_comp[b])
            assert (b1 == b2) == (red_comp[a] == red_comp[b])
