import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_slices.complex3 import (
    SliceKind,
    boundary_split,
    build_complex3,
    canonical_code3,
    dumps_slice,
    euler3,
    isomorphic3,
    layered_union,
    loads_slice,
    relabel3,
    swap_colours,
    validate_slice,
)
from causal_slices.errors import (
    Disconnected,
    DuplicateTetra,
    InterfaceMismatch,
    MonochromePartNotDisc,
    MonochromeTetra,
    NonPseudomanifold,
    ParseError,
)
from causal_slices.reconstruct import build_disc_slice, build_sphere_slice
from causal_slices.surface import BLUE, RED
from causal_slices.triangulations import TETRA_SPHERE, random_disc

TWO_TRIANGLES = [(0, 1, 2), (1, 2, 3)]


def test_single_two_two_tetra():
    M = build_complex3({0: RED, 1: RED, 2: BLUE, 3: BLUE}, [(0, 1, 2, 3)])
    assert M.counts() == {"vertices": 4, "edges": 6, "triangles": 4, "tetrahedra": 1}
    assert euler3(M) == 1
    assert M.tetra_type(M.tetras[0]) == (2, 2)


def test_prism_counts(prism):
    assert prism.counts() == {"vertices": 6, "edges": 12, "triangles": 10, "tetrahedra": 3}
    assert euler3(prism) == 1
    assert sorted(prism.tetra_type(t) for t in prism.tetras) == [(1, 3), (2, 2), (3, 1)]


def test_build_rejections(prism_colour):
    with pytest.raises(DuplicateTetra):
        build_complex3(prism_colour, [(0, 1, 2, 3), (3, 2, 1, 0)])
    with pytest.raises(MonochromeTetra):
        build_complex3({0: RED, 1: RED, 2: RED, 3: RED}, [(0, 1, 2, 3)])
    with pytest.raises(NonPseudomanifold):
        # one triangle in three tetrahedra
        build_complex3(prism_colour | {6: BLUE}, [(0, 1, 3, 4), (0, 1, 3, 5), (0, 1, 3, 6)])
    with pytest.raises(Disconnected):
        # sharing only an edge
        build_complex3(prism_colour | {6: BLUE, 7: BLUE}, [(0, 1, 3, 4), (0, 1, 6, 7)])


def test_prism_boundary_split(prism):
    split = boundary_split(prism)
    assert split.d_red == ((0, 1, 2),) and split.d_blue == ((3, 4, 5),)
    assert len(split.side) == 6 and len(set(split.side)) == 6
    assert set(split.side_word(prism.colour)) <= {"F", "B"}


def test_lone_tetra_has_no_blue_disc():
    M = build_complex3({0: RED, 1: RED, 2: RED, 3: BLUE}, [(0, 1, 2, 3)])
    with pytest.raises(MonochromePartNotDisc):
        boundary_split(M, "disc")


def test_sphere_slice_split():
    K = build_sphere_slice(TETRA_SPHERE, TETRA_SPHERE)
    split = boundary_split(K, SliceKind.SPHERE)
    assert len(split.d_red) == len(split.d_blue) == 4 and split.side == ()
    assert euler3(K) == 2


def test_prism_validates(prism):
    rep = validate_slice(prism, "disc")
    assert rep.verdict, rep.failures()
    names = [n for n, _, _ in rep.checks]
    assert names[0] == "monochrome_on_boundary" and names[-1] == "round_trip"
    assert not validate_slice(prism, "sphere").verdict


def test_recoloured_prism_is_invalid(prism, prism_colour):
    colour = prism_colour | {2: BLUE}
    try:
        M = build_complex3(colour, prism.tetras)
    except MonochromeTetra:
        return
    assert not validate_slice(M, "disc").verdict


def test_sphere_slice_validates():
    K = build_sphere_slice(TETRA_SPHERE, TETRA_SPHERE)
    assert validate_slice(K, "sphere").verdict
    assert not validate_slice(K, "disc").verdict


def test_layered_union_of_two_prisms(prism):
    M = layered_union([prism, prism], [{3: 0, 4: 1, 5: 2}])
    assert len(M.tetras) == 6
    assert euler3(M) == 1
    # the shared triangle is interior, the outer ones stay on the boundary
    assert len(M.boundary_triangles) == 2 * 8 - 2
    assert all(len(ts) in (1, 2) for ts in M.triangle_tetras.values())


def test_layered_union_single_and_mismatch(prism):
    assert layered_union([prism]) is prism
    with pytest.raises(InterfaceMismatch):
        layered_union([prism, prism], [])
    with pytest.raises(InterfaceMismatch):
        layered_union([prism, prism], [{3: 0, 4: 1}])
    bigger = build_disc_slice(TWO_TRIANGLES, [(0, 1, 2)])
    with pytest.raises(InterfaceMismatch):
        layered_union([prism, bigger], [{3: 0, 4: 1, 5: 2}])


def test_isomorphism_examples(prism):
    perm = {0: 5, 1: 3, 2: 4, 3: 0, 4: 2, 5: 1}
    moved = build_complex3({perm[v]: c.other for v, c in prism.colour.items()},
                           [tuple(perm[v] for v in t) for t in prism.tetras])
    assert isomorphic3(prism, relabel3(prism, {v: v + 10 for v in prism.vertices}))
    # the prism happens to be its own colour mirror
    assert isomorphic3(swap_colours(prism), prism)
    assert isomorphic3(moved, prism)
    two = build_complex3({0: RED, 1: RED, 2: BLUE, 3: BLUE, 4: BLUE}, [(0, 1, 2, 3), (0, 1, 3, 4)])
    assert not isomorphic3(prism, two)


def test_colour_swap_breaks_isomorphism():
    K = build_disc_slice(TWO_TRIANGLES, [(0, 1, 2)])
    assert validate_slice(K, "disc").verdict
    assert not isomorphic3(K, swap_colours(K))
    assert canonical_code3(K) != canonical_code3(swap_colours(K))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_code_and_isomorphism_agree_under_relabelling(seed, n1, n2, rng):
    r = random.Random(seed)
    K = build_disc_slice(random_disc(n1, r), random_disc(n2, r))
    vs = list(K.vertices)
    perm = vs[:]
    rng.shuffle(perm)
    L = relabel3(K, dict(zip(vs, perm)))
    assert isomorphic3(K, L)
    assert canonical_code3(K) == canonical_code3(L)
    assert euler3(K) == 1
    assert all(v in K.boundary_vertices for v in K.vertices)


def test_slice_file_round_trip(prism):
    back = loads_slice(dumps_slice(prism))
    assert back.tetras == prism.tetras and back.colour == prism.colour


@pytest.mark.parametrize(
    "data",
    [
        {"format": "slice/2", "vertices": [], "tetrahedra": []},
        {"format": "slice/1", "vertices": [], "tetrahedra": [], "x": 1},
        {"format": "slice/1", "vertices": [{"id": 0, "colour": "green"}], "tetrahedra": []},
        {"format": "slice/1", "vertices": [{"id": -1, "colour": "red"}], "tetrahedra": []},
        {"format": "slice/1", "vertices": [{"id": True, "colour": "red"}], "tetrahedra": []},
        {"format": "slice/1", "vertices": [], "tetrahedra": [[0, 1, 2, "3"]]},
    ],
)
def test_slice_parse_errors(data):
    with pytest.raises(ParseError):
        loads_slice(json.dumps(data))


def test_truncated_slice_file():
    with pytest.raises(ParseError):
        loads_slice('{"format": "slice/1", "vertices": [')
