import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_slices.errors import ParseError
from causal_slices.topology2d import is_kind
from causal_slices.triangulations import (
    TETRA_SPHERE,
    dumps_triangulation,
    flips,
    loads_triangulation,
    random_disc,
    simplicial_spheres,
    spheres_with_triangles,
    stellar,
    triangulation_code,
)


def test_sphere_counts():
    # classes of triangulated 2-spheres on 4..9 vertices
    assert [len(simplicial_spheres(n)) for n in range(4, 10)] == [1, 1, 2, 5, 14, 50]


def test_spheres_are_spheres():
    for n in range(4, 9):
        for s in simplicial_spheres(n):
            assert is_kind(s, "sphere")
            assert len(s) == 2 * n - 4
            assert len({v for t in s for v in t}) == n


def test_triangle_counts():
    assert spheres_with_triangles(4) == (TETRA_SPHERE,)
    assert spheres_with_triangles(5) == ()
    assert len(spheres_with_triangles(8)) == 2


def test_flips_and_subdivision_keep_spheres():
    octa = spheres_with_triangles(8)
    for s in octa:
        for f in flips(s):
            assert is_kind(f, "sphere") and len(f) == 8
    assert is_kind(stellar(TETRA_SPHERE, TETRA_SPHERE[0]), "sphere")
    # no edge of the tetrahedron boundary can be flipped
    assert flips(TETRA_SPHERE) == []


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_random_disc(seed, n):
    tris = random_disc(n, random.Random(seed))
    assert len(tris) == n
    assert is_kind(tris, "disc")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 8), st.permutations(range(20)))
def test_code_ignores_labels(seed, n, perm):
    tris = random_disc(n, random.Random(seed))
    moved = [tuple(perm[v] for v in t) for t in tris]
    assert triangulation_code(moved) == triangulation_code(tris)


def test_file_round_trip():
    assert loads_triangulation(dumps_triangulation(TETRA_SPHERE)) == list(TETRA_SPHERE)


@pytest.mark.parametrize(
    "text",
    [
        "{",
        '{"format": "triangulation/2", "triangles": []}',
        '{"format": "triangulation/1", "triangles": [[0, 1]]}',
        '{"format": "triangulation/1", "triangles": [[0, 1, true]]}',
        '{"format": "triangulation/1", "triangles": [], "x": 0}',
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        loads_triangulation(text)
