from causal_slices.complex3 import boundary_split, euler3, isomorphic3
from causal_slices.midsection import midsection
from causal_slices.reconstruct import build_sphere_slice
from causal_slices.sphere_search import _automorphisms, _orbit_reps, sphere_slices
from causal_slices.surface import canonical_code
from causal_slices.triangulations import TETRA_SPHERE, spheres_with_triangles, triangulation_code


def test_tetrahedron_symmetries():
    autos = _automorphisms(TETRA_SPHERE)
    assert len(autos) == 24
    assert _orbit_reps(autos, range(4)) == [0]


def test_bipyramid_orbits():
    bip = spheres_with_triangles(6)[0]
    autos = _automorphisms(bip)
    assert len(autos) == 12
    # apexes and equator
    assert len(_orbit_reps(autos, range(5))) == 2


def test_smallest_search_finds_one_class():
    found = list(sphere_slices(TETRA_SPHERE, TETRA_SPHERE, 4))
    assert found
    codes = {canonical_code(midsection(K)[0]) for K in found}
    assert len(codes) == 1
    for K in found:
        assert euler3(K) == 2
        split = boundary_split(K, "sphere")
        assert triangulation_code(split.d_red) == triangulation_code(TETRA_SPHERE)
        assert triangulation_code(split.d_blue) == triangulation_code(TETRA_SPHERE)


def test_search_contains_the_builder_output():
    K = build_sphere_slice(TETRA_SPHERE, TETRA_SPHERE)
    assert any(isomorphic3(K, L) for L in sphere_slices(TETRA_SPHERE, TETRA_SPHERE, len(K.tetras) - 8))


def test_too_few_quadrangles():
    assert list(sphere_slices(TETRA_SPHERE, TETRA_SPHERE, 3)) == []


def test_parts_cover_the_search():
    whole = {K.tetras for K in sphere_slices(TETRA_SPHERE, spheres_with_triangles(6)[0], 4)}
    parts = set()
    for i in range(2):
        parts |= {K.tetras for K in sphere_slices(TETRA_SPHERE, spheres_with_triangles(6)[0], 4, part=(i, 2))}
    assert parts == whole
