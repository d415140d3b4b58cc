import pytest

from causal_slices.bundled import fixture_path, fixtures
from causal_slices.complex3 import loads_slice, validate_slice
from causal_slices.conditions import membership
from causal_slices.errors import MonochromeTetra, ParseError
from causal_slices.surface import loads_midsection
from causal_slices.triangulations import loads_triangulation
from causal_slices.topology2d import is_kind


def test_fixture_listing():
    names = set(fixtures())
    assert {"prism.slice", "chain3.midsection", "broken.slice", "malformed.slice"} <= names
    assert all(p.is_file() for p in fixtures().values())
    with pytest.raises(FileNotFoundError):
        fixture_path("missing.slice")


def test_prism_fixture():
    assert validate_slice(loads_slice(fixture_path("prism.slice").read_text()), "disc").verdict


def test_chain_fixture(chain3_file):
    assert membership(chain3_file, "disc").verdict


def test_triangulation_fixtures():
    for name, kind in (("tetra-sphere.json", "sphere"), ("bipyramid-sphere.json", "sphere"),
                       ("triangle-disc.json", "disc"), ("two-triangle-disc.json", "disc")):
        assert is_kind(loads_triangulation(fixture_path(name).read_text()), kind)


def test_negative_fixtures():
    with pytest.raises(MonochromeTetra):
        loads_slice(fixture_path("broken.slice").read_text())
    with pytest.raises(ParseError):
        loads_slice(fixture_path("malformed.slice").read_text())
    with pytest.raises(ParseError):
        loads_midsection(fixture_path("malformed.slice").read_text())
