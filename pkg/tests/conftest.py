from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from causal_slices.bundled import fixture_path
from causal_slices.census import _seeds, close_disc, grow_disc
from causal_slices.complex3 import loads_slice
from causal_slices.surface import BLUE, RED, Cell, build_complex, loads_midsection

# vertex names used in the hand-worked chain example
A, B, C, D, E, F = range(6)


@pytest.fixture
def chain():
    """Red triangle on ab, quadrangle abcd, blue triangle on bc."""
    return build_complex([Cell.red(A, B, E), Cell.quad(A, B, C, D), Cell.blue(B, C, F)])


@pytest.fixture
def prism():
    return loads_slice(fixture_path("prism.slice").read_text())


@pytest.fixture
def prism_colour():
    return {0: RED, 1: RED, 2: RED, 3: BLUE, 4: BLUE, 5: BLUE}


@pytest.fixture
def chain3_file():
    return loads_midsection(fixture_path("chain3.midsection").read_text())


def random_disc_midsection(rng: random.Random, n_cells: int):
    """Random coloured disc grown one cell at a time (not necessarily a member)."""
    D = rng.choice(_seeds())
    while len(D.cells) < n_cells:
        children = list(grow_disc(D))
        D = rng.choice(children)
    return D


def random_sphere_complex(rng: random.Random, n_cells: int):
    """Random coloured sphere: a random disc closed by one cell, if possible."""
    for _ in range(200):
        D = random_disc_midsection(rng, n_cells - 1)
        closed = list(close_disc(D, quads_only=False))
        if closed:
            return rng.choice(closed)
    return None


@st.composite
def disc_midsections(draw, max_cells: int = 7):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_cells))
    return random_disc_midsection(random.Random(seed), n)


@st.composite
def permutations_of(draw, vertices):
    vs = list(vertices)
    perm = draw(st.permutations(vs))
    return dict(zip(vs, perm))


@pytest.fixture(scope="session")
def sphere_member():
    """The 12-cell sphere midsection of the slice between two tetrahedron boundaries."""
    from causal_slices.midsection import midsection
    from causal_slices.reconstruct import build_sphere_slice
    from causal_slices.triangulations import TETRA_SPHERE

    return midsection(build_sphere_slice(TETRA_SPHERE, TETRA_SPHERE))[0]


# ---------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if failed or (rep.when == "call" and n not in _criteria):
        _criteria[n] = (title, "FAIL" if failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, verdict = _criteria[n]
        terminalreporter.write_line(f"criterion {n} ({title}): {verdict}")
