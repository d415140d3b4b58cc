import pytest
from hypothesis import given, settings

from causal_slices.census import decode_midsection
from causal_slices.conditions import (
    check_alpha,
    check_beta1,
    check_beta2,
    check_beta_sphere,
    check_delta,
    check_gamma,
    condition_summary,
    membership,
)
from causal_slices.errors import BudgetExceeded, NoArcs, NotADisc, NotASphere
from causal_slices.oracles import _adjacency, has_simple_path, oracle_conditions
from causal_slices.surface import BLUE, RED, Cell, CellKind, build_complex, quad_chains
from causal_slices.topology2d import edge_key

from conftest import A, B, C, D, disc_midsections

# smallest violators, found by exhaustive search over discs with <= 6 cells
ALPHA_FAIL = "R0.1.2|Q0.1.3.4|Q1.2.5.3|Q2.0.4.6"
BETA1_RED_FAIL = "R0.1.2|Q0.1.3.4|Q1.2.5.3|Q2.0.4.5"  # red ring around a red triangle
BETA1_BLUE_FAIL = "B0.1.2|q0.1.3.4|q1.2.5.3|q2.0.4.5"  # blue ring around a blue triangle
BETA2_FAIL = "q0.1.2.3|Q1.2.4.5"
DELTA_FAIL = "R0.1.2|Q1.2.3.4|Q2.0.5.3|R3.4.5"
# passes alpha, beta1 and beta2 but not gamma
GAMMA_ONLY_FAIL = "R0.1.2|Q0.1.3.4|Q1.2.5.3|R3.4.6|B2.5.7|R5.3.6|R4.6.5"

# spheres: one quadrangle ring on each side of a red (blue) triangle cycle
SPHERE_BETA_RED_FAIL = "R0.1.2|Q0.1.3.4|Q1.2.5.3|Q2.0.4.5|Q3.4.6.7|Q5.3.7.8|Q4.5.8.6|R6.7.8"
SPHERE_BETA_BLUE_FAIL = "B0.1.2|q0.1.3.4|q1.2.5.3|q2.0.4.5|q3.4.6.7|q5.3.7.8|q4.5.8.6|B6.7.8"
OCTAHEDRON = "R0.1.2|R0.1.3|R1.2.4|R2.0.5|R1.3.4|R3.0.5|R2.4.5|R3.4.5"


def quad():
    return build_complex([Cell.quad(A, B, C, D)])


def verdicts(S):
    return {k: r.verdict for k, r in oracle_conditions(S).items()}


def test_alpha_examples(chain):
    assert check_alpha(quad()).verdict
    assert check_alpha(chain).verdict
    S = decode_midsection(ALPHA_FAIL)
    rep = check_alpha(S)
    assert not rep.verdict
    u, v = rep.witness["vertices"]
    # the witness re-checks by explicit path search
    assert has_simple_path(_adjacency(S, RED), u, v) and has_simple_path(_adjacency(S, BLUE), u, v)
    assert not oracle_conditions(S)["alpha"].verdict


def test_beta1_examples(chain):
    assert check_beta1(quad(), RED).verdict
    assert check_beta1(chain, RED).verdict and check_beta1(chain, BLUE).verdict
    for code, c in ((BETA1_RED_FAIL, RED), (BETA1_BLUE_FAIL, BLUE)):
        S = decode_midsection(code)
        rep = check_beta1(S, c)
        assert not rep.verdict
        assert S.cells[rep.witness["cell"]].triangle_colour() is not c
        # every edge of the separating cut has the checked colour
        assert all(S.edge_colour[tuple(e)] is c for e in rep.witness["cut"])
        assert check_beta1(S, c.other).verdict
        assert not oracle_conditions(S)[f"beta1_{c.value}"].verdict


def test_beta1_needs_disc():
    with pytest.raises(NotADisc):
        check_beta1(decode_midsection(OCTAHEDRON), RED)


def test_beta2_examples(chain):
    assert check_beta2(chain).verdict
    assert check_beta2(quad()).verdict
    S = decode_midsection(BETA2_FAIL)
    rep = check_beta2(S)
    assert not rep.verdict
    u, v = rep.witness["vertices"]
    c = RED if rep.witness["path_colour"] == "red" else BLUE
    assert has_simple_path(_adjacency(S, c), u, v)
    assert not oracle_conditions(S)["beta2"].verdict


def test_beta2_monochromatic_boundary():
    with pytest.raises(NoArcs):
        check_beta2(build_complex([Cell.red(A, B, C)]))


def test_beta_sphere_examples():
    S = decode_midsection(SPHERE_BETA_RED_FAIL)
    red = check_beta_sphere(S, RED)
    assert not red.verdict and len(red.witness["cells"]) == 2
    mirror = decode_midsection(SPHERE_BETA_BLUE_FAIL)
    assert check_beta_sphere(mirror, BLUE).verdict is red.verdict
    assert check_beta_sphere(mirror, RED).verdict is check_beta_sphere(S, BLUE).verdict
    octa = decode_midsection(OCTAHEDRON)
    assert check_beta_sphere(octa, RED).verdict and check_beta_sphere(octa, BLUE).verdict
    assert verdicts(S)["beta_red"] is False


def test_beta_sphere_on_member(sphere_member):
    assert check_beta_sphere(sphere_member, RED).verdict
    assert check_beta_sphere(sphere_member, BLUE).verdict


def test_beta_sphere_needs_sphere(chain):
    with pytest.raises(NotASphere):
        check_beta_sphere(chain, RED)


def test_gamma_examples(chain):
    assert check_gamma(chain).verdict
    assert check_gamma(quad()).verdict
    S = decode_midsection(GAMMA_ONLY_FAIL)
    summary = condition_summary(S)
    assert summary["alpha"] and summary["beta1_red"] and summary["beta1_blue"] and summary["beta2"]
    rep = check_gamma(S)
    assert not rep.verdict
    c = RED if rep.witness["edge_colour"] == "red" else BLUE
    e, f = (edge_key(*x) for x in rep.witness["edges"])
    assert not set(e) & set(f)
    assert not any(e in ch.edges and f in ch.edges for ch in quad_chains(S, c))
    assert not oracle_conditions(S)["gamma"].verdict


def test_delta_examples(chain):
    assert check_delta(chain).verdict
    S = decode_midsection(DELTA_FAIL)
    rep = check_delta(S)
    assert not rep.verdict
    i, j = rep.witness["cells"]
    assert S.cells[i].kind is S.cells[j].kind is CellKind.RED
    assert not oracle_conditions(S)["delta"].verdict


def test_membership_examples(chain, sphere_member):
    assert membership(chain, "disc").verdict
    rep = membership(quad(), "disc")
    assert not rep.verdict and rep.witness["condition"] == "triangles"
    octa = decode_midsection(OCTAHEDRON)
    rep = membership(octa, "sphere")
    assert not rep.verdict and rep.witness["condition"] == "triangles"
    assert membership(sphere_member, "sphere").verdict
    assert not membership(sphere_member, "disc").verdict
    assert not membership(chain, "sphere").verdict


def test_report_json_shape(chain):
    d = check_alpha(decode_midsection(ALPHA_FAIL)).to_dict()
    assert set(d) == {"condition", "verdict", "witness"}
    assert d["verdict"] is False and d["witness"]


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        oracle_conditions(decode_midsection(GAMMA_ONLY_FAIL), budget=5)


def test_oracle_matches_on_named_instances(chain):
    assert verdicts(chain) == condition_summary(chain)
    assert verdicts(quad()) == condition_summary(quad())


@settings(max_examples=80, deadline=None)
@given(disc_midsections(max_cells=7))
def test_fast_checkers_match_oracles(S):
    assert verdicts(S) == condition_summary(S)


@settings(max_examples=80, deadline=None)
@given(disc_midsections(max_cells=7))
def test_false_verdicts_carry_witnesses(S):
    for name, rep in (
        ("alpha", check_alpha(S)),
        ("beta1_red", check_beta1(S, RED)),
        ("beta1_blue", check_beta1(S, BLUE)),
        ("gamma", check_gamma(S)),
        ("delta", check_delta(S)),
    ):
        assert rep.verdict or rep.witness, name


@settings(max_examples=80, deadline=None)
@given(disc_midsections(max_cells=7))
def test_members_have_delta_and_no_closed_chains(S):
    if not membership(S, "disc").verdict:
        return
    assert check_delta(S).verdict
    for c in (RED, BLUE):
        chains = quad_chains(S, c)
        assert not any(ch.closed for ch in chains)
        for ch in chains:
            assert sum(S.is_boundary(e) for e in ch.edges) <= 1
            for cell in S.cells:
                if cell.kind is not CellKind.QUAD:
                    assert sum(e in ch.edges for e, _ in cell.edge_colours()) <= 1
