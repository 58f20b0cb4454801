from fractions import Fraction as F

import pytest

from stratacert.certify import (
    BOUNDS_CONFLICT,
    CERTIFIED,
    INFEASIBLE,
    CertRequest,
    certify_coarse,
    certify_exact,
    certify_exact_streaming,
    coarse_bounds,
    recipe_y,
    resolve_effdiv,
    s_gamma_affine,
    s_hor_affine,
    scan,
    six_coefficients,
    y_hor,
)
from stratacert.checks import (
    DEFAULT_Y_SAMPLES,
    assembly_failures,
    assembly_scalar_failures,
    graph_identity_failures,
)
from stratacert.graphs import enumerate_level_graphs, graph_invariants, minimal_graph

EDB31 = minimal_graph(31, 30, [(1, (1,))])
BANANA31 = minimal_graph(31, 0, [(30, (30, 30))])


def test_s_hor_affine_g31():
    aff = s_hor_affine(31, "bn")
    assert aff.intercept == F(-105, 1037)
    assert aff.slope == F(65, 119)
    assert aff.root() == F(147, 793)
    # slope building block 12 w_hor / w_lambda = 3(g+3)/(g+11)
    assert F(3 * (31 + 3), 31 + 11) == F(17, 7)


def test_s_hor_parity_rejected():
    with pytest.raises(ValueError):
        s_hor_affine(32, "bn")
    with pytest.raises(ValueError):
        s_hor_affine(31, "hur")


def test_y_hor_values():
    assert y_hor(31) == F(147, 793)
    assert y_hor(47) == F(29, 279)
    assert y_hor(47) == F(47 + 11, 12 * 47 - 6)
    with pytest.raises(ValueError):
        y_hor(5)
    with pytest.raises(ValueError):
        y_hor(6)


@pytest.mark.parametrize("g", range(9, 102, 2))
def test_y_hor_is_the_root_of_s_hor(g):
    assert s_hor_affine(g, "bn").root() == y_hor(g)


def test_six_coefficients_edb31():
    six = six_coefficients(graph_invariants(EDB31), 31, "bn")
    assert six.r_gamma == 4
    assert six.c_gamma == F(-360, 61)
    assert six.w_ratio_term == F(120, 7)
    assert six.b_gamma_six == F(180, 17)  # 12*1*30/(34*1)


def test_banana31_is_negative_for_every_y_with_shape_test():
    aff = s_gamma_affine(graph_invariants(BANANA31, True), 31, "bn")
    assert aff(F(0)) == F(-7, 1037)
    assert aff(F(1)) < 0
    # without the shape correction it is positive near the recipe y
    aff0 = s_gamma_affine(graph_invariants(BANANA31, False), 31, "bn")
    assert aff0(recipe_y(31)) > 0
    assert aff0(F(0)) == F(27, 1037)


def test_t1_t2_split_is_a_lower_bound():
    for g in (7, 8, 9, 10):
        for graph in enumerate_level_graphs(g):
            inv = graph_invariants(graph)
            six = six_coefficients(inv, g)
            total = six.t1_affine + six.t2_affine
            s_aff = s_gamma_affine(inv, g)
            for y in (F(0), F(1, 3), F(1)):
                assert total(y) <= s_aff(y)
            # the split is in fact exact
            assert total.intercept == s_aff.intercept
            assert total.slope == s_aff.slope


def test_coarse_bounds_g31():
    feas = coarse_bounds(31)
    assert feas.lo == F(147, 793) and feas.lo_open
    assert feas.hi == F(13, 60)
    assert certify_coarse(CertRequest(31, "coarse")).status == CERTIFIED


def test_coarse_examples():
    assert certify_coarse(CertRequest(29, "coarse")).status == INFEASIBLE
    assert certify_coarse(CertRequest(30, "coarse")).status == INFEASIBLE
    assert certify_coarse(CertRequest(32, "coarse")).status == BOUNDS_CONFLICT
    c47 = certify_coarse(CertRequest(47, "coarse"))
    assert c47.status == CERTIFIED and c47.y == F(3, 20)
    c31 = certify_coarse(CertRequest(31, "coarse"))
    assert c31.y == F(147, 793) + F(1, 100000)


def test_coarse_scan_range():
    certs = scan(29, 60, "coarse")
    certified = {c.genus for c in certs if c.status == CERTIFIED}
    assert certified == {31} | set(range(33, 61))
    by_genus = {c.genus: c.status for c in certs}
    assert by_genus[29] == INFEASIBLE
    assert by_genus[30] == INFEASIBLE
    assert by_genus[32] == BOUNDS_CONFLICT


def test_even_coarse_reports_hurwitz_disagreement():
    cert = certify_coarse(CertRequest(34, "coarse"))
    assert cert.status == CERTIFIED
    assert any("hurwitz-substituted" in n and "NOT positive" in n for n in cert.notes)


def test_coarse_certified_y_satisfies_bn_horizontal():
    # the self-contained part of a coarse certificate: s_hor(y*) > 0 in the
    # form that defines y_hor (odd genus); even genus is reported via notes
    for cert in scan(29, 60, "coarse"):
        if cert.status == CERTIFIED and cert.genus % 2 == 1:
            assert s_hor_affine(cert.genus, "bn")(cert.y) > 0


def test_resolve_effdiv():
    assert resolve_effdiv(31, "auto") == "brill_noether"
    assert resolve_effdiv(34, "auto") == "hurwitz"
    with pytest.raises(ValueError):
        resolve_effdiv(31, "nope")


@pytest.mark.parametrize("g,effdiv", [(7, "bn"), (8, "hur"), (9, "bn"),
                                      (10, "hur"), (11, "bn"), (12, "hur")])
def test_engines_agree(g, effdiv):
    for hbb in (True, False):
        req = CertRequest(g, "exact", effdiv, "auto_midpoint", hbb)
        a = certify_exact_streaming(req)
        b = certify_exact(req)
        assert a.status == b.status
        assert a.feasible == b.feasible
        assert a.worst_margin == b.worst_margin
        assert a.graph_count == b.graph_count


def test_fixed_y_policy():
    cert = certify_exact(CertRequest(9, "exact", "bn", F(0)))
    assert cert.status == INFEASIBLE
    assert cert.y == 0


def test_small_genus_exact_is_infeasible():
    # the horizontal threshold exceeds 1 below the certified range
    cert = certify_exact(CertRequest(9, "exact", "bn", "auto_midpoint"))
    assert cert.status == INFEASIBLE
    assert y_hor(9) > 1


def test_identity_battery_small():
    for g in range(2, 8):
        for graph in enumerate_level_graphs(g):
            assert graph_identity_failures(graph) == []
            assert assembly_failures(graph) == []


def test_assembly_scalars_small():
    for g in range(2, 12):
        assert assembly_scalar_failures(g) == []
    assert len(DEFAULT_Y_SAMPLES) == 10


def test_assembly_both_divisor_choices():
    # parity decides the divisor, but both variants must assemble exactly
    for graph in enumerate_level_graphs(7):
        assert assembly_failures(graph, "brill_noether") == []
    for graph in enumerate_level_graphs(8):
        assert assembly_failures(graph, "hurwitz") == []


def test_hull_matches_linear_scan():
    import random

    from stratacert.certify import _Hull

    rng = random.Random(424242)
    for _ in range(50):
        lines = [(rng.randint(-50, 50), rng.randint(-50, 50), i)
                 for i in range(rng.randint(1, 40))]
        hull = _Hull(lines)
        for _ in range(20):
            yn, yd = rng.randint(0, 16), rng.randint(1, 16)
            got, _ref = hull.query(yn, yd)
            expect = min(u * yd + t * yn for t, u, _ in lines)
            assert got == expect
