from fractions import Fraction as F

import pytest

from stratacert.classes import (
    ClassContext,
    DivisorClass,
    bn_class,
    boundary_coeff_canonical,
    d_nc_class,
    gen_weierstrass_class,
    hur_class,
    kappa_minimal,
    kappa_mu,
    reduce_class,
    scaled_canonical_class,
    theta,
    twist_improvement_bound,
    wplus_class,
    wplus_w_gamma,
    wplus_w_hor,
    wplus_w_lambda,
)
from stratacert.graphs import (
    canonical_encoding,
    enumerate_level_graphs,
    graph_invariants,
    minimal_graph,
)
from stratacert.pullback import gamma1_graph, image_correspondence

EDB2 = minimal_graph(2, 1, [(1, (1,))])
BANANA2 = minimal_graph(2, 0, [(1, (1, 1))])


def test_kappa_mu_values():
    assert kappa_mu([60]) == F(3720, 61)
    assert kappa_mu([0, 0, 0]) == 0
    assert kappa_mu([2, -2]) == F(8, 3)
    # simple poles are skipped
    assert kappa_mu([2, -1, -1]) == F(8, 3)
    assert kappa_minimal(31) == F(3720, 61)


def test_theta_values():
    assert theta([4, 4], [0, 0]) == 0
    for g in (3, 5, 8):
        assert theta([g, g], [g, 0]) == F(g, 2)
    assert theta([60], [30]) == F(465, 61)
    with pytest.raises(ValueError):
        theta([2, 2], [1])


def test_scaled_canonical_class_genus2():
    atlas = list(enumerate_level_graphs(2))
    cls = scaled_canonical_class(2, atlas)
    assert cls.lam == 12
    assert cls.d_h == F(-5, 3)
    # EDB coefficient: -(8/3 - (2/3)(2*1 - 1)) = -2, no HBB correction
    assert cls.boundary[canonical_encoding(EDB2)] == F(-2)


def test_canonical_hbb_correction_is_conservative():
    with_h = boundary_coeff_canonical(BANANA2, True)
    without = boundary_coeff_canonical(BANANA2, False)
    assert without - with_h == F(2, 3)  # kappa/(2g) at g = 2


def test_d_nc_class_genus2():
    atlas = list(enumerate_level_graphs(2))
    cls = d_nc_class(2, atlas)
    assert cls.boundary[canonical_encoding(EDB2)] == 3
    assert cls.boundary[canonical_encoding(BANANA2)] == 0
    assert cls.lam == 0 and cls.d_h == 0 and cls.xi == 0


def test_bn_class_examples():
    edb31 = minimal_graph(31, 30, [(1, (1,))])
    cls = bn_class(31, [edb31])
    assert cls.lam == 6
    assert cls.d_h == F(-16, 17)
    assert cls.boundary[canonical_encoding(edb31)] == F(-90, 17)
    banana3 = minimal_graph(3, 0, [(2, (2, 2))])
    cls3 = bn_class(3, [banana3])
    assert cls3.boundary[canonical_encoding(banana3)] == F(-4, 3)
    with pytest.raises(ValueError):
        bn_class(4, [])


def test_hur_class_examples():
    assert hur_class(34, []).d_h == F(-645, 707)
    edb6 = minimal_graph(6, 5, [(1, (1,))])
    cls = hur_class(6, [edb6])
    assert cls.lam == 6
    assert cls.boundary[canonical_encoding(edb6)] == F(-330, 119)
    with pytest.raises(ValueError):
        hur_class(7, [])


def test_wplus_scalars():
    assert wplus_w_lambda(31) == F(7, 10)
    assert wplus_w_hor(31) == F(17, 120)
    edb31 = minimal_graph(31, 30, [(1, (1,))])
    assert wplus_w_gamma(edb31) == 1


def test_wplus_raw_psi_coefficient():
    cls = wplus_class(31, [], form="raw")
    assert cls.psi == (F(466),)
    assert cls.lam == -1 and cls.xi == 1


@pytest.mark.parametrize("g", range(4, 9))
def test_wplus_two_forms_agree(g):
    atlas = list(enumerate_level_graphs(g))
    ctx = ClassContext.from_graphs(g, (2 * g - 2,), atlas)
    raw = wplus_class(g, atlas, form="raw")
    red = wplus_class(g, atlas, form="reduced")
    assert reduce_class(raw, ctx) == red
    # idempotence
    assert reduce_class(red, ctx) == red


def test_gen_weierstrass_example():
    # signature (4,4) targets genus 5; alpha = (4,0)
    graphs = list(image_correspondence(4, (4, 4)).values())
    raw = gen_weierstrass_class((4, 4), (4, 0), graphs, form="raw")
    assert raw.psi == (F(10), F(0))
    assert raw.lam == -1 and raw.xi == 1
    red = gen_weierstrass_class((4, 4), (4, 0), graphs, form="reduced")
    kappa = kappa_mu((4, 4))
    v_theta = theta((4, 4), (4, 0))
    assert red.lam == (12 + 12 * v_theta - kappa) / kappa
    ctx = ClassContext.from_graphs(5, (4, 4), graphs)
    assert reduce_class(raw, ctx) == red


@pytest.mark.parametrize("g", range(4, 9))
def test_gen_weierstrass_two_forms_agree(g):
    mu = (g, g)
    graphs = list(image_correspondence(g, mu).values())
    raw = gen_weierstrass_class(mu, (g, 0), graphs, form="raw")
    red = gen_weierstrass_class(mu, (g, 0), graphs, form="reduced")
    ctx = ClassContext.from_graphs(g + 1, mu, graphs)
    assert reduce_class(raw, ctx) == red


def test_gen_weierstrass_validation():
    with pytest.raises(ValueError):
        gen_weierstrass_class((4, 4), (5, -1), [], form="raw")
    with pytest.raises(ValueError):
        gen_weierstrass_class((4, 4), (3, 0), [], form="raw")  # wrong total
    with pytest.raises(ValueError):
        gen_weierstrass_class((4, 3), (4, 0), [], form="raw")  # odd total


def test_twist_improvement_bound():
    for g in (4, 7, 10):
        gamma1 = gamma1_graph(g, (g, g))
        inv = graph_invariants(gamma1)
        bound = twist_improvement_bound(inv, F(g), F(2 * g))
        assert bound == F(g * (g - 1), 2)
    inv2 = graph_invariants(BANANA2)
    assert twist_improvement_bound(inv2, F(1), F(2)) == 0


def test_divisor_class_json_round_trip():
    cls = DivisorClass(lam=F(7, 10), d_h=F(-17, 120), psi=(F(466),),
                       xi=F(1), boundary={"enc": F(-3, 2)})
    assert DivisorClass.from_json(cls.to_json()) == cls


def test_kappa_bot_routes_agree():
    for g in range(2, 8):
        for graph in enumerate_level_graphs(g):
            inv = graph_invariants(graph)
            assert kappa_mu(graph.bottom_orders()) == inv.kappa_bot
