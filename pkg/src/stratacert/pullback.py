"""The compact-type clutching pullback on graphs and divisor classes.

The clutching map glues a fixed elliptic tail carrying all marked points
onto the unique zero of a genus-g curve, landing in the boundary divisor
of the distinguished single-edge graph ``Gamma_1`` (prong 2g-1, genus-1
bottom with all legs) inside a genus-(g+1) stratum.  Pulling back:

* a boundary graph with a leg on a top vertex dies;
* a boundary graph with all legs on the bottom loses one from its bottom
  genus and trades its legs for the single leg of order 2g-2;
* ``Gamma_1`` itself contributes ``-psi``; lambda is fixed, psi_i die,
  xi is fixed.

Only the image correspondence is ever materialized: ``Gamma_1`` together
with the inverse surgery applied to the genus-g atlas.  This keeps the
derivation check linear in the atlas size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Sequence

from .classes import DivisorClass, validate_weierstrass_alpha, wplus_class
from .exactq import rational_str
from .graphs import (
    LevelGraph,
    TopVertex,
    canonical_encoding,
    enumerate_level_graphs,
    graph_invariants,
    validate,
)


class ZeroPullback:
    """Sentinel: the boundary divisor misses the clutching image."""

    def __repr__(self):
        return "ZERO"


class Gamma1Marker:
    """Sentinel: the divisor is Gamma_1 itself (pulls back to -psi)."""

    def __repr__(self):
        return "GAMMA1"


ZERO = ZeroPullback()
GAMMA1 = Gamma1Marker()


def gamma1_graph(g: int, mu: Sequence[int]) -> LevelGraph:
    """The distinguished graph: genus-g top, genus-1 bottom with all legs,
    one edge of prong 2g-1."""
    return LevelGraph(g + 1, 1, tuple(mu), (TopVertex(g, (2 * g - 1,)),))


def is_gamma1(graph: LevelGraph, g: int) -> bool:
    return (graph.bottom_genus == 1 and graph.v_top == 1
            and graph.top_vertices[0].genus == g
            and graph.top_vertices[0].prongs == (2 * g - 1,)
            and not graph.has_top_legs())


def zeta_pull_graph(delta: LevelGraph, g: int):
    """Pull a genus-(g+1) boundary graph back to genus g.

    Returns ZERO when some leg sits on a top vertex, GAMMA1 for the
    distinguished graph, and otherwise the surgered graph: bottom genus
    decreased by one, legs replaced by the single order-(2g-2) leg.
    """
    if delta.genus != g + 1:
        raise ValueError("graph genus does not match the clutching source")
    if validate(delta):
        raise ValueError(f"invalid graph: {validate(delta)}")
    if delta.has_top_legs():
        return ZERO
    if is_gamma1(delta, g):
        return GAMMA1
    if delta.bottom_genus < 1:
        raise ValueError("surgery needs positive bottom genus")
    return LevelGraph(g, delta.bottom_genus - 1, (2 * g - 2,), delta.top_vertices)


def surgery_up(graph: LevelGraph, mu: Sequence[int]) -> LevelGraph:
    """The two-sided inverse of the surgery on all-legs-bottom graphs:
    bottom genus +1, the legs replaced by the signature mu.

    The leg total grows by 2 because the bottom degree balance gains one
    genus: sum(mu) = 2g = sum(old legs) + 2.
    """
    if sum(mu) != sum(graph.bottom_legs) + 2:
        raise ValueError("mu must total two more than the current legs")
    return LevelGraph(graph.genus + 1, graph.bottom_genus + 1, tuple(mu),
                      graph.top_vertices)


def image_correspondence(g: int, mu: Sequence[int]) -> Dict[str, LevelGraph]:
    """Gamma_1 plus the inverse surgery of the full genus-g atlas, keyed by
    canonical encoding."""
    graphs = {canonical_encoding(gamma1_graph(g, mu)): gamma1_graph(g, mu)}
    for graph in enumerate_level_graphs(g):
        up = surgery_up(graph, mu)
        graphs[canonical_encoding(up)] = up
    return graphs


def zeta_pull_class(c: DivisorClass, g: int,
                    graphs: Mapping[str, LevelGraph]) -> DivisorClass:
    """Apply the pullback rules coordinate-wise.

    ``graphs`` maps the genus-(g+1) boundary encodings appearing in ``c``
    to their graphs.  The horizontal coordinate passes through untouched;
    no class built here carries one.
    """
    psi = Fraction(0)
    boundary: Dict[str, Fraction] = {}
    for enc, coeff in c.boundary.items():
        image = zeta_pull_graph(graphs[enc], g)
        if image is ZERO:
            continue
        if image is GAMMA1:
            psi -= coeff
            continue
        key = canonical_encoding(image)
        boundary[key] = boundary.get(key, Fraction(0)) + coeff
    return DivisorClass(lam=c.lam, d_h=c.d_h,
                        psi=(psi,) if psi else (), xi=c.xi, boundary=boundary)


@dataclass(frozen=True)
class PullbackReport:
    match: bool
    coordinate_diffs: dict

    def to_json(self) -> dict:
        return {
            "match": self.match,
            "coordinate_diffs": {k: rational_str(v)
                                 for k, v in sorted(self.coordinate_diffs.items())},
        }


def saturated_alpha(mu: Sequence[int], k: int) -> tuple:
    """A k-saturated partition for mu: alpha_k = m_k, the rest filled
    greedily in index order to reach total g."""
    mu = tuple(mu)
    total = sum(mu)
    if total % 2:
        raise ValueError("mu must be a partition of an even number 2g")
    g = total // 2
    if not 1 <= k <= len(mu):
        raise ValueError("index k out of range")
    if mu[k - 1] > g:
        raise ValueError("no k-saturated partition exists when m_k > g")
    alpha = [0] * len(mu)
    alpha[k - 1] = mu[k - 1]
    left = g - mu[k - 1]
    for j, m in enumerate(mu):
        if j == k - 1 or left == 0:
            continue
        take = min(m, left)
        alpha[j] = take
        left -= take
    if left:
        raise AssertionError("saturation fill failed")
    return tuple(alpha)


def class_with_twist_bounds(g: int, mu: Sequence[int], alpha: Sequence[int],
                            graphs: Mapping[str, LevelGraph]) -> DivisorClass:
    """The effective genus-(g+1) class that avoids Gamma_1 in its support:
    the raw degeneracy-locus class minus the exact Gamma_1 multiplicity
    g(g-1)/2 + 1 and, on every other boundary divisor, the guaranteed
    twist gain plus the vanishing order ell (v_top - 1)/2."""
    validate_weierstrass_alpha(mu, alpha)
    alpha_bot = Fraction(sum(alpha))
    boundary: Dict[str, Fraction] = {}
    for enc, graph in graphs.items():
        if is_gamma1(graph, g):
            boundary[enc] = -(Fraction(g * (g - 1), 2) + 1)
            continue
        inv = graph_invariants(graph)
        m_bot = Fraction(sum(graph.bottom_legs))
        twist_gain = ((inv.ell // 2) * (alpha_bot - m_bot / 2)
                      + Fraction(inv.ell, 8) * (inv.P - inv.P_minus1))
        vanishing = Fraction(inv.ell * (inv.v_top - 1), 2)
        boundary[enc] = -(twist_gain + vanishing)
    psi = tuple(Fraction(a * (a + 1), 2) for a in alpha)
    return DivisorClass(lam=Fraction(-1), psi=psi, xi=Fraction(1), boundary=boundary)


def wplus_derivation_check(g: int, mu: Sequence[int], k: int) -> PullbackReport:
    """Pull the twist-corrected genus-(g+1) class back and compare it with
    the raw form of the extra-vanishing Weierstrass class, coordinate by
    coordinate over the image correspondence."""
    mu = tuple(mu)
    if sum(mu) != 2 * g or any(m < 1 for m in mu):
        raise ValueError("mu must be a positive partition of 2g")
    if not 1 <= k <= len(mu) or mu[k - 1] > g:
        raise ValueError("invalid saturation index")
    alpha = saturated_alpha(mu, k)
    graphs = image_correspondence(g, mu)
    upstairs = class_with_twist_bounds(g, mu, alpha, graphs)
    pulled = zeta_pull_class(upstairs, g, graphs)
    target = wplus_class(g, enumerate_level_graphs(g), form="raw")
    diffs = pulled.coefficient_diffs(target)
    return PullbackReport(match=not diffs, coordinate_diffs=diffs)
