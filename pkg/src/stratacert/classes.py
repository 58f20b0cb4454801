"""Divisor classes in the Picard basis (lambda, psi, xi, D_h, {D_Gamma})
and their exact conversion to the reduced basis (lambda, D_h, {D_Gamma}).

Boundary coordinates are keyed by canonical graph encodings.  Each class
builder also exposes a per-graph coefficient helper so that large atlases
can be processed streaming without materializing the full boundary map.

The kappa value of a bottom level is evaluated here directly on the full
bottom signature (legs plus a pole of order -p-1 per edge); the graph
module derives the same quantity through the prong identity
``kappa_bot = kappa_legs - (P - P_{-1})``, and the identity suite checks
that the two routes agree on every enumerated graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .exactq import parse_rational, rational_str
from .graphs import (
    DELTA_IRR,
    GraphInvariants,
    LevelGraph,
    canonical_encoding,
    graph_invariants,
)

Signature = Tuple[int, ...]
AlphaPartition = Tuple[int, ...]


def kappa_mu(orders: Sequence[int]) -> Fraction:
    """sum over entries m != -1 of m(m+2)/(m+1)."""
    total = Fraction(0)
    for m in orders:
        if m != -1:
            total += Fraction(m * (m + 2), m + 1)
    return total


def theta(orders: Sequence[int], alpha: Sequence[int]) -> Fraction:
    """sum of a(a+1)/(2(m+1)) over paired entries of the two partitions."""
    if len(orders) != len(alpha):
        raise ValueError("theta: signature and alpha have different lengths")
    total = Fraction(0)
    for m, a in zip(orders, alpha):
        total += Fraction(a * (a + 1), 2 * (m + 1))
    return total


def kappa_minimal(g: int) -> Fraction:
    """kappa of the minimal signature (2g-2); equals 4g(g-1)/(2g-1)."""
    return Fraction(4 * g * (g - 1), 2 * g - 1)


def _q(g: int) -> Fraction:
    # the recurring scale kappa_{(2g-2)} / 2g
    return Fraction(2 * g - 2, 2 * g - 1)


# ---------------------------------------------------------------------------
# the class vector


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class with exact rational coordinates.

    ``psi`` is a tuple: length one on a single-marked-point stratum, one
    entry per marked point otherwise, empty when the class has no psi
    part.  ``boundary`` maps canonical graph encodings to coefficients.
    """

    lam: Fraction = Fraction(0)
    d_h: Fraction = Fraction(0)
    psi: tuple = ()
    xi: Fraction = Fraction(0)
    boundary: Mapping[str, Fraction] = field(default_factory=dict)

    def psi_padded(self, n: int) -> tuple:
        return self.psi + (Fraction(0),) * (n - len(self.psi))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        n = max(len(self.psi), len(other.psi))
        bd = dict(self.boundary)
        for k, v in other.boundary.items():
            bd[k] = bd.get(k, Fraction(0)) + v
        return DivisorClass(
            self.lam + other.lam,
            self.d_h + other.d_h,
            tuple(a + b for a, b in zip(self.psi_padded(n), other.psi_padded(n))),
            self.xi + other.xi,
            bd,
        )

    def scaled(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(
            self.lam * c,
            self.d_h * c,
            tuple(a * c for a in self.psi),
            self.xi * c,
            {k: v * c for k, v in self.boundary.items()},
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return (self.lam == 0 and self.d_h == 0 and self.xi == 0
                and all(a == 0 for a in self.psi)
                and all(v == 0 for v in self.boundary.values()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return (self - other).is_zero()

    def coefficient_diffs(self, other: "DivisorClass") -> dict:
        """Nonzero coordinates of self - other, keyed by symbol name."""
        diff = self - other
        out = {}
        if diff.lam:
            out["lambda"] = diff.lam
        if diff.d_h:
            out["d_h"] = diff.d_h
        for i, a in enumerate(diff.psi):
            if a:
                out[f"psi_{i + 1}"] = a
        if diff.xi:
            out["xi"] = diff.xi
        for k, v in diff.boundary.items():
            if v:
                out[k] = v
        return out

    def to_json(self) -> dict:
        psi: object
        if not self.psi:
            psi = "0"
        elif len(self.psi) == 1:
            psi = rational_str(self.psi[0])
        else:
            psi = [rational_str(a) for a in self.psi]
        return {
            "lambda": rational_str(self.lam),
            "d_h": rational_str(self.d_h),
            "psi": psi,
            "xi": rational_str(self.xi),
            "boundary": {k: rational_str(v) for k, v in sorted(self.boundary.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        raw_psi = data.get("psi", "0")
        if isinstance(raw_psi, list):
            psi = tuple(parse_rational(a) for a in raw_psi)
        else:
            value = parse_rational(raw_psi)
            psi = (value,) if value else ()
        return cls(
            parse_rational(data.get("lambda", "0")),
            parse_rational(data.get("d_h", "0")),
            psi,
            parse_rational(data.get("xi", "0")),
            {k: parse_rational(v) for k, v in data.get("boundary", {}).items()},
        )


@dataclass(frozen=True)
class ClassContext:
    """Everything reduce() needs: the stratum signature and, per graph,
    the enhancement scale and the bottom-level kappa.

    Valid only when the marked legs sit on the bottom vertex of every
    graph in the set, which holds for the minimal-stratum atlas and for
    the clutching image correspondence.
    """

    genus: int
    orders: tuple
    ell: Mapping[str, int]
    kappa_bot: Mapping[str, Fraction]

    @classmethod
    def from_graphs(cls, genus: int, orders: Sequence[int],
                    graphs: Iterable[LevelGraph]) -> "ClassContext":
        ell: Dict[str, int] = {}
        kb: Dict[str, Fraction] = {}
        for graph in graphs:
            if graph.has_top_legs():
                raise ValueError("ClassContext requires all legs on the bottom vertex")
            inv = graph_invariants(graph)
            ell[inv.encoding] = inv.ell
            kb[inv.encoding] = kappa_mu(graph.bottom_orders())
        return cls(genus, tuple(orders), ell, kb)

    @property
    def kappa(self) -> Fraction:
        return kappa_mu(self.orders)


def reduce_class(c: DivisorClass, ctx: ClassContext) -> DivisorClass:
    """Eliminate psi and xi, leaving (lambda, D_h, boundary) coordinates.

    Uses, in order, the per-leg relation
        psi_i = (xi + sum_Gamma ell_Gamma D_Gamma) / (m_i + 1)
    and the tautological relation
        kappa_mu * xi = 12 lambda - D_h - sum_Gamma ell_Gamma kappa_bot D_Gamma.
    Idempotent: a class with no psi/xi part is returned unchanged.
    """
    lam, d_h, xi = c.lam, c.d_h, c.xi
    boundary = dict(c.boundary)
    if any(c.psi):
        for i, coeff in enumerate(c.psi):
            if not coeff:
                continue
            m = ctx.orders[i]
            xi += coeff / (m + 1)
            for enc, ell in ctx.ell.items():
                boundary[enc] = boundary.get(enc, Fraction(0)) + coeff * ell / (m + 1)
    if xi:
        kappa = ctx.kappa
        lam += 12 * xi / kappa
        d_h += -xi / kappa
        for enc, ell in ctx.ell.items():
            boundary[enc] = (boundary.get(enc, Fraction(0))
                             - xi * ell * ctx.kappa_bot[enc] / kappa)
    return DivisorClass(lam, d_h, (), Fraction(0), boundary)


# ---------------------------------------------------------------------------
# per-graph boundary coefficients (streaming-friendly)


def boundary_coeff_canonical(graph: LevelGraph, hbb_shape_test: bool = True) -> Fraction:
    """D_Gamma coefficient of the scaled canonical class (kappa/2g) c1(K)."""
    g = graph.genus
    inv = graph_invariants(graph, hbb_shape_test)
    kappa_bot = kappa_mu(graph.bottom_orders())
    coeff = -(inv.ell * kappa_bot - _q(g) * (inv.ell * inv.N_bot - 1))
    if inv.delta_H:
        coeff -= _q(g)
    return coeff


def boundary_coeff_dnc(graph: LevelGraph) -> Fraction:
    return graph_invariants(graph).b_NC


def boundary_coeff_bn(graph: LevelGraph) -> Fraction:
    """b_Gamma of the Brill--Noether class (odd genus)."""
    g = graph.genus
    inv = graph_invariants(graph)
    total = Fraction(0)
    for p, target in zip(graph.prongs(), inv.delta_assignments):
        if target == DELTA_IRR:
            total += Fraction(g + 1, (g + 3) * p)
        else:
            i = target
            total += Fraction(6 * i * (g - i), (g + 3) * p)
    return inv.ell * total


def boundary_coeff_hur(graph: LevelGraph) -> Fraction:
    """h_Gamma of the Hurwitz class (even genus)."""
    g = graph.genus
    inv = graph_invariants(graph)
    den = (g + 8) * (3 * g - 1)
    total = Fraction(0)
    for p, target in zip(graph.prongs(), inv.delta_assignments):
        if target == DELTA_IRR:
            total += Fraction(3 * g * g + 12 * g - 6, den * p)
        else:
            i = target
            total += Fraction(6 * i * (g - i) * (3 * g + 4), den * p)
    return inv.ell * total


def wplus_w_lambda(g: int) -> Fraction:
    return Fraction(g + 11, 2 * g - 2)


def wplus_w_hor(g: int) -> Fraction:
    return Fraction(g + 3, 8 * g - 8)


def wplus_w_gamma(graph: LevelGraph) -> Fraction:
    """w_Gamma of the reduced form of the extra-vanishing Weierstrass class."""
    g = graph.genus
    kappa_bot = kappa_mu(graph.bottom_orders())
    kappa = kappa_minimal(g)
    return (kappa_bot / kappa * (1 + Fraction(1, 2 * g - 1))
            - Fraction(1, 2 * g - 1)
            + Fraction(graph.v_top - 1, 2))


# ---------------------------------------------------------------------------
# class builders


def scaled_canonical_class(g: int, graphs: Iterable[LevelGraph],
                           hbb_shape_test: bool = True) -> DivisorClass:
    """(kappa_{(2g-2)}/2g) c1(K) in the reduced basis.

    The HBB correction is carried on the same D_Gamma coordinate, guarded
    by the delta_H shape test.
    """
    if g < 2:
        raise ValueError("genus must be >= 2")
    boundary = {
        canonical_encoding(graph): boundary_coeff_canonical(graph, hbb_shape_test)
        for graph in graphs
    }
    return DivisorClass(lam=Fraction(12), d_h=-(1 + _q(g)), boundary=boundary)


def d_nc_class(g: int, graphs: Iterable[LevelGraph]) -> DivisorClass:
    """The non-canonical compensation divisor: b_NC per graph, no other parts."""
    boundary = {canonical_encoding(gr): boundary_coeff_dnc(gr) for gr in graphs}
    return DivisorClass(boundary=boundary)


def bn_class(g: int, graphs: Iterable[LevelGraph]) -> DivisorClass:
    """The pullback Brill--Noether divisor class; odd genus >= 3 only."""
    if g < 3 or g % 2 == 0:
        raise ValueError("Brill--Noether class requires odd genus >= 3")
    boundary = {canonical_encoding(gr): -boundary_coeff_bn(gr) for gr in graphs}
    return DivisorClass(lam=Fraction(6), d_h=-Fraction(g + 1, g + 3), boundary=boundary)


def hur_class(g: int, graphs: Iterable[LevelGraph]) -> DivisorClass:
    """The pullback Hurwitz divisor class; even genus >= 6 only."""
    if g < 6 or g % 2 == 1:
        raise ValueError("Hurwitz class requires even genus >= 6")
    d_h = -Fraction(3 * g * g + 12 * g - 6, (g + 8) * (3 * g - 1))
    boundary = {canonical_encoding(gr): -boundary_coeff_hur(gr) for gr in graphs}
    return DivisorClass(lam=Fraction(6), d_h=d_h, boundary=boundary)


def wplus_class(g: int, graphs: Iterable[LevelGraph], form: str = "reduced") -> DivisorClass:
    """The extra-vanishing Weierstrass class on the even-spin minimal stratum.

    ``form="raw"`` is the psi/lambda/xi expression with the twist and
    vanishing-order boundary corrections; ``form="reduced"`` the
    (w_lambda, w_hor, w_Gamma) expression.  reduce_class(raw) equals
    reduced coordinate-by-coordinate.
    """
    if g < 4:
        raise ValueError("extra-vanishing Weierstrass class requires genus >= 4")
    if form == "raw":
        psi0 = Fraction(g * (g - 1), 2) + 1
        boundary = {}
        for graph in graphs:
            inv = graph_invariants(graph)
            coeff = ((inv.P - inv.P_minus1) / 8 + Fraction(inv.v_top - 1, 2)) * inv.ell
            boundary[inv.encoding] = -coeff
        return DivisorClass(lam=Fraction(-1), psi=(psi0,), xi=Fraction(1),
                            boundary=boundary)
    if form == "reduced":
        boundary = {}
        for graph in graphs:
            inv = graph_invariants(graph)
            boundary[inv.encoding] = -wplus_w_gamma(graph) * inv.ell
        return DivisorClass(lam=wplus_w_lambda(g), d_h=-wplus_w_hor(g),
                            boundary=boundary)
    raise ValueError(f"unknown form: {form!r}")


def validate_weierstrass_alpha(orders: Sequence[int], alpha: Sequence[int]) -> int:
    """Check the (signature, alpha) pair of a generalized Weierstrass class.

    Requires a positive signature with even total 2g' - 2, entries
    0 <= alpha_i <= m_i, and sum(alpha) = g' - 1.  Returns g'.
    """
    if len(orders) != len(alpha):
        raise ValueError("alpha and signature have different lengths")
    if any(m < 1 for m in orders):
        raise ValueError("signature entries must be positive")
    total = sum(orders)
    if total % 2:
        raise ValueError("signature total must be even")
    g_prime = total // 2 + 1
    if any(a < 0 or a > m for a, m in zip(alpha, orders)):
        raise ValueError("alpha entries must satisfy 0 <= alpha_i <= m_i")
    if sum(alpha) != g_prime - 1:
        raise ValueError("alpha must be a partition of g' - 1")
    return g_prime


def gen_weierstrass_class(orders: Sequence[int], alpha: Sequence[int],
                          graphs: Iterable[LevelGraph], form: str = "reduced") -> DivisorClass:
    """The generalized Weierstrass class for a stratum of signature
    ``orders`` (a positive partition of 2g' - 2) and twist data ``alpha``.

    The boundary sum runs over the supplied graph set; each graph must
    carry the signature legs on its bottom vertex.
    """
    g_prime = validate_weierstrass_alpha(orders, alpha)
    kappa = kappa_mu(orders)
    v_theta = theta(orders, alpha)
    if form == "raw":
        psi = tuple(Fraction(a * (a + 1), 2) for a in alpha)
        return DivisorClass(lam=Fraction(-1), psi=psi, xi=Fraction(1))
    if form == "reduced":
        boundary = {}
        for graph in graphs:
            if tuple(sorted(graph.bottom_legs)) != tuple(sorted(orders)):
                raise ValueError("graph legs do not match the signature")
            inv = graph_invariants(graph)
            kappa_bot = kappa_mu(graph.bottom_orders())
            # bottom-level theta: legs keep their alpha, edge legs get 0
            theta_bot = theta(graph.bottom_legs, _aligned_alpha(orders, alpha, graph))
            coeff = -inv.ell * (kappa_bot / kappa * (1 + v_theta) - theta_bot)
            boundary[inv.encoding] = coeff
        lam = Fraction(12 + 12 * v_theta - kappa, 1) / kappa
        d_h = -(1 + v_theta) / kappa
        return DivisorClass(lam=lam, d_h=d_h, boundary=boundary)
    raise ValueError(f"unknown form: {form!r}")


def _aligned_alpha(orders, alpha, graph: LevelGraph) -> tuple:
    # bottom legs are stored sorted; realign alpha accordingly
    paired = sorted(zip(orders, alpha))
    return tuple(a for _, a in paired)


def twist_improvement_bound(inv: GraphInvariants, alpha_bot, m_bot) -> Fraction:
    """Guaranteed coefficient gain of the twisted Weierstrass divisor."""
    alpha_bot = Fraction(alpha_bot)
    m_bot = Fraction(m_bot)
    return ((inv.ell // 2) * (alpha_bot - m_bot / 2)
            + Fraction(inv.ell, 8) * (inv.P - inv.P_minus1))
