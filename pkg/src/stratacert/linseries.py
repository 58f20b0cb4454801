"""Vanishing-sequence combinatorics for limit linear series.

Only the computable skeleton lives here: sequences, complementarity at a
node, the canonical-series sequences on the three component families, and
the saturation test for twist partitions.  Divisor-chain bookkeeping is
proof machinery and is not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass

INCOMPATIBLE = "incompatible"
COMPATIBLE = "compatible"
REFINED = "refined"


@dataclass(frozen=True)
class VanishingSequence:
    """Strictly increasing vanishing orders of a rank-r degree-d series."""

    entries: tuple
    d: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        e = self.entries
        if not e:
            raise ValueError("empty vanishing sequence")
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ValueError("vanishing orders must strictly increase")
        if e[0] < 0 or e[-1] > self.d:
            raise ValueError("vanishing orders must lie in [0, d]")

    @property
    def r(self) -> int:
        return len(self.entries) - 1

    def to_json(self) -> dict:
        return {"entries": list(self.entries), "d": self.d}


def complementary_sequence(a: VanishingSequence) -> VanishingSequence:
    """The sequence b_i = d - a_{r-i}; an involution."""
    return VanishingSequence(tuple(a.d - x for x in reversed(a.entries)), a.d)


def is_compatible(a_y: VanishingSequence, a_z: VanishingSequence) -> str:
    """Node compatibility of two aspects: a_i + a'_{r-i} >= d termwise.

    Returns "refined" when every inequality is an equality, "compatible"
    when all hold, "incompatible" otherwise.
    """
    if a_y.d != a_z.d or a_y.r != a_z.r:
        raise ValueError("sequences must share degree and rank")
    r, d = a_y.r, a_y.d
    sums = [a_y.entries[i] + a_z.entries[r - i] for i in range(r + 1)]
    if all(s == d for s in sums):
        return REFINED
    if all(s >= d for s in sums):
        return COMPATIBLE
    return INCOMPATIBLE


def canonical_vanishing_orders(g: int, component: str) -> VanishingSequence:
    """Vanishing orders of the canonical series at the unique zero of a
    generic curve in the hyperelliptic / odd / even component.
    """
    if component == "hyp":
        if g < 2:
            raise ValueError("hyperelliptic component requires g >= 2")
        entries = tuple(range(0, 2 * g - 1, 2))
    elif component == "odd":
        if g < 3:
            raise ValueError("odd component requires g >= 3")
        entries = tuple(range(g - 1)) + (2 * g - 2,)
    elif component == "even":
        if g < 4:
            raise ValueError("even component requires g >= 4")
        entries = tuple(range(g - 2)) + (g - 1, 2 * g - 2)
    else:
        raise ValueError(f"unknown component: {component!r}")
    return VanishingSequence(entries, 2 * g - 2)


def k_saturated_check(mu, alpha, k: int) -> bool:
    """Is alpha a k-saturated partition of g with respect to mu?

    mu must be a positive partition of 2g; the check is
    sum(alpha) = g, alpha_k = m_k, alpha_j <= m_j for all j, and
    m_k <= g (a saturated chain cannot exist otherwise).  ``k`` is
    1-based.
    """
    mu = tuple(mu)
    alpha = tuple(alpha)
    if len(mu) != len(alpha) or not 1 <= k <= len(mu):
        return False
    total = sum(mu)
    if total % 2 or total <= 0:
        return False
    g = total // 2
    if mu[k - 1] > g:
        return False
    if sum(alpha) != g or alpha[k - 1] != mu[k - 1]:
        return False
    return all(0 <= a <= m for a, m in zip(alpha, mu))
