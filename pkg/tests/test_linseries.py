import random

import pytest

from stratacert.linseries import (
    COMPATIBLE,
    INCOMPATIBLE,
    REFINED,
    VanishingSequence,
    canonical_vanishing_orders,
    complementary_sequence,
    is_compatible,
    k_saturated_check,
)


def even_spin_node_sequence(g: int) -> VanishingSequence:
    # vanishing orders of the extended canonical series at the node
    entries = (0,) + tuple(range(2, g)) + (g + 1, 2 * g)
    return VanishingSequence(entries, 2 * g)


def test_sequence_validation():
    with pytest.raises(ValueError):
        VanishingSequence((0, 0, 1), 3)
    with pytest.raises(ValueError):
        VanishingSequence((0, 5), 4)
    with pytest.raises(ValueError):
        VanishingSequence((), 4)
    s = VanishingSequence((0, 2, 3), 4)
    assert s.r == 2


def test_complement_of_even_spin_sequence():
    for g in (4, 6, 9, 31):
        comp = complementary_sequence(even_spin_node_sequence(g))
        expected = (0, g - 1) + tuple(range(g + 1, 2 * g - 1)) + (2 * g,)
        assert comp.entries == expected


def test_complement_fixed_points_and_involution():
    s = VanishingSequence(tuple(range(5)), 4)
    assert complementary_sequence(s) == s
    rng = random.Random(11)
    for _ in range(200):
        d = rng.randint(1, 30)
        size = rng.randint(1, d + 1)
        entries = tuple(sorted(rng.sample(range(d + 1), size)))
        s = VanishingSequence(entries, d)
        assert complementary_sequence(complementary_sequence(s)) == s


def test_compatibility():
    s = VanishingSequence((0, 2, 5), 6)
    assert is_compatible(s, complementary_sequence(s)) == REFINED
    hyp = canonical_vanishing_orders(4, "hyp")
    assert is_compatible(hyp, hyp) == REFINED
    a = VanishingSequence((0, 1), 3)
    assert is_compatible(a, a) == INCOMPATIBLE
    b = VanishingSequence((0, 3), 3)
    c = VanishingSequence((1, 3), 3)
    assert is_compatible(b, c) == COMPATIBLE
    with pytest.raises(ValueError):
        is_compatible(a, VanishingSequence((0, 1), 4))


def test_refined_pairing_property():
    rng = random.Random(99)
    for _ in range(200):
        d = rng.randint(1, 40)
        size = rng.randint(1, d + 1)
        entries = tuple(sorted(rng.sample(range(d + 1), size)))
        s = VanishingSequence(entries, d)
        assert is_compatible(s, complementary_sequence(s)) == REFINED


def test_canonical_vanishing_orderss():
    assert canonical_vanishing_orders(2, "hyp").entries == (0, 2)
    assert canonical_vanishing_orders(3, "odd").entries == (0, 1, 4)
    assert canonical_vanishing_orders(4, "even").entries == (0, 1, 3, 6)
    for g, comp in [(5, "hyp"), (5, "odd"), (5, "even"), (9, "even")]:
        s = canonical_vanishing_orders(g, comp)
        assert s.d == 2 * g - 2
        assert s.r == g - 1
        assert s.entries[-1] == 2 * g - 2
    with pytest.raises(ValueError):
        canonical_vanishing_orders(3, "even")
    with pytest.raises(ValueError):
        canonical_vanishing_orders(2, "odd")
    with pytest.raises(ValueError):
        canonical_vanishing_orders(4, "spin")


def test_k_saturated_check():
    for g in (3, 4, 7):
        assert k_saturated_check((g, g), (g, 0), 1)
    # m_k too large: no saturated chain can exist
    assert not k_saturated_check((6, 2), (6, 2), 1)  # g = 4 < 6
    assert not k_saturated_check((4, 4), (3, 1), 1)
    assert not k_saturated_check((4, 4), (4, 1), 1)  # wrong total
    assert not k_saturated_check((4, 4), (4, 0), 3)  # k out of range
    assert k_saturated_check((2, 4, 2), (2, 1, 1), 1)
