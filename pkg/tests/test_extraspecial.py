import itertools
from collections import Counter

import numpy as np
import pytest

from conftest import pauli_image
from espwalk.extraspecial import (
    IDENTITY,
    Z,
    ExtraspecialGroup,
    GroupElement,
    IsoType,
    class_structure_p,
    construct,
)

@pytest.mark.parametrize("n,iso", [(1, "plus"), (1, "minus"), (2, "plus"), (2, "minus")])
def test_pauli_representation_is_faithful_homomorphism(n, iso):
    G = construct(n, iso)
    els = G.elements()
    images = {g: pauli_image(G, g) for g in els}
    keys = {images[g].round(8).tobytes() for g in els}
    assert len(keys) == G.order
    for a, b in itertools.product(els, repeat=2):
        assert np.allclose(images[a] @ images[b], images[G.mul(a, b)])


def _order_histogram(G):
    return Counter(G.element_order(g) for g in G.elements())


def test_small_group_types():
    assert construct(1, IsoType.PLUS).order == 8
    assert _order_histogram(construct(1, "plus"))[4] == 2
    assert _order_histogram(construct(1, "minus"))[4] == 6
    G = construct(2, IsoType.PLUS)
    assert G.order == 32 and len(G.center()) == 2
    with pytest.raises(ValueError):
        construct(0)


def test_multiplication_examples():
    G = construct(1, "plus")
    a, b = GroupElement(0b10, 0), GroupElement(0b01, 0)
    assert G.mul(Z, Z) == IDENTITY
    assert G.mul(a, b) == GroupElement(0b11, 1)
    assert G.mul(b, a) == GroupElement(0b11, 0)
    assert construct(1, "minus").inv(GroupElement(0b11, 0)) == GroupElement(0b11, 1)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("iso", list(IsoType))
def test_classes_match_brute_force_orbits(n, iso):
    G = ExtraspecialGroup(n, iso)
    els = G.elements()
    orbits = {frozenset(G.mul(G.mul(h, g), G.inv(h)) for h in els) for g in els}
    assert orbits == set(G.conjugacy_classes())
    assert len(orbits) == 2 ** (2 * n) + 1
    assert G.conjugacy_classes()[:2] == [frozenset({IDENTITY}), frozenset({Z})]
    for g in els:
        assert g in G.class_of(g)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("iso", list(IsoType))
def test_tables_agree_with_mul(n, iso):
    G = ExtraspecialGroup(n, iso)
    T, D, inv = G.mul_table(), G.quotient_table(), G.inv_array()
    rng = np.random.default_rng(n)
    for a, b in rng.integers(0, G.order, size=(200, 2)):
        ga, gb = GroupElement.from_index(int(a)), GroupElement.from_index(int(b))
        assert T[a, b] == G.mul(ga, gb).index
        assert D[a, b] == G.mul(ga, G.inv(gb)).index
        assert inv[a] == G.inv(ga).index
    assert not T.flags.writeable


def test_left_regular_is_permutation():
    G = construct(2, "minus")
    g = GroupElement(0b1011, 1)
    L = G.left_regular(g)
    assert (L.sum(axis=0) == 1).all() and (L.sum(axis=1) == 1).all()
    h = GroupElement(0b0110, 0)
    e = np.zeros(G.order)
    e[h.index] = 1
    assert (L @ e)[G.mul(g, h).index] == 1


def test_class_structure_examples():
    s = class_structure_p(2, 1)
    assert (s.nonlinear_support, s.order) == (2, 8)
    s = class_structure_p(3, 1)
    assert (s.nonlinear_count, s.nonlinear_degree, s.nonlinear_support, s.order) == (2, 3, 3, 27)
    s = class_structure_p(5, 2)
    assert (s.nonlinear_support, s.order) == (5, 3125)
    with pytest.raises(ValueError):
        class_structure_p(4, 1)


@pytest.mark.parametrize("p,n", list(itertools.product((2, 3, 5, 7), (1, 2, 3))))
def test_class_structure_counts_are_consistent(p, n):
    s = class_structure_p(p, n)
    assert sum(size * count for size, count in s.class_sizes) == s.order
    assert s.class_count == s.linear_count + s.nonlinear_count
    assert s.linear_count + s.nonlinear_count * s.nonlinear_degree**2 == s.order
