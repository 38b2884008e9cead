from itertools import product

import pytest

from ftft import gf2
from ftft.errors import UnsupportedInput
from ftft.fgroup import (FermionicGroup, check_fermionic_group, dihedral8, fermionic_tensor, find_isomorphism,
                         iso_witness_check, opposite, pin1_minus, pin1_plus, quaternion_group,
                         spacetime_group_1d, split_bosonic, z2c)

ALL = [pin1_plus, pin1_minus, z2c, quaternion_group, dihedral8, split_bosonic]


@pytest.mark.parametrize("make", ALL)
def test_fixture_groups_valid(make):
    G = make()
    assert check_fermionic_group(G).ok
    assert G.mul(G.c, G.c) == G.unit
    assert all(G.mul(G.c, g) == G.mul(g, G.c) for g in G.elements)


def test_broken_grading_reported():
    G = pin1_plus()
    bad = FermionicGroup(G.elements, G.mul, G.unit, G.c, {"1": 0, "c": 1, "T": 1, "cT": 1})
    r = check_fermionic_group(bad)
    assert not r.ok


def test_tensor_is_q8_by_exhaustive_search():
    P = pin1_minus()
    G = fermionic_tensor(P, P)
    Q = quaternion_group()
    # oracle: try every bijection respecting theta
    hits = 0
    qs = Q.elements
    for a, b in product(qs, repeat=2):
        x, y = G.canon("T", "1"), G.canon("1", "T")
        imgs = {}
        for w in product(range(4), range(4), range(2)):
            g = G.prod(*([x] * w[0] + [y] * w[1] + [G.c] * w[2])) if any(w) else G.unit
            h = Q.prod(*([a] * w[0] + [b] * w[1] + [Q.mul(a, a)] * w[2])) if any(w) else Q.unit
            if imgs.setdefault(g, h) != h:
                break
        else:
            if len(imgs) == 8 and iso_witness_check(G, Q, imgs):
                hits += 1
    assert hits > 0
    assert find_isomorphism(G, Q) is not None
    assert find_isomorphism(G, dihedral8()) is None


def test_spacetime_1d_swaps_pins():
    assert find_isomorphism(spacetime_group_1d(pin1_plus()), pin1_minus()) is not None
    assert find_isomorphism(spacetime_group_1d(pin1_minus()), pin1_plus()) is not None
    assert find_isomorphism(spacetime_group_1d(z2c()), z2c()) is not None
    Q = quaternion_group()
    O = opposite(Q)
    # the twist c^{theta theta'} turns order-4 odd elements into involutions
    assert find_isomorphism(O, dihedral8()) is not None
    OO = opposite(O)
    assert all(OO.mul(a, b) == Q.mul(a, b) for a in Q.elements for b in Q.elements)


def test_tensor_needs_nontrivial_c():
    with pytest.raises(UnsupportedInput):
        fermionic_tensor(split_bosonic(), FermionicGroup(["1"], lambda a, b: "1", "1", "1", {"1": 0}))


@pytest.mark.parametrize("make", [pin1_plus, pin1_minus, z2c, split_bosonic])
def test_h2_matches_bruteforce(make):
    G = make()
    assert 2 ** gf2.cohomology_dim(G, 2) == gf2.h2_bruteforce(G)


def test_known_cohomology():
    # H^1, H^2 with Z2 coefficients of Z4, Z2^2, Q8, D8
    want = {pin1_minus: (1, 1), pin1_plus: (2, 3), quaternion_group: (2, 2), dihedral8: (2, 3)}
    for make, (h1, h2) in want.items():
        G = make()
        assert (gf2.cohomology_dim(G, 1), gf2.cohomology_dim(G, 2)) == (h1, h2)
