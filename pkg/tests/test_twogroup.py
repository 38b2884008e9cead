import pytest

from ftft.fgroup import FiniteGroup
from ftft.twogroup import (SkeletalTwoGroup, are_two_isomorphic, build_ferm_skeletal, bz, bz2f, check_ferm_model,
                           check_map_data, check_three_cocycle, enumerate_extension_maps, extension_map, o2_model,
                           pin2_minus_base, point, so2_times_z2, z2_target)

Z2 = lambda: FiniteGroup(["1", "r"], lambda a, b: "1" if a == b else "r", "1")


@pytest.mark.parametrize("make,count", [(point, 1), (bz, 2), (o2_model, 4), (pin2_minus_base, 2),
                                        (so2_times_z2, 4), (bz2f, 2)])
def test_extension_counts(make, count):
    Gb = make()
    assert check_three_cocycle(Gb).ok
    classes = enumerate_extension_maps(Gb)
    assert len(classes) == count
    tgt = z2_target()
    for ec in classes:
        assert check_map_data(Gb, extension_map(Gb, ec.Gamma, ec.Xi), tgt).ok
        assert check_ferm_model(build_ferm_skeletal(Gb, ec.Gamma, ec.Xi)).ok
    # distinct classes are not 2-isomorphic
    for a in classes:
        for b in classes:
            if a is not b and a.Gamma == b.Gamma:
                assert are_two_isomorphic(Gb, a.Xi, b.Xi) is None


def test_three_cocycle_condition():
    # 2 k(r,r,r) must vanish unless r acts by -1
    assert not check_three_cocycle(SkeletalTwoGroup(Z2(), [0], k={("r", "r", "r"): (1,)})).ok
    assert check_three_cocycle(SkeletalTwoGroup(Z2(), [2], k={("r", "r", "r"): (1,)})).ok
    assert check_three_cocycle(SkeletalTwoGroup(Z2(), [0], {"r": [[-1]]}, {("r", "r", "r"): (1,)})).ok
