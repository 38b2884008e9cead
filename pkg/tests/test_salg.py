from itertools import product

import pytest

from ftft.exactlin import ONE, ZERO, rank
from ftft.salg import (Superalgebra, center, check_superalgebra, clifford, complex_clifford, direct_sum, fingerprint,
                       is_semisimple, is_superdivision, iso_witness_check, matrix_superalgebra, opposite,
                       parity_extension, parity_extension_case, parity_extension_witness, radical_bruteforce,
                       signature, supercenter, tensor, trace_form)

DUAL = lambda: Superalgebra([0, 0], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [1, 0], "R", ["1", "x"])


@pytest.mark.parametrize("p,q", [(p, n - p) for n in range(4) for p in range(n + 1)])
def test_clifford_axioms(p, q):
    A = clifford(p, q)
    assert A.dim == 2 ** (p + q)
    assert check_superalgebra(A).ok
    assert is_semisimple(A)
    assert len(supercenter(A)) == 1


def test_broken_associativity_caught():
    A = clifford(1, 0)
    mult = {(i, j): dict(A.mult[i][j]) for i in range(2) for j in range(2)}
    mult[(1, 1)] = {0: -ONE, 1: ONE}  # mixes parities
    bad = Superalgebra(A.parity, mult, A.unit, "R", A.names)
    assert not check_superalgebra(bad).ok


def _homogeneous_zero_divisor(A):
    for cs in product((-1, 0, 1), repeat=A.dim):
        if not any(cs):
            continue
        x = list(map(lambda c: ONE * c, cs))
        if A.degree(x) is None:
            continue
        if rank(A.L(x)) < A.dim:
            return x
    return None


@pytest.mark.parametrize("p,q", [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1)])
def test_superdivision_against_search(p, q):
    A = clifford(p, q)
    assert is_superdivision(A) == (_homogeneous_zero_divisor(A) is None)


def test_radical_of_dual_numbers():
    D = DUAL()
    assert not is_semisimple(D)
    assert radical_bruteforce(D) == [[ZERO, ONE]]


def test_trace_signatures():
    assert signature(trace_form(clifford(1, 0))) == (2, 0, 0)
    assert signature(trace_form(clifford(0, 1))) == (1, 1, 0)


def test_tensor_and_iso_invariants():
    assert fingerprint(tensor(clifford(1, 0), clifford(1, 0))) == fingerprint(clifford(2, 0))
    assert fingerprint(clifford(1, 1)) == fingerprint(matrix_superalgebra(1, 1, "R"))
    assert fingerprint(opposite(clifford(1, 0))) == fingerprint(clifford(0, 1))
    S = direct_sum(clifford(0, 0), clifford(0, 0))
    assert len(center(S)) == 2 and check_superalgebra(S).ok
    assert complex_clifford(2).field == "C" and check_superalgebra(complex_clifford(2)).ok


@pytest.mark.parametrize("p,q", [(p, n - p) for n in range(4) for p in range(n + 1)])
def test_parity_extension_cases(p, q):
    case, B, f, sign = parity_extension_witness(p, q)
    E = parity_extension(clifford(p, q))
    assert case == parity_extension_case(p, q)
    assert sign == (1 if (p - q) % 4 in (0, 3) else -1)
    assert iso_witness_check(B, E, f.matrix)
