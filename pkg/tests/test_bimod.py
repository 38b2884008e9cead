import pytest

from ftft.bimod import (Bimodule, MoritaContext, check_bimodule, check_bimodule_map, check_serre_naturality,
                        direct_sum_bimodule, dual_bimodule, hom_even, induced_composition, invertible_by_ranks,
                        is_invertible, map_from_pure, op_tensor_iso, parity_automorphism, parity_bimodule,
                        parity_naturality, parity_shift, parity_square, rebase, regular, right_adjoint, serre,
                        serre_naturality, serre_naturality_oracle, tensor_over, trace_witness)
from ftft.errors import StructuralError
from ftft.exactlin import ONE, ExactMatrix
from ftft.repro import random_bimodules
from ftft.salg import Superalgebra, complex_clifford, ground_field, matrix_superalgebra

C = ground_field("C")


def algebras():
    return [C, complex_clifford(1), complex_clifford(2), matrix_superalgebra(1, 1)]


@pytest.mark.parametrize("A", algebras(), ids=lambda A: A.name)
def test_standard_bimodules_invertible(A):
    for M in (regular(A), parity_bimodule(A), parity_shift(regular(A))):
        assert check_bimodule(M).ok
        adj = right_adjoint(M)
        assert adj.report.ok
        ctx = is_invertible(M)
        assert ctx is not None and invertible_by_ranks(M)
        S, O = serre_naturality(ctx), serre_naturality_oracle(ctx)
        assert S.matrix == O.matrix
        assert check_serre_naturality(ctx).ok


def test_random_corpus_snakes_and_ranks():
    Ms = random_bimodules(seed=7, count=10)
    for M in Ms:
        assert M.dim <= 4 and check_bimodule(M).ok
        assert right_adjoint(M).report.ok
        assert (is_invertible(M) is not None) == invertible_by_ranks(M)


def test_direct_sum_not_invertible_and_rebase_even_only():
    M = direct_sum_bimodule(regular(C), regular(C))
    assert check_bimodule(M).ok and not invertible_by_ranks(M) and is_invertible(M) is None
    N = direct_sum_bimodule(regular(C), parity_shift(regular(C)))
    with pytest.raises(StructuralError):
        rebase(N, [[1, 1], [0, 1]])
    R = rebase(regular(complex_clifford(1)), [[1, 0], [0, 2]])
    assert check_bimodule(R).ok and invertible_by_ranks(R)


def test_non_projective_module_has_no_adjoint():
    D = Superalgebra([0, 0], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [1, 0], "C", ["1", "x"])
    M = Bimodule(D, C, [0], [[[1]], [[0]]], [[[1]]])
    assert check_bimodule(M).ok
    assert not right_adjoint(M).report.ok


def test_bad_action_caught():
    A = complex_clifford(1)
    M = regular(A)
    left = [[list(v) for v in row] for row in M.left_act]
    left[1][1] = [ONE * 2, ONE * 0]
    bad = Bimodule(A, A, M.parity, left, M.right_act)
    assert not check_bimodule(bad).ok


def test_pi_c_serre_is_minus_one():
    Pi = Bimodule(C, C, [1], [[[1]]], [[[1]]])
    ctx = MoritaContext(Pi, Pi, map_from_pure(tensor_over(Pi, Pi), regular(C), lambda i, j: [ONE]))
    assert serre_naturality(ctx).matrix == ExactMatrix([[-1]])
    assert serre_naturality_oracle(ctx).matrix == ExactMatrix([[-1]])


def test_parity_bimodule_serre_sign():
    A = complex_clifford(2)
    P = parity_bimodule(A)
    S = serre_naturality(is_invertible(P))
    SA = serre(A)
    x = P.basis(0)
    for k in range(A.dim):
        lhs = S(S.source.pure(SA.basis(k), x))
        assert lhs == S.target.pure(x, [v * (-1 if A.parity[k] else 1) for v in SA.basis(k)])


def test_structural_maps():
    A = complex_clifford(1)
    ph = parity_automorphism(A)
    for f in (parity_square(A), induced_composition(ph, ph), op_tensor_iso(parity_bimodule(A), regular(A)),
              parity_naturality(parity_bimodule(A))):
        assert check_bimodule_map(f).ok and f.is_iso()
    assert dual_bimodule(regular(A)).report.ok
    assert len(hom_even(regular(A), regular(A))) == 1
    tw = trace_witness(matrix_superalgebra(2, 0), [1, 0, 0, 1])
    assert check_bimodule_map(tw).ok and tw.is_iso()
