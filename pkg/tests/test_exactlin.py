import random
from fractions import Fraction

import pytest
import sympy

from ftft.errors import StructuralError
from ftft.exactlin import (I, ONE, ZERO, ExactMatrix, GaussianScalar, Solver, conjugate, format_scalar, kernel,
                           parse_scalar, rank, solve, solve_many)


def rand_matrix(rng, r, c):
    return ExactMatrix([[GaussianScalar(rng.randint(-2, 2), rng.choice([0, 0, 1, -1])) for _ in range(c)]
                        for _ in range(r)], c)


def to_sympy(M: ExactMatrix):
    conv = lambda x: sympy.Rational(str(x.re)) + sympy.I * sympy.Rational(str(x.im))
    return sympy.Matrix(M.rows, M.cols, lambda r, c: conv(M[r, c]))


def test_field_axioms_and_parse():
    a, b = parse_scalar("1/2-3i"), parse_scalar("2+i")
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert a / a == ONE
    assert conjugate(a) * a == GaussianScalar(Fraction(37, 4), 0)
    assert I * I == -ONE
    for s in ["0", "1", "-i", "3/4+5/7i", "-2-i"]:
        x = parse_scalar(s)
        assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("seed", range(6))
def test_rank_and_kernel_against_sympy(seed):
    rng = random.Random(seed)
    M = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    assert rank(M) == to_sympy(M).rank()
    K = kernel(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert all(x == ZERO for x in M.apply(v))


@pytest.mark.parametrize("seed", range(6))
def test_solve_and_reusable_solver(seed):
    rng = random.Random(100 + seed)
    M = rand_matrix(rng, 4, 3)
    x = [GaussianScalar(rng.randint(-3, 3), rng.randint(-1, 1)) for _ in range(3)]
    b = M.apply(x)
    S = Solver(M)
    for y in (solve(M, b), S(b), solve_many(M, [b])[0]):
        assert y is not None and M.apply(y) == b
    # conj of a left-kernel vector is Hermitian-orthogonal to the column space
    y = kernel(M.transpose())[0]
    assert S([conjugate(z) for z in y]) is None


def test_inconsistent_and_shape_errors():
    M = ExactMatrix([[1, 0], [0, 0]])
    assert solve(M, [0, 1]) is None
    with pytest.raises(StructuralError):
        Solver(M)([1, 2, 3])
