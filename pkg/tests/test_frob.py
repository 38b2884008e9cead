import pytest

from ftft import fixtures
from ftft.exactlin import I, ONE, ExactMatrix
from ftft.fgroup import pin1_minus, spacetime_group_1d
from ftft.frob import (ALPHA_CELLS, FrobeniusStructure, TftBundle1D, alpha_oracle, alpha_twist_classes,
                       antilinear_obstruction, check_frobenius, check_frobenius_compat, check_graded_bundle,
                       check_tft1d, check_tft2d, convert_1d, dagger_pairing_tables,
                       positivity, serre_frobenius_check)
from ftft.repro import REP_CASES, alpha_fixtures, compat_fixtures
from ftft.salg import complex_clifford, matrix_superalgebra
from ftft.stellar import HermitianSpace


def test_frobenius_modes():
    A = complex_clifford(1)
    assert check_frobenius(FrobeniusStructure(A, [1, 0])).ok
    assert "even" in check_frobenius(FrobeniusStructure(A, [1, 1])).failed_clauses
    # the supertrace on End(C^{1|1}) is Koszul-symmetric but not symmetric
    M = matrix_superalgebra(1, 1)
    str_ = FrobeniusStructure(M, [1, 0, 0, -1])
    tr = FrobeniusStructure(M, [1, 0, 0, 1])
    assert check_frobenius(tr).ok
    assert "symmetric" in check_frobenius(str_).failed_clauses
    assert check_frobenius(str_, "bosonic_graded").ok


@pytest.mark.parametrize("name", ["pin1+", "q8", "pin1-", "d8"])
def test_trivial_theories(name):
    T = fixtures.trivial_theory(name)
    assert check_graded_bundle(T.bundle).ok
    assert check_tft2d(T).ok


@pytest.mark.parametrize("xp", [0, 1])
@pytest.mark.parametrize("s2", [1, -1])
@pytest.mark.parametrize("s1", [1, -1])
def test_pin_bundles_and_positivity(xp, s2, s1):
    T = fixtures.pin_minus_tft(xp, s2, s1)
    assert check_tft2d(T).ok
    assert positivity(T) == (s1 == s2)


def test_construct_round_trip():
    for T in (fixtures.trivial_theory("q8"), fixtures.clifford_theory(1), fixtures.spinc_theory()):
        assert dagger_pairing_tables(T.bundle, T.dagger) == T.pairings


def test_loop_fixtures():
    for T in (fixtures.spinc_theory(), fixtures.pin2_loops(0), fixtures.pin2_loops(1)):
        assert check_tft2d(T).ok
    T = fixtures.spinc_theory()
    T.bundle.loops[0]["twist"] = 0
    assert "loops" in check_tft2d(T).failed_clauses


def test_compat_serre_equivalence():
    verdicts = set()
    for B, lam in compat_fixtures():
        a = check_frobenius_compat(B, lam).ok
        assert a == serre_frobenius_check(B, lam).ok
        verdicts.add(a)
    assert verdicts == {True, False}


def test_clause_subset_runs_alone():
    r = check_tft2d(fixtures.trivial_theory("q8"), clauses=["frobenius-compat"])
    assert r.ok and "frobenius-compat" in r.checked and "hilbert-pairing" not in r.checked


def test_alpha_oracle_tables():
    tables = alpha_oracle(alpha_fixtures())
    assert all(t[c] == ONE for t in tables for c in ALPHA_CELLS if c[2] == 0 and c[0] == 0)
    assert all(t[c] in (I, -I) for t in tables for c in ALPHA_CELLS if c[2] == 1)
    # the two global-sign tables are present
    plus = {c: (I if c[2] else ONE) for c in ALPHA_CELLS}
    minus = {c: (-I if c[2] else ONE) for c in ALPHA_CELLS}
    assert plus in tables and minus in tables
    # the remaining survivors differ by the twist † -> (-1)^theta †
    assert len(alpha_twist_classes(tables)) == 2
    # restricting to theta = 0 cells: same two survivors on the split fixture
    split = fixtures.twisted_bundle(fixtures.group("split"), q=1, chi={"c": 1, "cT": 1})
    even = [c for c in ALPHA_CELLS if c[0] == 0]
    sub = alpha_oracle([(split, split.tga.dagger({"T": 1, "c": 1}))], cells=even)
    assert sorted(map(str, sub)) == sorted({str({c: t[c] for c in even}) for t in tables})


def test_1d_z2_form_and_perturbation():
    T = fixtures.z2_form()
    assert check_tft1d(T).ok
    bad = TftBundle1D(T.H, 1, 0, R={"1": [[1]]}, forms={"t": [[0]]})
    assert not check_tft1d(bad).ok


def test_1d_condition1_witness():
    T = fixtures.bilinear_1d("pin1-", 0, 2)
    H = T.H
    g = next(iter(T.forms))
    forms = dict(T.forms)
    F = forms[g]
    forms[g] = ExactMatrix([[F[r, c] * (2 if (r, c) == (0, 1) else 1) for c in range(F.cols)]
                            for r in range(F.rows)], F.cols)
    r = check_tft1d(TftBundle1D(H, 0, 2, R=T.R, forms=forms))
    assert not r.ok
    assert any("e" in v.message and "g=" in v.message for v in r.violations)


def test_1d_conversions():
    n = 0
    for gname, e, o in REP_CASES:
        T = fixtures.rep_1d(gname, e, o)
        Hs = HermitianSpace.standard(e, o)
        for s0 in spacetime_group_1d(T.H).odd():
            B = convert_1d(T, section=s0)
            assert check_tft1d(B).ok
            assert convert_1d(B, hermitian=Hs).rho == T.rho
            n += 1
    assert n >= len(REP_CASES)


def test_1d_odd_dimension_obstruction():
    assert antilinear_obstruction(pin1_minus(), 0, 1) is not None
    assert antilinear_obstruction(pin1_minus(), 0, 2) is None
