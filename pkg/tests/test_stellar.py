from ftft.exactlin import I, ZERO, ExactMatrix
from ftft.fgroup import pin1_minus
from ftft.fixtures import star_clifford
from ftft.salg import complex_clifford, ground_field, matrix_superalgebra
from ftft.stellar import (HermitianSpace, HilbertPairing, StarAlgebra, check_pairing, check_star, check_stellar,
                          check_stellar_bimodule, check_unitary_fermionic_rep, compose_pairing, compose_stellar,
                          conjugate_stellar, datum_from_pairing, degenerate_pairing_obstruction, even_pairing_space,
                          morita_search_stellar, pairing_from_datum, parity_pairing, positivity_flag, regular_pairing,
                          stellar_from_star, stellar_on_field)
from ftft.bimod import regular
from ftft.frob import search_unitary_reps

SP, SM = star_clifford(1), star_clifford(-1)
SC = StarAlgebra(ground_field("C"), ExactMatrix([[1]]), "C")
SMAT = StarAlgebra(matrix_superalgebra(2, 0), ExactMatrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))


def test_star_axioms():
    for s in (SP, SM, SC, SMAT):
        assert check_star(s).ok
        assert check_stellar(stellar_from_star(s)).ok
        assert check_stellar(conjugate_stellar(stellar_from_star(s))).ok
    bad = StarAlgebra(complex_clifford(1), ExactMatrix([[1, 0], [0, 1]]))
    assert "anti-multiplicative" in check_star(bad).failed_clauses
    assert "square" in check_stellar(stellar_on_field(2)).failed_clauses


def test_pairing_datum_round_trip():
    for s in (SP, SM, SC, SMAT):
        for P in (regular_pairing(s), parity_pairing(s)):
            assert check_pairing(P).ok
            D = datum_from_pairing(P)
            assert check_stellar_bimodule(D).ok
            assert pairing_from_datum(D).table == P.table
        P = regular_pairing(s)
        assert check_pairing(compose_pairing(P, P)).ok
        D = datum_from_pairing(P)
        assert check_stellar_bimodule(compose_stellar(D, D)).ok


def test_positivity_flag_tracks_star_sign():
    assert positivity_flag(regular_pairing(SP)) and positivity_flag(parity_pairing(SP))
    assert not positivity_flag(parity_pairing(SM))


def test_broken_pairing_caught():
    P = regular_pairing(SP)
    t = [[list(v) for v in row] for row in P.table]
    t[0][0] = [I, ZERO]  # <1,1> = i is not hermitian
    assert not check_pairing(HilbertPairing(P.N, P.SB, P.SA, t)).ok


def test_morita_verdicts():
    a, b, c = stellar_on_field(1), stellar_on_field(I), stellar_on_field(1, odd=True)
    r = morita_search_stellar(a, b)
    assert r.verdict == "WITNESS" and check_stellar_bimodule(r.witness).ok
    assert morita_search_stellar(a, c).verdict == "NONE"
    r = morita_search_stellar(stellar_from_star(SP), stellar_from_star(SM))
    assert r.verdict == "NONE"
    assert any("= -<1,1>" in n and "pairing degenerate" in n for n in r.notes)
    r = morita_search_stellar(stellar_from_star(SP), stellar_from_star(SP))
    assert r.verdict == "WITNESS" and not r.notes


def test_pairing_space_oracle():
    # sesquilinear tables on regular Cl1 vanish identically between opposite stars
    N = regular(complex_clifford(1))
    assert even_pairing_space(N, SM, SP, even=False) == []
    assert degenerate_pairing_obstruction(N, SM, SP) is not None
    assert len(even_pairing_space(N, SP, SP)) > 0
    assert degenerate_pairing_obstruction(N, SP, SP) is None


def test_unitary_fermionic_reps():
    G = pin1_minus()
    Hs = HermitianSpace.standard(0, 2)
    reps = search_unitary_reps(G, Hs)
    assert reps and check_unitary_fermionic_rep(G, Hs, reps[0]).ok
    bad = dict(reps[0])
    bad["T"] = ExactMatrix([[1, 0], [0, 1]])
    assert not check_unitary_fermionic_rep(G, Hs, bad).ok
    assert search_unitary_reps(G, HermitianSpace.standard(0, 1), limit=10) == []
