"""Super *-algebras, stellar algebras, stellar bimodules and Hilbert-module pairings."""
from __future__ import annotations

import random
from itertools import product

from .bimod import (Bimodule, BimoduleMap, _sgn, check_bimodule, check_bimodule_map, induced,
                    invertible_by_ranks, map_from_pure, opposite_bimodule, parity_bimodule, parity_shift,
                    tensor_over)
from .bimod import conjugate_bimodule
from .errors import StructuralError, UnsupportedInput
from .exactlin import I, ONE, ZERO, ExactMatrix, GaussianScalar, kernel, rank, vadd
from .report import Report
from .salg import AlgebraHom, Superalgebra, direct_sum, generating_indices, opposite, subalgebra_span
from .salg import conjugate as conjugate_algebra

SEARCH_BOUND = 4


def _cvec(v):
    return [x.conj() for x in v]


def _cols(mat: ExactMatrix, j):
    return [mat[i, j] for i in range(mat.rows)]


# -- super *-algebras ---------------------------------------------------------------

class StarAlgebra:
    """A complex superalgebra with antilinear star x -> S conj(x)."""

    def __init__(self, alg: Superalgebra, star: ExactMatrix, name: str = ""):
        if alg.field != "C":
            raise StructuralError("star algebras are complex")
        if star.rows != alg.dim or star.cols != alg.dim:
            raise StructuralError("star matrix has the wrong shape")
        self.alg, self.S, self.name = alg, star, name or alg.name

    def star(self, x):
        return self.S.apply(_cvec(x))

    def __repr__(self):
        return f"StarAlgebra({self.name})"


def check_star(SA: StarAlgebra) -> Report:
    A = SA.alg
    rep = Report(f"star {SA.name}".strip())
    for c in ("even", "involutive", "anti-multiplicative"):
        rep.check(c)
    for i in range(A.dim):
        img = SA.star(A.basis(i))
        if any(img) and A.degree(img) != A.parity[i]:
            rep.fail("even", f"{A.names[i]}* is not of degree {A.parity[i]}")
        if SA.star(img) != A.basis(i):
            rep.fail("involutive", f"{A.names[i]}** != {A.names[i]}")
    for i, j in product(range(A.dim), repeat=2):
        lhs = SA.star(A.mul_basis(i, j))
        rhs = [x * _sgn(A.parity[i] * A.parity[j]) for x in A.mul(SA.star(A.basis(j)), SA.star(A.basis(i)))]
        if lhs != rhs:
            rep.fail("anti-multiplicative", f"({A.names[i]}{A.names[j]})* != ±{A.names[j]}*{A.names[i]}*")
    return rep


def star_dagger_convert(A: Superalgebra, mat: ExactMatrix, to: str = "dagger") -> ExactMatrix:
    """a* = a† on even, a* = i a† on odd basis vectors; `to` names the output encoding."""
    s = -I if to == "dagger" else I
    return ExactMatrix([[mat[r, c] * (s if A.parity[c] else ONE) for c in range(A.dim)]
                        for r in range(A.dim)], A.dim)


def star_hom(SA: StarAlgebra) -> AlgebraHom:
    """* as a linear algebra map conj(A)^op -> A."""
    return AlgebraHom(opposite(conjugate_algebra(SA.alg)), SA.alg, SA.S)


def conjugate_star(SA: StarAlgebra) -> StarAlgebra:
    """Star on conj(A): conj(a)* = (-1)^{|a|} conj(a*)."""
    A = SA.alg
    S = ExactMatrix([[SA.S[r, c].conj() * _sgn(A.parity[r]) for c in range(A.dim)] for r in range(A.dim)], A.dim)
    return StarAlgebra(conjugate_algebra(A), S, f"conj({SA.name})")


# -- stellar algebras -----------------------------------------------------------------

def conj_op(M: Bimodule) -> Bimodule:
    return opposite_bimodule(conjugate_bimodule(M))


class StellarAlgebra:
    """(A, M, sigma): M an invertible (A, conj(A)^op)-bimodule, sigma: M -> conj(M)^op."""

    def __init__(self, alg: Superalgebra, M: Bimodule, sigma: ExactMatrix, name: str = "", star=None):
        self.alg, self.M, self.sigma, self.name = alg, M, sigma, name or alg.name
        self.star = star

    def __repr__(self):
        return f"StellarAlgebra({self.name})"


def check_stellar(S: StellarAlgebra) -> Report:
    A, M, sig = S.alg, S.M, S.sigma
    rep = Report(f"stellar {S.name}".strip())
    for c in ("module", "invertible", "sigma-map", "square"):
        rep.check(c)
    if not (M.left_alg.same_constants(A) and M.right_alg.same_constants(opposite(conjugate_algebra(A)))):
        rep.fail("module", "M is not an (A, conj(A)^op)-bimodule")
        return rep
    br = check_bimodule(M)
    if not br.ok:
        rep.merge(br, "module")
        return rep
    if not invertible_by_ranks(M):
        rep.fail("invertible", "M is not an invertible bimodule")
    if sig.rows != M.dim or sig.cols != M.dim:
        rep.fail("sigma-map", "sigma has the wrong shape")
        return rep
    f = BimoduleMap(M, conj_op(M), sig)
    fr = check_bimodule_map(f)
    if not fr.ok:
        rep.merge(fr, "sigma-map")
    if not f.is_iso():
        rep.fail("sigma-map", "sigma is not invertible")
    if sig.conj() * sig != ExactMatrix.identity(M.dim):
        rep.fail("square", "conj(sigma)^op ∘ sigma is not the identity")
    return rep


def stellar_from_star(SA: StarAlgebra) -> StellarAlgebra:
    """M = A_* (right action m.conj(a)^op = m a*), sigma(a) = conj(a*)^op."""
    M = induced(star_hom(SA))
    M.name = f"{SA.name}_*"
    return StellarAlgebra(SA.alg, M, SA.S.conj(), SA.name, star=SA)


def stellar_on_field(a=1, odd: bool = False, name: str = "") -> StellarAlgebra:
    """Stellar C with M = C or Pi C and sigma = multiplication by a (|a| = 1)."""
    from .salg import ground_field
    C = ground_field("C")
    R = opposite(conjugate_algebra(C))
    M = Bimodule(C, R, [1 if odd else 0], [[[1]]], [[[1]]], ["m"], "ΠC" if odd else "C")
    return StellarAlgebra(C, M, ExactMatrix([[a]]), name or f"C[{'Π' if odd else ''}{a}]")


def conjugate_stellar(S: StellarAlgebra) -> StellarAlgebra:
    """Stellar structure on conj(A): conj(M) (x) (A^op)_x with conj(m)x -> (-1)^{|m|} conj(sigma(m))x."""
    A = S.alg
    Mb = conjugate_bimodule(S.M)
    Mp = tensor_over(Mb, parity_bimodule(Mb.right_alg))
    x = Mb.right_alg.unit
    # conj(m_k) x spans Mp; express sigma' in those coordinates
    gens = [Mp.pure(Mb.basis(k), x) for k in range(S.M.dim)]
    G = ExactMatrix([[g[r] for g in gens] for r in range(Mp.dim)], len(gens))
    if G.rank() != Mp.dim or Mp.dim != S.M.dim:
        raise StructuralError("unexpected shape of the conjugate stellar module")
    Ginv = _inverse(G)
    sig = ExactMatrix([[S.sigma[l, k].conj() * _sgn(S.M.parity[k]) for k in range(S.M.dim)]
                       for l in range(S.M.dim)], S.M.dim)
    # sigma' = G' sig G^{-1}, G' the same change of basis read in conj(Mp)^op
    new = G.conj() * sig * Ginv
    star = conjugate_star(S.star) if S.star is not None else None
    return StellarAlgebra(conjugate_algebra(A), Mp, new, f"conj({S.name})", star=star)


def _inverse(G: ExactMatrix) -> ExactMatrix:
    from .exactlin import solve_many
    n = G.rows
    cols = solve_many(G, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])
    return ExactMatrix([[cols[j][i] for j in range(n)] for i in range(n)], n)


# -- stellar bimodules -----------------------------------------------------------------

class Triple:
    """N (x)_{A1} M1 (x)_{conj(A1)^op} conj(N)^op with a pure-tensor helper."""

    def __init__(self, N: Bimodule, M1: Bimodule):
        self.N, self.M1 = N, M1
        self.T1 = tensor_over(N, M1)
        self.Nb = conj_op(N)
        self.T = tensor_over(self.T1, self.Nb)

    def pure(self, n, m, nb):
        """nb is given by the coordinates of n' itself; conj(n')^op has coordinates conj(n')."""
        return self.T.pure(self.T1.pure(n, m), _cvec(nb))


class StellarBimodule:
    def __init__(self, N: Bimodule, phi: ExactMatrix, S1: StellarAlgebra, S2: StellarAlgebra, triple=None):
        self.N, self.phi, self.S1, self.S2 = N, phi, S1, S2
        self.triple = triple or Triple(N, S1.M)

    def value(self, n, m, n2):
        return self.phi.apply(self.triple.pure(n, m, n2))


def check_stellar_bimodule(B: StellarBimodule) -> Report:
    N, S1, S2 = B.N, B.S1, B.S2
    rep = Report("stellar bimodule")
    for c in ("module", "invertible", "datum-map", "datum-iso", "hermiticity"):
        rep.check(c)
    if not (N.left_alg.same_constants(S2.alg) and N.right_alg.same_constants(S1.alg)):
        rep.fail("module", "N is not an (A2, A1)-bimodule")
        return rep
    br = check_bimodule(N)
    if not br.ok:
        rep.merge(br, "module")
        return rep
    if not invertible_by_ranks(N):
        rep.fail("invertible", "N is not invertible")
    tr = B.triple
    T, M1, M2 = tr.T, S1.M, S2.M
    if B.phi.rows != M2.dim or B.phi.cols != T.dim:
        rep.fail("datum-map", "datum has the wrong shape")
        return rep
    f = BimoduleMap(T, M2, B.phi)
    fr = check_bimodule_map(f)
    if not fr.ok:
        rep.merge(fr, "datum-map")
    if not f.is_iso():
        rep.fail("datum-iso", "datum is not an isomorphism")
    pN, pM = N.parity, M1.parity
    vals = {}
    for i, j, l in product(range(N.dim), range(M1.dim), range(N.dim)):
        vals[(i, j, l)] = B.value(N.basis(i), M1.basis(j), N.basis(l))
    for i, j, l in product(range(N.dim), range(M1.dim), range(N.dim)):
        lhs = [ZERO] * M2.dim
        for k in range(M1.dim):
            s = S1.sigma[k, j]
            if not s:
                continue
            sg = _sgn(pN[i] * pM[k] + pN[i] * pN[l] + pM[k] * pN[l])
            for r, x in enumerate(vals[(l, k, i)]):
                if x:
                    lhs[r] = lhs[r] + s * sg * x.conj()
        rhs = S2.sigma.apply(vals[(i, j, l)])
        if lhs != rhs:
            rep.fail("hermiticity", f"fails on {N.names[i]} ⊗ {M1.names[j]} ⊗ {N.names[l]}")
    return rep


def check_unitary(psi: ExactMatrix, B: StellarBimodule, B2: StellarBimodule) -> bool:
    """phi' ∘ (psi (x) id (x) conj(psi)^op) == phi on pure basis triples."""
    N, M1 = B.N, B.S1.M
    if psi.rows != B2.N.dim or psi.cols != N.dim or psi.rank() != N.dim:
        return False
    if not check_bimodule_map(BimoduleMap(N, B2.N, psi)).ok:
        return False
    for i, j, l in product(range(N.dim), range(M1.dim), range(N.dim)):
        a = B.value(N.basis(i), M1.basis(j), N.basis(l))
        b = B2.value(_cols(psi, i), M1.basis(j), _cols(psi, l))
        if a != b:
            return False
    return True


def compose_stellar(B2: StellarBimodule, B1: StellarBimodule) -> StellarBimodule:
    """(N2 (x) N1, phi2 ∘ phi1) with the Koszul sign of (n2' (x) n1')^op."""
    N2, N1 = B2.N, B1.N
    N = tensor_over(N2, N1)
    tr = Triple(N, B1.S1.M)
    M3 = B2.S2.M

    def fn(q1, l):
        i, j = tr.T1.pairs[q1]
        i2, i1 = N.pairs[i]
        l2, l1 = N.pairs[l]
        inner = B1.value(N1.basis(i1), B1.S1.M.basis(j), N1.basis(l1))
        out = B2.value(N2.basis(i2), inner, N2.basis(l2))
        return [x * _sgn(N2.parity[l2] * N1.parity[l1]) for x in out]

    phi = map_from_pure(tr.T, M3, fn).matrix
    return StellarBimodule(N, phi, B1.S1, B2.S2, tr)


# -- Hilbert-module pairings for star algebras ------------------------------------------------

class HilbertPairing:
    """<n_i, n_j> = table[i][j] in B for a (B,A)-bimodule N; linear left, antilinear right."""

    def __init__(self, N: Bimodule, SB: StarAlgebra, SA: StarAlgebra, table):
        self.N, self.SB, self.SA = N, SB, SA
        co = GaussianScalar.coerce
        self.table = [[[co(x) for x in v] for v in row] for row in table]

    def __call__(self, x, y):
        out = [ZERO] * self.SB.alg.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    c = a * b.conj()
                    for r, z in enumerate(self.table[i][j]):
                        if z:
                            out[r] = out[r] + c * z
        return out


def check_pairing(P: HilbertPairing) -> Report:
    N, SB, SA = P.N, P.SB, P.SA
    B, A = SB.alg, SA.alg
    rep = Report("hilbert pairing")
    for c in ("left-star", "right-star", "left-linear", "hermitian", "nondegenerate"):
        rep.check(c)
    pn = N.parity
    for i, j in product(range(N.dim), repeat=2):
        ni, nj = N.basis(i), N.basis(j)
        for b in range(B.dim):
            lhs = P(ni, N.lmul(B.basis(b), nj))
            rhs = [x * _sgn(B.parity[b] * pn[j]) for x in B.mul(P(ni, nj), SB.star(B.basis(b)))]
            if lhs != rhs:
                rep.fail("left-star", f"<{N.names[i]}, {B.names[b]}{N.names[j]}>")
            if P(N.lmul(B.basis(b), ni), nj) != B.mul(B.basis(b), P(ni, nj)):
                rep.fail("left-linear", f"<{B.names[b]}{N.names[i]}, {N.names[j]}>")
        for a in range(A.dim):
            lhs = P(N.rmul(ni, A.basis(a)), nj)
            rhs = [x * _sgn(A.parity[a] * pn[j]) for x in P(ni, N.rmul(nj, SA.star(A.basis(a))))]
            if lhs != rhs:
                rep.fail("right-star", f"<{N.names[i]}{A.names[a]}, {N.names[j]}>")
        lhs = SB.star(P(nj, ni))
        rhs = [x * _sgn(pn[i] * pn[j]) for x in P(ni, nj)]
        if lhs != rhs:
            rep.fail("hermitian", f"<{N.names[j]}, {N.names[i]}>* != ±<{N.names[i]}, {N.names[j]}>")
    rows = [[P.table[i][j][r] for j in range(N.dim)] for i in range(N.dim) for r in range(B.dim)]
    if N.dim and rank(ExactMatrix(rows, N.dim)) != N.dim:
        rep.fail("nondegenerate", "n ↦ <·, n> is not injective")
    return rep


def datum_from_pairing(P: HilbertPairing, S1: StellarAlgebra | None = None,
                       S2: StellarAlgebra | None = None) -> StellarBimodule:
    """phi(n (x) a (x) conj(n')^op) = <n a, n'>."""
    S1 = S1 or stellar_from_star(P.SA)
    S2 = S2 or stellar_from_star(P.SB)
    N = P.N
    tr = Triple(N, S1.M)

    def fn(q1, l):
        i, a = tr.T1.pairs[q1]
        return P(N.rmul(N.basis(i), P.SA.alg.basis(a)), N.basis(l))

    phi = map_from_pure(tr.T, S2.M, fn).matrix
    return StellarBimodule(N, phi, S1, S2, tr)


def pairing_from_datum(B: StellarBimodule) -> HilbertPairing:
    if B.S1.star is None or B.S2.star is None:
        raise UnsupportedInput("pairings need stellar algebras coming from stars")
    N = B.N
    one = B.S1.alg.unit
    table = [[B.value(N.basis(i), one, N.basis(j)) for j in range(N.dim)] for i in range(N.dim)]
    return HilbertPairing(N, B.S2.star, B.S1.star, table)


def regular_pairing(SA: StarAlgebra) -> HilbertPairing:
    """<a, b> = a b* on A."""
    from .bimod import regular
    A = SA.alg
    table = [[A.mul(A.basis(i), SA.star(A.basis(j))) for j in range(A.dim)] for i in range(A.dim)]
    return HilbertPairing(regular(A), SA, SA, table)


def parity_pairing(SA: StarAlgebra) -> HilbertPairing:
    """<a x, b x> = a b* on A_{(-1)^F}."""
    A = SA.alg
    table = [[A.mul(A.basis(i), SA.star(A.basis(j))) for j in range(A.dim)] for i in range(A.dim)]
    return HilbertPairing(parity_bimodule(A), SA, SA, table)


def compose_pairing(P2: HilbertPairing, P1: HilbertPairing) -> HilbertPairing:
    """<n2 (x) n1, n2' (x) n1'> = (-1)^{|n2'||n1'|} <n2 <n1, n1'>, n2'>."""
    N2, N1 = P2.N, P1.N
    N = tensor_over(N2, N1)
    table = []
    for i2, i1 in N.pairs:
        row = []
        for l2, l1 in N.pairs:
            inner = P1(N1.basis(i1), N1.basis(l1))
            v = P2(N2.rmul(N2.basis(i2), inner), N2.basis(l2))
            row.append([x * _sgn(N2.parity[l2] * N1.parity[l1]) for x in v])
        table.append(row)
    return HilbertPairing(N, P2.SB, P1.SA, table)


def conjugate_pairing(P: HilbertPairing) -> HilbertPairing:
    """<conj n1, conj n2> = (-1)^{|n2|} conj <n1, n2> for the conjugate stars."""
    N = conjugate_bimodule(P.N)
    table = [[[x.conj() * _sgn(P.N.parity[j]) for x in P.table[i][j]] for j in range(N.dim)]
             for i in range(N.dim)]
    return HilbertPairing(N, conjugate_star(P.SB), conjugate_star(P.SA), table)


def positivity_flag(P: HilbertPairing) -> bool:
    """Diagonal pairings of even basis vectors in Q_{>0}, of odd ones in i Q_{>0} (multiples of 1)."""
    B = P.SB.alg
    unit = B.unit
    k0 = next(k for k, x in enumerate(unit) if x)
    for i in range(P.N.dim):
        v = P.table[i][i]
        c = v[k0] / unit[k0]
        if [c * u for u in unit] != v:
            return False
        if P.N.parity[i]:
            c = c / I
        if c.im or c.re <= 0:
            return False
    return True


def _pairing_residual(N: Bimodule, SB: StarAlgebra, SA: StarAlgebra, table) -> list:
    """lhs - rhs of the left-linear, left-star and right-star equations, concatenated."""
    P = HilbertPairing(N, SB, SA, table)
    B, A = SB.alg, SA.alg
    pn = N.parity
    out = []
    for i, j in product(range(N.dim), repeat=2):
        ni, nj = N.basis(i), N.basis(j)
        for b in range(B.dim):
            lhs = P(ni, N.lmul(B.basis(b), nj))
            rhs = B.mul(P(ni, nj), SB.star(B.basis(b)))
            out += [x - y * _sgn(B.parity[b] * pn[j]) for x, y in zip(lhs, rhs)]
            out += [x - y for x, y in zip(P(N.lmul(B.basis(b), ni), nj), B.mul(B.basis(b), P(ni, nj)))]
        for a in range(A.dim):
            lhs = P(N.rmul(ni, A.basis(a)), nj)
            rhs = P(ni, N.rmul(nj, SA.star(A.basis(a))))
            out += [x - y * _sgn(A.parity[a] * pn[j]) for x, y in zip(lhs, rhs)]
    return out


def even_pairing_space(N: Bimodule, SB: StarAlgebra, SA: StarAlgebra, even: bool = True) -> list:
    """Real basis of even tables satisfying the linearity and star equations (hermiticity not imposed)."""
    B = SB.alg
    slots = [(i, j, r) for i in range(N.dim) for j in range(N.dim) for r in range(B.dim)
             if not even or (N.parity[i] + N.parity[j] + B.parity[r]) % 2 == 0]
    cols = []
    for (i, j, r), z in product(slots, (ONE, I)):
        t = [[[ZERO] * B.dim for _ in range(N.dim)] for _ in range(N.dim)]
        t[i][j][r] = z
        res = _pairing_residual(N, SB, SA, t)
        cols.append([GaussianScalar(x.re) for x in res] + [GaussianScalar(x.im) for x in res])
    if not cols:
        return []
    M = ExactMatrix([[c[k] for c in cols] for k in range(len(cols[0]))], len(cols))
    out = []
    for v in kernel(M):
        t = [[[ZERO] * B.dim for _ in range(N.dim)] for _ in range(N.dim)]
        for (slot, z), c in zip(product(slots, (ONE, I)), v):
            if c:
                i, j, r = slot
                t[i][j][r] = t[i][j][r] + z * c
        out.append(t)
    return out


def degenerate_pairing_obstruction(N: Bimodule, SB: StarAlgebra, SA: StarAlgebra) -> str | None:
    """A clause e<n0,n0> = -<n0,n0>e (e odd, <n0,n0> even) forcing <n0,n0> = 0 for a cyclic generator n0,
    so that every pairing on N is degenerate; None when no such clause holds."""
    B = SB.alg
    space = even_pairing_space(N, SB, SA)
    for n0 in range(N.dim):
        span = [N.lmul(B.basis(b), N.basis(n0)) for b in range(B.dim)]
        if rank(ExactMatrix(span, N.dim)) != N.dim:
            continue
        vals = [t[n0][n0] for t in space]
        if any(any(v) for v in vals):
            continue
        for e in B.odd_indices():
            anti = [vadd(B.mul(B.basis(e), w), B.mul(w, B.basis(e))) for w in _even_part_basis(B)]
            if all(any(a) for a in anti) and rank(ExactMatrix(anti, B.dim)) == len(anti):
                nm, en = N.names[n0], B.names[e]
                return (f"{en}<{nm},{nm}> = -<{nm},{nm}>{en} with <{nm},{nm}> even forces <{nm},{nm}> = 0; "
                        "pairing degenerate")
    return None


def _even_part_basis(B: Superalgebra) -> list:
    return [B.basis(k) for k in B.even_indices()]


# -- Morita search --------------------------------------------------------------------

def _iso_candidates(A1: Superalgebra, A2: Superalgebra, coeffs=(0, 1, -1, I, -I), limit=64):
    """Algebra isomorphisms A1 -> A2 with generator images in small coefficient sets."""
    if A1.dim != A2.dim or sorted(A1.parity) != sorted(A2.parity):
        return []
    gens = generating_indices(A1)
    D = direct_sum(A1, A2)
    choices = []
    for g in gens:
        idx = [k for k in range(A2.dim) if A2.parity[k] == A1.parity[g]]
        opts = []
        for cs in product(coeffs, repeat=len(idx)):
            if not any(cs):
                continue
            v = [ZERO] * A2.dim
            for k, c in zip(idx, cs):
                v[k] = GaussianScalar.coerce(c)
            opts.append(v)
        choices.append(opts)
    # quick filter on squares: g^2 = lambda 1 must be preserved
    sq = {}
    for g in gens:
        s = A1.mul_basis(g, g)
        k0 = next((k for k, x in enumerate(A1.unit) if x), 0)
        lam = s[k0] / A1.unit[k0]
        if [lam * u for u in A1.unit] == s:
            sq[g] = lam
    out = []
    for imgs in product(*choices):
        ok = True
        for g, v in zip(gens, imgs):
            if g in sq and A2.mul(v, v) != [sq[g] * u for u in A2.unit]:
                ok = False
                break
        if not ok:
            continue
        pairs = [list(A1.basis(g)) + list(v) for g, v in zip(gens, imgs)]
        span = subalgebra_span(D, pairs)
        if len(span) != A1.dim:
            continue
        top = ExactMatrix([r[:A1.dim] for r in span], A1.dim)
        if top.rank() != A1.dim:
            continue
        # graph of a map: solve span rows for each basis vector of A1
        from .exactlin import solve
        Tm = ExactMatrix([[span[r][c] for r in range(len(span))] for c in range(A1.dim)], len(span))
        cols = []
        for j in range(A1.dim):
            x = solve(Tm, A1.basis(j))
            cols.append([sum((x[r] * span[r][A1.dim + k] for r in range(len(span))), ZERO) for k in range(A2.dim)])
        mat = ExactMatrix([[cols[j][k] for j in range(A1.dim)] for k in range(A2.dim)], A1.dim)
        if mat.rank() != A1.dim:
            continue
        out.append(AlgebraHom(A1, A2, mat))
        if len(out) >= limit:
            break
    return out


def _solve_datum(N: Bimodule, S1: StellarAlgebra, S2: StellarAlgebra):
    """Real basis of unitarity-data candidates phi on N (bimodule map + Hermiticity)."""
    tr = Triple(N, S1.M)
    T, M1, M2 = tr.T, S1.M, S2.M
    if T.dim != M2.dim:
        return tr, []
    n = M2.dim * T.dim
    # complex unknowns z_t = phi[r][c], t = r*T.dim + c; equations sum c_t z_t + d_t conj(z_t) = 0
    eqs = []

    def lin_row():
        return {}, {}

    for b in range(T.left_alg.dim):
        LT, LM = T.L(b), M2.L(b)
        for r, c in product(range(M2.dim), range(T.dim)):
            cc, _ = lin_row()
            for k in range(T.dim):
                if LT[k, c]:
                    cc[r * T.dim + k] = cc.get(r * T.dim + k, ZERO) + LT[k, c]
            for k in range(M2.dim):
                if LM[r, k]:
                    cc[k * T.dim + c] = cc.get(k * T.dim + c, ZERO) - LM[r, k]
            eqs.append((cc, {}))
    for a in range(T.right_alg.dim):
        RT, RM = T.R(a), M2.R(a)
        for r, c in product(range(M2.dim), range(T.dim)):
            cc = {}
            for k in range(T.dim):
                if RT[k, c]:
                    cc[r * T.dim + k] = cc.get(r * T.dim + k, ZERO) + RT[k, c]
            for k in range(M2.dim):
                if RM[r, k]:
                    cc[k * T.dim + c] = cc.get(k * T.dim + c, ZERO) - RM[r, k]
            eqs.append((cc, {}))
    for r, c in product(range(M2.dim), range(T.dim)):
        if M2.parity[r] != T.parity[c]:
            eqs.append(({r * T.dim + c: ONE}, {}))
    pN, pM = N.parity, M1.parity
    pure = {}
    for i, j, l in product(range(N.dim), range(M1.dim), range(N.dim)):
        pure[(i, j, l)] = tr.pure(N.basis(i), M1.basis(j), N.basis(l))
    for i, j, l in product(range(N.dim), range(M1.dim), range(N.dim)):
        for r in range(M2.dim):
            cc, dd = {}, {}
            for k in range(M1.dim):
                s = S1.sigma[k, j]
                if not s:
                    continue
                sg = _sgn(pN[i] * pM[k] + pN[i] * pN[l] + pM[k] * pN[l])
                v = pure[(l, k, i)]
                for c, x in enumerate(v):
                    if x:
                        t = r * T.dim + c
                        dd[t] = dd.get(t, ZERO) + s * sg * x.conj()
            v = pure[(i, j, l)]
            for k in range(M2.dim):
                sk = S2.sigma[r, k]
                if not sk:
                    continue
                for c, x in enumerate(v):
                    if x:
                        t = k * T.dim + c
                        cc[t] = cc.get(t, ZERO) - sk * x
            eqs.append((cc, dd))
    rows = []
    for cc, dd in eqs:
        re_row = [ZERO] * (2 * n)
        im_row = [ZERO] * (2 * n)
        for t, c in cc.items():
            re_row[t] += GaussianScalar(c.re)
            re_row[n + t] += GaussianScalar(-c.im)
            im_row[t] += GaussianScalar(c.im)
            im_row[n + t] += GaussianScalar(c.re)
        for t, d in dd.items():
            re_row[t] += GaussianScalar(d.re)
            re_row[n + t] += GaussianScalar(d.im)
            im_row[t] += GaussianScalar(d.im)
            im_row[n + t] += GaussianScalar(-d.re)
        for row in (re_row, im_row):
            if any(row):
                rows.append(row)
    ker = kernel(ExactMatrix(rows, 2 * n)) if rows else \
        [[ONE if i == j else ZERO for i in range(2 * n)] for j in range(2 * n)]
    mats = []
    for v in ker:
        z = [GaussianScalar(v[t].re, v[n + t].re) for t in range(n)]
        mats.append(ExactMatrix([z[r * T.dim:(r + 1) * T.dim] for r in range(M2.dim)], T.dim))
    return tr, mats


def _find_invertible(mats, tries: int = 40):
    if not mats:
        return None
    for m in mats:
        if m.rank() == m.rows:
            return m
    rng = random.Random(0)
    for _ in range(tries):
        acc = mats[0] * 0
        for m in mats:
            acc = acc + m * rng.randint(-3, 3)
        if acc.rank() == acc.rows:
            return acc
    return None


def _det_vanishes(mats) -> bool:
    """Whether det(sum t_k mats_k) is identically zero, via a symbolic determinant."""
    import sympy
    ts = sympy.symbols(f"t0:{len(mats)}")
    n = mats[0].rows
    M = sympy.zeros(n, n)
    for t, m in zip(ts, mats):
        for r in range(n):
            for c in range(n):
                x = m[r, c]
                if x:
                    M[r, c] += t * (sympy.Rational(str(x.re)) + sympy.I * sympy.Rational(str(x.im)))
    return sympy.expand(M.det()) == 0


class MoritaResult:
    def __init__(self, verdict: str, witness=None, tried: int = 0, notes=None):
        self.verdict, self.witness, self.tried = verdict, witness, tried
        self.notes = notes or []

    def __repr__(self):
        return f"MoritaResult({self.verdict}, tried={self.tried})"


def morita_search_stellar(S1: StellarAlgebra, S2: StellarAlgebra, bound: int = SEARCH_BOUND,
                          candidates=()) -> MoritaResult:
    """Search Pi^e induced(psi) (plus user candidates) for a stellar Morita equivalence S1 -> S2."""
    if S1.alg.dim > bound or S2.alg.dim > bound:
        raise UnsupportedInput(f"algebra dimension exceeds the search bound {bound}")
    cands = []
    for psi in _iso_candidates(S1.alg, S2.alg):
        # induced(psi) is (A2, A1) via the left regular action and right action through psi
        base = induced(psi)
        cands.extend([base, parity_shift(base)])
    cands.extend(candidates)
    inconclusive = False
    for N in cands:
        tr, mats = _solve_datum(N, S1, S2)
        phi = _find_invertible(mats)
        if phi is not None:
            W = StellarBimodule(N, phi, S1, S2, tr)
            if check_stellar_bimodule(W).ok:
                return MoritaResult("WITNESS", W, len(cands))
        elif mats and not _det_vanishes(mats):
            inconclusive = True
    if inconclusive:
        return MoritaResult("NONE-IN-FIELD", None, len(cands),
                            ["invertible data exist generically but none was found in the sampled lattice"])
    notes = []
    if S1.star is not None and S2.star is not None and cands:
        obs = [degenerate_pairing_obstruction(N, S2.star, S1.star) for N in cands]
        if all(obs):
            notes = sorted(set(obs))
    return MoritaResult("NONE", None, len(cands), notes)


# -- Hermitian super vector spaces and unitary fermionic representations ----------------------

class HermitianSpace:
    """C^{p|q} with Gram matrix h: <v, w> = sum v_i conj(w_j) h_ij."""

    def __init__(self, even: int, odd: int, gram):
        self.even, self.odd = even, odd
        self.parity = [0] * even + [1] * odd
        self.dim = even + odd
        self.gram = gram if isinstance(gram, ExactMatrix) else ExactMatrix(gram, self.dim)

    def pair(self, v, w):
        s = ZERO
        for i, a in enumerate(v):
            if a:
                for j, b in enumerate(w):
                    if b and self.gram[i, j]:
                        s = s + a * b.conj() * self.gram[i, j]
        return s

    @classmethod
    def standard(cls, even: int, odd: int):
        """Even part sum v conj(w), odd part i sum v conj(w)."""
        n = even + odd
        return cls(even, odd, [[(I if k >= even else ONE) if k == j else ZERO for j in range(n)]
                               for k in range(n)])


def check_hermitian_space(H: HermitianSpace) -> Report:
    rep = Report("hermitian space")
    for c in ("orthogonal-parities", "graded-symmetric", "nondegenerate"):
        rep.check(c)
    h, p = H.gram, H.parity
    for i, j in product(range(H.dim), repeat=2):
        if p[i] != p[j] and h[i, j]:
            rep.fail("orthogonal-parities", f"entry ({i},{j}) pairs opposite parities")
        if h[i, j] != h[j, i].conj() * _sgn(p[i] * p[j]):
            rep.fail("graded-symmetric", f"<e{i}, e{j}> != (-1)^(|v||w|) conj <e{j}, e{i}>")
    if h.rank() != H.dim:
        rep.fail("nondegenerate", "Gram matrix is singular")
    return rep


def _act(mat: ExactMatrix, theta: int, v):
    return mat.apply(_cvec(v) if theta else v)


def check_unitary_fermionic_rep(G, H: HermitianSpace, rho: dict) -> Report:
    """rho[g] = matrix M_g acting as v -> M_g conj^{theta(g)}(v)."""
    rep = Report(f"unitary rep of {G.name}".strip())
    for c in ("defined", "even", "grading", "homomorphism", "unitary"):
        rep.check(c)
    missing = [g for g in G.elements if g not in rho]
    if missing:
        rep.fail("defined", f"no matrix for {missing}")
        return rep
    mats = {g: rho[g] if isinstance(rho[g], ExactMatrix) else ExactMatrix(rho[g], H.dim) for g in G.elements}
    p = H.parity
    for g, m in mats.items():
        if m.rows != H.dim or m.cols != H.dim:
            rep.fail("defined", f"rho({g}) has the wrong shape")
            return rep
        for r, c in product(range(H.dim), repeat=2):
            if m[r, c] and p[r] != p[c]:
                rep.fail("even", f"rho({g}) mixes parities")
                break
        if m.rank() != H.dim:
            rep.fail("defined", f"rho({g}) is not invertible")
    grading = ExactMatrix([[_sgn(p[r]) if r == c else ZERO for c in range(H.dim)] for r in range(H.dim)], H.dim)
    if mats[G.c] != grading:
        rep.fail("grading", "rho(c) is not the grading operator")
    for g, h in product(G.elements, repeat=2):
        lhs = mats[G.mul(g, h)]
        rhs = mats[g] * (mats[h].conj() if G.theta[g] else mats[h])
        if lhs != rhs:
            rep.fail("homomorphism", f"rho({g})rho({h}) != rho({G.mul(g, h)})")
    for g in G.elements:
        th = G.theta[g]
        for i, j in product(range(H.dim), repeat=2):
            v = [ONE if k == i else ZERO for k in range(H.dim)]
            w = [ONE if k == j else ZERO for k in range(H.dim)]
            lhs = H.pair(_act(mats[g], th, v), _act(mats[g], th, w))
            rhs = H.pair(v, w)
            if th:
                rhs = rhs.conj() * _sgn(p[i])
            if lhs != rhs:
                rep.fail("unitary", f"rho({g}) is not {'anti-' if th else ''}unitary on (e{i}, e{j})")
    return rep
