"""Graded bimodules over superalgebras, relative tensor products, adjoints and Serre data."""
from __future__ import annotations

from itertools import product

from .errors import StructuralError, UnsupportedInput
from .exactlin import ONE, ZERO, ExactMatrix, GaussianScalar, Solver, kernel, rank, solve, solve_many
from .report import Report
from .salg import AlgebraHom, Superalgebra, generating_indices, ground_field, opposite, parity_automorphism
from .salg import conjugate as conjugate_algebra
from .salg import tensor as tensor_algebra


def _sgn(e) -> GaussianScalar:
    return -ONE if e % 2 else ONE


def _add_into(acc, v, s):
    for k, x in enumerate(v):
        if x:
            acc[k] = acc[k] + s * x


class Bimodule:
    """(A,B)-bimodule; left_act[b][m] = e_b.m and right_act[m][a] = m.e_a as coefficient vectors."""

    def __init__(self, left_alg: Superalgebra, right_alg: Superalgebra, parity, left_act, right_act,
                 names=None, name: str = ""):
        self.left_alg, self.right_alg = left_alg, right_alg
        self.parity = [int(p) % 2 for p in parity]
        self.dim = n = len(self.parity)
        if left_alg.field != right_alg.field:
            raise StructuralError("bimodule over algebras with different field tags")
        self.field = left_alg.field
        if len(left_act) != left_alg.dim or any(len(r) != n for r in left_act):
            raise StructuralError("left action tensor has the wrong shape")
        if len(right_act) != n or any(len(r) != right_alg.dim for r in right_act):
            raise StructuralError("right action tensor has the wrong shape")
        co = GaussianScalar.coerce
        self.left_act = [[[co(x) for x in v] for v in row] for row in left_act]
        self.right_act = [[[co(x) for x in v] for v in row] for row in right_act]
        for row in self.left_act + self.right_act:
            if any(len(v) != n for v in row):
                raise StructuralError("action vectors have the wrong length")
        self.names = list(names) if names else [f"m{k}" for k in range(n)]
        self.name = name

    def zero(self):
        return [ZERO] * self.dim

    def basis(self, i):
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def degree(self, v):
        ps = {self.parity[k] for k, x in enumerate(v) if x}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def lmul(self, b, v):
        out = [ZERO] * self.dim
        for i, x in enumerate(b):
            if not x:
                continue
            row = self.left_act[i]
            for m, y in enumerate(v):
                if y:
                    _add_into(out, row[m], x * y)
        return out

    def rmul(self, v, a):
        out = [ZERO] * self.dim
        for m, y in enumerate(v):
            if not y:
                continue
            row = self.right_act[m]
            for i, x in enumerate(a):
                if x:
                    _add_into(out, row[i], x * y)
        return out

    def L(self, i) -> ExactMatrix:
        """Matrix of the left action of basis element i."""
        cols = self.left_act[i]
        return ExactMatrix([[cols[m][r] for m in range(self.dim)] for r in range(self.dim)], self.dim)

    def R(self, i) -> ExactMatrix:
        cols = [self.right_act[m][i] for m in range(self.dim)]
        return ExactMatrix([[cols[m][r] for m in range(self.dim)] for r in range(self.dim)], self.dim)

    def __repr__(self):
        return f"Bimodule({self.name or self.dim})"


def check_bimodule(M: Bimodule) -> Report:
    rep = Report(f"bimodule {M.name}".strip())
    A, B = M.left_alg, M.right_alg
    for c in ("grading", "unit", "left-associativity", "right-associativity", "commuting-actions"):
        rep.check(c)
    for b, m in product(range(A.dim), range(M.dim)):
        d = M.degree(M.left_act[b][m])
        if d is None or (any(M.left_act[b][m]) and d != (A.parity[b] + M.parity[m]) % 2):
            rep.fail("grading", f"{A.names[b]}.{M.names[m]} has the wrong parity")
    for m, a in product(range(M.dim), range(B.dim)):
        d = M.degree(M.right_act[m][a])
        if d is None or (any(M.right_act[m][a]) and d != (B.parity[a] + M.parity[m]) % 2):
            rep.fail("grading", f"{M.names[m]}.{B.names[a]} has the wrong parity")
    for m in range(M.dim):
        e = M.basis(m)
        if M.lmul(A.unit, e) != e:
            rep.fail("unit", f"1.{M.names[m]} != {M.names[m]}")
        if M.rmul(e, B.unit) != e:
            rep.fail("unit", f"{M.names[m]}.1 != {M.names[m]}")
    for b1, b2, m in product(range(A.dim), range(A.dim), range(M.dim)):
        lhs = M.lmul(A.mul_basis(b1, b2), M.basis(m))
        rhs = M.lmul(A.basis(b1), M.left_act[b2][m])
        if lhs != rhs:
            rep.fail("left-associativity", f"({A.names[b1]}{A.names[b2]}){M.names[m]}")
    for m, a1, a2 in product(range(M.dim), range(B.dim), range(B.dim)):
        lhs = M.rmul(M.basis(m), B.mul_basis(a1, a2))
        rhs = M.rmul(M.right_act[m][a1], B.basis(a2))
        if lhs != rhs:
            rep.fail("right-associativity", f"{M.names[m]}({B.names[a1]}{B.names[a2]})")
    for b, m, a in product(range(A.dim), range(M.dim), range(B.dim)):
        if M.rmul(M.left_act[b][m], B.basis(a)) != M.lmul(A.basis(b), M.right_act[m][a]):
            rep.fail("commuting-actions", f"({A.names[b]}{M.names[m]}){B.names[a]}")
    return rep


class BimoduleMap:
    def __init__(self, source: Bimodule, target: Bimodule, matrix: ExactMatrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise StructuralError("bimodule map matrix has the wrong shape")
        self.source, self.target, self.matrix = source, target, matrix

    def __call__(self, v):
        return self.matrix.apply(v)

    def __matmul__(self, other: "BimoduleMap") -> "BimoduleMap":
        return BimoduleMap(other.source, self.target, self.matrix * other.matrix)

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.rank() == self.source.dim

    def inverse(self) -> "BimoduleMap":
        n = self.source.dim
        cols = solve_many(self.matrix, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])
        if cols is None or not self.is_iso():
            raise StructuralError("bimodule map is not invertible")
        return BimoduleMap(self.target, self.source, ExactMatrix([[cols[j][i] for j in range(n)]
                                                                  for i in range(n)], n))

    def __eq__(self, o):
        return isinstance(o, BimoduleMap) and self.matrix == o.matrix


def check_bimodule_map(f: BimoduleMap) -> Report:
    M, N = f.source, f.target
    rep = Report("bimodule map")
    for c in ("even", "left-linear", "right-linear"):
        rep.check(c)
    if not (M.left_alg.same_constants(N.left_alg) and M.right_alg.same_constants(N.right_alg)):
        rep.fail("algebras", "source and target are over different algebras")
        return rep
    X = f.matrix
    for r, c in product(range(N.dim), range(M.dim)):
        if X[r, c] and N.parity[r] != M.parity[c]:
            rep.fail("even", f"entry ({r},{c}) joins opposite parities")
    for b, m in product(range(M.left_alg.dim), range(M.dim)):
        if f(M.left_act[b][m]) != N.lmul(M.left_alg.basis(b), X.apply(M.basis(m))):
            rep.fail("left-linear", f"fails on {M.left_alg.names[b]}.{M.names[m]}")
    for m, a in product(range(M.dim), range(M.right_alg.dim)):
        if f(M.right_act[m][a]) != N.rmul(X.apply(M.basis(m)), M.right_alg.basis(a)):
            rep.fail("right-linear", f"fails on {M.names[m]}.{M.right_alg.names[a]}")
    return rep


def is_bimodule_map(f: BimoduleMap) -> bool:
    return check_bimodule_map(f).ok


def _intertwiner_rows(M: Bimodule, N: Bimodule, odd=False):
    """Linear conditions on X (row-major unknowns) for X: M -> N to commute with the actions."""
    nM, nN = M.dim, N.dim
    idx = lambda r, c: r * nM + c
    rows = []
    for b in range(M.left_alg.dim):
        LM, LN = M.L(b), N.L(b)
        s = _sgn(M.left_alg.parity[b]) if odd else ONE
        for r, c in product(range(nN), range(nM)):
            row = [ZERO] * (nN * nM)
            for k in range(nM):
                if LM[k, c]:
                    row[idx(r, k)] += LM[k, c]
            for k in range(nN):
                if LN[r, k]:
                    row[idx(k, c)] -= s * LN[r, k]
            if any(row):
                rows.append(row)
    for a in range(M.right_alg.dim):
        RM, RN = M.R(a), N.R(a)
        for r, c in product(range(nN), range(nM)):
            row = [ZERO] * (nN * nM)
            for k in range(nM):
                if RM[k, c]:
                    row[idx(r, k)] += RM[k, c]
            for k in range(nN):
                if RN[r, k]:
                    row[idx(k, c)] -= RN[r, k]
            if any(row):
                rows.append(row)
    return rows


def _parity_rows(M: Bimodule, N: Bimodule, p: int):
    nM, nN = M.dim, N.dim
    rows = []
    for r, c in product(range(nN), range(nM)):
        if (N.parity[r] + M.parity[c]) % 2 != p:
            row = [ZERO] * (nN * nM)
            row[r * nM + c] = ONE
            rows.append(row)
    return rows


def _unflatten(v, r, c) -> ExactMatrix:
    return ExactMatrix([v[i * c:(i + 1) * c] for i in range(r)], c)


def hom_even(M: Bimodule, N: Bimodule) -> list[BimoduleMap]:
    """Basis of even bimodule maps M -> N, from the echelon kernel."""
    if not (M.left_alg.same_constants(N.left_alg) and M.right_alg.same_constants(N.right_alg)):
        raise StructuralError("hom_even between bimodules over different algebras")
    rows = _intertwiner_rows(M, N) + _parity_rows(M, N, 0)
    n = M.dim * N.dim
    if n == 0:
        return []
    ker = kernel(ExactMatrix(rows, n)) if rows else [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    return [BimoduleMap(M, N, _unflatten(v, N.dim, M.dim)) for v in ker]


# -- relative tensor product --------------------------------------------------

class TensorBimodule(Bimodule):
    """N (x)_B M as a quotient of N (x) M; basis = non-pivot pure tensors n_i (x) m_j."""

    def pure(self, n, m):
        return self.project(_outer(n, m))

    def project(self, full):
        out = [ZERO] * self.dim
        for c, x in enumerate(full):
            if x:
                _add_into(out, self._proj_cols[c], x)
        return out

    def lift(self, q):
        """Section: a representative in N (x) M as a dict (i, j) -> coefficient."""
        out = {}
        for k, x in enumerate(q):
            if x:
                out[self.pairs[k]] = out.get(self.pairs[k], ZERO) + x
        return out


def _outer(n, m):
    out = []
    for x in n:
        if x:
            out.extend(x * y if y else ZERO for y in m)
        else:
            out.extend([ZERO] * len(m))
    return out


def tensor_over(N: Bimodule, M: Bimodule) -> TensorBimodule:
    """N (x)_B M for N a (C,B)- and M a (B,A)-bimodule."""
    if not N.right_alg.same_constants(M.left_alg):
        raise StructuralError("tensor_over: middle algebras differ")
    B = M.left_alg
    nN, nM = N.dim, M.dim
    full = nN * nM
    rels = []
    for i, b, j in product(range(nN), generating_indices(B), range(nM)):
        r = _outer(N.right_act[i][b], M.basis(j))
        s = _outer(N.basis(i), M.left_act[b][j])
        row = [x - y for x, y in zip(r, s)]
        if any(row):
            rels.append(row)
    if rels:
        R, piv = ExactMatrix(rels, full).rref()
    else:
        R, piv = None, ()
    pset = set(piv)
    keep = [c for c in range(full) if c not in pset]
    pos = {c: k for k, c in enumerate(keep)}
    proj_cols = []
    prow = {p: r for r, p in enumerate(piv)}
    for c in range(full):
        v = [ZERO] * len(keep)
        if c in pos:
            v[pos[c]] = ONE
        else:
            row = R.entries[prow[c]]
            for k, cc in enumerate(keep):
                if row[cc]:
                    v[k] = -row[cc]
        proj_cols.append(v)
    pairs = [divmod(c, nM) for c in keep]
    parity = [(N.parity[i] + M.parity[j]) % 2 for i, j in pairs]
    C, A = N.left_alg, M.right_alg
    left = []
    for c in range(C.dim):
        row = []
        for i, j in pairs:
            v = [ZERO] * len(keep)
            for c2, x in enumerate(_outer(N.left_act[c][i], M.basis(j))):
                if x:
                    _add_into(v, proj_cols[c2], x)
            row.append(v)
        left.append(row)
    right = []
    for i, j in pairs:
        row = []
        for a in range(A.dim):
            v = [ZERO] * len(keep)
            for c2, x in enumerate(_outer(N.basis(i), M.right_act[j][a])):
                if x:
                    _add_into(v, proj_cols[c2], x)
            row.append(v)
        right.append(row)
    names = [f"{N.names[i]}⊗{M.names[j]}" for i, j in pairs]
    T = TensorBimodule(C, A, parity, left, right, names,
                       f"{N.name}⊗{M.name}" if N.name and M.name else "")
    T.N, T.M, T.pairs, T._proj_cols = N, M, pairs, proj_cols
    return T


def map_from_pure(T: TensorBimodule, target: Bimodule, fn) -> BimoduleMap:
    """Linear map out of T determined by fn(i, j) on pure basis tensors n_i (x) m_j."""
    cols = [fn(i, j) for i, j in T.pairs]
    return BimoduleMap(T, target, ExactMatrix([[cols[k][r] for k in range(T.dim)]
                                               for r in range(target.dim)], T.dim))


# -- constructions -------------------------------------------------------------

def regular(A: Superalgebra) -> Bimodule:
    """A as an (A,A)-bimodule."""
    left = [[A.mul_basis(b, m) for m in range(A.dim)] for b in range(A.dim)]
    right = [[A.mul_basis(m, a) for a in range(A.dim)] for m in range(A.dim)]
    return Bimodule(A, A, A.parity, left, right, A.names, A.name or "A")


def induced(phi: AlgebraHom, side: str = "right") -> Bimodule:
    """B_phi (right action through phi) or, with side='left', phi_B."""
    A, B = phi.source, phi.target
    imgs = [phi(A.basis(a)) for a in range(A.dim)]
    if side == "right":
        left = [[B.mul_basis(b, m) for m in range(B.dim)] for b in range(B.dim)]
        right = [[B.mul(B.basis(m), imgs[a]) for a in range(A.dim)] for m in range(B.dim)]
        return Bimodule(B, A, B.parity, left, right, B.names, f"{B.name or 'B'}_phi")
    left = [[B.mul(imgs[a], B.basis(m)) for m in range(B.dim)] for a in range(A.dim)]
    right = [[B.mul_basis(m, b) for b in range(B.dim)] for m in range(B.dim)]
    return Bimodule(A, B, B.parity, left, right, B.names, f"phi_{B.name or 'B'}")


def parity_bimodule(A: Superalgebra) -> Bimodule:
    """A_{(-1)^F}: basis a x with a x . a' = (-1)^{|a'|} a a' x."""
    M = induced(parity_automorphism(A))
    M.names = [("x" if nm == "1" else f"{nm}x") for nm in A.names]
    M.name = f"{A.name or 'A'}_(-1)^F"
    return M


def parity_shift(M: Bimodule) -> Bimodule:
    """Pi M with b(pi m) = (-1)^{|b|} pi(bm)."""
    A = M.left_alg
    left = [[[(-x if A.parity[b] else x) for x in M.left_act[b][m]] for m in range(M.dim)]
            for b in range(A.dim)]
    return Bimodule(A, M.right_alg, [1 - p for p in M.parity], left, M.right_act,
                    [f"Π{n}" for n in M.names], f"Π{M.name}")


def direct_sum_bimodule(M: Bimodule, N: Bimodule) -> Bimodule:
    if M.left_alg is not N.left_alg and not M.left_alg.same_constants(N.left_alg):
        raise StructuralError("direct sum over different left algebras")
    if M.right_alg is not N.right_alg and not M.right_alg.same_constants(N.right_alg):
        raise StructuralError("direct sum over different right algebras")
    m, n = M.dim, N.dim
    pad = lambda v, front: [ZERO] * m + list(v) if front else list(v) + [ZERO] * n
    left = [[pad(v, False) for v in M.left_act[b]] + [pad(v, True) for v in N.left_act[b]]
            for b in range(M.left_alg.dim)]
    right = [[pad(v, False) for v in row] for row in M.right_act] + [[pad(v, True) for v in row] for row in N.right_act]
    return Bimodule(M.left_alg, M.right_alg, M.parity + N.parity, left, right,
                    [f"{x}⊕" for x in M.names] + [f"⊕{x}" for x in N.names], f"{M.name}⊕{N.name}")


def rebase(M: Bimodule, P) -> Bimodule:
    """The same bimodule in the basis given by the columns of an even invertible P."""
    P = ExactMatrix(P) if not isinstance(P, ExactMatrix) else P
    n = M.dim
    if any(P[r, c] and M.parity[r] != M.parity[c] for r in range(n) for c in range(n)):
        raise StructuralError("change of basis is not even")
    inv = Solver(P)
    cols = [[P[r, c] for r in range(n)] for c in range(n)]

    def conv(v):
        x = inv(v)
        if x is None:
            raise StructuralError("change of basis is not invertible")
        return x

    left = [[conv(M.lmul(M.left_alg.basis(b), cols[m])) for m in range(n)] for b in range(M.left_alg.dim)]
    right = [[conv(M.rmul(cols[m], M.right_alg.basis(a))) for a in range(M.right_alg.dim)] for m in range(n)]
    return Bimodule(M.left_alg, M.right_alg, M.parity, left, right, None, M.name)


def induced_composition(psi: AlgebraHom, phi: AlgebraHom) -> BimoduleMap:
    """c_psi (x) b_phi -> c psi(b)_{psi phi}."""
    P, Q = induced(psi), induced(phi)
    T = tensor_over(P, Q)
    comp = AlgebraHom(phi.source, psi.target, psi.matrix * phi.matrix)
    target = induced(comp)
    C = psi.target
    return map_from_pure(T, target, lambda i, j: C.mul(C.basis(i), psi(phi.target.basis(j))))


def opposite_bimodule(M: Bimodule) -> Bimodule:
    """M^op over (B^op, A^op): b^op m^op = (-1)^{|b||m|} (mb)^op."""
    A, B = M.left_alg, M.right_alg
    Aop, Bop = opposite(A), opposite(B)
    left = [[[x * _sgn(B.parity[b] * M.parity[m]) for x in M.right_act[m][b]] for m in range(M.dim)]
            for b in range(B.dim)]
    right = [[[x * _sgn(A.parity[a] * M.parity[m]) for x in M.left_act[a][m]] for a in range(A.dim)]
             for m in range(M.dim)]
    return Bimodule(Bop, Aop, M.parity, left, right, [f"{n}^op" for n in M.names],
                    f"{M.name}^op" if M.name else "")


def conjugate_bimodule(M: Bimodule) -> Bimodule:
    if M.field != "C":
        raise StructuralError("conjugate_bimodule needs complex algebras")
    cj = lambda t: [[[x.conj() for x in v] for v in row] for row in t]
    return Bimodule(conjugate_algebra(M.left_alg), conjugate_algebra(M.right_alg), M.parity,
                    cj(M.left_act), cj(M.right_act), [f"conj({n})" for n in M.names],
                    f"conj({M.name})" if M.name else "")


def op_tensor_iso(M: Bimodule, N: Bimodule) -> BimoduleMap:
    """M^op (x) N^op -> (N (x) M)^op, m^op (x) n^op -> (-1)^{|m||n|} (n (x) m)^op."""
    T = tensor_over(opposite_bimodule(M), opposite_bimodule(N))
    NM = tensor_over(N, M)
    target = opposite_bimodule(NM)
    return map_from_pure(T, target, lambda i, j: [x * _sgn(M.parity[i] * N.parity[j])
                                                  for x in NM.pure(N.basis(j), M.basis(i))])


def op_induced_iso(phi: AlgebraHom) -> BimoduleMap:
    """(B_phi)^op -> {}_{phi^op} B^op, identity on the underlying space."""
    src = opposite_bimodule(induced(phi))
    phi_op = AlgebraHom(opposite(phi.source), opposite(phi.target), phi.matrix)
    tgt = induced(phi_op, side="left")
    return BimoduleMap(src, tgt, ExactMatrix.identity(src.dim))


def external_tensor(M: Bimodule, N: Bimodule) -> Bimodule:
    """M (x) N over (A1 (x) A2, B1 (x) B2) with Koszul signs."""
    A1, B1, A2, B2 = M.left_alg, M.right_alg, N.left_alg, N.right_alg
    LA, RA = tensor_algebra(A1, A2), tensor_algebra(B1, B2)
    nM, nN = M.dim, N.dim
    par = [(M.parity[i] + N.parity[j]) % 2 for i in range(nM) for j in range(nN)]
    left = []
    for a1, a2 in product(range(A1.dim), range(A2.dim)):
        left.append([[x * _sgn(A2.parity[a2] * M.parity[i])
                      for x in _outer(M.left_act[a1][i], N.left_act[a2][j])]
                     for i in range(nM) for j in range(nN)])
    right = []
    for i, j in product(range(nM), range(nN)):
        right.append([[x * _sgn(N.parity[j] * B1.parity[b1])
                       for x in _outer(M.right_act[i][b1], N.right_act[j][b2])]
                      for b1 in range(B1.dim) for b2 in range(B2.dim)])
    names = [f"{M.names[i]}⊗{N.names[j]}" for i in range(nM) for j in range(nN)]
    return Bimodule(LA, RA, par, left, right, names)


def ev_bimodule(A: Superalgebra) -> Bimodule:
    """A as a (k, A^op (x) A)-bimodule: x.(a^op (x) a') = (-1)^{|a||x|} a x a'."""
    k = ground_field(A.field)
    R = tensor_algebra(opposite(A), A)
    n = A.dim
    left = [[A.basis(m) for m in range(n)]]
    right = []
    for m in range(n):
        row = []
        for a, a2 in product(range(n), range(n)):
            v = A.mul(A.mul_basis(a, m), A.basis(a2))
            row.append([x * _sgn(A.parity[a] * A.parity[m]) for x in v])
        right.append(row)
    return Bimodule(k, R, A.parity, left, right, A.names, f"ev_{A.name or 'A'}")


def identity_bimodule_of_ground(field: str) -> Bimodule:
    return regular(ground_field(field))


def _solve_map(S: Bimodule, T: Bimodule, values: dict) -> BimoduleMap | None:
    """Even bimodule map S -> T with prescribed images values[k] of basis vectors k."""
    rows = _intertwiner_rows(S, T) + _parity_rows(S, T, 0)
    rhs = [ZERO] * len(rows)
    n = S.dim * T.dim
    for k, img in values.items():
        for r in range(T.dim):
            row = [ZERO] * n
            row[r * S.dim + k] = ONE
            rows.append(row)
            rhs.append(img[r])
    x = solve(ExactMatrix(rows, n), rhs)
    if x is None:
        return None
    return BimoduleMap(S, T, _unflatten(x, T.dim, S.dim))


def _solve_map_from_vectors(S: Bimodule, T: Bimodule, pairs: list) -> BimoduleMap | None:
    """Even bimodule map with X(u) = w for (u, w) in pairs, u arbitrary vectors of S."""
    rows = _intertwiner_rows(S, T) + _parity_rows(S, T, 0)
    rhs = [ZERO] * len(rows)
    n = S.dim * T.dim
    for u, w in pairs:
        for r in range(T.dim):
            row = [ZERO] * n
            for c, x in enumerate(u):
                if x:
                    row[r * S.dim + c] = x
            rows.append(row)
            rhs.append(w[r])
    x = solve(ExactMatrix(rows, n), rhs)
    if x is None:
        return None
    return BimoduleMap(S, T, _unflatten(x, T.dim, S.dim))


class DualFilling:
    def __init__(self, source, target, filling, report):
        self.source, self.target, self.filling, self.report = source, target, filling, report


def dual_bimodule(M: Bimodule) -> DualFilling:
    """Filling ev_B (x) (B^op (x) M) ~ ev_A (x) (M^op (x) A) with 1(x)1(x)m -> 1(x)m^op(x)1, M a (B,A)-bimodule."""
    B, A = M.left_alg, M.right_alg
    rep = Report(f"dual filling {M.name}".strip())
    rep.check("filling")
    X1 = tensor_over(ev_bimodule(B), external_tensor(regular(opposite(B)), M))
    Mop = opposite_bimodule(M)
    X2 = tensor_over(ev_bimodule(A), external_tensor(Mop, regular(A)))
    pairs = []
    for m in range(M.dim):
        u = X1.pure(B.unit, _outer(opposite(B).unit, M.basis(m)))
        w = X2.pure(A.unit, _outer(Mop.basis(m), A.unit))
        pairs.append((u, w))
    F = _solve_map_from_vectors(X1, X2, pairs)
    if F is None:
        rep.fail("filling", "1⊗1⊗m ↦ 1⊗m^op⊗1 does not extend to a module map")
    elif not F.is_iso():
        rep.fail("filling", "the induced module map is not an isomorphism")
    return DualFilling(X1, X2, F, rep)


# -- adjoints -------------------------------------------------------------------

class Adjunction:
    """M with right adjoint MR, ev: M (x)_B MR -> A and coev: B -> MR (x)_A M."""

    def __init__(self, M, MR, ev, coev, report, MRM=None, MMR=None):
        self.M, self.MR, self.ev, self.coev, self.report = M, MR, ev, coev, report
        self.MRM, self.MMR = MRM, MMR


def right_adjoint(M: Bimodule) -> Adjunction:
    """M^R = HOM_A(M, A) for an (A,B)-bimodule M, with ev/coev solved and snakes checked.

    Conventions: f(am) = (-1)^{|a||f|} a f(m), (bf)(m) = (-1)^{|b|(|f|+|m|)} f(mb),
    (fa)(m) = (-1)^{|a||m|} f(m) a and ev(m (x) f) = (-1)^{|m||f|} f(m).
    """
    A, B = M.left_alg, M.right_alg
    nA, nM = A.dim, M.dim
    rep = Report(f"right adjoint {M.name}".strip())
    for c in ("bimodule", "ev", "coev", "snake-left", "snake-right"):
        rep.check(c)
    # maps f: M -> A stored as flattened dimA x dimM matrices, column m = f(e_m)
    idx = lambda r, c: r * nM + c
    basis, par = [], []
    for p in (0, 1):
        rows = []
        for r, c in product(range(nA), range(nM)):
            if (A.parity[r] + M.parity[c] + p) % 2:
                row = [ZERO] * (nA * nM)
                row[idx(r, c)] = ONE
                rows.append(row)
        for a, m in product(range(nA), range(nM)):
            am = M.left_act[a][m]
            s = _sgn(A.parity[a] * p)
            for r in range(nA):
                row = [ZERO] * (nA * nM)
                for k, x in enumerate(am):
                    if x:
                        row[idx(r, k)] += x
                # minus s * a f(m): (a f(m))_r = sum_k (a e_k)_r f_{k,m}
                for k in range(nA):
                    y = A.mult[a][k].get(r)
                    if y:
                        row[idx(k, m)] -= s * y
                if any(row):
                    rows.append(row)
        ker = kernel(ExactMatrix(rows, nA * nM)) if rows else \
            [[ONE if i == j else ZERO for i in range(nA * nM)] for j in range(nA * nM)]
        basis.extend(ker)
        par.extend([p] * len(ker))
    d = len(basis)
    Bas = ExactMatrix([[basis[k][i] for k in range(d)] for i in range(nA * nM)], d)

    def coords(flat):
        x = solve(Bas, flat)
        if x is None:
            raise StructuralError("map outside HOM_A(M, A)")
        return x

    def fval(k, mvec):
        """f_k applied to a module vector."""
        out = [ZERO] * nA
        for c, y in enumerate(mvec):
            if y:
                for r in range(nA):
                    z = basis[k][idx(r, c)]
                    if z:
                        out[r] += y * z
        return out

    left, right = [], []
    for b in range(B.dim):
        row = []
        for k in range(d):
            flat = [ZERO] * (nA * nM)
            for m in range(nM):
                img = fval(k, M.right_act[m][b])
                s = _sgn(B.parity[b] * (par[k] + M.parity[m]))
                for r in range(nA):
                    flat[idx(r, m)] = s * img[r]
            row.append(coords(flat))
        left.append(row)
    for k in range(d):
        row = []
        for a in range(nA):
            flat = [ZERO] * (nA * nM)
            for m in range(nM):
                img = A.mul(fval(k, M.basis(m)), A.basis(a))
                s = _sgn(A.parity[a] * M.parity[m])
                for r in range(nA):
                    flat[idx(r, m)] = s * img[r]
            row.append(coords(flat))
        right.append(row)
    MR = Bimodule(B, A, par, left, right, [f"f{k}" for k in range(d)], f"{M.name}^R" if M.name else "")
    MR.fval = fval
    br = check_bimodule(MR)
    if not br.ok:
        rep.merge(br, "bimodule")
        return Adjunction(M, MR, None, None, rep)
    MMR = tensor_over(M, MR)
    regA = regular(A)
    ev = map_from_pure(MMR, regA, lambda m, k: [x * _sgn(M.parity[m] * par[k]) for x in fval(k, M.basis(m))])
    er = check_bimodule_map(ev)
    if not er.ok:
        rep.merge(er, "ev")
    MRM = tensor_over(MR, M)
    # coev(1) = u in MRM, even, with sum ev(m (x) f_k) m_k = m for all m
    cols = []
    for q, (k, mm) in enumerate(MRM.pairs):
        col = []
        for m in range(nM):
            e = fval(k, M.basis(m))
            s = _sgn(M.parity[m] * par[k])
            col.extend(M.lmul([s * x for x in e], M.basis(mm)))
        cols.append(col)
    rows = [[cols[q][r] for q in range(MRM.dim)] for r in range(nM * nM)]
    rhs = [ONE if r // nM == r % nM else ZERO for r in range(nM * nM)]
    for q in range(MRM.dim):
        if MRM.parity[q]:
            row = [ZERO] * MRM.dim
            row[q] = ONE
            rows.append(row)
            rhs.append(ZERO)
    u = solve(ExactMatrix(rows, MRM.dim), rhs) if MRM.dim else None
    if u is None:
        rep.fail("snake-left", "no element u with (ev ⊗ id)(m ⊗ u) = m")
        return Adjunction(M, MR, ev, None, rep, MRM, MMR)
    regB = regular(B)
    coev_cols = [MRM.rmul(u, B.basis(b)) for b in range(B.dim)]
    coev = BimoduleMap(regB, MRM, ExactMatrix([[coev_cols[b][r] for b in range(B.dim)]
                                               for r in range(MRM.dim)], B.dim))
    cr = check_bimodule_map(coev)
    if not cr.ok:
        rep.merge(cr, "coev")
    # snake: (id (x) ev)(u (x) f) = f, i.e. sum f_k ev(m_k (x) f) = f
    lifted = MRM.lift(u)
    for j in range(d):
        acc = [ZERO] * d
        for (k, mm), c in lifted.items():
            e = fval(j, M.basis(mm))
            s = _sgn(M.parity[mm] * par[j]) * c
            fk = MR.rmul(MR.basis(k), [s * x for x in e])
            acc = [x + y for x, y in zip(acc, fk)]
        if acc != MR.basis(j):
            rep.fail("snake-right", f"(id ⊗ ev)(coev ⊗ id) differs from id on f{j}")
    return Adjunction(M, MR, ev, coev, rep, MRM, MMR)


def left_adjoint(M: Bimodule) -> Adjunction:
    """Right adjoint of the opposite bimodule; (M^op)^R is (M^L)^op."""
    return right_adjoint(opposite_bimodule(M))


# -- invertibility ------------------------------------------------------------------

class MoritaContext:
    """Invertible M (A,B) with inverse N (B,A), eps: M (x)_B N -> A and eta: N (x)_A M -> B."""

    def __init__(self, M, N, eps, eta=None):
        self.M, self.N, self.eps = M, N, eps
        self.MN = eps.source
        self.eta = eta if eta is not None else _eta_from_eps(M, N, eps)
        self.NM = self.eta.source


def _eta_from_eps(M, N, eps) -> BimoduleMap:
    """eta with m . eta(n (x) m') = eps(m (x) n) . m' (associativity of the context)."""
    B = M.right_alg
    NM = tensor_over(N, M)
    MN = eps.source
    Rrows = []
    for m in range(M.dim):
        for r in range(M.dim):
            Rrows.append([M.right_act[m][b][r] for b in range(B.dim)])
    Rmat = ExactMatrix(Rrows, B.dim)

    def fn(n, m2):
        rhs = []
        for m in range(M.dim):
            a = eps(MN.pure(M.basis(m), N.basis(n)))
            rhs.extend(M.lmul(a, M.basis(m2)))
        b = solve(Rmat, rhs)
        if b is None:
            raise StructuralError("eps admits no compatible eta")
        return b

    eta = map_from_pure(NM, regular(B), fn)
    if not check_bimodule_map(eta).ok or not eta.is_iso():
        raise StructuralError("derived eta is not a bimodule isomorphism")
    return eta


def endomorphism_ranks(M: Bimodule) -> dict:
    """Rank oracle: A -> End_B(M) and B -> End_A(M) (graded), independent of ev/coev."""
    A, B = M.left_alg, M.right_alg
    n = M.dim
    out = {}
    # End_B(M): all maps commuting with the right action
    rows = []
    for a in range(B.dim):
        R = M.R(a)
        for r, c in product(range(n), range(n)):
            row = [ZERO] * (n * n)
            for k in range(n):
                if R[k, c]:
                    row[r * n + k] += R[k, c]
                if R[r, k]:
                    row[k * n + c] -= R[r, k]
            if any(row):
                rows.append(row)
    endB = len(kernel(ExactMatrix(rows, n * n))) if rows else n * n
    imgA = rank(ExactMatrix([[M.L(a)[r, c] for a in range(A.dim)] for r in range(n) for c in range(n)], A.dim))
    out["A"] = (A.dim, imgA, endB)
    # End_A(M) graded: f(am) = (-1)^{|f||a|} a f(m), per parity
    endA = 0
    for p in (0, 1):
        rows = []
        for a in range(A.dim):
            L = M.L(a)
            s = _sgn(p * A.parity[a])
            for r, c in product(range(n), range(n)):
                row = [ZERO] * (n * n)
                for k in range(n):
                    if L[k, c]:
                        row[r * n + k] += L[k, c]
                    if L[r, k]:
                        row[k * n + c] -= s * L[r, k]
                if any(row):
                    rows.append(row)
        for r, c in product(range(n), range(n)):
            if (M.parity[r] + M.parity[c] + p) % 2:
                row = [ZERO] * (n * n)
                row[r * n + c] = ONE
                rows.append(row)
        endA += len(kernel(ExactMatrix(rows, n * n))) if rows else n * n
    cols = []
    for b in range(B.dim):
        # super right action m -> (-1)^{|b||m|} m b
        R = M.R(b)
        cols.append([R[r, c] * _sgn(B.parity[b] * M.parity[c]) for r in range(n) for c in range(n)])
    imgB = rank(ExactMatrix([[cols[b][k] for b in range(B.dim)] for k in range(n * n)], B.dim))
    out["B"] = (B.dim, imgB, endA)
    return out


def invertible_by_ranks(M: Bimodule) -> bool:
    r = endomorphism_ranks(M)
    return all(dim == img == end for dim, img, end in r.values())


def is_invertible(M: Bimodule) -> MoritaContext | None:
    """Morita context built from the right adjoint, or None."""
    adj = right_adjoint(M)
    if not adj.report.ok or adj.ev is None or adj.coev is None:
        return None
    if not (adj.ev.is_iso() and adj.coev.is_iso()):
        return None
    return MoritaContext(M, adj.MR, adj.ev, adj.coev.inverse())


# -- Serre bimodule ------------------------------------------------------------------

def serre(A: Superalgebra) -> Bimodule:
    """A* with (f a1)(a2) = f(a1 a2) and (a1 f)(a2) = (-1)^{|a1|(|f|+|a2|)} f(a2 a1)."""
    n = A.dim
    P = A.parity
    left = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append([A.mult[k][i].get(j, ZERO) * _sgn(P[i] * (P[j] + P[k])) for k in range(n)])
        left.append(row)
    right = [[[A.mult[i][k].get(j, ZERO) for k in range(n)] for i in range(n)] for j in range(n)]
    return Bimodule(A, A, P, left, right, [f"{nm}*" for nm in A.names], f"{A.name or 'A'}*")


def trace_witness(A: Superalgebra, functional) -> BimoduleMap:
    """A -> A*, a -> lambda(a .); a bimodule map when lambda is a graded-symmetric trace."""
    S = serre(A)
    regA = regular(A)
    cols = []
    for a in range(A.dim):
        cols.append([sum((A.mult[a][k].get(j, ZERO) * functional[j] for j in range(A.dim)), ZERO)
                     for k in range(A.dim)])
    return BimoduleMap(regA, S, ExactMatrix([[cols[a][k] for a in range(A.dim)] for k in range(A.dim)], A.dim))


def unit_decomposition(ctx: MoritaContext, extra=None):
    """Even u in M (x) N (full space, dict (i,j) -> c) with eps(u) = 1; `extra` adds a kernel vector."""
    M, N, eps = ctx.M, ctx.N, ctx.eps
    MN = ctx.MN
    A = M.left_alg
    keys = [(i, j) for i in range(M.dim) for j in range(N.dim) if M.parity[i] == N.parity[j]]
    cols = [eps(MN.pure(M.basis(i), N.basis(j))) for i, j in keys]
    mat = ExactMatrix([[cols[k][r] for k in range(len(keys))] for r in range(A.dim)], len(keys))
    x = solve(mat, A.unit)
    if x is None:
        raise UnsupportedInput("no unit decomposition sum eps(m_j ⊗ n_j) = 1")
    if extra is not None:
        ker = kernel(mat)
        for c, v in zip(extra, ker):
            x = [a + GaussianScalar.coerce(c) * b for a, b in zip(x, v)]
    return {k: c for k, c in zip(keys, x) if c}


def serre_naturality(ctx: MoritaContext, extra=None) -> BimoduleMap:
    """S_M: A* (x)_A M -> M (x)_B B*, f (x) m -> sum_j m_j (x) (n_j f m).

    (n f m)(b) = (-1)^{|n|(|f|+|m|+|b|)} f(eps(m b (x) n)).
    """
    M, N = ctx.M, ctx.N
    A, B = M.left_alg, M.right_alg
    SA, SB = serre(A), serre(B)
    src = tensor_over(SA, M)
    tgt = tensor_over(M, SB)
    u = unit_decomposition(ctx, extra)
    MN = ctx.MN
    epsv = {}
    for m, b, n in product(range(M.dim), range(B.dim), range(N.dim)):
        epsv[(m, b, n)] = ctx.eps(MN.pure(M.right_act[m][b], N.basis(n)))

    def nfm(n, f, m):
        s0 = N.parity[n] * (A.parity[f] + M.parity[m])
        return [epsv[(m, b, n)][f] * _sgn(s0 + N.parity[n] * B.parity[b]) for b in range(B.dim)]

    def fn(f, m):
        out = [ZERO] * tgt.dim
        for (mj, nj), c in u.items():
            _add_into(out, tgt.pure(M.basis(mj), nfm(nj, f, m)), c)
        return out

    return map_from_pure(src, tgt, fn)


def serre_naturality_oracle(ctx: MoritaContext) -> BimoduleMap | None:
    """The even bimodule map X with Phi(X(f (x) m) (x) n) = f . eps(m (x) n), found by a linear solve.

    Phi: M (x) B* (x) N -> A*, Phi(m (x) g (x) n)(a) = (-1)^{|m|(|g|+|n|+|a|)} g(eta(n (x) a m)).
    """
    M, N = ctx.M, ctx.N
    A, B = M.left_alg, M.right_alg
    SA, SB = serre(A), serre(B)
    src = tensor_over(SA, M)
    tgt = tensor_over(M, SB)
    NM = ctx.NM
    etav = {}
    for n, a, m in product(range(N.dim), range(A.dim), range(M.dim)):
        etav[(n, a, m)] = ctx.eta(NM.pure(N.basis(n), M.left_act[a][m]))

    def phi(m, g, n):
        s0 = M.parity[m] * (B.parity[g] + N.parity[n])
        return [etav[(n, a, m)][g] * _sgn(s0 + M.parity[m] * A.parity[a]) for a in range(A.dim)]

    Phi = {}
    for r in range(tgt.dim):
        m, g = tgt.pairs[r]
        for n in range(N.dim):
            Phi[(r, n)] = phi(m, g, n)
    MN = ctx.MN
    unknowns = tgt.dim * src.dim
    rows, rhs = [], []
    for q in range(src.dim):
        f, m = src.pairs[q]
        for n in range(N.dim):
            a = ctx.eps(MN.pure(M.basis(m), N.basis(n)))
            want = SA.rmul(SA.basis(f), a)
            for k in range(A.dim):
                row = [ZERO] * unknowns
                for r in range(tgt.dim):
                    row[r * src.dim + q] = Phi[(r, n)][k]
                rows.append(row)
                rhs.append(want[k])
    for r, q in product(range(tgt.dim), range(src.dim)):
        if tgt.parity[r] != src.parity[q]:
            row = [ZERO] * unknowns
            row[r * src.dim + q] = ONE
            rows.append(row)
            rhs.append(ZERO)
    mat = ExactMatrix(rows, unknowns)
    x = solve(mat, rhs)
    if x is None or mat.rank() != unknowns:
        return None
    return BimoduleMap(src, tgt, _unflatten(x, tgt.dim, src.dim))


def check_serre_naturality(ctx: MoritaContext) -> Report:
    rep = Report(f"serre naturality {ctx.M.name}".strip())
    for c in ("bimodule-map", "invertible", "oracle"):
        rep.check(c)
    S = serre_naturality(ctx)
    br = check_bimodule_map(S)
    if not br.ok:
        rep.merge(br, "bimodule-map")
    if not S.is_iso():
        rep.fail("invertible", "S_M is not an isomorphism")
    X = serre_naturality_oracle(ctx)
    if X is None:
        rep.fail("oracle", "oracle system has no unique solution")
    elif X.matrix != S.matrix:
        rep.fail("oracle", "closed formula differs from the oracle solution")
    return rep


# -- parity naturality -------------------------------------------------------------------

def parity_naturality(M: Bimodule) -> BimoduleMap:
    """M (x)_A A_x -> B_x (x)_B M, m (x) a x -> (-1)^{|m|+|a|} x (x) m a, for M a (B,A)-bimodule."""
    B, A = M.left_alg, M.right_alg
    src = tensor_over(M, parity_bimodule(A))
    tgt = tensor_over(parity_bimodule(B), M)
    return map_from_pure(src, tgt, lambda m, a: [x * _sgn(M.parity[m] + A.parity[a])
                                                 for x in tgt.pure(B.unit, M.right_act[m][a])])


def parity_square(A: Superalgebra) -> BimoduleMap:
    """A_x (x)_A A_x -> A, a1 x (x) a2 x -> (-1)^{|a2|} a1 a2."""
    P = parity_bimodule(A)
    T = tensor_over(P, P)
    return map_from_pure(T, regular(A), lambda i, j: [x * _sgn(A.parity[j]) for x in A.mul_basis(i, j)])


# -- complex views of real ambient algebras ------------------------------------------------

class ComplexView:
    """A real subspace V of an ambient real algebra E, closed under left multiplication by i,
    read as a complex vector space with i acting as J = sign * (left mult by i)."""

    def __init__(self, E: Superalgebra, real_basis: list, i_el, sign: int = 1):
        self.E, self.i_el, self.sign = E, i_el, sign
        chosen, span = [], []
        for v in real_basis:
            trial = span + [v]
            if rank(ExactMatrix([list(w) for w in trial]).transpose()) > len(span):
                chosen.append(v)
                span = span + [v, E.mul(i_el, v)]
        self.basis = chosen
        self.real = span
        self.dim = len(chosen)
        d = E.degree
        self.parity = [d(v) for v in chosen]
        if any(p is None for p in self.parity):
            raise StructuralError("complex view needs homogeneous real basis vectors")
        self._solve = Solver(ExactMatrix([list(w) for w in span]).transpose()) if span else None

    def coords(self, x) -> list:
        if self._solve is None:
            if any(x):
                raise StructuralError("element outside the complex view")
            return []
        r = self._solve(x)
        if r is None:
            raise StructuralError("element outside the complex view")
        return [GaussianScalar(r[2 * k].re, self.sign * r[2 * k + 1].re) for k in range(self.dim)]

    def element(self, z) -> list:
        E = self.E
        out = E.zero()
        for k, c in enumerate(z):
            c = GaussianScalar.coerce(c)
            if c.re:
                _add_into(out, self.basis[k], GaussianScalar(c.re))
            if c.im:
                _add_into(out, self.real[2 * k + 1], GaussianScalar(self.sign * c.im))
        return out


def algebra_from_view(V: ComplexView, names=None, name="") -> Superalgebra:
    E = V.E
    mult = {}
    for i, j in product(range(V.dim), repeat=2):
        mult[(i, j)] = {k: c for k, c in enumerate(V.coords(E.mul(V.basis[i], V.basis[j]))) if c}
    return Superalgebra(V.parity, mult, V.coords(E.one()), "C", names, name)


def bimodule_from_views(L: ComplexView, Mv: ComplexView, R: ComplexView, left_alg=None, right_alg=None,
                        names=None, name="") -> Bimodule:
    """The ambient product restricted to L x M -> M and M x R -> M."""
    E = Mv.E
    A = left_alg or algebra_from_view(L)
    B = right_alg or algebra_from_view(R)
    left = [[Mv.coords(E.mul(L.basis[b], Mv.basis[m])) for m in range(Mv.dim)] for b in range(L.dim)]
    right = [[Mv.coords(E.mul(Mv.basis[m], R.basis[a])) for a in range(R.dim)] for m in range(Mv.dim)]
    return Bimodule(A, B, Mv.parity, left, right, names, name)


def morita_from_views(L: ComplexView, Mv: ComplexView, Nv: ComplexView, R: ComplexView,
                      A=None, B=None) -> MoritaContext:
    """Context with eps = ambient multiplication M x N -> L."""
    E = Mv.E
    A = A or algebra_from_view(L)
    B = B or algebra_from_view(R)
    M = bimodule_from_views(L, Mv, R, A, B, name="M")
    N = bimodule_from_views(R, Nv, L, B, A, name="N")
    MN = tensor_over(M, N)
    eps = map_from_pure(MN, regular(A), lambda i, j: L.coords(E.mul(Mv.basis[i], Nv.basis[j])))
    if not check_bimodule_map(eps).ok or not eps.is_iso():
        raise StructuralError("ambient multiplication does not give a Morita context")
    return MoritaContext(M, N, eps)
