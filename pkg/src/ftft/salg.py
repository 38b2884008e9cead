"""Superalgebras by graded structure constants over Q(i) or Q."""
from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Sequence

from .errors import StructuralError, UnsupportedInput
from .exactlin import (ONE, ZERO, ExactMatrix, GaussianScalar, I, as_matrix, kernel, rank, solve,
                       vadd, vscale, vsub)
from .report import Report


class Superalgebra:
    """A = span(e_0..e_{n-1}); mult[i][j] is a sparse dict k -> c_ijk."""

    def __init__(self, parity: Sequence[int], mult, unit: Sequence, field: str = "C",
                 names: Sequence[str] | None = None, name: str = ""):
        self.dim = len(parity)
        self.parity = [int(p) % 2 for p in parity]
        n = self.dim
        if field not in ("C", "R"):
            raise StructuralError(f"field tag must be 'C' or 'R', got {field!r}")
        self.field = field
        if len(unit) != n:
            raise StructuralError("unit vector has the wrong length")
        self.unit = [GaussianScalar.coerce(x) for x in unit]
        self.mult = [[dict() for _ in range(n)] for _ in range(n)]
        if isinstance(mult, dict):
            for (i, j), v in mult.items():
                self.mult[i][j] = {k: GaussianScalar.coerce(c) for k, c in v.items() if c}
        else:
            if len(mult) != n or any(len(r) != n for r in mult):
                raise StructuralError("structure constants have the wrong shape")
            for i in range(n):
                for j in range(n):
                    v = mult[i][j]
                    if isinstance(v, dict):
                        self.mult[i][j] = {k: GaussianScalar.coerce(c) for k, c in v.items() if c}
                    else:
                        if len(v) != n:
                            raise StructuralError("structure constants have the wrong shape")
                        self.mult[i][j] = {k: GaussianScalar.coerce(c) for k, c in enumerate(v)
                                           if GaussianScalar.coerce(c)}
        self.names = list(names) if names else [f"e{k}" for k in range(n)]
        self.name = name

    # -- elements --------------------------------------------------------
    def zero(self):
        return [ZERO] * self.dim

    def one(self):
        return list(self.unit)

    def basis(self, i):
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def el(self, spec) -> list:
        """Element from {name: coeff} or a name."""
        if isinstance(spec, str):
            spec = {spec: 1}
        v = self.zero()
        for nm, c in spec.items():
            v[self.names.index(nm)] += GaussianScalar.coerce(c)
        return v

    def mul(self, x, y):
        acc = {}
        M = self.mult
        for i, a in enumerate(x):
            if not a:
                continue
            Mi = M[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in Mi[j].items():
                    acc[k] = acc.get(k, ZERO) + ab * c
        out = [ZERO] * self.dim
        for k, v in acc.items():
            out[k] = v
        return out

    def prod(self, *xs):
        r = self.one()
        for x in xs:
            r = self.mul(r, x)
        return r

    def mul_basis(self, i, j):
        out = [ZERO] * self.dim
        for k, c in self.mult[i][j].items():
            out[k] = c
        return out

    def degree(self, x) -> int | None:
        """Parity of a nonzero homogeneous element, None otherwise; 0 for zero."""
        ps = {self.parity[k] for k, a in enumerate(x) if a}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def L(self, x) -> ExactMatrix:
        cols = [self.mul(x, self.basis(j)) for j in range(self.dim)]
        return ExactMatrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], self.dim)

    def R(self, x) -> ExactMatrix:
        cols = [self.mul(self.basis(j), x) for j in range(self.dim)]
        return ExactMatrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], self.dim)

    def inverse(self, x):
        """Two-sided inverse or None."""
        y = solve(self.L(x), self.unit)
        if y is None or self.mul(y, x) != self.unit:
            return None
        return y

    def even_indices(self):
        return [k for k in range(self.dim) if self.parity[k] == 0]

    def odd_indices(self):
        return [k for k in range(self.dim) if self.parity[k] == 1]

    def dense(self):
        return [[[self.mult[i][j].get(k, ZERO) for k in range(self.dim)] for j in range(self.dim)]
                for i in range(self.dim)]

    def same_constants(self, o: "Superalgebra") -> bool:
        return (self.dim == o.dim and self.parity == o.parity and self.unit == o.unit
                and self.field == o.field and self.mult == o.mult)

    def fmt(self, x) -> str:
        terms = [f"{c}*{n}" if c != ONE else n for c, n in zip(x, self.names) if c]
        return " + ".join(terms) or "0"

    def __repr__(self):
        return f"Superalgebra({self.name or self.dim}, field={self.field})"


def from_function(names: Sequence[str], parity: Sequence[int], mul: Callable, unit: str,
                  field: str = "C", name: str = "") -> Superalgebra:
    """mul(a, b) returns a dict name -> coeff for basis names a, b."""
    idx = {n: k for k, n in enumerate(names)}
    mult = {}
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            mult[(i, j)] = {idx[k]: c for k, c in mul(a, b).items()}
    u = [ONE if n == unit else ZERO for n in names]
    return Superalgebra(parity, mult, u, field, names, name)


def check_superalgebra(A: Superalgebra) -> Report:
    rep = Report(subject=f"superalgebra {A.name}".strip())
    n = A.dim
    rep.check("grading")
    for i, j in product(range(n), repeat=2):
        for k, c in A.mult[i][j].items():
            if not 0 <= k < n:
                rep.fail("grading", f"index {k} out of range")
            elif A.parity[k] != (A.parity[i] + A.parity[j]) % 2:
                rep.fail("grading", f"e{i}e{j} has a component on e{k} of the wrong parity")
    rep.check("reality")
    if A.field == "R":
        for i, j in product(range(n), repeat=2):
            if any(not c.is_real() for c in A.mult[i][j].values()):
                rep.fail("reality", f"nonreal constant in {A.names[i]}*{A.names[j]}")
        if any(not c.is_real() for c in A.unit):
            rep.fail("reality", "nonreal unit coefficient")
    rep.check("unit")
    if A.degree(A.unit) not in (0,) or not any(A.unit):
        rep.fail("unit", "unit is zero or not even")
    for j in range(n):
        b = A.basis(j)
        if A.mul(A.unit, b) != b or A.mul(b, A.unit) != b:
            rep.fail("unit", f"unit fails on {A.names[j]}")
    rep.check("associativity")
    for i, j, k in product(range(n), repeat=3):
        l = A.mul(A.mul_basis(i, j), A.basis(k))
        r = A.mul(A.basis(i), A.mul_basis(j, k))
        if l != r:
            rep.fail("associativity", f"({A.names[i]},{A.names[j]},{A.names[k]})")
    return rep


def opposite(A: Superalgebra) -> Superalgebra:
    """a^op b^op = (-1)^{|a||b|} (ba)^op."""
    n = A.dim
    mult = {}
    for i, j in product(range(n), repeat=2):
        s = -1 if A.parity[i] and A.parity[j] else 1
        mult[(i, j)] = {k: c * s for k, c in A.mult[j][i].items()}
    return Superalgebra(A.parity, mult, A.unit, A.field, A.names, f"{A.name}^op" if A.name else "")


def conjugate(A: Superalgebra) -> Superalgebra:
    n = A.dim
    mult = {(i, j): {k: c.conj() for k, c in A.mult[i][j].items()} for i in range(n) for j in range(n)}
    return Superalgebra(A.parity, mult, [c.conj() for c in A.unit], A.field, A.names,
                        f"conj({A.name})" if A.name else "")


def tensor(A: Superalgebra, B: Superalgebra) -> Superalgebra:
    """(a1 x b1)(a2 x b2) = (-1)^{|b1||a2|} a1a2 x b1b2; basis index i*dim B + j."""
    if A.field != B.field:
        raise StructuralError("tensor product of algebras over different fields")
    m = B.dim
    par = [(A.parity[i] + B.parity[j]) % 2 for i in range(A.dim) for j in range(m)]
    names = [_tname(A.names[i], B.names[j]) for i in range(A.dim) for j in range(m)]
    mult = {}
    for i1, j1, i2, j2 in product(range(A.dim), range(m), range(A.dim), range(m)):
        s = -1 if B.parity[j1] and A.parity[i2] else 1
        out = {}
        for k, a in A.mult[i1][i2].items():
            for l, b in B.mult[j1][j2].items():
                out[k * m + l] = a * b * s
        mult[(i1 * m + j1, i2 * m + j2)] = out
    unit = [A.unit[i] * B.unit[j] for i in range(A.dim) for j in range(m)]
    return Superalgebra(par, mult, unit, A.field, names,
                        f"{A.name}⊗{B.name}" if A.name and B.name else "")


def _tname(a, b):
    if a == "1":
        return b
    if b == "1":
        return a
    return f"{a}⊗{b}"


def direct_sum(A: Superalgebra, B: Superalgebra) -> Superalgebra:
    if A.field != B.field:
        raise StructuralError("direct sum over different fields")
    n = A.dim
    mult = {}
    for i, j in product(range(A.dim), repeat=2):
        mult[(i, j)] = dict(A.mult[i][j])
    for i, j in product(range(B.dim), repeat=2):
        mult[(n + i, n + j)] = {n + k: c for k, c in B.mult[i][j].items()}
    names = [f"({x},0)" for x in A.names] + [f"(0,{x})" for x in B.names]
    return Superalgebra(A.parity + B.parity, mult, A.unit + B.unit, A.field, names,
                        f"{A.name}+{B.name}" if A.name and B.name else "")


def real_complex_numbers() -> Superalgebra:
    """C as a purely even 2-dimensional real algebra."""
    return from_function(["1", "i"], [0, 0],
                         lambda a, b: {"1": 1} if (a, b) == ("1", "1") else
                         {"1": -1} if (a, b) == ("i", "i") else {"i": 1}, "1", "R", "C_R")


def complexify(A: Superalgebra) -> Superalgebra:
    """A (x) C over R, for real A."""
    if A.field != "R":
        raise StructuralError("complexify needs a real algebra")
    T = tensor(A, real_complex_numbers())
    T.name = f"{A.name}⊗C" if A.name else ""
    return T


def ground_field(field: str = "R") -> Superalgebra:
    return Superalgebra([0], {(0, 0): {0: 1}}, [1], field, ["1"], "R" if field == "R" else "C")


CLIFFORD_BOUND = 5


def _cl_name(S):
    return "1" if not S else "".join(f"e{k + 1}" for k in S)


def clifford(p: int, q: int, field: str = "R", bound: int = CLIFFORD_BOUND) -> Superalgebra:
    """Cl_{p,q}: e_i^2 = +1 for i <= p, -1 after, pairwise anticommuting."""
    n = p + q
    if n > bound:
        raise UnsupportedInput(f"Clifford algebra with p+q = {n} exceeds bound {bound}")
    subsets = [tuple(S) for r in range(n + 1) for S in combinations(range(n), r)]
    idx = {S: k for k, S in enumerate(subsets)}
    sq = [1] * p + [-1] * q

    def mul_sets(S, T):
        sign = 1
        out = list(S)
        for t in T:
            # move t past the larger elements at the end of out
            pos = len(out)
            while pos > 0 and out[pos - 1] > t:
                pos -= 1
            sign *= (-1) ** (len(out) - pos)
            if pos > 0 and out[pos - 1] == t:
                sign *= sq[t]
                out.pop(pos - 1)
            else:
                out.insert(pos, t)
        return sign, tuple(out)

    mult = {}
    for S, T in product(subsets, repeat=2):
        s, U = mul_sets(S, T)
        mult[(idx[S], idx[T])] = {idx[U]: s}
    par = [len(S) % 2 for S in subsets]
    unit = [ONE] + [ZERO] * (len(subsets) - 1)
    nm = f"Cl{p},{q}" if field == "R" else f"Cl{p},{q}(C)"
    return Superalgebra(par, mult, unit, field, [_cl_name(S) for S in subsets], nm)


def complex_clifford(n: int) -> Superalgebra:
    A = clifford(n, 0, "C")
    A.name = f"ℂl{n}"
    return A


def matrix_superalgebra(m: int, n: int, field: str = "C") -> Superalgebra:
    """M_{m|n}: E_ab with parity p(a)+p(b), first m indices even."""
    N = m + n
    pr = [0] * m + [1] * n
    keys = [(a, b) for a in range(N) for b in range(N)]
    idx = {k: t for t, k in enumerate(keys)}
    mult = {}
    for (a, b), (c, d) in product(keys, repeat=2):
        mult[(idx[(a, b)], idx[(c, d)])] = {idx[(a, d)]: 1} if b == c else {}
    unit = [ONE if a == b else ZERO for a, b in keys]
    names = [f"E{a + 1}{b + 1}" for a, b in keys]
    return Superalgebra([(pr[a] + pr[b]) % 2 for a, b in keys], mult, unit, field, names, f"M{m}|{n}")


class AlgebraHom:
    def __init__(self, source: Superalgebra, target: Superalgebra, matrix: ExactMatrix):
        self.source, self.target, self.matrix = source, target, matrix

    def __call__(self, x):
        return self.matrix.apply(x)


def is_algebra_hom(f: AlgebraHom) -> bool:
    A, B, M = f.source, f.target, f.matrix
    if M.rows != B.dim or M.cols != A.dim:
        return False
    if f(A.unit) != B.unit:
        return False
    for j in range(A.dim):
        img = f(A.basis(j))
        if B.degree(img) not in (A.parity[j],) and any(img):
            return False
    for i, j in product(range(A.dim), repeat=2):
        if f(A.mul_basis(i, j)) != B.mul(f(A.basis(i)), f(A.basis(j))):
            return False
    return True


def parity_automorphism(A: Superalgebra) -> AlgebraHom:
    M = ExactMatrix([[(-ONE if A.parity[i] else ONE) if i == j else ZERO for j in range(A.dim)]
                     for i in range(A.dim)], A.dim)
    return AlgebraHom(A, A, M)


def parity_extension(A: Superalgebra) -> Superalgebra:
    """A[x]/(x^2 = 1, x b = (-1)^{|b|} b x); basis e_i then e_i x."""
    n = A.dim
    mult = {}
    for s, t in product((0, 1), repeat=2):
        for i, j in product(range(n), repeat=2):
            sign = -1 if (s and A.parity[j]) else 1
            mult[(s * n + i, t * n + j)] = {((s + t) % 2) * n + k: c * sign for k, c in A.mult[i][j].items()}
    names = list(A.names) + [("x" if nm == "1" else f"{nm}x") for nm in A.names]
    return Superalgebra(A.parity + A.parity, mult, A.unit + [ZERO] * n, A.field, names,
                        f"{A.name}[(-1)^F]" if A.name else "")


def parity_element(A: Superalgebra):
    """The element x of a parity extension."""
    n = A.dim // 2
    return [ZERO] * n + list(A.unit[:n])


# -- structure ------------------------------------------------------------

def center(A: Superalgebra) -> list:
    rows = []
    Ls = [A.L(A.basis(j)) for j in range(A.dim)]
    Rs = [A.R(A.basis(j)) for j in range(A.dim)]
    # z e_j - e_j z = R_{e_j} z - L_{e_j} z
    for j in range(A.dim):
        D = Rs[j] - Ls[j]
        rows.extend(D.entries)
    return kernel(rows) if rows else []


def supercenter(A: Superalgebra) -> list:
    """Homogeneous z with z a = (-1)^{|z||a|} a z."""
    out = []
    for par in (0, 1):
        idx = [k for k in range(A.dim) if A.parity[k] == par]
        if not idx:
            continue
        rows = []
        for j in range(A.dim):
            s = -1 if par and A.parity[j] else 1
            for i in range(A.dim):
                row = []
                for k in idx:
                    row.append(A.mul_basis(k, j)[i] - A.mul_basis(j, k)[i] * s)
                rows.append(row)
        for v in kernel(rows):
            z = A.zero()
            for c, k in zip(v, idx):
                z[k] = c
            out.append(z)
    return out


def trace_form(A: Superalgebra) -> ExactMatrix:
    """T_ij = tr(L_{e_i e_j}) on the underlying ungraded algebra."""
    n = A.dim
    trL = []
    for k in range(n):
        t = ZERO
        for j in range(n):
            t = t + A.mult[k][j].get(j, ZERO)
        trL.append(t)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum((c * trL[k] for k, c in A.mult[i][j].items()), ZERO))
        rows.append(row)
    return ExactMatrix(rows, n)


def is_semisimple(A: Superalgebra) -> bool:
    return trace_form(A).rank() == A.dim


def signature(S: ExactMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a real symmetric matrix, by congruence."""
    n = S.rows
    M = [[x.re for x in row] for row in S.entries]
    if any(x.im for row in S.entries for x in row):
        raise StructuralError("signature needs a real matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((k for k in active if M[k][k]), None)
        if piv is None:
            pair = next(((a, b) for a in active for b in active if a < b and M[a][b]), None)
            if pair is None:
                break
            a, b = pair
            # replace row/col a by a + b to create a nonzero diagonal entry
            for k in range(n):
                M[a][k] += M[b][k]
            for k in range(n):
                M[k][a] += M[k][b]
            piv = a
        d = M[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = M[r][piv] / d
            if f:
                for k in range(n):
                    M[r][k] -= f * M[piv][k]
                for k in range(n):
                    M[k][r] -= f * M[k][piv]
    return pos, neg, n - pos - neg


def radical_bruteforce(A: Superalgebra) -> list:
    """Largest nilpotent ideal, certified by explicit nilpotency of the candidate.

    The candidate is the kernel of the trace form of the right regular
    representation; it is verified to be a two-sided ideal whose powers vanish.
    """
    n = A.dim
    trR = [sum((A.mult[j][k].get(j, ZERO) for j in range(n)), ZERO) for k in range(n)]
    rows = [[sum((c * trR[k] for k, c in A.mult[i][j].items()), ZERO) for j in range(n)] for i in range(n)]
    K = kernel(rows)
    if not K:
        return []
    # ideal check
    span_rows = K
    r0 = rank(span_rows)
    for v in K:
        for j in range(n):
            for w in (A.mul(v, A.basis(j)), A.mul(A.basis(j), v)):
                if rank(span_rows + [w]) != r0:
                    raise AssertionError("trace kernel is not an ideal")
    # nilpotency: K^m = 0 for some m <= n+1
    P = K
    for _ in range(n + 1):
        P = [A.mul(p, k) for p in P for k in K]
        P = [p for p in P if any(p)]
        if not P:
            return K
        R_, piv = as_matrix(P).rref()
        P = [list(R_.entries[t]) for t in range(len(piv))]
    raise AssertionError("trace kernel is not nilpotent")


def find_ungraded_zero_divisor(A: Superalgebra, coeffs=(-1, 0, 1)):
    """Nonzero x, y with x y = 0 among small integer combinations, or None."""
    cands = [list(map(GaussianScalar.coerce, c)) for c in product(coeffs, repeat=A.dim) if any(c)]
    for x in cands:
        Lx = A.L(x)
        if Lx.rank() == A.dim:
            continue
        for y in cands:
            if not any(A.mul(x, y)):
                return x, y
    return None


def _det_poly(A: Superalgebra, idx):
    import sympy
    xs = sympy.symbols(f"x0:{len(idx)}")
    n = A.dim
    Ls = [A.L(A.basis(k)) for k in idx]
    M = sympy.zeros(n, n)
    for x, L in zip(xs, Ls):
        for r in range(n):
            for c in range(n):
                v = L.entries[r][c]
                if v:
                    M[r, c] += x * (sympy.Rational(int(v.re.numerator), int(v.re.denominator))
                                    + sympy.I * sympy.Rational(int(v.im.numerator), int(v.im.denominator)))
    return sympy.expand(M.det(method="berkowitz")), xs


def is_superdivision(A: Superalgebra) -> bool:
    """Every nonzero homogeneous element invertible."""
    import sympy
    for par in (0, 1):
        idx = [k for k in range(A.dim) if A.parity[k] == par]
        if not idx:
            continue
        # finite spanning test set
        for k in idx:
            if A.L(A.basis(k)).rank() != A.dim:
                return False
        for a, b in combinations(idx, 2):
            for s in ((1, 1), (1, -1)) + (((1, I),) if A.field == "C" else ()):
                x = vadd(vscale(s[0], A.basis(a)), vscale(s[1], A.basis(b)))
                if A.L(x).rank() != A.dim:
                    return False
        D, xs = _det_poly(A, idx)
        if D == 0:
            return False
        if len(idx) == 1:
            continue
        if A.field == "C":
            # a homogeneous form of positive degree in >= 2 complex variables has nonzero zeros
            return False
        for f, _ in sympy.factor_list(D)[1]:
            P = sympy.Poly(f, *xs)
            deg = P.total_degree()
            used = [x for x in xs if P.degree(x) > 0]
            if deg == 1 and len(used) >= 2:
                return False
            if deg == 1:
                continue
            if deg == 2:
                Q = sympy.hessian(f, used) / 2
                S = ExactMatrix([[GaussianScalar(str(Q[i, j])) for j in range(len(used))]
                                 for i in range(len(used))])
                p, m, z = signature(S)
                if z or (p and m):
                    return False
                continue
            raise UnsupportedInput("superdivision test undecided for an irreducible factor of degree > 2")
    return True


def fingerprint(A: Superalgebra) -> dict:
    T = trace_form(A)
    fp = {
        "field": A.field,
        "dims": (len(A.even_indices()), len(A.odd_indices())),
        "center": len(center(A)),
        "supercenter": len(supercenter(A)),
        "semisimple": T.rank() == A.dim,
        "trace_rank": T.rank(),
    }
    if A.field == "R":
        fp["trace_signature"] = signature(T)
        ev = A.even_indices()
        fp["even_trace_signature"] = signature(ExactMatrix([[T.entries[i][j] for j in ev] for i in ev], len(ev)))
    return fp


def iso_witness_check(A: Superalgebra, B: Superalgebra, M) -> bool:
    M = M if isinstance(M, ExactMatrix) else ExactMatrix(M)
    if A.dim != B.dim or M.rank() != A.dim:
        return False
    return is_algebra_hom(AlgebraHom(A, B, M))


def hom_from_images(A: Superalgebra, B: Superalgebra, images: dict) -> AlgebraHom:
    """Extend basis images; images maps basis names of A to elements of B."""
    cols = [images[n] for n in A.names]
    M = ExactMatrix([[cols[j][i] for j in range(A.dim)] for i in range(B.dim)], A.dim)
    return AlgebraHom(A, B, M)


def hom_from_generators(A: Superalgebra, B: Superalgebra, gens: dict) -> AlgebraHom:
    """Images of Clifford-type generators; each basis name is a product of generator names."""
    images = {}
    for nm in A.names:
        if nm == "1":
            images[nm] = B.one()
            continue
        toks = []
        rest = nm
        keys = sorted(gens, key=len, reverse=True)
        while rest:
            for k in keys:
                if rest.startswith(k):
                    toks.append(k)
                    rest = rest[len(k):]
                    break
            else:
                raise StructuralError(f"cannot parse basis name {nm!r}")
        images[nm] = B.prod(*[gens[t] for t in toks])
    return hom_from_images(A, B, images)


def subalgebra_span(A: Superalgebra, gens: list) -> list:
    """Basis (rref rows) of the unital subalgebra generated by gens."""
    span = [A.one()] + [g for g in gens]
    while True:
        R, piv = as_matrix(span).rref()
        basis = [list(R.entries[t]) for t in range(len(piv))]
        new = basis + [A.mul(a, b) for a in basis for b in basis]
        if as_matrix(new).rank() == len(basis):
            return basis
        span = new


def generating_indices(A: Superalgebra) -> list[int]:
    """Basis indices generating A as a unital algebra, chosen greedily; cached on A."""
    cached = getattr(A, "_gens", None)
    if cached is not None:
        return cached
    gens, span = [], subalgebra_span(A, [])
    for k in range(A.dim):
        if as_matrix(span + [A.basis(k)]).rank() > len(span):
            gens.append(k)
            if len(span) + 1 < A.dim:
                span = subalgebra_span(A, [A.basis(j) for j in gens])
            else:
                span = span + [A.basis(k)]
        if len(span) == A.dim:
            break
    A._gens = gens
    return gens


def regular_algebra_on(A: Superalgebra, basis: list, names=None, name="") -> Superalgebra:
    """Structure constants of A restricted to a subalgebra with the given basis."""
    n = len(basis)
    M = ExactMatrix([[basis[j][i] for j in range(n)] for i in range(A.dim)], n)
    mult = {}
    for i, j in product(range(n), repeat=2):
        c = solve(M, A.mul(basis[i], basis[j]))
        if c is None:
            raise StructuralError("span is not closed under multiplication")
        mult[(i, j)] = {k: v for k, v in enumerate(c) if v}
    u = solve(M, A.one())
    par = [A.degree(b) for b in basis]
    if any(p is None for p in par):
        raise StructuralError("basis is not homogeneous")
    return Superalgebra(par, mult, u, A.field, names, name)


def volume_element(A: Superalgebra, n: int):
    """e_1 ... e_n in a Clifford algebra or its parity extension."""
    return A.el("".join(f"e{k + 1}" for k in range(n))) if n else A.one()


def parity_extension_case(p: int, q: int) -> str:
    """Which algebra Cl_{p,q}[(-1)^F] is, by p+q parity and the sign of a^2."""
    odd = (p + q) % 2
    plus = (p - q) % 4 in (0, 3)
    if odd:
        return f"Cl{p + 1},{q}" if plus else f"Cl{p},{q + 1}"
    return f"Cl{p},{q}+Cl{p},{q}" if plus else f"Cl{p},{q}⊗C"


def parity_extension_witness(p: int, q: int):
    """(case, model algebra B, hom B -> parity_extension(Cl_{p,q}), a^2 sign)."""
    A = clifford(p, q)
    E = parity_extension(A)
    n = p + q
    a = E.mul(parity_element(E), volume_element(E, n))
    a2 = E.mul(a, a)
    sign = 1 if a2 == E.one() else -1 if a2 == vscale(-1, E.one()) else 0
    case = parity_extension_case(p, q)
    gens = {f"e{k + 1}": E.el(f"e{k + 1}") for k in range(n)}
    if n % 2:
        if sign == 1:
            B = clifford(p + 1, q)
            imgs = {f"e{k + 1}": gens[f"e{k + 1}"] for k in range(p)}
            imgs[f"e{p + 1}"] = a
            imgs.update({f"e{k + 2}": gens[f"e{k + 1}"] for k in range(p, n)})
        else:
            B = clifford(p, q + 1)
            imgs = dict(gens)
            imgs[f"e{n + 1}"] = a
        f = hom_from_generators(B, E, imgs)
    elif sign == 1:
        B = direct_sum(A, A)
        e1 = vscale(GaussianScalar(1, 0) / 2, vadd(E.one(), a))
        e2 = vscale(GaussianScalar(1, 0) / 2, vsub(E.one(), a))
        imgs = {}
        for nm in A.names:
            v = E.el(nm)
            imgs[f"({nm},0)"] = E.mul(v, e1)
            imgs[f"(0,{nm})"] = E.mul(v, e2)
        f = hom_from_images(B, E, imgs)
    else:
        B = complexify(A)
        imgs = {}
        for nm in A.names:
            v = E.el(nm)
            imgs[_tname(nm, "1")] = v
            imgs[_tname(nm, "i")] = E.mul(v, a)
        f = hom_from_images(B, E, imgs)
    return case, B, f, sign
