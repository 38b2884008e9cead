"""Frobenius structures, graded algebra bundles over fermionic groups and the 1D/2D checkers."""
from __future__ import annotations

from itertools import product

from .bimod import (ComplexView, _add_into, _sgn, algebra_from_view, bimodule_from_views,
                    check_bimodule_map, map_from_pure, morita_from_views, serre_naturality, tensor_over)
from .errors import PreconditionError, StructuralError, UnsupportedInput
from .exactlin import I, ONE, ZERO, ExactMatrix, GaussianScalar, Solver, rank, solve_many
from .fgroup import FermionicGroup, check_fermionic_group
from .report import Report
from .salg import Superalgebra, check_superalgebra, is_semisimple
from .stellar import (HilbertPairing, StarAlgebra, check_pairing, check_star, check_stellar, conjugate_star,
                      positivity_flag, stellar_from_star)

UNIT_I = {0: ONE, 1: I}


def _conj_if(x: GaussianScalar, flag) -> GaussianScalar:
    return x.conj() if flag else x


# -- Frobenius structures ----------------------------------------------------------------

class FrobeniusStructure:
    """An even functional lam on a complex superalgebra, lam given on the basis."""

    def __init__(self, alg: Superalgebra, lam):
        if len(lam) != alg.dim:
            raise StructuralError("functional has the wrong length")
        self.alg = alg
        self.lam = [GaussianScalar.coerce(x) for x in lam]

    def __call__(self, x):
        return sum((a * l for a, l in zip(x, self.lam) if a and l), ZERO)


def check_frobenius(F: FrobeniusStructure, mode: str = "ungraded") -> Report:
    """Evenness, nondegeneracy of (a, b) -> lam(ab) and symmetry (plain or Koszul-signed)."""
    if mode not in ("ungraded", "bosonic_graded"):
        raise UnsupportedInput(f"unknown Frobenius mode {mode!r}")
    A = F.alg
    rep = Report(f"frobenius ({mode})")
    for c in ("even", "nondegenerate", "symmetric"):
        rep.check(c)
    for k in A.odd_indices():
        if F.lam[k]:
            rep.fail("even", f"lam({A.names[k]}) = {F.lam[k]} on an odd element")
    n = A.dim
    gram = [[F(A.mul_basis(i, j)) for j in range(n)] for i in range(n)]
    if rank(ExactMatrix(gram, n)) != n:
        rep.fail("nondegenerate", "the pairing lam(ab) is degenerate")
    for i, j in product(range(n), repeat=2):
        s = _sgn(A.parity[i] * A.parity[j]) if mode == "bosonic_graded" else ONE
        if gram[i][j] != s * gram[j][i]:
            rep.fail("symmetric", f"lam({A.names[i]}{A.names[j]}) != {'±' if mode != 'ungraded' else ''}"
                                  f"lam({A.names[j]}{A.names[i]})")
    return rep


# -- graded algebra bundles ----------------------------------------------------------------

class GradedAlgebraBundle:
    """A real superalgebra E = sum_g A_g graded by a fermionic group, with i in A_1 and (-1)^F in A_c.

    components[g] lists homogeneous real vectors spanning A_g. loops are dicts with keys
    element, component, twist (Gamma in Z2) and action (g -> ±1 exponent, default 1).
    """

    def __init__(self, grading: FermionicGroup, ambient: Superalgebra, components: dict, i_el,
                 parity_el=None, loops=(), name: str = ""):
        if ambient.field != "R":
            raise StructuralError("the ambient algebra of a graded bundle is real")
        self.G, self.E, self.name = grading, ambient, name
        missing = [g for g in grading.elements if g not in components]
        if missing:
            raise StructuralError(f"no component for {missing}")
        self.components = {}
        for g in grading.elements:
            vs = []
            for v in components[g]:
                if isinstance(v, int):
                    v = ambient.basis(v)
                v = [GaussianScalar.coerce(x) for x in v]
                if len(v) != ambient.dim:
                    raise StructuralError(f"component vector for {g} has the wrong length")
                vs.append(v)
            self.components[g] = vs
        self.i_el = [GaussianScalar.coerce(x) for x in i_el]
        self.parity_el = ([GaussianScalar.coerce(x) for x in parity_el] if parity_el is not None
                          else None)
        self.loops = list(loops)
        self._views = {}
        self._algs = {}
        self._dec = None

    # decomposition into components
    def _decomposer(self):
        if self._dec is None:
            vecs = [(g, v) for g in self.G.elements for v in self.components[g]]
            Q = ExactMatrix([[v[r] for _, v in vecs] for r in range(self.E.dim)], len(vecs))
            self._dec = (vecs, Solver(Q))
        return self._dec

    def decompose(self, x) -> dict | None:
        """g -> part of x in A_g, or None when x is outside the span."""
        vecs, solver = self._decomposer()
        sol = solver(x)
        if sol is None:
            return None
        out = {}
        for (g, v), c in zip(vecs, sol):
            if c:
                part = out.setdefault(g, self.E.zero())
                _add_into(part, v, c)
        return out

    def in_component(self, x, g) -> bool:
        d = self.decompose(x)
        return d is not None and all(h == g or not any(v) for h, v in d.items())

    # complex views
    def view(self, g, sign: int = 1) -> ComplexView:
        key = (g, sign)
        if key not in self._views:
            self._views[key] = ComplexView(self.E, self.components[g], self.i_el, sign)
        return self._views[key]

    def algebra(self, sign: int = 1) -> Superalgebra:
        """A = A_1 as a complex superalgebra (sign -1 gives conj(A))."""
        if sign not in self._algs:
            V = self.view(self.G.unit, sign)
            names = [self._name_of(v) for v in V.basis]
            self._algs[sign] = algebra_from_view(V, names, "A" if sign == 1 else "conj(A)")
        return self._algs[sign]

    def _name_of(self, v):
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]] == ONE:
            return self.E.names[nz[0]]
        return self.E.fmt(v)

    def theta_sign(self, g) -> int:
        return -1 if self.G.theta[g] else 1

    def bimodule(self, g, sign: int = 1):
        """A_g as an (A^{s}, A^{s theta(g)})-bimodule, s = sign."""
        s2 = sign * self.theta_sign(g)
        V = self.view(g, sign)
        return bimodule_from_views(self.view(self.G.unit, sign), V, self.view(self.G.unit, s2),
                                   self.algebra(sign), self.algebra(s2),
                                   [self._name_of(v) for v in V.basis], f"A_{g}")

    def morita(self, g):
        """Context (A_g, A_{g^-1}) with eps the ambient multiplication."""
        G = self.G
        s = self.theta_sign(g)
        u = G.unit
        return morita_from_views(self.view(u, 1), self.view(g, 1), self.view(G.inv(g), s), self.view(u, s),
                                 self.algebra(1), self.algebra(s))

    def __repr__(self):
        return f"GradedAlgebraBundle({self.name or self.G.name})"


BUNDLE_CLAUSES = ("ambient-algebra", "grading", "complex-structure", "strong-grading", "parity-element",
                  "loops")


def _bundle_report(B: GradedAlgebraBundle, rep: Report, only=None):
    """Fills bundle clauses into rep; returns False when later clauses cannot run."""
    E, G = B.E, B.G

    def want(c):
        return only is None or c in only

    def run(c):
        if want(c):
            rep.check(c)
        return want(c)

    gr = check_fermionic_group(G)
    ar = check_superalgebra(E)
    if want("ambient-algebra") or not (gr.ok and ar.ok):
        rep.check("ambient-algebra")
        if not gr.ok:
            rep.merge(gr, "ambient-algebra")
        if not ar.ok:
            rep.merge(ar, "ambient-algebra")
    if not (gr.ok and ar.ok):
        return False
    # grading: always computed since everything else depends on it
    rep.check("grading")
    ok = True
    total = sum(len(v) for v in B.components.values())
    allv = [v for g in G.elements for v in B.components[g]]
    for g in G.elements:
        for v in B.components[g]:
            if E.degree(v) is None:
                rep.fail("grading", f"a spanning vector of A_{g} is not homogeneous")
                ok = False
    if total != E.dim or rank(ExactMatrix([list(v) for v in allv]).transpose()) != E.dim:
        rep.fail("grading", "the components do not form a direct sum decomposition of the ambient algebra")
        return False
    if not ok:
        return False
    if not B.in_component(E.one(), G.unit):
        rep.fail("grading", "the unit does not lie in A_1")
        ok = False
    vecs, solver = B._decomposer()
    prods, keys = [], []
    for g, h in product(G.elements, repeat=2):
        for x, y in product(B.components[g], B.components[h]):
            prods.append(E.mul(x, y))
            keys.append((g, h))
    for (g, h), x in zip(keys, prods):
        sol = solver(x)
        gh = G.mul(g, h)
        if any(c and vg != gh for (vg, _), c in zip(vecs, sol)):
            rep.fail("grading", f"A_{g} A_{h} is not contained in A_{gh}")
            ok = False
    if not ok:
        return False
    u = G.unit
    i_el = B.i_el
    if run("complex-structure"):
        minus1 = [-x for x in E.one()]
        if not B.in_component(i_el, u) or E.degree(i_el) != 0 or not any(i_el):
            rep.fail("complex-structure", "i is not an even element of A_1")
            return False
        if E.mul(i_el, i_el) != minus1:
            rep.fail("complex-structure", "i^2 != -1")
            return False
        for g in G.elements:
            s = B.theta_sign(g)
            for x in B.components[g]:
                if E.mul(x, i_el) != [s * c for c in E.mul(i_el, x)]:
                    rep.fail("complex-structure", f"a_g i != {'-' if s < 0 else ''}i a_g for g = {g}")
    elif not B.in_component(i_el, u) or E.mul(i_el, i_el) != [-x for x in E.one()]:
        return False
    if run("strong-grading"):
        for g, h in product(G.elements, repeat=2):
            if not _strong_pair(B, g, h):
                rep.fail("strong-grading", f"A_{g} ⊗_A A_{h} -> A_{G.mul(g, h)} is not an isomorphism")
    if run("parity-element"):
        x = B.parity_el
        if x is None:
            rep.fail("parity-element", "no (-1)^F element given")
        else:
            if not B.in_component(x, G.c) or E.degree(x) != 0 or not any(x):
                rep.fail("parity-element", f"(-1)^F is not an even element of A_{G.c}")
            elif E.mul(x, x) != E.one():
                rep.fail("parity-element", "((-1)^F)^2 != 1")
            else:
                for k in range(E.dim):
                    a = E.basis(k)
                    if E.mul(x, a) != [c * _sgn(E.parity[k]) for c in E.mul(a, x)]:
                        rep.fail("parity-element", f"(-1)^F {E.names[k]} != ±{E.names[k]} (-1)^F")
    if run("loops"):
        _loops_report(B, rep)
    return True


def _strong_pair(B: GradedAlgebraBundle, g, h) -> bool:
    G = B.G
    s = B.theta_sign(g)
    Mg = B.bimodule(g, 1)
    Mh = B.bimodule(h, s)
    gh = G.mul(g, h)
    T = tensor_over(Mg, Mh)
    Vg, Vh, Vgh = B.view(g, 1), B.view(h, s), B.view(gh, 1)
    tgt = B.bimodule(gh, 1)
    E = B.E
    if T.dim != tgt.dim:
        return False
    try:
        f = map_from_pure(T, tgt, lambda i, j: Vgh.coords(E.mul(Vg.basis[i], Vh.basis[j])))
    except StructuralError:
        return False
    return f.is_iso() and check_bimodule_map(f).ok


def _loops_report(B: GradedAlgebraBundle, rep: Report):
    E, G = B.E, B.G
    for n, lp in enumerate(B.loops):
        a = [GaussianScalar.coerce(x) for x in lp["element"]]
        g = lp.get("component", G.unit)
        tw = int(lp.get("twist", 0)) % 2
        act = lp.get("action", {})
        tag = lp.get("name", f"loop {n}")
        if g not in (G.unit, G.c) or not B.in_component(a, g):
            rep.fail("loops", f"a_{tag} does not lie in A_1 or A_c")
            continue
        if E.degree(a) != 0 or not any(a):
            rep.fail("loops", f"a_{tag} is not even")
            continue
        inv = E.inverse(a)
        if inv is None:
            rep.fail("loops", f"a_{tag} is not invertible")
            continue
        for h in G.elements:
            e = int(act.get(h, 1))
            for x in B.components[h]:
                s = _sgn(tw * E.degree(x))
                rhs = E.mul(a if e == 1 else inv, x)
                if E.mul(x, a) != [s * c for c in rhs]:
                    rep.fail("loops", f"a_{tag} violates the commutation law against A_{h}")
                    break
        for other in lp.get("products", ()):
            # (name2, name12): a_{tag} a_{name2} = a_{name12}
            lut = {l.get("name"): l for l in B.loops}
            if other[0] not in lut or other[1] not in lut:
                rep.fail("loops", f"unknown loop in product law for {tag}")
                continue
            p = E.mul(a, lut[other[0]]["element"])
            if p != [GaussianScalar.coerce(x) for x in lut[other[1]]["element"]]:
                rep.fail("loops", f"a_{tag} a_{other[0]} != a_{other[1]}")


def check_graded_bundle(B: GradedAlgebraBundle, clauses=None) -> Report:
    rep = Report(f"graded bundle {B.name}".strip())
    _bundle_report(B, rep, clauses)
    return rep


# -- twisted group algebras ---------------------------------------------------------------

def dagger_signs(G: FermionicGroup, omega, gens: dict) -> dict:
    """Signs d with x_g^† = d(g) x_{g^-1}, extended from generators through
    d(gh) omega(g,h) = d(g) d(h) omega(h^-1, g^-1)."""
    d = {G.unit: 1}
    frontier = [G.unit]
    while frontier:
        nxt = []
        for g in frontier:
            for s, ds in gens.items():
                gh = G.mul(g, s)
                val = d[g] * ds * omega(G.inv(s), G.inv(g)) * omega(g, s)
                if gh in d:
                    if d[gh] != val:
                        raise StructuralError("dagger signs are inconsistent on the generators")
                else:
                    d[gh] = val
                    nxt.append(gh)
        frontier = nxt
    if len(d) != len(G):
        raise StructuralError("dagger generators do not generate the group")
    return d


class TwistedGroupAlgebra:
    """Real algebra spanned by i^a e^b x_g with
    x_g i = (-1)^{theta(g)} i x_g, x_g e = (-1)^{chi(g)} e x_g, x_g x_h = omega(g,h) x_{gh}, e^2 = q.
    The Clifford generator e (odd, commuting with i) is present when q is not None."""

    def __init__(self, G: FermionicGroup, parity=None, omega=None, q=None, chi=None, name=""):
        self.G = G
        self.p = {g: int((parity or {}).get(g, 0)) % 2 for g in G.elements}
        self.omega = omega or (lambda g, h: 1)
        self.q = q
        self.chi = {g: int((chi or {}).get(g, 0)) % 2 for g in G.elements}
        bs = (0, 1) if q is not None else (0,)
        self.keys = [(a, b, g) for g in G.elements for b in bs for a in (0, 1)]
        self.index = {k: n for n, k in enumerate(self.keys)}
        names = []
        for a, b, g in self.keys:
            pre = ("i" if a else "") + ("e" if b else "")
            names.append(f"{pre}x{g}" if pre else f"x{g}")
        th = G.theta
        mult = {}
        for (a, b, g), (a2, b2, h) in product(self.keys, repeat=2):
            s = _sgn(th[g] * a2 + self.chi[g] * b2)
            aa, bb = a + a2, b + b2
            if aa == 2:
                s = -s
                aa = 0
            if bb == 2:
                s = s * q
                bb = 0
            s = s * self.omega(g, h)
            mult[(self.index[(a, b, g)], self.index[(a2, b2, h)])] = {self.index[(aa, bb, G.mul(g, h))]: s}
        parity_ = [(b + self.p[g]) % 2 for a, b, g in self.keys]
        unit = [ONE if k == (0, 0, G.unit) else ZERO for k in self.keys]
        self.E = Superalgebra(parity_, mult, unit, "R", names, name or f"R[{G.name}]")

    def x(self, g, a=0, b=0, coeff=1):
        v = self.E.zero()
        v[self.index[(a, b, g)]] = GaussianScalar.coerce(coeff)
        return v

    def components(self):
        return {g: [self.index[k] for k in self.keys if k[2] == g] for g in self.G.elements}

    def dagger(self, gens: dict, t: int = 1) -> ExactMatrix:
        """Matrix of † with x_s^† = gens[s] x_{s^-1} on generators s and e^† = t e."""
        G = self.G
        d = dagger_signs(G, self.omega, gens)
        n = self.E.dim
        cols = []
        for a, b, g in self.keys:
            gi = G.inv(g)
            s = d[g] * (t if b else 1) * _sgn(a + self.chi[g] * b + G.theta[g] * a)
            col = [ZERO] * n
            col[self.index[(a, b, gi)]] = GaussianScalar.coerce(s)
            cols.append(col)
        return ExactMatrix([[cols[c][r] for c in range(n)] for r in range(n)], n)


def twisted_bundle(G: FermionicGroup, parity=None, omega=None, q=None, chi=None, c_sign: int = 1,
                   name: str = ""):
    """Bundle of a twisted group algebra; (-1)^F = c_sign x_c."""
    T = TwistedGroupAlgebra(G, parity, omega, q, chi, name)
    B = GradedAlgebraBundle(G, T.E, T.components(), T.x(G.unit, a=1), T.x(G.c, coeff=c_sign), name=name)
    B.tga = T
    return B


# -- Frobenius compatibility and Serre naturality ----------------------------------------------

def _lam_ambient(B: GradedAlgebraBundle, lam):
    V = B.view(B.G.unit, 1)
    lam = [GaussianScalar.coerce(x) for x in lam]

    def f(x):
        return sum((a * l for a, l in zip(V.coords(x), lam) if a and l), ZERO)
    return f


def check_frobenius_compat(B: GradedAlgebraBundle, lam, mode: str = "ungraded") -> Report:
    """lam(a_g a_{g^-1}) = conj^{theta(g)} lam(a_{g^-1} a_g), with a Koszul sign in bosonic mode."""
    rep = Report("frobenius compatibility")
    rep.check("frobenius-compat")
    E, G = B.E, B.G
    f = _lam_ambient(B, lam)
    for g in G.elements:
        gi = G.inv(g)
        th = G.theta[g]
        for x, y in product(B.view(g).real, B.view(gi).real):
            lhs = f(E.mul(x, y))
            rhs = _conj_if(f(E.mul(y, x)), th)
            if mode == "bosonic_graded":
                rhs = rhs * _sgn(E.degree(x) * E.degree(y))
            if lhs != rhs:
                rep.fail("frobenius-compat", f"lam(a_g a_g^-1) != conj^theta lam(a_g^-1 a_g) for g = {g}")
                break
    return rep


def serre_frobenius_check(B: GradedAlgebraBundle, lam) -> Report:
    """S_{A_g}(lam ⊗ a_g) = (-1)^{|a_g|} a_g ⊗ conj^{theta(g)}(lam) for every g."""
    rep = Report("serre naturality of lam")
    rep.check("serre-frobenius")
    G = B.G
    lam = [GaussianScalar.coerce(x) for x in lam]
    for g in G.elements:
        ctx = B.morita(g)
        S = serre_naturality(ctx)
        src, tgt = S.source, S.target
        M = ctx.M
        lt = [_conj_if(x, G.theta[g]) for x in lam]
        for m in range(M.dim):
            lhs = S(src.pure(lam, M.basis(m)))
            rhs = [x * _sgn(M.parity[m]) for x in tgt.pure(M.basis(m), lt)]
            if lhs != rhs:
                rep.fail("serre-frobenius", f"S_(A_{g})(lam ⊗ {M.names[m]}) differs from ±{M.names[m]} ⊗ lam")
                break
    return rep


# -- 2D theories in the star presentation ---------------------------------------------------

TFT2D_CLAUSES = ("ambient-algebra", "grading", "complex-structure", "strong-grading", "parity-element",
                 "semisimple", "star", "frobenius", "frobenius-compat", "frobenius-star", "stellar",
                 "hilbert-pairing", "unitary-multiplication", "loops")

DEFAULT_ALPHA = {(t, p, q): (I if q else ONE) for t in (0, 1) for p in (0, 1) for q in (0, 1)}


class TftBundle2D:
    """Bundle, real dagger on the ambient algebra, lam on A (view coordinates) and per-component pairing
    tables: pairings[g][k][l] = A-coordinates of <b_k, b_l> on the complex basis of A_g."""

    def __init__(self, bundle: GradedAlgebraBundle, dagger: ExactMatrix, lam, pairings: dict,
                 mode: str = "ungraded", name: str = ""):
        self.bundle, self.dagger, self.mode = bundle, dagger, mode
        self.lam = [GaussianScalar.coerce(x) for x in lam]
        co = GaussianScalar.coerce
        self.pairings = {g: [[[co(x) for x in v] for v in row] for row in t] for g, t in pairings.items()}
        self.name = name or bundle.name

    def dag(self, x):
        return self.dagger.apply(x)

    def star_algebra(self, eps: int = 1) -> StarAlgebra:
        return StarAlgebra(self.bundle.algebra(1), _star_matrix(self.bundle, self.dagger, eps), "A")

    def pairing(self, g) -> HilbertPairing:
        B = self.bundle
        SA = self.star_algebra()
        SR = SA if not B.G.theta[g] else conjugate_star(SA)
        return HilbertPairing(B.bimodule(g, 1), SA, SR, self.pairings[g])

    def __repr__(self):
        return f"TftBundle2D({self.name})"


def _star_ambient(B: GradedAlgebraBundle, dag: ExactMatrix, x, eps: int = 1):
    """a* = a† on even, eps i a† on odd homogeneous a in A."""
    y = dag.apply(x)
    if B.E.degree(x) == 1:
        y = [c * eps for c in B.E.mul(B.i_el, y)]
    return y


def _star_matrix(B: GradedAlgebraBundle, dag: ExactMatrix, eps: int = 1) -> ExactMatrix:
    V = B.view(B.G.unit, 1)
    cols = [V.coords(_star_ambient(B, dag, b, eps)) for b in V.basis]
    n = V.dim
    return ExactMatrix([[cols[c][r] for c in range(n)] for r in range(n)], n)


def _scal(B: GradedAlgebraBundle, z: GaussianScalar, x):
    """Complex scalar z acting on x through left multiplication by i."""
    out = [c * GaussianScalar(z.re) for c in x] if z.re else B.E.zero()
    if z.im:
        _add_into(out, B.E.mul(B.i_el, x), GaussianScalar(z.im))
    return out


def dagger_pairing_tables(B: GradedAlgebraBundle, dagger: ExactMatrix, alpha=None) -> dict:
    """<a, b> = alpha(theta, |a|, |b|) a b† on the complex basis of each A_g."""
    alpha = alpha or DEFAULT_ALPHA
    E, G = B.E, B.G
    V1 = B.view(G.unit, 1)
    out = {}
    for g in G.elements:
        V = B.view(g, 1)
        th = G.theta[g]
        table = []
        for a in V.basis:
            row = []
            for b in V.basis:
                val = _scal(B, GaussianScalar.coerce(alpha[(th, E.degree(a), E.degree(b))]),
                            E.mul(a, dagger.apply(b)))
                row.append(V1.coords(val))
            table.append(row)
        out[g] = table
    return out


def construct_from_dagger(B: GradedAlgebraBundle, dagger: ExactMatrix, lam, alpha=None,
                          mode: str = "ungraded", strict: bool = True) -> TftBundle2D:
    """Pairings <a_g, b_g> = a_g b_g† (|b_g| = 0) and i a_g b_g† (|b_g| = 1)."""
    T = TftBundle2D(B, dagger, lam, dagger_pairing_tables(B, dagger, alpha), mode)
    if strict:
        rep = check_tft2d(T, clauses=("star", "frobenius-compat", "frobenius-star"))
        if not rep.ok:
            raise StructuralError("construct_from_dagger preconditions fail: " + ", ".join(rep.failed_clauses))
    return T


def _pair_ambient(T: TftBundle2D, g, x, y):
    B = T.bundle
    V, V1 = B.view(g, 1), B.view(B.G.unit, 1)
    z, w = V.coords(x), V.coords(y)
    acc = [ZERO] * V1.dim
    tab = T.pairings[g]
    for k, a in enumerate(z):
        if not a:
            continue
        for l, b in enumerate(w):
            if b:
                c = a * b.conj()
                for r, v in enumerate(tab[k][l]):
                    if v:
                        acc[r] = acc[r] + c * v
    return V1.element(acc)


def check_tft2d(T: TftBundle2D, clauses=None) -> Report:
    """All clauses for a strongly graded stellar Frobenius algebra in the star presentation."""
    B = T.bundle
    E, G = B.E, B.G
    rep = Report(f"tft2d {T.name}".strip())
    only = set(clauses) if clauses is not None else None
    if only is not None:
        unknown = only - set(TFT2D_CLAUSES)
        if unknown:
            raise UnsupportedInput(f"unknown clause(s) {sorted(unknown)}")

    def run(c):
        if only is None or c in only:
            rep.check(c)
            return True
        return False

    if not _bundle_report(B, rep, only):
        rep.notes.append("structural clauses failed; remaining clauses skipped")
        return rep
    u = G.unit
    A = B.algebra(1)
    V1 = B.view(u, 1)
    dag = T.dagger
    if run("semisimple") and not is_semisimple(A):
        rep.fail("semisimple", "A_1 is not semisimple")
    star_ok = True
    if run("star") or only is not None:
        srep = Report()
        if dag.rows != E.dim or dag.cols != E.dim:
            srep.fail("star", "dagger matrix has the wrong shape")
            star_ok = False
        else:
            if any(x.im for r in dag.entries for x in r):
                srep.fail("star", "dagger is not real")
            for k in range(E.dim):
                a = E.basis(k)
                da = dag.apply(a)
                if dag.apply(da) != a:
                    srep.fail("star", f"{E.names[k]}†† != {E.names[k]}")
                if any(da) and E.degree(da) != E.parity[k]:
                    srep.fail("star", f"† changes the degree of {E.names[k]}")
            for j, k in product(range(E.dim), repeat=2):
                lhs = dag.apply(E.mul_basis(j, k))
                if lhs != E.mul(dag.apply(E.basis(k)), dag.apply(E.basis(j))):
                    srep.fail("star", f"({E.names[j]}{E.names[k]})† != {E.names[k]}†{E.names[j]}†")
            if dag.apply(B.i_el) != [-x for x in B.i_el]:
                srep.fail("star", "i† != -i")
            for g in G.elements:
                gi = G.inv(g)
                if any(not B.in_component(dag.apply(x), gi) for x in B.components[g]):
                    srep.fail("star", f"A_{g}† is not A_{gi}")
            star_ok = srep.ok
        if "star" in rep.checked:
            rep.merge(srep, "star")
    if not star_ok:
        rep.notes.append("dagger unusable; star-dependent clauses skipped")
        return rep
    SA = T.star_algebra()
    if run("frobenius"):
        fr = check_frobenius(FrobeniusStructure(A, T.lam), T.mode)
        if not fr.ok:
            rep.merge(fr, "frobenius")
    if run("frobenius-compat"):
        cr = check_frobenius_compat(B, T.lam, T.mode)
        rep.merge(cr, "frobenius-compat")
    if run("frobenius-star"):
        f = _lam_ambient(B, T.lam)
        for x in V1.real:
            if f(dag.apply(x)) != f(x).conj():
                rep.fail("frobenius-star", "lam(a†) != conj lam(a)")
                break
    if run("stellar"):
        kr = check_star(SA)
        if not kr.ok:
            rep.merge(kr, "stellar")
        else:
            st = check_stellar(stellar_from_star(SA))
            if not st.ok:
                rep.merge(st, "stellar")
    if run("hilbert-pairing"):
        for g in G.elements:
            if g not in T.pairings:
                rep.fail("hilbert-pairing", f"no pairing on A_{g}")
                continue
            pr = check_pairing(T.pairing(g))
            for v in pr.violations:
                rep.fail("hilbert-pairing", f"A_{g}: {v.clause}: {v.message}")
    if run("unitary-multiplication"):
        if all(g in T.pairings for g in G.elements):
            _unitarity_report(T, rep)
        else:
            rep.fail("unitary-multiplication", "pairings missing")
    if run("loops"):
        for lp in B.loops:
            a = [GaussianScalar.coerce(x) for x in lp["element"]]
            if E.mul(a, dag.apply(a)) != E.one() or E.mul(dag.apply(a), a) != E.one():
                rep.fail("loops", f"a_{lp.get('name', 'loop')} is not unitary")
    return rep


def _unitarity_report(T: TftBundle2D, rep: Report):
    """<a_g a_h, b_g b_h> = (-1)^{|b_g||b_h| + theta(g)|b_h|} <a_g <a_h, b_h>, b_g>."""
    B = T.bundle
    E, G = B.E, B.G
    for g, h in product(G.elements, repeat=2):
        gh = G.mul(g, h)
        Vg, Vh = B.view(g, 1), B.view(h, 1)
        bad = False
        for ag, bg in product(Vg.basis, repeat=2):
            for ah, bh in product(Vh.basis, repeat=2):
                pb = E.degree(bh)
                lhs = _pair_ambient(T, gh, E.mul(ag, ah), E.mul(bg, bh))
                inner = _pair_ambient(T, h, ah, bh)
                rhs = _pair_ambient(T, g, E.mul(ag, inner), bg)
                s = _sgn(E.degree(bg) * pb + G.theta[g] * pb)
                if lhs != [s * c for c in rhs]:
                    rep.fail("unitary-multiplication", f"multiplication A_{g} x A_{h} -> A_{gh} is not unitary")
                    bad = True
                    break
            if bad:
                break


def positivity(T: TftBundle2D) -> bool:
    """Every component pairing is positive on its basis (the C*-flag)."""
    return all(positivity_flag(T.pairing(g)) for g in T.bundle.G.elements)


# -- alpha-coefficient oracle ---------------------------------------------------------------

ALPHA_VALUES = (ONE, -ONE, I, -I)
ALPHA_CELLS = tuple((t, p, q) for t in (0, 1) for p in (0, 1) for q in (0, 1))


def _alpha_constraints(B: GradedAlgebraBundle, dagger: ExactMatrix, eps: int):
    """Constraints mon_L(alpha) vL = mon_R(alpha) vR for pairings alpha(theta,|a|,|b|) a b†.

    A monomial is a tuple of (cell, conj) factors; vectors are A-coordinates (i acts as the scalar i).
    Returns a dict (monL, monR) -> list of (vL, vR)."""
    E, G = B.E, B.G
    V1 = B.view(G.unit, 1)
    dg = dagger.apply
    cons = {}

    def add(ml, vl, mr, vr):
        vl, vr = V1.coords(vl), V1.coords(vr)
        if any(vl) or any(vr):
            cons.setdefault((tuple(ml), tuple(mr)), []).append((vl, vr))

    deg = E.degree
    star = lambda x: _star_ambient(B, dagger, x, eps)  # noqa: E731
    for g in G.elements:
        th = G.theta[g]
        Vg = B.view(g, 1)
        for n2, n1 in product(Vg.basis, repeat=2):
            p2, p1 = deg(n2), deg(n1)
            # left-star: <n2, b n1> = (-1)^{|b||n1|} <n2, n1> b*
            for b in V1.basis:
                pb = deg(b)
                bn1 = E.mul(b, n1)
                add([((th, p2, (pb + p1) % 2), 0)], E.mul(n2, dg(bn1)),
                    [((th, p2, p1), 0)], [x * _sgn(pb * p1) for x in E.mul(E.mul(n2, dg(n1)), star(b))])
                # right-star: <n2 a, n1> = (-1)^{|a||n1| + theta|a|} <n2, n1 a*>
                a = b
                n1a = E.mul(n1, star(a))
                add([((th, (p2 + pb) % 2, p1), 0)], E.mul(E.mul(n2, a), dg(n1)),
                    [((th, p2, (p1 + pb) % 2), 0)], [x * _sgn(pb * p1 + th * pb) for x in E.mul(n2, dg(n1a))])
            # hermitian: <n2, n1>* = (-1)^{|n1||n2|} <n1, n2>
            add([((th, p2, p1), 1)], star(E.mul(n2, dg(n1))),
                [((th, p1, p2), 0)], [x * _sgn(p1 * p2) for x in E.mul(n1, dg(n2))])
    for g, h in product(G.elements, repeat=2):
        gh = G.mul(g, h)
        tg, th_, tgh = G.theta[g], G.theta[h], G.theta[gh]
        Vg, Vh = B.view(g, 1), B.view(h, 1)
        for ag, bg in product(Vg.basis, repeat=2):
            for ah, bh in product(Vh.basis, repeat=2):
                pag, pbg, pah, pbh = deg(ag), deg(bg), deg(ah), deg(bh)
                lhs = E.mul(E.mul(ag, ah), dg(E.mul(bg, bh)))
                rhs = E.mul(E.mul(E.mul(ag, ah), dg(bh)), dg(bg))
                s = _sgn(pbg * pbh + tg * pbh)
                add([((tgh, (pag + pah) % 2, (pbg + pbh) % 2), 0)], lhs,
                    [((tg, (pag + pah + pbh) % 2, pbg), 0), ((th_, pah, pbh), tg)], [x * s for x in rhs])
    return cons


def _allowed_ratios(pairs):
    """Values r in {±1, ±i} with vL = r vR for every pair."""
    out = []
    for r in ALPHA_VALUES:
        if all(vl == [r * x for x in vr] for vl, vr in pairs):
            out.append(r)
    return out


def _mono(alpha, mon):
    v = ONE
    for cell, cj in mon:
        v = v * _conj_if(alpha[cell], cj)
    return v


def alpha_oracle(fixtures, cells=ALPHA_CELLS, conventions=(1, -1)) -> list[dict]:
    """All tables alpha: cells -> {±1, ±i} such that, for some sign eps of the odd star a* = eps i a†,
    the pairings alpha a b† pass the Hilbert-module, hermiticity and unitarity constraints on every
    fixture (bundle, dagger). Cells are assigned one at a time; constraints are tested once all
    their cells are set."""
    cells = tuple(cells)
    pos = {c: k for k, c in enumerate(cells)}
    found = []
    for eps in conventions:
        checks = []
        for B, dag in fixtures:
            for (ml, mr), pairs in _alpha_constraints(B, dag, eps).items():
                involved = {c for c, _ in ml + mr}
                if not involved <= set(cells):
                    continue
                ratios = _allowed_ratios(pairs)
                checks.append((max(pos[c] for c in involved), ml, mr, ratios))
        by_level = [[] for _ in cells]
        for lvl, ml, mr, ratios in checks:
            by_level[lvl].append((ml, mr, ratios))

        def rec(k, alpha):
            if k == len(cells):
                found.append(dict(alpha))
                return
            for v in ALPHA_VALUES:
                alpha[cells[k]] = v
                if all(any(_mono(alpha, mr) == r * _mono(alpha, ml) for r in ratios)
                       for ml, mr, ratios in by_level[k]):
                    rec(k + 1, alpha)
                del alpha[cells[k]]

        rec(0, {})
    uniq = []
    for t in found:
        if t not in uniq:
            uniq.append(t)
    return uniq


def alpha_twist_classes(tables: list[dict]) -> list[dict]:
    """Tables modulo alpha_1 -> -alpha_1, the effect of replacing † by (-1)^theta †."""
    out = []
    for t in tables:
        k = (1, 0, 0)
        if k in t and t[k] == -ONE:
            t = {c: (-v if c[0] == 1 else v) for c, v in t.items()}
        if t not in out:
            out.append(t)
    return out


# -- one-dimensional theories ------------------------------------------------------------

class TftBundle1D:
    """Bilinear mode: H with theta, V = C^{even|odd}, R[h] for theta(h) = 0 and forms[g] for theta(g) = 1,
    _g<v, w> = v^T forms[g] w. Rep mode: a unitary fermionic representation rho on a hermitian space."""

    def __init__(self, H: FermionicGroup, even: int, odd: int, R=None, forms=None, hermitian=None, rho=None,
                 name: str = ""):
        self.H, self.even, self.odd = H, even, odd
        self.dim = even + odd
        self.parity = [0] * even + [1] * odd
        mat = lambda m: m if isinstance(m, ExactMatrix) else ExactMatrix(m, self.dim)  # noqa: E731
        self.R = {h: mat(m) for h, m in (R or {}).items()}
        self.forms = {g: mat(m) for g, m in (forms or {}).items()}
        self.hermitian, self.name = hermitian, name
        self.rho = {g: mat(m) for g, m in (rho or {}).items()} if rho is not None else None
        self.mode = "rep" if rho is not None else "bilinear"


def _bil(F: ExactMatrix, v, w):
    s = ZERO
    for i, a in enumerate(v):
        if a:
            for j, b in enumerate(w):
                if b and F[i, j]:
                    s = s + a * b * F[i, j]
    return s


def check_tft1d(T: TftBundle1D, condition3: str = "diagram") -> Report:
    """condition3="diagram": _(g^-1)<R(gg')v, w> = (-1)^{|v||w|} _(g'^-1)<w, v>, read off the square
    F(gg') = F(g) F(g')^{*-1} ev. condition3="printed": _(g^-1)<v, w> = (-1)^{|v||w|} _(g'^-1)<w, R(gg')v>."""
    from .stellar import check_hermitian_space, check_unitary_fermionic_rep
    if T.mode == "rep":
        rep = Report(f"tft1d {T.name} (rep)".strip())
        hr = check_hermitian_space(T.hermitian)
        rep.merge(hr)
        rep.merge(check_unitary_fermionic_rep(T.H, T.hermitian, T.rho))
        return rep
    H, n, p = T.H, T.dim, T.parity
    rep = Report(f"tft1d {T.name}".strip())
    for c in ("defined", "representation", "orthogonal-parities", "nondegenerate", "condition1", "condition2",
              "condition3"):
        rep.check(c)
    ev = [h for h in H.elements if not H.theta[h]]
    od = H.odd()
    miss = [h for h in ev if h not in T.R] + [g for g in od if g not in T.forms]
    if miss:
        rep.fail("defined", f"missing data for {miss}")
        return rep
    for h in ev:
        m = T.R[h]
        if m.rows != n or m.cols != n:
            rep.fail("defined", f"R({h}) has the wrong shape")
            return rep
        if any(m[r, c] for r in range(n) for c in range(n) if p[r] != p[c]):
            rep.fail("representation", f"R({h}) is not even")
    if T.R[H.unit] != ExactMatrix.identity(n):
        rep.fail("representation", "R(1) is not the identity")
    for a, b in product(ev, repeat=2):
        if T.R[H.mul(a, b)] != T.R[a] * T.R[b]:
            rep.fail("representation", f"R({a})R({b}) != R({H.mul(a, b)})")
    for g in od:
        F = T.forms[g]
        if F.rows != n or F.cols != n:
            rep.fail("defined", f"form {g} has the wrong shape")
            return rep
        if any(F[r, c] for r in range(n) for c in range(n) if p[r] != p[c]):
            rep.fail("orthogonal-parities", f"_{g}<,> pairs V_0 with V_1")
        if F.rank() != n:
            rep.fail("nondegenerate", f"_{g}<,> is degenerate")
    e = [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
    for g, h in product(od, ev):
        F1, Fg = T.forms[H.mul(g, h)], T.forms[g]
        F2 = T.forms[H.mul(h, g)]
        Rh, Rhi = T.R[h], T.R[H.inv(h)]
        for i, j in product(range(n), repeat=2):
            v, w = e[i], e[j]
            if _bil(F1, v, w) != _bil(Fg, Rh.apply(v), w):
                rep.fail("condition1", f"_(gh)<v,w> != _g<R(h)v,w> at g={g}, h={h}, v=e{i}, w=e{j}")
            if _bil(F2, v, w) != _bil(Fg, v, Rhi.apply(w)):
                rep.fail("condition2", f"_(hg)<v,w> != _g<v,R(h^-1)w> at g={g}, h={h}, v=e{i}, w=e{j}")
    for g, g2 in product(od, repeat=2):
        Fa, Fb = T.forms[H.inv(g)], T.forms[H.inv(g2)]
        Rgg = T.R[H.mul(g, g2)]
        for i, j in product(range(n), repeat=2):
            v, w = e[i], e[j]
            if condition3 == "printed":
                bad = _bil(Fa, v, w) != _sgn(p[i] * p[j]) * _bil(Fb, w, Rgg.apply(v))
                msg = "_(g^-1)<v,w> != ±_(g'^-1)<w,R(gg')v>"
            else:
                bad = _bil(Fa, Rgg.apply(v), w) != _sgn(p[i] * p[j]) * _bil(Fb, w, v)
                msg = "_(g^-1)<R(gg')v,w> != ±_(g'^-1)<w,v>"
            if bad:
                rep.fail("condition3", f"{msg} at g={g}, g'={g2}, v=e{i}, w=e{j}")
    return rep


def convert_1d(T: TftBundle1D, section=None, hermitian=None) -> TftBundle1D:
    """Rep mode on G <-> bilinear mode on H = G^op, with R(h) = rho(h^-1) and _g<v,w> = <v, rho(g) w>.

    Forward: forms are built at the section element g0 and spread to the odd coset by
    _(g0 h)<v,w> = _g0<R(h)v,w>. Reverse: rho(g) = conj(h^-1 F_g) conj on odd g, rho(h) = R(h^-1) on even h,
    where h is the gram matrix of the hermitian space."""
    from .fgroup import spacetime_group_1d, opposite
    from .stellar import HermitianSpace
    if T.mode == "rep":
        G, Hs, rho = T.H, T.hermitian, T.rho
        H = spacetime_group_1d(G)
        R = {h: rho[G.inv(h)] for h in G.elements if not G.theta[h]}
        g0 = section if section is not None else H.odd()[0]
        if not H.theta[g0]:
            raise PreconditionError(f"section element {g0} is not odd")
        F0 = Hs.gram * rho[g0].conj()
        forms = {}
        for h, Rh in R.items():
            forms[H.mul(g0, h)] = Rh.transpose() * F0
        return TftBundle1D(H, Hs.even, Hs.odd, R=R, forms=forms, name=f"{T.name} bilinear".strip())
    Hs = hermitian or HermitianSpace.standard(T.even, T.odd)
    H = T.H
    G = opposite(H)
    G.name = T.H.name[3:-1] if T.H.name.startswith("H1(") else T.H.name
    n = T.dim
    rho = {}
    for g in G.elements:
        if G.theta[g]:
            sol = solve_many(Hs.gram, [[T.forms[g][r, c] for r in range(n)] for c in range(n)])
            if sol is None:
                raise PreconditionError("hermitian gram matrix is singular")
            rho[g] = ExactMatrix([[sol[c][r] for c in range(n)] for r in range(n)], n).conj()
        else:
            rho[g] = T.R[G.inv(g)]
    return TftBundle1D(G, T.even, T.odd, hermitian=Hs, rho=rho, name=f"{T.name} rep".strip())


def _closure_rep(G: FermionicGroup, gen_mats: dict):
    """Extend generator images to all of G by products; None if inconsistent."""
    mats = {G.unit: None}
    n = next(iter(gen_mats.values())).rows
    mats[G.unit] = ExactMatrix.identity(n)
    frontier = [G.unit]
    while frontier:
        nxt = []
        for g in frontier:
            for s, m in gen_mats.items():
                gs = G.mul(g, s)
                val = mats[g] * (m.conj() if G.theta[g] else m)
                if gs in mats:
                    if mats[gs] != val:
                        return None
                else:
                    mats[gs] = val
                    nxt.append(gs)
        frontier = nxt
    return mats if len(mats) == len(G) else None


def _monomial_blocks(n: int, coeffs):
    """Monomial n x n matrices with nonzero entries from coeffs."""
    from itertools import permutations
    for perm in permutations(range(n)):
        for vals in product(coeffs, repeat=n):
            yield ExactMatrix([[vals[r] if perm[r] == c else ZERO for c in range(n)] for r in range(n)], n)


def search_unitary_reps(G: FermionicGroup, Hs, coeffs=(ONE, -ONE, I, -I), limit: int = 1):
    """Unitary fermionic representations of G on Hs whose generator images are block-monomial
    (even and odd blocks) with entries in coeffs."""
    from .fgroup import generators
    from .stellar import check_unitary_fermionic_rep
    gens = generators(G)
    e, o = Hs.even, Hs.odd
    n = e + o
    blocks = [(b0, b1) for b0 in (list(_monomial_blocks(e, coeffs)) if e else [None])
              for b1 in (list(_monomial_blocks(o, coeffs)) if o else [None])]

    def full(b0, b1):
        rows = [[ZERO] * n for _ in range(n)]
        for r in range(e):
            for c in range(e):
                rows[r][c] = b0[r, c]
        for r in range(o):
            for c in range(o):
                rows[e + r][e + c] = b1[r, c]
        return ExactMatrix(rows, n)

    mats = [full(*b) for b in blocks]
    found = []
    for choice in product(mats, repeat=len(gens)):
        rho = _closure_rep(G, dict(zip(gens, choice)))
        if rho is None:
            continue
        if check_unitary_fermionic_rep(G, Hs, rho).ok:
            found.append(rho)
            if len(found) >= limit:
                break
    return found


def antilinear_obstruction(G: FermionicGroup, even: int, odd: int) -> str | None:
    """A determinant obstruction to any fermionic representation on C^{even|odd}, or None.

    For odd g, rho(g) = M conj is even, so each parity block satisfies M_b conj(M_b) = rho(g^2)_b and
    det(rho(g^2)_b) = |det M_b|^2 > 0. If g^2 = c this forces (-1)^odd > 0."""
    for g in G.odd():
        if G.mul(g, g) == G.c and odd % 2:
            return (f"{g}^2 = c needs M conj(M) = -1 on C^{odd}, but det(M conj M) = |det M|^2 > 0 "
                    f"while det(-1) = -1")
    return None
