"""Skeletal 2-groups (pi0, pi1, action, k), maps between them, and Z2^c extensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import gf2
from .errors import StructuralError, UnsupportedInput
from .fgroup import FiniteGroup
from .report import Report

Vec = tuple


class SkeletalTwoGroup:
    """pi1 is a product of cyclic groups; order 0 means Z."""

    def __init__(self, pi0: FiniteGroup, pi1: Sequence[int], action: dict | None = None,
                 k: dict | None = None, name: str = ""):
        self.pi0 = pi0
        self.pi1 = tuple(int(m) for m in pi1)
        r = len(self.pi1)
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.action = {g: ident for g in pi0.elements}
        for g, A in (action or {}).items():
            if g not in pi0.index:
                raise StructuralError(f"action given on unknown element {g!r}")
            A = tuple(tuple(int(x) for x in row) for row in A)
            if len(A) != r or any(len(row) != r for row in A):
                raise StructuralError("action matrix has the wrong shape")
            self.action[g] = A
        self.k = {}
        for key, v in (k or {}).items():
            key = tuple(key)
            if len(key) != 3 or any(g not in pi0.index for g in key):
                raise StructuralError(f"bad associator key {key!r}")
            self.k[key] = self.norm(v)
        self.name = name

    @property
    def rank(self):
        return len(self.pi1)

    def zero(self) -> Vec:
        return (0,) * self.rank

    def norm(self, v) -> Vec:
        v = tuple(int(x) for x in v)
        if len(v) != self.rank:
            raise StructuralError(f"pi1 vector {v!r} has the wrong length")
        return tuple(x % m if m else x for x, m in zip(v, self.pi1))

    def add(self, *vs) -> Vec:
        return self.norm([sum(c) for c in zip(*vs)]) if vs else self.zero()

    def neg(self, v) -> Vec:
        return self.norm([-x for x in v])

    def act(self, g, v) -> Vec:
        A = self.action[g]
        return self.norm([sum(a * x for a, x in zip(row, v)) for row in A])

    def kval(self, g1, g2, g3) -> Vec:
        return self.k.get((g1, g2, g3), self.zero())

    def gens(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]


def check_three_cocycle(tg: SkeletalTwoGroup) -> Report:
    rep = Report(subject=f"skeletal 2-group {tg.name}".strip())
    G = tg.pi0
    rep.check("pi0-group")
    G.group_report(rep)
    if not rep.ok:
        return rep
    rep.check("action")
    for g in G.elements:
        A = tg.action[g]
        for j, mj in enumerate(tg.pi1):
            if mj == 0:
                continue
            for i, mi in enumerate(tg.pi1):
                if (mi == 0 and A[i][j]) or (mi and (mj * A[i][j]) % mi):
                    rep.fail("action", f"alpha({g!r}) is not well defined on generator {j}")
    for g, h in product(G.elements, repeat=2):
        for e in tg.gens():
            if tg.act(G.mul(g, h), e) != tg.act(g, tg.act(h, e)):
                rep.fail("action", f"alpha({g!r}{h!r}) != alpha({g!r})alpha({h!r})")
    for e in tg.gens():
        if tg.act(G.unit, e) != tg.norm(e):
            rep.fail("action", "alpha(1) is not the identity")
    rep.check("normalized")
    u = G.unit
    for a, b in product(G.elements, repeat=2):
        for key in ((u, a, b), (a, u, b), (a, b, u)):
            if any(tg.kval(*key)):
                rep.fail("normalized", f"k{key!r} != 0")
    rep.check("cocycle")
    m = G.mul
    for g1, g2, g3, g4 in product(G.elements, repeat=4):
        lhs = tg.add(tg.kval(g1, g2, m(g3, g4)), tg.kval(m(g1, g2), g3, g4))
        rhs = tg.add(tg.act(g1, tg.kval(g2, g3, g4)), tg.kval(g1, m(g2, g3), g4), tg.kval(g1, g2, g3))
        if lhs != rhs:
            rep.fail("cocycle", f"quadruple ({g1!r},{g2!r},{g3!r},{g4!r}): {lhs} != {rhs}")
    return rep


@dataclass
class TwoGroupMapData:
    """(F0, F1 = Gamma, Xi = phi) of a map between skeletal 2-groups."""
    F0: dict
    F1: tuple  # integer matrix, target rank x source rank
    Xi: dict = field(default_factory=dict)

    def f1(self, tgt: SkeletalTwoGroup, v) -> Vec:
        return tgt.norm([sum(a * x for a, x in zip(row, v)) for row in self.F1])

    def xi(self, tgt: SkeletalTwoGroup, g, h) -> Vec:
        return tgt.norm(self.Xi.get((g, h), tgt.zero()))


def z2_target() -> SkeletalTwoGroup:
    """The 2-group *//Z2^c."""
    return SkeletalTwoGroup(FiniteGroup(["*"], [["*"]], "*"), [2], name="*//Z2")


def extension_map(Gb: SkeletalTwoGroup, Gamma: Sequence[int], Xi: dict) -> TwoGroupMapData:
    return TwoGroupMapData({g: "*" for g in Gb.pi0.elements}, (tuple(int(x) for x in Gamma),),
                           {k: (int(v) % 2,) if not isinstance(v, (tuple, list)) else tuple(v) for k, v in Xi.items()})


def check_map_data(src: SkeletalTwoGroup, m: TwoGroupMapData, tgt: SkeletalTwoGroup) -> Report:
    rep = Report(subject="2-group map")
    G, H = src.pi0, tgt.pi0
    rep.check("F0-homomorphism")
    if set(m.F0) != set(G.elements) or any(v not in H.index for v in m.F0.values()):
        rep.fail("F0-homomorphism", "F0 is not a total map into pi0 of the target")
        return rep
    for a, b in product(G.elements, repeat=2):
        if m.F0[G.mul(a, b)] != H.mul(m.F0[a], m.F0[b]):
            rep.fail("F0-homomorphism", f"F0({a!r}{b!r}) != F0({a!r})F0({b!r})")
    rep.check("F1-homomorphism")
    if len(m.F1) != tgt.rank or any(len(r) != src.rank for r in m.F1):
        rep.fail("F1-homomorphism", "F1 matrix has the wrong shape")
        return rep
    for j, e in enumerate(src.gens()):
        if src.pi1[j] and any(m.f1(tgt, [src.pi1[j] * x for x in e])):
            rep.fail("F1-homomorphism", f"F1 does not kill the order of generator {j}")
    rep.check("F1-equivariance")
    for g in G.elements:
        for e in src.gens():
            if m.f1(tgt, src.act(g, e)) != tgt.act(m.F0[g], m.f1(tgt, e)):
                rep.fail("F1-equivariance", f"F1(alpha({g!r}) e) != beta(F0({g!r})) F1(e) for e={e}")
    rep.check("normalized")
    u = G.unit
    for g in G.elements:
        if any(m.xi(tgt, u, g)) or any(m.xi(tgt, g, u)):
            rep.fail("normalized", f"phi involving the unit and {g!r} is nonzero")
    rep.check("pentagon")
    mul = G.mul
    F0 = m.F0
    for g1, g2, g3 in product(G.elements, repeat=3):
        lhs = tgt.add(m.f1(tgt, src.kval(g1, g2, g3)), m.xi(tgt, mul(g1, g2), g3), m.xi(tgt, g1, g2))
        rhs = tgt.add(m.xi(tgt, g1, mul(g2, g3)), tgt.act(F0[g1], m.xi(tgt, g2, g3)),
                      tgt.kval(F0[g1], F0[g2], F0[g3]))
        if lhs != rhs:
            rep.fail("pentagon", f"triple ({g1!r},{g2!r},{g3!r}): {lhs} != {rhs}")
    return rep


def gamma_candidates(Gb: SkeletalTwoGroup) -> list[tuple]:
    """Homomorphisms pi1 -> Z2 that are invariant under the pi0-action."""
    allowed = [m == 0 or m % 2 == 0 for m in Gb.pi1]
    out = []
    for bits in product((0, 1), repeat=Gb.rank):
        if any(b and not a for b, a in zip(bits, allowed)):
            continue
        ok = all(sum(b * x for b, x in zip(bits, Gb.act(g, e))) % 2 == sum(b * x for b, x in zip(bits, e)) % 2
                 for g in Gb.pi0.elements for e in Gb.gens())
        if ok:
            out.append(bits)
    return out


def _gamma_of(bits, v) -> int:
    return sum(b * x for b, x in zip(bits, v)) % 2


@dataclass
class ExtensionClass:
    Gamma: tuple
    Xi: dict
    index: int

    def line(self) -> str:
        return f"Gamma={list(self.Gamma)} Xi_class={self.index}"


class ExtensionClassifier:
    """Torsor of Xi classes over H^2(pi0, Z2) for each admissible Gamma."""

    def __init__(self, Gb: SkeletalTwoGroup, size_bound: int = 16):
        if len(Gb.pi0) > size_bound:
            raise UnsupportedInput(f"|pi0| = {len(Gb.pi0)} exceeds the bound {size_bound}")
        self.Gb = Gb
        G = Gb.pi0
        self.d2, self.C2, self.C3 = gf2.coboundary_rows(G, 2)
        self.Z2 = gf2.kernel(self.d2, len(self.C2))
        self.B2 = gf2.coboundaries(G, 2)
        self.H2 = gf2.complement(self.B2, self.Z2)
        self.B2_basis, self.B2_piv = gf2.rref(list(self.B2))

    def target(self, Gamma) -> int:
        """Gamma o k as a 3-cochain mask."""
        vals = {key: _gamma_of(Gamma, self.Gb.kval(*key)) for key in self.C3.keys}
        return self.C3.to_mask(vals)

    def reference_xi(self, Gamma) -> int | None:
        t = self.target(Gamma)
        rhs = [t >> j & 1 for j in range(len(self.C3))]
        return gf2.solve(self.d2, rhs, len(self.C2))

    def class_index(self, Gamma, Xi: dict) -> int | None:
        x0 = self.reference_xi(Gamma)
        if x0 is None:
            return None
        diff = self.C2.to_mask(Xi) ^ x0
        # diff must be a cocycle; write it in H2 basis + coboundaries
        for j, r in enumerate(self.d2):
            if gf2.dot(r, diff):
                return None
        gens = self.H2 + self.B2_basis
        n = len(self.C2)
        cols = gens
        rows = []
        rhs = []
        for bit in range(n):
            rows.append(sum(((c >> bit) & 1) << k for k, c in enumerate(cols)))
            rhs.append(diff >> bit & 1)
        sol = gf2.solve(rows, rhs, len(cols))
        if sol is None:
            return None
        return sol & ((1 << len(self.H2)) - 1)

    def enumerate(self) -> list[ExtensionClass]:
        out = []
        for Gamma in gamma_candidates(self.Gb):
            x0 = self.reference_xi(Gamma)
            if x0 is None:
                continue
            for idx in range(1 << len(self.H2)):
                m = x0
                for k, h in enumerate(self.H2):
                    if idx >> k & 1:
                        m ^= h
                out.append(ExtensionClass(Gamma, self.C2.to_dict(m), idx))
        return out


def enumerate_extension_maps(Gb: SkeletalTwoGroup, size_bound: int = 16) -> list[ExtensionClass]:
    return ExtensionClassifier(Gb, size_bound).enumerate()


def coboundary_of(G: FiniteGroup, sigma: dict) -> dict:
    """(d sigma)(g,h) = sigma(g) + sigma(h) + sigma(gh), sigma normalized."""
    s = {g: sigma.get(g, 0) % 2 if g != G.unit else 0 for g in G.elements}
    return {(a, b): (s[a] + s[b] + s[G.mul(a, b)]) % 2 for a in G.elements for b in G.elements}


def are_two_isomorphic(Gb: SkeletalTwoGroup, Xi1: dict, Xi2: dict) -> dict | None:
    """A sigma with Xi1 = Xi2 + d sigma, found by brute force over 1-cochains."""
    G = Gb.pi0
    nonunit = [g for g in G.elements if g != G.unit]
    if len(nonunit) > 16:
        raise UnsupportedInput("too many elements for exhaustive sigma search")
    for bits in product((0, 1), repeat=len(nonunit)):
        sigma = dict(zip(nonunit, bits))
        ds = coboundary_of(G, sigma)
        if all((Xi2.get(k, 0) + ds[k]) % 2 == Xi1.get(k, 0) % 2 for k in ds):
            return sigma
    return None


# --- fermionically skeletal model ----------------------------------------

@dataclass
class FermTwoGroupModel:
    base: SkeletalTwoGroup
    Gamma: tuple
    Xi: dict
    objects: list
    tensor: dict
    associator: dict

    @property
    def c(self):
        return (self.base.pi0.unit, 1)

    @property
    def unit(self):
        return (self.base.pi0.unit, 0)

    def is_morphism(self, src, tgt, gamma) -> bool:
        """gamma in pi1 gives src -> tgt iff same pi0 class and Gamma(gamma) = e1 + e2."""
        return src[0] == tgt[0] and _gamma_of(self.Gamma, gamma) == (src[1] + tgt[1]) % 2

    def hom_description(self, src, tgt) -> str:
        if src[0] != tgt[0]:
            return "empty"
        e = (src[1] + tgt[1]) % 2
        return f"{{gamma in pi1 : Gamma(gamma) = {e}}}"


def build_ferm_skeletal(Gb: SkeletalTwoGroup, Gamma, Xi: dict) -> FermTwoGroupModel:
    rep = check_map_data(Gb, extension_map(Gb, Gamma, Xi), z2_target())
    if not rep.ok:
        raise UnsupportedInput(f"(Gamma, Xi) is not a 2-group map: {rep.failed_clauses}")
    G = Gb.pi0
    xi = {k: int(v[0]) if isinstance(v, tuple) else int(v) % 2 for k, v in Xi.items()}
    X = lambda a, b: xi.get((a, b), 0)
    objs = [(g, e) for e in (0, 1) for g in G.elements]
    tensor = {}
    for (g1, e1), (g2, e2) in product(objs, repeat=2):
        tensor[((g1, e1), (g2, e2))] = (G.mul(g1, g2), (e1 + e2 + X(g1, g2)) % 2)
    assoc = {}
    for o1, o2, o3 in product(objs, repeat=3):
        assoc[(o1, o2, o3)] = Gb.kval(o1[0], o2[0], o3[0])
    return FermTwoGroupModel(Gb, tuple(Gamma), xi, objs, tensor, assoc)


def check_ferm_model(M: FermTwoGroupModel) -> Report:
    rep = Report(subject="fermionically skeletal model")
    T = M.tensor
    c, u = M.c, M.unit
    rep.check("c-strict")
    if T[(c, c)] != u:
        rep.fail("c-strict", "c (x) c != 1")
    for o in M.objects:
        if T[(c, o)] != T[(o, c)]:
            rep.fail("c-strict", f"c does not commute with {o!r}")
        if T[(u, o)] != o or T[(o, u)] != o:
            rep.fail("c-strict", f"unit is not strict at {o!r}")
    rep.check("associator")
    for (o1, o2, o3), gamma in M.associator.items():
        src = T[(T[(o1, o2)], o3)]
        tgt = T[(o1, T[(o2, o3)])]
        if not M.is_morphism(src, tgt, gamma):
            rep.fail("associator", f"k at {(o1, o2, o3)!r} is not a morphism {src!r} -> {tgt!r}")
    return rep


# --- semidirect product with a discrete group -------------------------------

@dataclass
class SemidirectTables:
    N: FiniteGroup
    G: SkeletalTwoGroup
    rho0: dict
    rho1: list
    R: dict
    objects: list
    tensor: dict
    associator: dict

    def rho_gamma(self, gamma):
        """Component rho(gamma)_* in N."""
        N = self.N
        r = N.unit
        for j, x in enumerate(gamma):
            for _ in range(x % (N.order_of(self.rho1[j]))):
                r = N.mul(r, self.rho1[j])
        return r

    def is_morphism(self, src, tgt, gamma) -> bool:
        (n, g), (n2, g2) = src, tgt
        return g == g2 and n == self.N.mul(n2, self.rho_gamma(gamma))

    def is_contractible(self) -> bool:
        """One iso class of objects and trivial automorphism group."""
        if any(m == 0 for m in self.G.pi1):
            return False
        u = (self.N.unit, self.G.pi0.unit)
        reach = set()
        for o in self.objects:
            for gamma in product(*[range(m) for m in self.G.pi1]):
                if self.is_morphism(u, o, gamma):
                    reach.add(o)
        auts = [gam for gam in product(*[range(m) for m in self.G.pi1]) if self.is_morphism(u, u, gam)]
        return len(reach) == len(self.objects) and len(auts) == 1


def semidirect_product(N: FiniteGroup, G: SkeletalTwoGroup, rho0: dict | None, rho1: Sequence,
                       R: dict | None) -> tuple[SemidirectTables, Report]:
    """N discrete (pi1 trivial) acted on by skeletal G with strict units and trivial omega.

    rho0[g] is an automorphism of N as a dict, rho1[j] the component in N of the j-th
    generator of pi1(G), R[(g', g)] in N.
    """
    rep = Report(subject="semidirect product")
    Gp = G.pi0
    rho0 = {g: (rho0 or {}).get(g, {n: n for n in N.elements}) for g in Gp.elements}
    R = {(a, b): (R or {}).get((a, b), N.unit) for a in Gp.elements for b in Gp.elements}
    u = Gp.unit
    if any(rho0[u][n] != n for n in N.elements) or any(R[(u, g)] != N.unit or R[(g, u)] != N.unit
                                                      for g in Gp.elements):
        raise UnsupportedInput("only strict-unit action data are supported")
    rho1 = list(rho1)
    tabs = SemidirectTables(N, G, rho0, rho1, R, [], {}, {})
    objs = [(n, g) for g in Gp.elements for n in N.elements]
    tabs.objects = objs
    m = N.mul
    for (n2, g2), (n1, g1) in product(objs, repeat=2):
        tabs.tensor[((n2, g2), (n1, g1))] = (m(m(n2, rho0[g2][n1]), R[(g2, g1)]), Gp.mul(g2, g1))
    rep.check("action")
    for g in Gp.elements:
        for a, b in product(N.elements, repeat=2):
            if rho0[g][m(a, b)] != m(rho0[g][a], rho0[g][b]):
                rep.fail("action", f"rho({g!r}) is not a homomorphism")
    for g, h in product(Gp.elements, repeat=2):
        for n in N.elements:
            if rho0[g][rho0[h][n]] != rho0[Gp.mul(g, h)][n]:
                rep.fail("action", f"rho({g!r})rho({h!r}) != rho({g!r}{h!r}) strictly")
    rep.check("associator")
    T = tabs.tensor
    for o3, o2, o1 in product(objs, repeat=3):
        k = G.kval(o3[1], o2[1], o1[1])
        src = T[(T[(o3, o2)], o1)]
        tgt = T[(o3, T[(o2, o1)])]
        tabs.associator[(o3, o2, o1)] = k
        if not tabs.is_morphism(src, tgt, k):
            rep.fail("associator", f"no associator morphism at {(o3, o2, o1)!r}")
    return tabs, rep


def skeletalize(tabs: SemidirectTables) -> SkeletalTwoGroup | None:
    """Skeletal data of N x| G when rho1 is trivial, so objects stay non-isomorphic."""
    N = tabs.N
    if any(x != N.unit for x in tabs.rho1):
        return None
    labels = [f"{n}|{g}" for n, g in tabs.objects]
    lab = dict(zip(tabs.objects, labels))
    inv = dict(zip(labels, tabs.objects))
    pi0 = FiniteGroup(labels, lambda a, b: lab[tabs.tensor[(inv[a], inv[b])]], lab[(N.unit, tabs.G.pi0.unit)])
    action = {lab[o]: tabs.G.action[o[1]] for o in tabs.objects}
    k = {(lab[a], lab[b], lab[c]): v for (a, b, c), v in tabs.associator.items()}
    return SkeletalTwoGroup(pi0, tabs.G.pi1, action, k)


def spin2_action_data(Gb: SkeletalTwoGroup, Gamma, Xi: dict, theta: dict) -> dict:
    """How g in pi0 moves the generator eta of pi1(Spin2), and the Xi^op table."""
    G = Gb.pi0
    moves = {g: ("c eta^-1" if theta.get(g, 0) % 2 else "eta") for g in G.elements}
    xop = {}
    for a, b in product(G.elements, repeat=2):
        v = Xi.get((a, b), 0)
        v = v[0] if isinstance(v, tuple) else v
        xop[(a, b)] = (v + theta.get(a, 0) * theta.get(b, 0)) % 2
    return {"eta": moves, "Xi_op": xop}


# --- fixtures ----------------------------------------------------------------

def _z2(names=("1", "r")) -> FiniteGroup:
    a, b = names
    return FiniteGroup([a, b], lambda x, y: a if x == y else b, a)


def point() -> SkeletalTwoGroup:
    return SkeletalTwoGroup(FiniteGroup(["1"], [["1"]], "1"), [], name="point")


def bz() -> SkeletalTwoGroup:
    """*//Z, the skeletal model of SO2."""
    return SkeletalTwoGroup(FiniteGroup(["1"], [["1"]], "1"), [0], name="BZ")


def o2_model() -> SkeletalTwoGroup:
    """pi0 = Z2 acting on pi1 = Z by negation, k = 0."""
    return SkeletalTwoGroup(_z2(), [0], {"r": [[-1]]}, name="O2")


def pin2_minus_base() -> SkeletalTwoGroup:
    """Same pi0, pi1 and action with the nontrivial k(r,r,r) = 1."""
    return SkeletalTwoGroup(_z2(), [0], {"r": [[-1]]}, {("r", "r", "r"): (1,)}, name="Pin2- base")


def so2_times_z2() -> SkeletalTwoGroup:
    return SkeletalTwoGroup(_z2(), [0], name="SO2 x Z2")


def bz2f() -> SkeletalTwoGroup:
    """B Z2^F: one object, pi1 = Z2 generated by (-1)^F."""
    return SkeletalTwoGroup(FiniteGroup(["1"], [["1"]], "1"), [2], name="BZ2F")


def discrete(G: FiniteGroup, name="") -> SkeletalTwoGroup:
    return SkeletalTwoGroup(G, [], name=name)
