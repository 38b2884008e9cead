"""Finite fermionic groups (G, c, theta) stored as multiplication tables."""
from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Callable, Hashable, Sequence

from .errors import StructuralError, UnsupportedInput
from .report import Report


class FiniteGroup:
    """Group given by a full table over a list of labels."""

    def __init__(self, elements: Sequence[Hashable], mult, unit):
        self.elements = list(elements)
        self.index = {g: k for k, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise StructuralError("duplicate element labels")
        if unit not in self.index:
            raise StructuralError(f"unit {unit!r} is not an element")
        n = len(self.elements)
        tab = []
        if callable(mult):
            tab = [[self.index[mult(a, b)] for b in self.elements] for a in self.elements]
        else:
            if len(mult) != n or any(len(r) != n for r in mult):
                raise StructuralError("multiplication table has the wrong shape")
            for row in mult:
                r = []
                for x in row:
                    if x not in self.index:
                        raise StructuralError(f"table entry {x!r} is not an element")
                    r.append(self.index[x])
                tab.append(r)
        self.tab = tab
        self.unit = unit
        self.e = self.index[unit]
        self._inv = None

    def __len__(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.elements[self.tab[self.index[a]][self.index[b]]]

    def prod(self, *xs):
        r = self.unit
        for x in xs:
            r = self.mul(r, x)
        return r

    def inv(self, a):
        if self._inv is None:
            self._inv = {}
            for i, g in enumerate(self.elements):
                for j, h in enumerate(self.elements):
                    if self.tab[i][j] == self.e:
                        self._inv[g] = h
                        break
        return self._inv[a]

    def power(self, a, k):
        r = self.unit
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def order_of(self, a):
        k, x = 1, a
        while x != self.unit:
            x = self.mul(x, a)
            k += 1
            if k > len(self) + 1:
                raise StructuralError("element of infinite order in a finite table")
        return k

    def table_labels(self):
        return [[self.elements[k] for k in row] for row in self.tab]

    def group_report(self, rep: Report):
        n, tab, e = len(self), self.tab, self.e
        rep.check("unit")
        for i in range(n):
            if tab[e][i] != i or tab[i][e] != i:
                rep.fail("unit", f"unit fails on {self.elements[i]!r}")
        rep.check("associativity")
        for i, j, k in product(range(n), repeat=3):
            if tab[tab[i][j]][k] != tab[i][tab[j][k]]:
                rep.fail("associativity", f"({self.elements[i]!r},{self.elements[j]!r},{self.elements[k]!r})")
        rep.check("inverses")
        for i in range(n):
            if e not in tab[i] or e not in [tab[j][i] for j in range(n)]:
                rep.fail("inverses", f"{self.elements[i]!r} has no inverse")
        return rep

    def is_group(self) -> bool:
        return self.group_report(Report()).ok

    def center(self):
        return [g for g in self.elements if all(self.mul(g, h) == self.mul(h, g) for h in self.elements)]

    def __eq__(self, o):
        return (type(self) is type(o) and self.elements == o.elements
                and self.tab == o.tab and self.unit == o.unit)


class FermionicGroup(FiniteGroup):
    """Finite group with grading theta: G -> Z2 and a central c with c^2 = 1."""

    def __init__(self, elements, mult, unit, c, theta: dict | Callable, name: str = ""):
        super().__init__(elements, mult, unit)
        if c not in self.index:
            raise StructuralError(f"c = {c!r} is not an element")
        self.c = c
        th = theta if callable(theta) else theta.get
        self.theta = {g: int(th(g) or 0) % 2 for g in self.elements}
        if not callable(theta):
            for k in theta:
                if k not in self.index:
                    raise StructuralError(f"theta given on unknown label {k!r}")
        self.name = name
        self.components = None  # label -> (g, h) for tensor products

    def __eq__(self, o):
        return super().__eq__(o) and self.c == o.c and self.theta == o.theta

    def __repr__(self):
        return f"FermionicGroup({self.name or len(self)})"

    def odd(self):
        return [g for g in self.elements if self.theta[g]]


def check_fermionic_group(G: FermionicGroup) -> Report:
    rep = Report(subject=f"fermionic group {G.name}".strip())
    G.group_report(rep)
    if not rep.ok:
        return rep
    rep.check("c-square")
    if G.mul(G.c, G.c) != G.unit:
        rep.fail("c-square", "c*c is not the unit")
    rep.check("c-central")
    for g in G.elements:
        if G.mul(G.c, g) != G.mul(g, G.c):
            rep.fail("c-central", f"c does not commute with {g!r}")
    rep.check("theta-homomorphism")
    for g, h in product(G.elements, repeat=2):
        if G.theta[G.mul(g, h)] != (G.theta[g] + G.theta[h]) % 2:
            rep.fail("theta-homomorphism", f"theta({g!r}{h!r}) != theta({g!r})+theta({h!r})")
    rep.check("c-even")
    if G.theta[G.c]:
        rep.fail("c-even", "theta(c) = 1")
    return rep


def from_function(elements, mul: Callable, unit, c, theta, name="") -> FermionicGroup:
    return FermionicGroup(elements, mul, unit, c, theta, name)


def opposite(G: FermionicGroup) -> FermionicGroup:
    """g1 *op g2 = c^{theta(g1)theta(g2)} g2 g1."""
    def m(a, b):
        r = G.mul(b, a)
        return G.mul(G.c, r) if G.theta[a] and G.theta[b] else r
    H = FermionicGroup(G.elements, m, G.unit, G.c, G.theta, name=f"{G.name}^op" if G.name else "")
    return H


def _rep(G: FermionicGroup, h):
    """First of {h, c h} in element order."""
    ch = G.mul(G.c, h)
    return h if G.index[h] <= G.index[ch] else ch


def fermionic_tensor(G: FermionicGroup, H: FermionicGroup) -> FermionicGroup:
    if G.c == G.unit or H.c == H.unit:
        raise UnsupportedInput("fermionic tensor product needs nontrivial c in both factors")
    pairs = [(g, h) for g in G.elements for h in H.elements if _rep(H, h) == h]

    def canon(g, h):
        if _rep(H, h) == h:
            return (g, h)
        return (G.mul(G.c, g), H.mul(H.c, h))

    def lab(p):
        return f"{p[0]}⊗{p[1]}"

    labels = [lab(p) for p in pairs]
    comp = dict(zip(labels, pairs))

    def m(x, y):
        (g1, h1), (g2, h2) = comp[x], comp[y]
        g = G.mul(g1, g2)
        if G.theta[g2] and H.theta[h1]:
            g = G.mul(G.c, g)
        return lab(canon(g, H.mul(h1, h2)))

    theta = {l: (G.theta[g] + H.theta[h]) % 2 for l, (g, h) in comp.items()}
    name = f"({G.name}⊗{H.name})" if G.name and H.name else ""
    T = FermionicGroup(labels, m, lab((G.unit, H.unit)), lab(canon(G.c, H.unit)), theta, name)
    T.components = comp
    T.canon = lambda g, h: lab(canon(g, h))
    return T


class Cocycle2:
    """Z2-valued normalized 2-cochain on a group; 1 stands for c."""

    def __init__(self, group: FiniteGroup, values: dict):
        self.group = group
        self.values = {(g, h): int(values.get((g, h), 0)) % 2 for g in group.elements for h in group.elements}

    def __call__(self, g, h):
        return self.values[(g, h)]

    def is_normalized(self):
        u = self.group.unit
        return all(self(u, g) == 0 == self(g, u) for g in self.group.elements)

    def is_cocycle(self):
        G = self.group
        for a, b, c in product(G.elements, repeat=3):
            if (self(b, c) + self(a, G.mul(b, c)) + self(G.mul(a, b), c) + self(a, b)) % 2:
                return False
        return True

    def __add__(self, o):
        return Cocycle2(self.group, {k: (v + o.values[k]) % 2 for k, v in self.values.items()})

    def __eq__(self, o):
        return isinstance(o, Cocycle2) and self.values == o.values


def bosonic_quotient(G: FermionicGroup):
    """(G_b, omega, section) with s(g)s(h) = c^omega(g,h) s(gh)."""
    if G.c == G.unit:
        raise UnsupportedInput("bosonic quotient needs c != unit")
    reps = [g for g in G.elements if _rep(G, g) == g]

    def m(a, b):
        return _rep(G, G.mul(a, b))

    Gb = FermionicGroup(reps, m, _rep(G, G.unit), _rep(G, G.unit), {g: G.theta[g] for g in reps},
                        name=f"{G.name}_b" if G.name else "")
    section = {g: g for g in reps}
    omega = {}
    for a, b in product(reps, repeat=2):
        omega[(a, b)] = 0 if G.mul(a, b) == m(a, b) else 1
    return Gb, Cocycle2(Gb, omega), section


def spacetime_group_1d(G: FermionicGroup) -> FermionicGroup:
    """H_1 = G^op; its map to O_1 is theta."""
    if G.c == G.unit:
        raise UnsupportedInput("spacetime group needs nontrivial c")
    H = opposite(G)
    H.name = f"H1({G.name})" if G.name else "H1"
    return H


def iso_witness_check(G: FermionicGroup, H: FermionicGroup, f: dict) -> bool:
    if set(f) != set(G.elements) or len(set(f.values())) != len(H) or len(G) != len(H):
        return False
    if any(v not in H.index for v in f.values()):
        return False
    if f[G.c] != H.c or f[G.unit] != H.unit:
        return False
    if any(G.theta[g] != H.theta[f[g]] for g in G.elements):
        return False
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a, b in product(G.elements, repeat=2))


def fingerprint(G: FermionicGroup) -> tuple:
    orders = Counter((G.order_of(g), G.theta[g]) for g in G.elements)
    return (len(G), sum(G.theta.values()), tuple(sorted(orders.items())), len(G.center()),
            G.order_of(G.c) if G.c != G.unit else 1)


def generators(G: FiniteGroup) -> list:
    """Greedy generating set in element order."""
    gens, span = [], {G.unit}
    for g in G.elements:
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return gens


def _closure(G, gens):
    span = {G.unit}
    frontier = [G.unit]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in span:
                    span.add(y)
                    new.append(y)
        frontier = new
    return span


def find_isomorphism(G: FermionicGroup, H: FermionicGroup, exhaustive_bound: int = 8):
    """Witness map or None; exhaustive only up to the bound, fingerprints above."""
    if fingerprint(G) != fingerprint(H):
        return None
    if len(G) > exhaustive_bound:
        raise UnsupportedInput(f"exhaustive search limited to order <= {exhaustive_bound}")
    gens = generators(G)
    # words expressing every element in the generators
    word = {G.unit: ()}
    frontier = [G.unit]
    while frontier:
        new = []
        for x in frontier:
            for k, s in enumerate(gens):
                y = G.mul(x, s)
                if y not in word:
                    word[y] = word[x] + (k,)
                    new.append(y)
        frontier = new
    cands = [[h for h in H.elements if H.theta[h] == G.theta[g] and H.order_of(h) == G.order_of(g)] for g in gens]
    for imgs in product(*cands):
        f = {}
        for g, w in word.items():
            f[g] = H.prod(*[imgs[k] for k in w])
        if iso_witness_check(G, H, f):
            return f
    return None


# --- small fixtures -------------------------------------------------------

def cyclic_fermionic(n: int, c_power: int | None, odd_generator: bool, names=None, name="") -> FermionicGroup:
    els = names or [f"g{k}" for k in range(n)]
    c = els[c_power] if c_power is not None else els[0]
    return FermionicGroup(els, lambda a, b: els[(els.index(a) + els.index(b)) % n], els[0], c,
                          {g: (k % 2 if odd_generator else 0) for k, g in enumerate(els)}, name)


def pin1_minus() -> FermionicGroup:
    """Z4 = {1, T, c, cT} with T^2 = c, T odd."""
    els = ["1", "T", "c", "cT"]
    pw = {"1": 0, "T": 1, "c": 2, "cT": 3}
    inv = {v: k for k, v in pw.items()}
    return FermionicGroup(els, lambda a, b: inv[(pw[a] + pw[b]) % 4], "1", "c", {"T": 1, "cT": 1}, "Pin1-")


def _z2xz2(names, c, theta, name):
    # names[0] unit; names[3] = names[1]*names[2]
    vec = {names[0]: (0, 0), names[1]: (1, 0), names[2]: (0, 1), names[3]: (1, 1)}
    inv = {v: k for k, v in vec.items()}
    return FermionicGroup(names, lambda a, b: inv[((vec[a][0] + vec[b][0]) % 2, (vec[a][1] + vec[b][1]) % 2)],
                          names[0], c, theta, name)


def pin1_plus() -> FermionicGroup:
    """Z2^c x Z2^T = {1, T, c, cT}, T^2 = 1."""
    return _z2xz2(["1", "c", "T", "cT"], "c", {"T": 1, "cT": 1}, "Pin1+")


def z2c() -> FermionicGroup:
    return FermionicGroup(["1", "c"], lambda a, b: "1" if a == b else "c", "1", "c", {}, "Z2c")


def split_bosonic() -> FermionicGroup:
    """Z2^c x Z2 with theta = 0."""
    return _z2xz2(["1", "c", "T", "cT"], "c", {}, "Z2c x Z2")


def quaternion_group() -> FermionicGroup:
    """Q8 with c = -1, i and j odd, k even."""
    units = {"1": (1, 0), "i": (1, 1), "j": (1, 2), "k": (1, 3),
             "-1": (-1, 0), "-i": (-1, 1), "-j": (-1, 2), "-k": (-1, 3)}
    inv = {v: k for k, v in units.items()}
    table = {(1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
             (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
             (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}

    def m(a, b):
        (s, x), (t, y) = units[a], units[b]
        if x == 0:
            return inv[(s * t, y)]
        if y == 0:
            return inv[(s * t, x)]
        u, z = table[(x, y)]
        return inv[(s * t * u, z)]

    th = {g: (1 if units[g][1] in (1, 2) else 0) for g in units}
    return FermionicGroup(list(units), m, "1", "-1", th, "Q8")


def dihedral8() -> FermionicGroup:
    """D4 = <a, b | a^2 = b^2 = (ab)^4 = 1>, a and b odd, c = (ab)^2."""
    # elements r^k s^e with r = ab, s = a
    els = [f"r{k}" if e == 0 else f"r{k}s" for e in (0, 1) for k in range(4)]

    def dec(x):
        return int(x[1]), 1 if x.endswith("s") else 0

    def enc(k, e):
        return f"r{k % 4}" + ("s" if e else "")

    def m(x, y):
        (k1, e1), (k2, e2) = dec(x), dec(y)
        # s r^k = r^{-k} s
        return enc(k1 + (-k2 if e1 else k2), e1 ^ e2)

    th = {x: dec(x)[1] for x in els}
    return FermionicGroup(els, m, "r0", "r2", th, "D4")
