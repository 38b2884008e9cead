"""Canonical JSON forms. Scalars are strings like "1/2-i"; element labels are strings."""
from __future__ import annotations

import json
from pathlib import Path

from .bimod import Bimodule
from .errors import StructuralError
from .exactlin import ExactMatrix, GaussianScalar, format_scalar, parse_scalar
from .fgroup import FermionicGroup, FiniteGroup
from .frob import GradedAlgebraBundle, TftBundle1D, TftBundle2D, dagger_pairing_tables
from .salg import Superalgebra
from .stellar import HermitianSpace, HilbertPairing, StarAlgebra, StellarAlgebra
from .twogroup import SkeletalTwoGroup, TwoGroupMapData

KINDS = ("fermionic_group", "skeletal_2group", "2group_map", "superalgebra", "bimodule", "star_algebra",
         "stellar", "hilbert_pairing", "tft2d", "tft1d")


# -- scalars, vectors, matrices -------------------------------------------------------------

def _s(x) -> str | int:
    x = GaussianScalar.coerce(x)
    t = format_scalar(x)
    return int(t) if t.lstrip("-").isdigit() else t


def _vec(v) -> list:
    return [_s(x) for x in v]


def _mat(m: ExactMatrix) -> list:
    return [[_s(x) for x in row] for row in m.entries]


class _Reader:
    """Path-tracking accessors so structural errors name their location."""

    def __init__(self, path: str = "$"):
        self.path = path

    def at(self, key) -> "_Reader":
        return _Reader(f"{self.path}.{key}" if isinstance(key, str) else f"{self.path}[{key}]")

    def err(self, msg):
        raise StructuralError(f"{self.path}: {msg}")

    def get(self, d, key, default=...):
        if not isinstance(d, dict):
            self.err("expected an object")
        if key not in d:
            if default is ...:
                self.at(key).err("missing field")
            return default
        return d[key]

    def scalar(self, x):
        try:
            return parse_scalar(x)
        except StructuralError as e:
            self.err(str(e))

    def vec(self, v, n=None):
        if not isinstance(v, list):
            self.err("expected a list of scalars")
        if n is not None and len(v) != n:
            self.err(f"expected length {n}, got {len(v)}")
        return [self.at(k).scalar(x) for k, x in enumerate(v)]

    def mat(self, m, n=None):
        if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
            self.err("expected a list of rows")
        rows = [self.at(k).vec(r, n) for k, r in enumerate(m)]
        if n is not None and len(rows) != n:
            self.err(f"expected {n} rows, got {len(rows)}")
        if rows and len({len(r) for r in rows}) != 1:
            self.err("ragged matrix")
        return ExactMatrix(rows, len(rows[0]) if rows else 0)

    def wrap(self, fn, *a):
        try:
            return fn(*a)
        except StructuralError as e:
            if str(e).startswith("$"):
                raise
            self.err(str(e))


# -- groups -------------------------------------------------------------------------------

def _group_dict(G: FiniteGroup) -> dict:
    L = [str(g) for g in G.elements]
    return {"elements": L, "unit": str(G.unit),
            "table": [[str(G.mul(a, b)) for b in G.elements] for a in G.elements]}


def dump_group(G: FermionicGroup) -> dict:
    d = {"kind": "fermionic_group", "name": G.name}
    d.update(_group_dict(G))
    d["c"] = str(G.c)
    d["theta"] = {str(g): G.theta[g] for g in G.elements}
    return d


def _finite_group(d, r: _Reader) -> FiniteGroup:
    return r.wrap(FiniteGroup, [str(x) for x in r.get(d, "elements")], r.get(d, "table"), r.get(d, "unit"))


def load_group(d, r: _Reader | None = None) -> FermionicGroup:
    r = r or _Reader()
    return r.wrap(FermionicGroup, [str(x) for x in r.get(d, "elements")], r.get(d, "table"), r.get(d, "unit"),
                  r.get(d, "c"), {str(k): int(v) for k, v in r.get(d, "theta", {}).items()}, r.get(d, "name", ""))


def _relabel(G: FermionicGroup) -> FermionicGroup:
    """Same group with string labels."""
    if all(isinstance(g, str) for g in G.elements):
        return G
    return load_group(dump_group(G))


# -- 2-groups ----------------------------------------------------------------------------------

def dump_two_group(tg: SkeletalTwoGroup) -> dict:
    return {"kind": "skeletal_2group", "name": tg.name, "pi0": _group_dict(tg.pi0), "pi1": list(tg.pi1),
            "action": {str(g): [list(r) for r in A] for g, A in tg.action.items()},
            "k": [[str(a), str(b), str(c), list(v)] for (a, b, c), v in sorted(tg.k.items(), key=str) if any(v)]}


def load_two_group(d, r: _Reader | None = None) -> SkeletalTwoGroup:
    r = r or _Reader()
    G = _finite_group(r.get(d, "pi0"), r.at("pi0"))
    k = {}
    for n, row in enumerate(r.get(d, "k", [])):
        if not isinstance(row, list) or len(row) != 4:
            r.at("k").at(n).err("expected [g1, g2, g3, vector]")
        k[(str(row[0]), str(row[1]), str(row[2]))] = row[3]
    return r.wrap(SkeletalTwoGroup, G, r.get(d, "pi1"), {str(g): A for g, A in r.get(d, "action", {}).items()}, k,
                  r.get(d, "name", ""))


def dump_map(src: SkeletalTwoGroup, m: TwoGroupMapData, tgt: SkeletalTwoGroup) -> dict:
    return {"kind": "2group_map", "source": dump_two_group(src), "target": dump_two_group(tgt),
            "F0": {str(g): str(h) for g, h in m.F0.items()}, "F1": [list(r) for r in m.F1],
            "Xi": [[str(a), str(b), list(v)] for (a, b), v in sorted(m.Xi.items(), key=str)]}


def load_map(d, r: _Reader | None = None):
    r = r or _Reader()
    src = load_two_group(r.get(d, "source"), r.at("source"))
    tgt = load_two_group(r.get(d, "target"), r.at("target"))
    xi = {}
    for n, row in enumerate(r.get(d, "Xi", [])):
        if not isinstance(row, list) or len(row) != 3:
            r.at("Xi").at(n).err("expected [g, h, vector]")
        xi[(str(row[0]), str(row[1]))] = tuple(int(x) for x in row[2])
    m = TwoGroupMapData({str(g): str(h) for g, h in r.get(d, "F0").items()},
                        tuple(tuple(int(x) for x in row) for row in r.get(d, "F1")), xi)
    return src, m, tgt


# -- algebras and modules -------------------------------------------------------------------

def dump_algebra(A: Superalgebra) -> dict:
    mult = [[i, j, k, _s(c)] for i in range(A.dim) for j in range(A.dim) for k, c in sorted(A.mult[i][j].items())]
    return {"kind": "superalgebra", "name": A.name, "field": A.field, "names": list(A.names),
            "parity": list(A.parity), "unit": _vec(A.unit), "mult": mult}


def load_algebra(d, r: _Reader | None = None) -> Superalgebra:
    r = r or _Reader()
    parity = r.get(d, "parity")
    n = len(parity)
    mult = {}
    for m, row in enumerate(r.get(d, "mult")):
        rr = r.at("mult").at(m)
        if not isinstance(row, list) or len(row) != 4:
            rr.err("expected [i, j, k, coefficient]")
        i, j, k = row[:3]
        if any(not isinstance(x, int) or not 0 <= x < n for x in (i, j, k)):
            rr.err("basis index out of range")
        mult.setdefault((i, j), {})
        mult[(i, j)][k] = mult[(i, j)].get(k, GaussianScalar(0)) + rr.scalar(row[3])
    unit = r.at("unit").vec(r.get(d, "unit"), n)
    return r.wrap(Superalgebra, parity, mult, unit, r.get(d, "field", "C"), r.get(d, "names", None),
                  r.get(d, "name", ""))


def dump_bimodule(M: Bimodule) -> dict:
    return {"kind": "bimodule", "name": M.name, "left": dump_algebra(M.left_alg), "right": dump_algebra(M.right_alg),
            "names": list(M.names), "parity": list(M.parity),
            "left_act": [[_vec(v) for v in row] for row in M.left_act],
            "right_act": [[_vec(v) for v in row] for row in M.right_act]}


def _tensor3(x, r: _Reader):
    if not isinstance(x, list):
        r.err("expected a nested list")
    return [[r.at(a).at(b).vec(v) for b, v in enumerate(row)] for a, row in enumerate(x)]


def load_bimodule(d, r: _Reader | None = None) -> Bimodule:
    r = r or _Reader()
    A = load_algebra(r.get(d, "left"), r.at("left"))
    B = load_algebra(r.get(d, "right"), r.at("right"))
    return r.wrap(Bimodule, A, B, r.get(d, "parity"), _tensor3(r.get(d, "left_act"), r.at("left_act")),
                  _tensor3(r.get(d, "right_act"), r.at("right_act")), r.get(d, "names", None), r.get(d, "name", ""))


def dump_star(S: StarAlgebra) -> dict:
    return {"kind": "star_algebra", "name": S.name, "algebra": dump_algebra(S.alg), "star": _mat(S.S)}


def load_star(d, r: _Reader | None = None) -> StarAlgebra:
    r = r or _Reader()
    A = load_algebra(r.get(d, "algebra"), r.at("algebra"))
    return r.wrap(StarAlgebra, A, r.at("star").mat(r.get(d, "star"), A.dim), r.get(d, "name", ""))


def dump_stellar(S: StellarAlgebra) -> dict:
    return {"kind": "stellar", "name": S.name, "algebra": dump_algebra(S.alg), "M": dump_bimodule(S.M),
            "sigma": _mat(S.sigma)}


def load_stellar(d, r: _Reader | None = None) -> StellarAlgebra:
    r = r or _Reader()
    A = load_algebra(r.get(d, "algebra"), r.at("algebra"))
    M = load_bimodule(r.get(d, "M"), r.at("M"))
    return StellarAlgebra(A, M, r.at("sigma").mat(r.get(d, "sigma"), M.dim), r.get(d, "name", ""))


def dump_pairing(P: HilbertPairing) -> dict:
    return {"kind": "hilbert_pairing", "bimodule": dump_bimodule(P.N), "left_star": dump_star(P.SB),
            "right_star": dump_star(P.SA), "table": [[_vec(v) for v in row] for row in P.table]}


def load_pairing(d, r: _Reader | None = None) -> HilbertPairing:
    r = r or _Reader()
    N = load_bimodule(r.get(d, "bimodule"), r.at("bimodule"))
    SB = load_star(r.get(d, "left_star"), r.at("left_star"))
    SA = load_star(r.get(d, "right_star"), r.at("right_star"))
    tab = _tensor3(r.get(d, "table"), r.at("table"))
    if len(tab) != N.dim or any(len(row) != N.dim or any(len(v) != SB.alg.dim for v in row) for row in tab):
        r.at("table").err("pairing table has the wrong shape")
    return HilbertPairing(N, SB, SA, tab)


# -- theories -------------------------------------------------------------------------------

def dump_tft2d(T: TftBundle2D, with_pairings: bool = True) -> dict:
    B = T.bundle
    d = {"kind": "tft2d", "name": T.name, "mode": T.mode, "grading": dump_group(B.G), "ambient": dump_algebra(B.E),
         "components": {str(g): [_vec(v) for v in B.components[g]] for g in B.G.elements},
         "i": _vec(B.i_el), "parity_element": _vec(B.parity_el) if B.parity_el is not None else None,
         "dagger": _mat(T.dagger), "lambda": _vec(T.lam), "loops": {}}
    for n, lp in enumerate(B.loops):
        name = lp.get("name", f"loop{n}")
        d["loops"][name] = {"element": _vec(lp["element"]), "component": str(lp.get("component", B.G.unit)),
                            "twist": int(lp.get("twist", 0)),
                            "action": {str(g): int(e) for g, e in lp.get("action", {}).items()},
                            "products": [list(p) for p in lp.get("products", ())]}
    if with_pairings:
        d["pairings"] = {str(g): [[_vec(v) for v in row] for row in T.pairings[g]] for g in B.G.elements
                         if g in T.pairings}
    return d


def load_bundle(d, r: _Reader) -> GradedAlgebraBundle:
    G = load_group(r.get(d, "grading"), r.at("grading"))
    E = load_algebra(r.get(d, "ambient"), r.at("ambient"))
    comps = {}
    for g, vs in r.get(d, "components").items():
        rg = r.at("components").at(g)
        if not isinstance(vs, list):
            rg.err("expected a list of vectors")
        comps[str(g)] = [rg.at(k).vec(v, E.dim) for k, v in enumerate(vs)]
    i_el = r.at("i").vec(r.get(d, "i"), E.dim)
    pe = r.get(d, "parity_element", None)
    pe = r.at("parity_element").vec(pe, E.dim) if pe is not None else None
    loops = []
    raw = r.get(d, "loops", {}) or {}
    if not isinstance(raw, dict):
        r.at("loops").err("expected an object name -> loop data")
    for name, lp in raw.items():
        rl = r.at("loops").at(name)
        loops.append({"name": name, "element": rl.at("element").vec(rl.get(lp, "element"), E.dim),
                      "component": str(lp.get("component", G.unit)), "twist": int(lp.get("twist", 0)),
                      "action": {str(g): int(e) for g, e in lp.get("action", {}).items()},
                      "products": [tuple(p) for p in lp.get("products", [])]})
    return r.wrap(GradedAlgebraBundle, G, E, comps, i_el, pe, loops, r.get(d, "name", ""))


def load_tft2d(d, r: _Reader | None = None) -> TftBundle2D:
    r = r or _Reader()
    B = load_bundle(d, r)
    dag = r.at("dagger").mat(r.get(d, "dagger"), B.E.dim)
    lam = r.at("lambda").vec(r.get(d, "lambda"))
    pairs = r.get(d, "pairings", None)
    if pairs is None:
        tables = r.wrap(dagger_pairing_tables, B, dag)
    else:
        tables = {str(g): _tensor3(t, r.at("pairings").at(g)) for g, t in pairs.items()}
    return TftBundle2D(B, dag, lam, tables, r.get(d, "mode", "ungraded"), r.get(d, "name", ""))


def dump_tft1d(T: TftBundle1D) -> dict:
    d = {"kind": "tft1d", "name": T.name, "group": dump_group(T.H), "even": T.even, "odd": T.odd}
    if T.mode == "rep":
        d["hermitian"] = _mat(T.hermitian.gram)
        d["rho"] = {str(g): _mat(m) for g, m in T.rho.items()}
    else:
        d["R"] = {str(h): _mat(m) for h, m in T.R.items()}
        d["forms"] = {str(g): _mat(m) for g, m in T.forms.items()}
    return d


def load_tft1d(d, r: _Reader | None = None) -> TftBundle1D:
    r = r or _Reader()
    H = load_group(r.get(d, "group"), r.at("group"))
    e, o = int(r.get(d, "even")), int(r.get(d, "odd"))
    n = e + o
    if "rho" in d:
        gram = r.at("hermitian").mat(r.get(d, "hermitian"), n)
        rho = {str(g): r.at("rho").at(g).mat(m, n) for g, m in r.get(d, "rho").items()}
        return TftBundle1D(H, e, o, hermitian=HermitianSpace(e, o, gram), rho=rho, name=r.get(d, "name", ""))
    R = {str(h): r.at("R").at(h).mat(m, n) for h, m in r.get(d, "R").items()}
    forms = {str(g): r.at("forms").at(g).mat(m, n) for g, m in r.get(d, "forms").items()}
    return TftBundle1D(H, e, o, R=R, forms=forms, name=r.get(d, "name", ""))


# -- dispatch -------------------------------------------------------------------------------

_LOADERS = {"fermionic_group": load_group, "skeletal_2group": load_two_group, "2group_map": load_map,
            "superalgebra": load_algebra, "bimodule": load_bimodule, "star_algebra": load_star,
            "stellar": load_stellar, "hilbert_pairing": load_pairing, "tft2d": load_tft2d, "tft1d": load_tft1d}


def from_dict(d):
    """(kind, object) from a parsed document."""
    r = _Reader()
    kind = r.get(d, "kind")
    if kind not in _LOADERS:
        r.at("kind").err(f"unknown kind {kind!r}")
    return kind, _LOADERS[kind](d, r)


def to_dict(obj) -> dict:
    if isinstance(obj, FermionicGroup):
        return dump_group(obj)
    if isinstance(obj, SkeletalTwoGroup):
        return dump_two_group(obj)
    if isinstance(obj, tuple) and len(obj) == 3 and isinstance(obj[1], TwoGroupMapData):
        return dump_map(*obj)
    if isinstance(obj, Superalgebra):
        return dump_algebra(obj)
    if isinstance(obj, Bimodule):
        return dump_bimodule(obj)
    if isinstance(obj, StarAlgebra):
        return dump_star(obj)
    if isinstance(obj, StellarAlgebra):
        return dump_stellar(obj)
    if isinstance(obj, HilbertPairing):
        return dump_pairing(obj)
    if isinstance(obj, TftBundle2D):
        return dump_tft2d(obj)
    if isinstance(obj, TftBundle1D):
        return dump_tft1d(obj)
    raise StructuralError(f"no serialization for {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_dict(obj), indent=1, ensure_ascii=False, sort_keys=False) + "\n"


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructuralError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_dict(d)


def load(path) -> tuple:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StructuralError(f"cannot read {path}: {e.strerror}") from None
    return loads(text)


def save(obj, path) -> Path:
    p = Path(path)
    p.write_text(dumps(obj), encoding="utf-8")
    return p
