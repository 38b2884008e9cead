"""The acceptance suite: one exact check per criterion, each returning (ok, detail lines)."""
from __future__ import annotations

import copy
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import fixtures, io
from .bimod import (Bimodule, MoritaContext, check_serre_naturality, direct_sum_bimodule, invertible_by_ranks,
                    is_invertible, map_from_pure, parity_bimodule, parity_shift, rebase, regular, right_adjoint,
                    serre, serre_naturality, serre_naturality_oracle, tensor_over)
from .exactlin import I, ONE, ExactMatrix, GaussianScalar
from .fgroup import (fermionic_tensor, find_isomorphism, iso_witness_check, pin1_minus, pin1_plus, quaternion_group,
                     spacetime_group_1d, z2c)
from .frob import (ALPHA_CELLS, TftBundle1D, alpha_oracle, alpha_twist_classes, antilinear_obstruction,
                   check_frobenius_compat, check_tft1d, check_tft2d, convert_1d, positivity, search_unitary_reps,
                   serre_frobenius_check, twisted_bundle)
from .salg import clifford, complex_clifford, ground_field, matrix_superalgebra, parity_extension
from .salg import fingerprint as alg_fingerprint
from .salg import iso_witness_check as alg_iso_check
from .salg import parity_extension_case, parity_extension_witness
from .stellar import (HermitianSpace, check_stellar_bimodule, morita_search_stellar, stellar_from_star,
                      stellar_on_field)
from .twogroup import enumerate_extension_maps, o2_model, point

Check = Callable[[], tuple[bool, list[str]]]


# 1 -------------------------------------------------------------------------------

def check_fermionic_tensor() -> tuple[bool, list[str]]:
    P = pin1_minus()
    G = fermionic_tensor(P, P)
    Q = quaternion_group()
    out = []
    f = find_isomorphism(G, Q)
    ok = f is not None and iso_witness_check(G, Q, f)
    out.append(f"witness {'found' if f else 'missing'}: " + (", ".join(f"{k}->{v}" for k, v in f.items()) if f else ""))
    c = G.c
    ok &= c != G.unit and Q.order_of(f[c]) == 2 if f else False
    x, y = G.canon("T", "1"), G.canon("1", "T")
    odd = G.theta[x] == 1 and G.theta[y] == 1
    anti = G.mul(x, y) == G.mul(c, G.mul(y, x))
    squares = G.mul(x, x) == c and G.mul(y, y) == c
    # an order-two odd element would be a second involution besides c; Q8 has none
    involutions = [g for g in G.elements if g != G.unit and G.mul(g, g) == G.unit]
    out.append(f"generators {x}, {y}: odd={odd} xy=c·yx:{anti} x²=y²=c:{squares}")
    out.append(f"involutions {involutions}: only c squares to one")
    ok = ok and odd and anti and squares and involutions == [c]
    return bool(ok), out


# 2 -------------------------------------------------------------------------------

def check_spacetime_1d() -> tuple[bool, list[str]]:
    rows = [(pin1_plus(), pin1_minus()), (pin1_minus(), pin1_plus()), (z2c(), z2c())]
    ok, out = True, []
    for G, want in rows:
        H = spacetime_group_1d(G)
        f = find_isomorphism(H, want)
        good = f is not None and iso_witness_check(H, want, f)
        ok &= good
        out.append(f"{G.name} -> {want.name}: {'witness' if good else 'no witness'}")
    return ok, out


# 3 -------------------------------------------------------------------------------

def check_parity_extension() -> tuple[bool, list[str]]:
    ok, out = True, []
    for n in range(4):
        for p in range(n + 1):
            q = n - p
            case, B, f, sign = parity_extension_witness(p, q)
            E = parity_extension(clifford(p, q))
            want_sign = 1 if (p - q) % 4 in (0, 3) else -1
            good = (case == parity_extension_case(p, q) and sign == want_sign
                    and alg_fingerprint(B) == alg_fingerprint(E) and alg_iso_check(B, E, f.matrix))
            ok &= good
            out.append(f"Cl{p},{q}[(-1)^F] = {case}, a² = {sign:+d}: {'ok' if good else 'MISMATCH'}")
    return ok, out


# 4 -------------------------------------------------------------------------------

def check_extension_count() -> tuple[bool, list[str]]:
    o2 = enumerate_extension_maps(o2_model())
    pt = enumerate_extension_maps(point())
    out = [f"O2 model: {len(o2)} classes"] + [f"  {c.line()}" for c in o2] + [f"point: {len(pt)} class"]
    return len(o2) == 4 and len(pt) == 1, out


# 5 -------------------------------------------------------------------------------

def _pi_c_context() -> MoritaContext:
    C = ground_field("C")
    Pi = Bimodule(C, C, [1], [[[1]]], [[[1]]], names=["π"], name="ΠC")
    return MoritaContext(Pi, Pi, map_from_pure(tensor_over(Pi, Pi), regular(C), lambda i, j: [ONE]))


def check_serre_oracle() -> tuple[bool, list[str]]:
    ok, out = True, []
    cases = []
    for n in (1, 2):
        A = complex_clifford(n)
        cases.append((f"regular {A.name}", is_invertible(regular(A))))
        cases.append((f"{A.name}_(-1)^F", is_invertible(parity_bimodule(A))))
    cases.append(("ΠC", _pi_c_context()))
    for xp in (0, 1):
        for s2 in (1, -1):
            B = fixtures.pin_bundle(xp, s2)
            for g in B.G.elements:
                cases.append((f"{B.name} A_{g}", B.morita(g)))
    for name, ctx in cases:
        if ctx is None:
            ok = False
            out.append(f"{name}: not invertible")
            continue
        S, O = serre_naturality(ctx), serre_naturality_oracle(ctx)
        good = O is not None and S.matrix == O.matrix and check_serre_naturality(ctx).ok
        ok &= good
        out.append(f"{name}: closed formula {'=' if good else '!='} oracle")
    # A_(-1)^F: x ⊗ f ⊗ x -> (-1)^{|f|} f
    for n in (1, 2):
        A = complex_clifford(n)
        P = parity_bimodule(A)
        ctx = is_invertible(P)
        S = serre_naturality(ctx)
        SA = serre(A)
        x = P.basis(0)
        good = True
        for k in range(A.dim):
            lhs = S(S.source.pure(SA.basis(k), x))
            rhs = S.target.pure(x, [v * (-1 if A.parity[k] else 1) for v in SA.basis(k)])
            good &= lhs == rhs
        ok &= good
        out.append(f"{A.name}: (-1)^F ⊗ f ⊗ (-1)^F -> (-1)^|f| f: {good}")
    S = serre_naturality(_pi_c_context())
    good = S.matrix == ExactMatrix([[-1]])
    ok &= good
    out.append(f"ΠC: serre naturality = {S.matrix.entries[0][0]}·ε: {good}")
    return ok, out


# 6 -------------------------------------------------------------------------------

def compat_fixtures():
    out = []
    for gname in ("pin1+", "q8", "pin1-"):
        B = twisted_bundle(fixtures.group(gname), name=f"trivial {gname}")
        out += [(B, [1]), (B, [I])]
    for xp in (0, 1):
        C = fixtures.clifford_theory(xp).bundle
        out += [(C, [1, 0]), (C, [I, 0])]
    P = fixtures.pin_bundle(1, -1)
    out += [(P, [1]), (P, [I])]
    return out


def check_compat_equivalence() -> tuple[bool, list[str]]:
    ok, out, verdicts = True, [], set()
    for B, lam in compat_fixtures():
        a, b = check_frobenius_compat(B, lam).ok, serre_frobenius_check(B, lam).ok
        verdicts.add(a)
        ok &= a == b
        out.append(f"{B.name} lam={[str(GaussianScalar.coerce(x)) for x in lam]}: compat={a} serre={b}")
    if verdicts != {True, False}:
        ok = False
        out.append("fixture set lacks a passing or a failing case")
    return ok, out


# 7 -------------------------------------------------------------------------------

def alpha_fixtures():
    fx = []
    for xp in (0, 1):
        T = fixtures.clifford_theory(xp)
        fx.append((T.bundle, T.dagger))
    return fx


def check_alpha_oracle() -> tuple[bool, list[str]]:
    tables = alpha_oracle(alpha_fixtures())
    show = lambda t: " ".join(f"{''.join(map(str, c))}:{t[c]}" for c in ALPHA_CELLS)
    out = [f"{len(tables)} tables (cells θ,p,q)"] + [f"  {show(t)}" for t in tables]
    classes = alpha_twist_classes(tables)
    out.append(f"{len(classes)} classes modulo replacing † by (-1)^θ †")
    unit_even = all(t[c] in (ONE, -ONE) and t[c] == t[(c[0], 0, 0)] for t in tables for c in ALPHA_CELLS if c[2] == 0)
    out.append(f"α(·,0) real and constant per θ on every table: {unit_even}")
    return len(tables) == 2, out


# 8 -------------------------------------------------------------------------------

OBSTRUCTION = "<1,1> even forces <1,1> = 0; pairing degenerate"


def check_stellar_morita() -> tuple[bool, list[str]]:
    ok, out = True, []
    a, b, c = stellar_on_field(1), stellar_on_field(I), stellar_on_field(1, odd=True)
    r = morita_search_stellar(a, b)
    good = r.verdict == "WITNESS" and r.witness is not None and check_stellar_bimodule(r.witness).ok
    ok &= good
    out.append(f"(C, σ=1) vs (C, σ=i): {r.verdict}, witness verified: {good}")
    r = morita_search_stellar(a, c)
    ok &= r.verdict == "NONE"
    out.append(f"(C, M=C) vs (C, M=ΠC): {r.verdict}")
    sp, sm = fixtures.star_clifford(1), fixtures.star_clifford(-1)
    r = morita_search_stellar(stellar_from_star(sp), stellar_from_star(sm))
    notes = [n for n in r.notes if OBSTRUCTION in n and "= -<" in n]
    good = r.verdict == "NONE" and bool(notes)
    ok &= good
    out.append(f"Cl1 *+ vs *-: {r.verdict}")
    out += [f"  {n}" for n in r.notes]
    r = morita_search_stellar(stellar_from_star(sp), stellar_from_star(sp))
    good = r.verdict == "WITNESS" and not r.notes
    ok &= good
    out.append(f"Cl1 *+ vs *+ (control): {r.verdict}")
    return ok, out


# 9 -------------------------------------------------------------------------------

LAMBDA_CLAUSES = {"frobenius", "frobenius-compat", "frobenius-star"}
PAIRING_CLAUSES = {"hilbert-pairing", "unitary-multiplication"}


def _mutations():
    """(label, fixture builder, dict mutator, clauses that may identify it)."""
    def mult(a, b, scale):
        def f(d):
            nm = d["ambient"]["names"]
            for t in d["ambient"]["mult"]:
                if (t[0], t[1]) == (nm.index(a), nm.index(b)):
                    t[3] = _scaled(t[3], scale)
                    return
            raise KeyError((a, b))
        return f

    def pairing(g, scale):
        def f(d):
            t = d["pairings"][g]
            t[0][0][0] = _scaled(t[0][0][0], scale)
        return f

    def lam(vals):
        def f(d):
            d["lambda"] = vals
        return f

    def dagger(r, c, val):
        def f(d):
            d["dagger"][r][c] = val
        return f

    def unit(d, name):
        nm = d["ambient"]["names"]
        return [int(x == name) for x in nm]

    def parity(name):
        def f(d):
            d["parity_element"] = unit(d, name) if name else None
        return f

    def component(g, k, name):
        def f(d):
            d["components"][g][k] = unit(d, name)
        return f

    def loop(name):
        def f(d):
            next(iter(d["loops"].values()))["element"] = unit(d, name)
        return f

    triv = lambda: fixtures.trivial_theory("pin1+")
    q8 = lambda: fixtures.trivial_theory("q8")
    pin = lambda: fixtures.pin_minus_tft(1, -1)
    cl = lambda: fixtures.clifford_theory(1)
    sc = fixtures.spinc_theory
    amb = {"ambient-algebra"}
    return [
        ("structure constant x_T·x_T (trivial Pin1+)", triv, mult("xT", "xT", 2), amb),
        ("structure constant x_i·x_j (Q8)", q8, mult("xi", "xj", -1), amb),
        ("structure constant x_T·x_c (Pin bundle)", pin, mult("xT", "xc", 3), amb),
        ("structure constant e·e (Clifford)", cl, mult("ex1", "ex1", -1), amb),
        ("pairing on A_T times i (trivial Pin1+)", triv, pairing("T", I), {"hilbert-pairing"}),
        ("pairing on A_1 negated (Q8)", q8, pairing("1", -1), PAIRING_CLAUSES),
        ("pairing on A_cT tripled (Pin bundle)", pin, pairing("cT", 3), PAIRING_CLAUSES),
        ("pairing on A_c negated (Clifford)", cl, pairing("c", -1), PAIRING_CLAUSES),
        ("lambda = i (trivial Pin1+)", triv, lam(["i"]), LAMBDA_CLAUSES),
        ("lambda = 0 (Q8)", q8, lam([0]), LAMBDA_CLAUSES),
        ("lambda = 1+i (Pin bundle)", pin, lam(["1+i"]), LAMBDA_CLAUSES),
        ("lambda odd part (Clifford)", cl, lam([1, 1]), LAMBDA_CLAUSES),
        ("lambda = 0 (spin-c)", sc, lam([0, 0]), LAMBDA_CLAUSES),
        ("dagger entry (trivial Pin1+)", triv, dagger(4, 4, -1), {"star"}),
        ("dagger entry (Clifford)", cl, dagger(0, 0, 2), {"star"}),
        ("parity element (trivial Pin1+)", triv, parity("x1"), {"parity-element"}),
        ("parity element (Q8)", q8, parity(None), {"parity-element"}),
        ("component vector (trivial Pin1+)", triv, component("T", 0, "xc"), {"grading"}),
        ("component vector (Q8)", q8, component("1", 1, "ixj"), {"grading"}),
        ("loop element (spin-c)", sc, loop("x1"), {"loops"}),
    ]


def _scaled(x, s):
    return str(GaussianScalar.coerce(io.parse_scalar(x) if isinstance(x, str) else x) * s)


def run_mutation(build, mutate):
    d = io.to_dict(build())
    d = copy.deepcopy(d)
    mutate(d)
    _, T = io.from_dict(json.loads(json.dumps(d)))
    return check_tft2d(T)


def check_tft2d_suite() -> tuple[bool, list[str]]:
    ok, out = True, []
    for gname in ("pin1+", "q8"):
        r = check_tft2d(fixtures.trivial_theory(gname))
        ok &= r.ok
        out.append(f"trivial theory {gname}: {r.verdict()}")
    for xp in (0, 1):
        for s2 in (1, -1):
            for s1 in (1, -1):
                T = fixtures.pin_minus_tft(xp, s2, s1)
                r = check_tft2d(T)
                pos = positivity(T)
                good = r.ok and pos == (s1 == s2)
                ok &= good
                out.append(f"|x_T|={xp} x_T²={s2:+d} x_T†={s1:+d}x_T: {r.verdict()} positive={pos}")
    muts = _mutations()
    caught = 0
    for label, build, mutate, want in muts:
        r = run_mutation(build, mutate)
        hit = not r.ok and bool(set(r.failed_clauses) & want)
        caught += hit
        out.append(f"mutation {label}: {'caught' if hit else 'MISSED'} by {r.failed_clauses}")
    ok &= caught == len(muts) == 20
    return ok, out


# 10 ------------------------------------------------------------------------------

REP_CASES = [("pin1-", 0, 2), ("pin1-", 1, 2), ("q8", 0, 2), ("q8", 2, 0), ("d8", 1, 1), ("d8", 2, 0),
             ("pin1+", 1, 1), ("pin1+", 2, 0)]


def check_1d() -> tuple[bool, list[str]]:
    ok, out = True, []
    G = pin1_minus()
    found = search_unitary_reps(G, HermitianSpace.standard(0, 2))
    ok &= bool(found)
    out.append(f"Pin1- on C^0|2: {'representation found' if found else 'none'}")
    none = search_unitary_reps(G, HermitianSpace.standard(0, 1), limit=100)
    obs = antilinear_obstruction(G, 0, 1)
    ok &= not none and obs is not None
    out.append(f"Pin1- on C^0|1: {len(none)} candidates; {obs}")
    n = 0
    for gname, e, o in REP_CASES:
        Gg = fixtures.group(gname)
        Hs = HermitianSpace.standard(e, o)
        for rho in search_unitary_reps(Gg, Hs, limit=3):
            T = TftBundle1D(Gg, e, o, hermitian=Hs, rho=rho, name=Gg.name)
            for s0 in spacetime_group_1d(Gg).odd():
                Bf = convert_1d(T, section=s0)
                back = convert_1d(Bf, hermitian=Hs)
                good = check_tft1d(Bf).ok and back.rho == T.rho
                ok &= good
                n += 1
                if not good:
                    out.append(f"{Gg.name} C^{e}|{o} section {s0}: FAILED")
    out.append(f"{n} converted bundles pass the bilinear conditions and convert back")
    return ok, out


# 11 ------------------------------------------------------------------------------

def _random_even_basis(rng: random.Random, parity) -> list[list[int]]:
    n = len(parity)
    P = [[int(r == c) for c in range(n)] for r in range(n)]
    for _ in range(3):
        pairs = [(r, c) for r in range(n) for c in range(n) if r != c and parity[r] == parity[c]]
        if not pairs:
            break
        r, c = rng.choice(pairs)
        t = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            P[k][c] += t * P[k][r]
    return P


def random_bimodules(seed: int = 2, count: int = 10):
    rng = random.Random(seed)
    C, Cl1, Cl2, M11 = ground_field("C"), complex_clifford(1), complex_clifford(2), matrix_superalgebra(1, 1)
    pool = [
        lambda: regular(C), lambda: parity_shift(regular(C)),
        lambda: regular(Cl1), lambda: parity_bimodule(Cl1), lambda: parity_shift(regular(Cl1)),
        lambda: regular(Cl2), lambda: parity_bimodule(Cl2), lambda: regular(M11),
        lambda: direct_sum_bimodule(regular(C), parity_shift(regular(C))),
        lambda: direct_sum_bimodule(regular(Cl1), parity_bimodule(Cl1)),
        lambda: direct_sum_bimodule(regular(C), regular(C)),
    ]
    out = []
    for k in range(count):
        M = pool[k]() if k < 6 else rng.choice(pool)()
        out.append(rebase(M, _random_even_basis(rng, M.parity)))
    return out


def check_adjunctions() -> tuple[bool, list[str]]:
    ok, out = True, []
    for M in random_bimodules():
        adj = right_adjoint(M)
        inv = is_invertible(M) is not None
        ranks = invertible_by_ranks(M)
        good = adj.report.ok and inv == ranks
        ok &= good
        out.append(f"{M.name} (dim {M.dim}): snakes {adj.report.verdict()}, invertible {inv}, rank oracle {ranks}")
    return ok, out


# suite -------------------------------------------------------------------------------

@dataclass
class ReproRow:
    id: str
    anchor: str
    verdict: str
    detail: list[str] = field(default_factory=list)
    elapsed: float = 0.0


CHECKS: list[tuple[str, str, Check, bool]] = [
    ("fermionic-tensor", "two copies of Pin1- tensor to the quaternion group", check_fermionic_tensor, True),
    ("spacetime-1d", "d=1 spacetime groups of Pin1+, Pin1-, Spin1", check_spacetime_1d, True),
    ("parity-extension", "Cl_{p,q} with (-1)^F adjoined, four cases", check_parity_extension, True),
    ("extension-count", "four fermionic extensions of O2", check_extension_count, True),
    ("serre-oracle", "Serre naturality by closed formula and by linear solve", check_serre_oracle, True),
    ("compat-serre", "ungraded symmetric Frobenius iff Serre compatible", check_compat_equivalence, True),
    ("alpha-oracle", "pairing coefficients alpha a b†, global sign of i", check_alpha_oracle, True),
    ("stellar-morita", "stellar Morita verdicts on C and Cl1", check_stellar_morita, True),
    ("tft2d", "trivial theories, Pin bundles and clause mutations", check_tft2d_suite, False),
    ("tft1d", "Pin1- needs even-dimensional odd space; 1d conversion", check_1d, True),
    ("adjunctions", "snake identities and invertibility by ranks", check_adjunctions, False),
]


def run(suite: str = "paper", timings: bool = False, only=None) -> list[ReproRow]:
    rows = []
    for cid, anchor, fn, quick in CHECKS:
        if (suite == "quick" and not quick) or (only and cid not in only):
            rows.append(ReproRow(cid, anchor, "SKIP"))
            continue
        t = time.perf_counter()
        try:
            ok, detail = fn()
            verdict = "PASS" if ok else "FAIL"
        except Exception as e:  # a crash is a failed check, reported not raised
            verdict, detail = "FAIL", [f"error: {type(e).__name__}: {e}"]
        rows.append(ReproRow(cid, anchor, verdict, detail, time.perf_counter() - t if timings else 0.0))
    return rows


def render(rows: list[ReproRow], timings: bool = False, verbose: bool = True) -> str:
    lines = []
    for k, r in enumerate(rows, 1):
        t = f" ({r.elapsed:.2f}s)" if timings else ""
        lines.append(f"{k:2d}. [{r.verdict}] {r.id}: {r.anchor}{t}")
        if verbose:
            lines.extend(f"      {d}" for d in r.detail)
    n = sum(r.verdict == "PASS" for r in rows)
    lines.append(f"{n}/{len(rows)} PASS, {sum(r.verdict == 'FAIL' for r in rows)} FAIL, "
                 f"{sum(r.verdict == 'SKIP' for r in rows)} SKIP")
    return "\n".join(lines)


def to_json(rows: list[ReproRow], timings: bool = False) -> str:
    data = [{"id": r.id, "anchor": r.anchor, "verdict": r.verdict, "detail": r.detail,
             **({"elapsed": round(r.elapsed, 3)} if timings else {})} for r in rows]
    return json.dumps(data, indent=2, ensure_ascii=False)
