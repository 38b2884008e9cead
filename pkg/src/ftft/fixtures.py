"""Named fixture generators over the library constructors, plus a validator per kind."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import fgroup, twogroup
from .bimod import check_bimodule, parity_bimodule, regular
from .errors import PreconditionError, UnsupportedInput
from .exactlin import ExactMatrix, I, parse_scalar
from .fgroup import FermionicGroup, check_fermionic_group
from .frob import (TftBundle1D, check_tft1d, check_tft2d, construct_from_dagger, convert_1d,
                   search_unitary_reps, twisted_bundle)
from .report import Report
from .salg import check_superalgebra, clifford, complex_clifford, matrix_superalgebra
from .stellar import (HermitianSpace, HilbertPairing, StarAlgebra, StellarAlgebra, check_pairing, check_star,
                      check_stellar, parity_pairing, regular_pairing, stellar_on_field)
from .twogroup import SkeletalTwoGroup, TwoGroupMapData, check_map_data, check_three_cocycle

GROUPS = {"pin1+": fgroup.pin1_plus, "pin1-": fgroup.pin1_minus, "spin1": fgroup.z2c, "z2c": fgroup.z2c,
          "q8": fgroup.quaternion_group, "d8": fgroup.dihedral8, "split": fgroup.split_bosonic}

TWO_GROUPS = {"o2": twogroup.o2_model, "pin2-base": twogroup.pin2_minus_base, "so2xz2": twogroup.so2_times_z2,
              "bz": twogroup.bz, "bz2f": twogroup.bz2f, "point": twogroup.point}

# Z2^c x Z2^T coordinates for the Pin bundles
_PIN_VEC = {"1": (0, 0), "c": (1, 0), "T": (0, 1), "cT": (1, 1)}


def group(name: str = "q8") -> FermionicGroup:
    if name not in GROUPS:
        raise UnsupportedInput(f"unknown group {name!r}; known: {', '.join(GROUPS)}")
    return GROUPS[name]()


def two_group(name: str = "o2") -> SkeletalTwoGroup:
    if name not in TWO_GROUPS:
        raise UnsupportedInput(f"unknown 2-group {name!r}; known: {', '.join(TWO_GROUPS)}")
    return TWO_GROUPS[name]()


def extension_map(base: str = "o2", index: int = 0):
    """(source, map, *//Z2^c) for the index-th extension class of a base 2-group."""
    Gb = two_group(base)
    classes = twogroup.enumerate_extension_maps(Gb)
    if not 0 <= index < len(classes):
        raise UnsupportedInput(f"{base} has {len(classes)} extension classes")
    ec = classes[index]
    return Gb, twogroup.extension_map(Gb, ec.Gamma, ec.Xi), twogroup.z2_target()


def star_clifford(sign: int = 1) -> StarAlgebra:
    """Cl_1 over C with e* = sign i e."""
    return StarAlgebra(complex_clifford(1), ExactMatrix([[1, 0], [0, sign * I]]), f"Cl1 *{'+' if sign > 0 else '-'}")


def pin_omega(p: int, s2: int):
    """x_g x_h = omega(g,h) x_gh on Z2^c x Z2^T, with x_c x_T = (-1)^p x_T x_c and x_T^2 = s2."""
    def om(g, h):
        (_, gb), (ha, hb) = _PIN_VEC[g], _PIN_VEC[h]
        return (-1) ** (gb * ha * p) * (s2 if gb and hb else 1)
    return om


def pin_bundle(xt_parity: int = 0, xt_square: int = 1):
    G = fgroup.pin1_plus()
    p = int(xt_parity) % 2
    return twisted_bundle(G, parity={"T": p, "cT": p}, omega=pin_omega(p, int(xt_square)),
                          name=f"pin |x_T|={p} x_T^2={int(xt_square)}")


def pin_minus_tft(xt_parity: int = 0, xt_square: int = 1, xt_dagger: int | None = None):
    """x_T of the given parity with x_T^2 = xt_square and x_T† = xt_dagger x_T; lam(1) = 1."""
    s1 = int(xt_square) if xt_dagger is None else int(xt_dagger)
    B = pin_bundle(xt_parity, xt_square)
    T = construct_from_dagger(B, B.tga.dagger({"T": s1, "c": 1}), [1])
    T.name = f"{B.name} x_T†={s1} x_T"
    return T


def clifford_theory(xt_parity: int = 0, e_square: int = 1, e_dagger: int = 1):
    """A_1 = Cl_1 (e odd, e^2 = e_square) over Pin1+, with x_c anticommuting with e; lam = (1, 0)."""
    G = fgroup.pin1_plus()
    p = int(xt_parity) % 2
    B = twisted_bundle(G, parity={"T": p, "cT": p}, omega=pin_omega(p, 1), q=int(e_square),
                       chi={"c": 1, "cT": 1}, name=f"clifford |x_T|={p} e^2={int(e_square)}")
    T = construct_from_dagger(B, B.tga.dagger({"T": 1, "c": 1}, t=int(e_dagger)), [1, 0])
    T.name = B.name
    return T


def trivial_theory(group_name: str = "q8"):
    """Twisted-free fermionic group algebra R[i, x_g] with x_g† = x_g^-1 and lam(1) = 1."""
    G = group(group_name)
    B = twisted_bundle(G, name=f"trivial {G.name}")
    T = construct_from_dagger(B, B.tga.dagger({g: 1 for g in G.elements}), [1])
    T.name = B.name
    return T


def spinc_theory():
    """Z2^c-graded Cl_1 bundle with loop element a = x_c, twisted: a x = (-1)^{|x|} x a."""
    G = fgroup.z2c()
    B = twisted_bundle(G, q=1, chi={"c": 1}, name="spinc")
    B.loops = [{"name": "gamma'", "element": B.tga.x("c"), "component": "c", "twist": 1}]
    T = construct_from_dagger(B, B.tga.dagger({"c": 1}), [1, 0])
    T.name = B.name
    return T


def pin2_loops(xt_parity: int = 0):
    """Pin bundle with an untwisted loop element a = i x_c inverted by A_T: x a = a^-1 x on T."""
    B = pin_bundle(xt_parity, 1)
    B.loops = [{"name": "gamma'", "element": B.tga.x("c", a=1), "component": "c", "twist": 1,
                "action": {"T": -1, "cT": -1}}]
    T = construct_from_dagger(B, B.tga.dagger({"T": 1, "c": 1}), [1])
    T.name = f"pin2- loops |x_T|={int(xt_parity) % 2}"
    return T


def rep_1d(group_name: str = "pin1-", even: int = 0, odd: int = 2, index: int = 0) -> TftBundle1D:
    G = group(group_name)
    Hs = HermitianSpace.standard(int(even), int(odd))
    reps = search_unitary_reps(G, Hs, limit=int(index) + 1)
    if len(reps) <= int(index):
        raise PreconditionError(f"no unitary fermionic representation #{index} of {G.name} on C^{even}|{odd} "
                                "in the monomial search space")
    return TftBundle1D(G, Hs.even, Hs.odd, hermitian=Hs, rho=reps[int(index)], name=f"{G.name} rep")


def bilinear_1d(group_name: str = "pin1-", even: int = 0, odd: int = 2, index: int = 0) -> TftBundle1D:
    return convert_1d(rep_1d(group_name, even, odd, index))


def z2_form() -> TftBundle1D:
    """H = Z2 with theta the identity, V = C and the symmetric form <1,1> = 1."""
    H = FermionicGroup(["1", "t"], lambda a, b: "1" if a == b else "t", "1", "1", {"t": 1}, "Z2T")
    return TftBundle1D(H, 1, 0, R={"1": [[1]]}, forms={"t": [[1]]}, name="Z2 symmetric form")


@dataclass
class Fixture:
    build: Callable
    params: dict = field(default_factory=dict)  # option -> (python name, type, default)
    doc: str = ""


def _p(name, typ, default):
    return (name, typ, default)


CATALOG = {
    "group": Fixture(group, {"name": _p("name", str, "q8")}, "a fermionic group"),
    "clifford": Fixture(lambda p=1, q=1, field="R": clifford(p, q, field),
                        {"p": _p("p", int, 1), "q": _p("q", int, 1), "field": _p("field", str, "R")},
                        "the Clifford superalgebra Cl_{p,q}"),
    "matrix-superalgebra": Fixture(matrix_superalgebra, {"m": _p("m", int, 1), "n": _p("n", int, 1)},
                                   "End(C^{m|n})"),
    "two-group": Fixture(two_group, {"name": _p("name", str, "o2")}, "a skeletal 2-group"),
    "extension-map": Fixture(extension_map, {"base": _p("base", str, "o2"), "index": _p("index", int, 0)},
                             "a map to *//Z2^c from the extension classification"),
    "parity-bimodule": Fixture(lambda n=1: parity_bimodule(complex_clifford(n)), {"n": _p("n", int, 1)},
                               "A_(-1)^F over complex Cl_n"),
    "regular-bimodule": Fixture(lambda n=1: regular(complex_clifford(n)), {"n": _p("n", int, 1)},
                                "A as an (A, A)-bimodule over complex Cl_n"),
    "star-clifford": Fixture(star_clifford, {"sign": _p("sign", int, 1)}, "Cl_1 with e* = ±i e"),
    "stellar-field": Fixture(lambda a="1", odd=0: stellar_on_field(parse_scalar(str(a)), bool(odd)),
                             {"a": _p("a", str, "1"), "odd": _p("odd", int, 0)},
                             "a stellar structure on C with M = C or M = Pi C"),
    "regular-pairing": Fixture(lambda sign=1: regular_pairing(star_clifford(sign)), {"sign": _p("sign", int, 1)},
                               "<a, b> = a b* on Cl_1"),
    "parity-pairing": Fixture(lambda sign=1: parity_pairing(star_clifford(sign)), {"sign": _p("sign", int, 1)},
                              "the pairing on Cl_1 (-1)^F"),
    "trivial-theory": Fixture(trivial_theory, {"group": _p("group_name", str, "q8")},
                              "the fermionic group algebra theory"),
    "pin-minus-tft": Fixture(pin_minus_tft, {"xt-parity": _p("xt_parity", int, 0),
                                             "xt-square": _p("xt_square", int, 1),
                                             "xt-dagger": _p("xt_dagger", int, None)},
                             "Pin bundle with chosen x_T data"),
    "clifford-theory": Fixture(clifford_theory, {"xt-parity": _p("xt_parity", int, 0),
                                                 "e-square": _p("e_square", int, 1),
                                                 "e-dagger": _p("e_dagger", int, 1)},
                               "Pin bundle over a Clifford unit component"),
    "spinc": Fixture(spinc_theory, {}, "Spin2-type bundle with a twisted loop element"),
    "pin2-loops": Fixture(pin2_loops, {"xt-parity": _p("xt_parity", int, 0)},
                          "Pin bundle with a loop element inverted by A_T"),
    "rep-1d": Fixture(rep_1d, {"group": _p("group_name", str, "pin1-"), "even": _p("even", int, 0),
                               "odd": _p("odd", int, 2), "index": _p("index", int, 0)},
                      "a unitary fermionic representation"),
    "bilinear-1d": Fixture(bilinear_1d, {"group": _p("group_name", str, "pin1-"), "even": _p("even", int, 0),
                                         "odd": _p("odd", int, 2), "index": _p("index", int, 0)},
                           "the bilinear presentation of rep-1d"),
    "z2-form": Fixture(z2_form, {}, "one symmetric form over H = Z2"),
}


def build(name: str, /, **params):
    if name not in CATALOG:
        raise UnsupportedInput(f"unknown fixture {name!r}")
    fx = CATALOG[name]
    kw = {}
    for opt, (py, typ, default) in fx.params.items():
        v = params.get(py, params.get(opt, default))
        kw[py] = typ(v) if v is not None else None
    return fx.build(**kw)


def validate(obj, clause: str | None = None) -> Report:
    """Validator matching the object's kind; clause restricts the report for tft2d."""
    from .bimod import Bimodule
    from .frob import TftBundle2D
    from .salg import Superalgebra
    if isinstance(obj, FermionicGroup):
        return check_fermionic_group(obj)
    if isinstance(obj, SkeletalTwoGroup):
        return check_three_cocycle(obj)
    if isinstance(obj, tuple) and len(obj) == 3 and isinstance(obj[1], TwoGroupMapData):
        return check_map_data(*obj)
    if isinstance(obj, Superalgebra):
        return check_superalgebra(obj)
    if isinstance(obj, Bimodule):
        return check_bimodule(obj)
    if isinstance(obj, StarAlgebra):
        return check_star(obj)
    if isinstance(obj, StellarAlgebra):
        return check_stellar(obj)
    if isinstance(obj, HilbertPairing):
        return check_pairing(obj)
    if isinstance(obj, TftBundle2D):
        return check_tft2d(obj, clauses=(clause,) if clause else None)
    if isinstance(obj, TftBundle1D):
        return check_tft1d(obj)
    raise UnsupportedInput(f"no validator for {type(obj).__name__}")
