"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import time

import pytest

from ftft import repro

LINES: list[str] = []

CRITERIA = [
    (1, "fermionic tensor of two Pin1- copies is Q8", repro.check_fermionic_tensor),
    (2, "d=1 spacetime groups Pin1+ -> Pin1-, Pin1- -> Pin1+, Spin1 -> Spin1", repro.check_spacetime_1d),
    (3, "Clifford parity extensions for p+q <= 3", repro.check_parity_extension),
    (4, "extension classes: 4 on O2, 1 on the point", repro.check_extension_count),
    (5, "Serre naturality closed formula equals linear-solve oracle", repro.check_serre_oracle),
    (6, "Frobenius compatibility iff Serre compatibility", repro.check_compat_equivalence),
    (7, "alpha oracle returns exactly the two global-sign tables", repro.check_alpha_oracle),
    (8, "stellar Morita verdicts with degenerate-pairing obstruction", repro.check_stellar_morita),
    (9, "2d checker: trivial theories, 8 Pin bundles, 20 mutations", repro.check_tft2d_suite),
    (10, "1d: Pin1- on C^0|2 yes, C^0|1 no; conversions valid", repro.check_1d),
    (11, "snake identities and rank-oracle invertibility", repro.check_adjunctions),
]


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn):
    t = time.perf_counter()
    ok, detail = fn()
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({time.perf_counter() - t:.2f}s)"
    LINES.append(line)
    print(line)
    assert ok, "\n".join(detail)
