"""Acceptance criteria, each run at its stated tolerance (exact) and time budget.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""

from __future__ import annotations

import os
import random
import sys
import time
from math import prod

import pytest

from exunits.ambient import field_ambient, mat2_ambient, quat_ambient
from exunits.cli import main as cli_main
from exunits.count import (binomial_parity_sums, phi2_mat_formula, phi2_odd_quaternion,
                           phi2_scan_oracle, phi_k_even_quaternion, phi_k_field_formula)
from exunits.gf import make_field
from exunits.mat2 import classify, mat, psi_inv
from exunits.quat import q_from, q_split
from exunits.ring import make_galois_ring, make_ring, make_zn
from exunits.verify import (check_identity_max, check_psi, check_radical_rule, conjugate,
                            lift_quaternion, prime_powers, random_invertible)

GOLDENS = {3: (18, 27, 10, 6), 5: (280, 365, 234, 210)}
REPS = ([[0, 0], [0, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 1], [0, 0]])


def criterion_1():
    """Matrix closed forms for q in {3,5,7,9} equal the oracle; q=3,5 goldens."""
    bad = []
    for p, r in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        F = make_field(p, r)
        amb = mat2_ambient(F)
        for i, rep in enumerate(REPS):
            C = mat(F, rep)
            formula = phi2_mat_formula(F.q, classify(F, C)).value
            oracle = amb.scan_count(amb.encode(C))
            golden = GOLDENS.get(F.q, (oracle,) * 4)[i]
            if not formula == oracle == golden:
                bad.append((F.q, rep, formula, oracle, golden))
    return not bad, 5.0, f"mismatches {bad}" if bad else "16 targets exact"


def criterion_2():
    """Even-order formula equals the full convolution oracle, one c per residue class."""
    cases = [((2, 1, 1), (2, 3, 4)), ((2, 2, 1), (2, 3)), ((2, 1, 2), (2, 3)), ((2, 2, 2), (2, 3))]
    bad, n = [], 0
    for (p, nn, r), ks in cases:
        R = make_ring(make_galois_ring(p, nn, r))
        amb = quat_ambient(R)
        for s in R.local.residue_field.elements():
            c = q_from(R, R.from_components([s.coeffs]))
            for k in ks:
                n += 1
                f = phi_k_even_quaternion(R, c, k).value
                o = amb.count_k(amb.encode(c), k)
                if f != o:
                    bad.append((str(R), str(s), k, f, o))
    return not bad, 30.0, f"mismatches {bad}" if bad else f"{n} cases exact"


def criterion_3():
    """Odd-order exact cases; includes Z9 -> 1458 and Z3 -> 18 at c = 0."""
    bad, n = [], 0
    for p, nn, r in [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)]:
        R = make_ring(make_galois_ring(p, nn, r))
        F = R.local.residue_field
        rng = random.Random(f"acc3|{p}|{nn}|{r}")
        for rep in REPS:
            C = mat(F, rep)
            for c in (lift_quaternion(R, psi_inv(F, C)), lift_quaternion(R, psi_inv(F, C), rng)):
                n += 1
                f = phi2_odd_quaternion(R, c, fallback=False)
                o = phi2_scan_oracle(R, c).value
                if not (f.exact and f.value == o):
                    bad.append((str(R), str(c), str(f), o))
    z9, z3 = make_zn(9), make_zn(3)
    anchors = (phi2_odd_quaternion(z9, q_from(z9)).value, phi2_odd_quaternion(z3, q_from(z3)).value)
    ok = not bad and anchors == (1458, 18)
    return ok, 60.0, f"{n} cases, anchors {anchors}" + (f", mismatches {bad}" if bad else "")


def criterion_4():
    """Bounds soundness over M2(GF(9)); phi(C) <= phi(I) exhaustively for q = 3, 5."""
    F = make_field(3, 2)
    amb = mat2_ambient(F)
    rng = random.Random("acc4")
    targets = []
    while len(targets) < 50:
        C = random_invertible(F, rng)
        if C != mat(F, REPS[1]):
            targets.append(C)
    for lam in F.elements():
        if lam and lam != F.one():
            D = mat(F, [[lam, 0], [0, 0]])
            targets += [D, conjugate(F, D, rng)]
    bad = []
    for C in targets:
        res = phi2_mat_formula(F.q, classify(F, C))
        v = amb.scan_count(amb.encode(C))
        if not res.contains(v):
            bad.append((str(C), v, str(res)))
    ident = [check_identity_max(3, 1), check_identity_max(5, 1)]
    ok = not bad and all(r[0] for r in ident)
    return ok, 120.0, f"{len(targets)} GF(9) targets contained; " + "; ".join(r[2] for r in ident)


def criterion_5():
    """Product rule over Z15 for 20 random c; radical rule over Z9 for all residue classes."""
    R = make_zn(15)
    rng = random.Random("acc5")
    bad = []
    for _ in range(20):
        c = q_from(R, *(rng.randrange(15) for _ in range(4)))
        whole = phi2_scan_oracle(R, c).value
        parts = prod(phi2_scan_oracle(R.factor(i), x).value for i, x in enumerate(q_split(R, c)))
        if whole != parts:
            bad.append((str(c), whole, parts))
    radical_ok, _, _, detail = check_radical_rule()
    return not bad and radical_ok, 60.0, f"product mismatches {bad}; radical {detail or 'ok'}"


def criterion_6():
    """psi is a bijective ring homomorphism over GF(3), GF(5) with det(psi(a)) = N(a)."""
    results = [check_psi(3, 1), check_psi(5, 1)]
    return all(r[0] for r in results), 10.0, "; ".join(r[2] + (" " + r[3] if r[3] else "") for r in results)


def criterion_7():
    """Binomial identity for k <= 30; field formula equals oracle for all c, q <= 27, k <= 4."""
    binom = all(binomial_parity_sums(k) == (2 ** (k - 1),) * 2 for k in range(2, 31))
    bad, n = [], 0
    for p, r in prime_powers(2, 27):
        F = make_field(p, r)
        amb = field_ambient(F)
        for k in (2, 3, 4):
            for c in F.elements():
                n += 1
                f = phi_k_field_formula(F, c, k).value
                o = amb.count_k(amb.encode(c), k)
                if f != o:
                    bad.append((F.q, str(c), k, f, o))
    return binom and not bad, 5.0, f"{n} field cases" + (f", mismatches {bad[:5]}" if bad else "")


def criterion_8():
    """cmd_verify --suite all exits 0 in under five minutes."""
    code = cli_main(["verify", "--suite", "all", "--format", "json", "--out", os.devnull])
    return code == 0, 300.0, f"exit code {code}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def evaluate(number: int, fn) -> tuple[bool, str]:
    t0 = time.perf_counter()
    ok, budget, detail = fn()
    elapsed = time.perf_counter() - t0
    passed = ok and elapsed < budget
    line = (f"{'PASS' if passed else 'FAIL'} criterion {number}: {fn.__doc__.strip()} "
            f"[{elapsed:.2f}s / {budget:.0f}s] {detail}")
    return passed, line


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    passed, line = evaluate(number, CRITERIA[number - 1])
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    failures = 0
    for i, fn in enumerate(CRITERIA, start=1):
        passed, line = evaluate(i, fn)
        failures += not passed
        print(line, flush=True)
    sys.exit(1 if failures else 0)
