"""Formula-versus-oracle verification suites.

Each check is described by a picklable ``(suite, name, function, kwargs)``
tuple and run independently, so suites can be fanned out over worker
processes; results are collected in submission order and are therefore
identical for any worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import prod

import numpy as np
from sympy import factorint

from .ambient import field_ambient, mat2_ambient, quat_ambient
from .count import (binomial_parity_sums, identity_poly, phi2_mat_formula, phi2_odd_quaternion,
                    phi2_scan_oracle, phi_k_even_quaternion,
                    phi_k_field_formula, phi_k_reduce, universal_lower_bound)
from .gf import FieldSpec, make_field
from .mat2 import (IDEMPOTENT_RANK_ONE, IDENTITY, NILPOTENT_NONZERO, ZERO, Mat2, classify, identity,
                   mat, psi_basis, psi_inv)
from .quat import Quaternion, q_from, q_split
from .ring import RingSpec, make_galois_ring, make_zn

SUITES = ("fields", "even", "odd", "matrix", "bounds", "iso", "rules")
DEFAULT_MAX_Q = {"fields": 27, "matrix": 9, "bounds": 9}
DEFAULT_MAX_ORDER = 65536

EVEN_CASES = [(1, 1, (2, 3, 4)), (2, 1, (2, 3)), (1, 2, (2, 3)), (2, 2, (2, 3))]
ODD_CASES = [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)]
EXACT_REPS = {
    ZERO: [[0, 0], [0, 0]],
    IDENTITY: [[1, 0], [0, 1]],
    IDEMPOTENT_RANK_ONE: [[1, 0], [0, 0]],
    NILPOTENT_NONZERO: [[0, 1], [0, 0]],
}


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    formula: str
    oracle: str
    detail: str = ""
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} [{self.suite}] {self.name}: formula={self.formula} oracle={self.oracle}{extra}"


# -- helpers -------------------------------------------------------------------

def prime_powers(lo: int, hi: int, odd_only: bool = False) -> list[tuple[int, int]]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        f = factorint(q)
        if len(f) == 1:
            (p, r), = f.items()
            if not (odd_only and p == 2):
                out.append((p, r))
    return out


def local_ring(p: int, n: int, r: int) -> RingSpec:
    return RingSpec((make_galois_ring(p, n, r),))


def random_radical(R: RingSpec, rng: random.Random):
    L = R.local
    coeffs = [L.p * rng.randrange(L.p ** (L.n - 1)) for _ in range(L.r)]
    return R.from_components([coeffs])


def lift_quaternion(R: RingSpec, qf: Quaternion, rng: random.Random | None = None) -> Quaternion:
    """Lift a quaternion over the residue field, optionally adding a random radical part."""
    coords = []
    for x in qf.coords:
        e = R.from_components([x.coeffs])
        if rng is not None:
            e = e + random_radical(R, rng)
        coords.append(e)
    return Quaternion(*coords)


def random_invertible(F: FieldSpec, rng: random.Random) -> Mat2:
    while True:
        P = mat(F, [[rng.randrange(F.q) for _ in range(2)] for _ in range(2)])
        if P.is_invertible():
            return P


def conjugate(F: FieldSpec, C: Mat2, rng: random.Random) -> Mat2:
    P = random_invertible(F, rng)
    return P * C * P.inverse()


def decode_matrix(F: FieldSpec, coords) -> Mat2:
    r = F.r
    return Mat2(*(F.elem([int(v) for v in coords[t * r:(t + 1) * r]]) for t in range(4)))


def _rng(*key) -> random.Random:
    return random.Random("|".join(map(str, key)))


# -- check functions -------------------------------------------------------------

def check_binomial(max_k: int = 30):
    bad = [k for k in range(2, max_k + 1) if binomial_parity_sums(k) != (2 ** (k - 1), 2 ** (k - 1))]
    return not bad, f"2^(k-1) for k<={max_k}", "ok" if not bad else f"mismatch at {bad}", ""


def check_field(p: int, r: int, k: int):
    F = make_field(p, r)
    amb = field_ambient(F)
    formula, oracle = [], []
    for c in F.elements():
        formula.append(phi_k_field_formula(F, c, k).value)
        oracle.append(amb.count_k(amb.encode(c), k))
    return formula == oracle, str(formula), str(oracle), ""


def check_even(n: int, r: int, k: int):
    R = local_ring(2, n, r)
    L = R.local
    F = L.residue_field
    amb = quat_ambient(R)
    rng = _rng("even", n, r, k)
    formula, oracle = [], []
    for s in F.elements():
        lifted = R.from_components([s.coeffs])
        reps = [q_from(R, lifted)]
        x2, x3, x4 = (R.from_index(rng.randrange(R.order)) for _ in range(3))
        x1 = lifted - x2 - x3 - x4 + random_radical(R, rng)
        reps.append(Quaternion(x1, x2, x3, x4))
        for c in reps:
            formula.append(phi_k_even_quaternion(R, c, k).value)
            oracle.append(amb.count_k(amb.encode(c), k))
    return formula == oracle, str(formula), str(oracle), ""


def check_odd(p: int, n: int, r: int, tag: str, conjugated: bool):
    R = local_ring(p, n, r)
    F = R.local.residue_field
    rng = _rng("odd", p, n, r, tag, conjugated)
    C = mat(F, EXACT_REPS[tag])
    if conjugated:
        C = conjugate(F, C, rng)
    c = lift_quaternion(R, psi_inv(F, C), rng if n > 1 else None)
    res = phi2_odd_quaternion(R, c, fallback=False)
    orc = phi2_scan_oracle(R, c).value
    got_tag = classify(F, C).tag
    ok = res.exact and res.value == orc and got_tag == tag
    return ok, str(res), str(orc), f"c={c}; class={got_tag}"


def check_product_exact(m: int, k: int):
    R = make_zn(m)
    formula, oracle = [], []
    for v in (0, 1):
        c = q_from(R, v)
        formula.append(phi_k_reduce(R, c, k, method="formula").value)
        oracle.append(phi_k_reduce(R, c, k, method="oracle").value)
    return formula == oracle, str(formula), str(oracle), "c in {0, 1}"


def check_matrix(p: int, r: int, tag: str, conjugated: bool):
    F = make_field(p, r)
    rng = _rng("matrix", p, r, tag, conjugated)
    C = mat(F, EXACT_REPS[tag])
    if conjugated:
        C = conjugate(F, C, rng)
    res = phi2_mat_formula(F.q, classify(F, C))
    orc = phi2_scan_oracle(mat2_ambient(F), C).value
    return res.exact and res.value == orc, str(res), str(orc), f"C={C}"


def check_similarity(p: int, r: int, samples: int = 20):
    """oracle(P C P^-1) = oracle(C) for random C and random invertible P."""
    F = make_field(p, r)
    amb = mat2_ambient(F)
    rng = _rng("similarity", p, r)
    before, after = [], []
    for _ in range(samples):
        C = mat(F, [[rng.randrange(F.q) for _ in range(2)] for _ in range(2)])
        before.append(amb.scan_count(amb.encode(C)))
        after.append(amb.scan_count(amb.encode(conjugate(F, C, rng))))
    return before == after, str(before), str(after), "C versus P C P^-1"


def _phi2_table(F: FieldSpec) -> np.ndarray:
    return mat2_ambient(F).convolution_power(2)


def check_intervals(p: int, r: int):
    """Every C in M2(F): oracle value lies in the reported interval and above q^3(q-8)."""
    F = make_field(p, r)
    amb = mat2_ambient(F)
    table = _phi2_table(F)
    lower = universal_lower_bound(F.q)
    bad = []
    for idx, X in enumerate(amb.coords()):
        C = decode_matrix(F, X)
        v = int(table[idx])
        if not phi2_mat_formula(F.q, classify(F, C)).contains(v) or v < lower:
            bad.append(str(C))
    return not bad, f"intervals, lower {lower}", f"{amb.size} targets", f"violations: {bad[:5]}" if bad else ""


def check_scaling(p: int, r: int):
    """(q-8)/q phi(C) <= phi(lam C) <= q/(q-8) phi(C) for all C and lam != 0."""
    F = make_field(p, r)
    q = F.q
    amb = mat2_ambient(F)
    table = _phi2_table(F)
    L = make_galois_ring(p, 1, r)
    X = amb.coords()
    blocks = X.reshape(len(X), 4, r)
    bad = 0
    for lam in F.elements():
        if not lam:
            continue
        scaled = L.mul_arrays(blocks, np.array(lam.coeffs, dtype=np.int64)).reshape(len(X), 4 * r)
        other = table[amb.index_of(scaled)]
        bad += int(np.count_nonzero((q - 8) * table > q * other))
        bad += int(np.count_nonzero((q - 8) * other > q * table))
    return bad == 0, "scaled bounds", f"{amb.size * (q - 1)} pairs", f"{bad} violations" if bad else ""


def check_sampled_bounds(p: int, r: int, samples: int = 50):
    """Scan oracle for sampled invertible C and every lambda-idempotent class."""
    F = make_field(p, r)
    amb = mat2_ambient(F)
    rng = _rng("bounds", p, r)
    targets = []
    while len(targets) < samples:
        C = random_invertible(F, rng)
        if C != identity(F):
            targets.append(C)
    for lam in F.elements():
        if lam and lam != F.one():
            D = Mat2(lam, F.zero(), F.zero(), F.zero())
            targets.extend([D, conjugate(F, D, rng)])
    bad = []
    for C in targets:
        res = phi2_mat_formula(F.q, classify(F, C))
        v = amb.scan_count(amb.encode(C))
        if not res.contains(v):
            bad.append(f"{C}: {v} not in {res}")
    return not bad, f"{len(targets)} intervals", "contained" if not bad else "violated", "; ".join(bad[:5])


def check_identity_max(p: int, r: int):
    """phi(C) <= phi(I) for every invertible C, with phi(I) the identity polynomial."""
    F = make_field(p, r)
    amb = mat2_ambient(F)
    table = _phi2_table(F)
    top = int(table[amb.index_of(amb.one[None, :])[0]])
    inv = amb.unit_mask
    worst = int(table[inv].max())
    worst_all = int(table.max())
    ok = top == identity_poly(F.q) and worst <= top and worst_all <= top
    return ok, str(identity_poly(F.q)), f"phi(I)={top}, max over GL2={worst}, max over M2={worst_all}", \
        f"{int(inv.sum())} invertible C"


# vectorised quaternion / matrix helpers for the isomorphism checks

def _vec_mul(L, a, b):
    return L.mul_arrays(a, b)


def _vec_qmul(L, A, B):
    m = lambda s, t: _vec_mul(L, A[..., s, :], B[..., t, :])
    out = np.stack([
        m(0, 0) - m(1, 1) - m(2, 2) - m(3, 3),
        m(0, 1) + m(1, 0) + m(2, 3) - m(3, 2),
        m(0, 2) - m(1, 3) + m(2, 0) + m(3, 1),
        m(0, 3) + m(1, 2) - m(2, 1) + m(3, 0),
    ], axis=-2)
    return out % L.pn


def _vec_mmul(L, A, B):
    m = lambda s, t: _vec_mul(L, A[..., s, :], B[..., t, :])
    out = np.stack([m(0, 0) + m(1, 2), m(0, 1) + m(1, 3), m(2, 0) + m(3, 2), m(2, 1) + m(3, 3)], axis=-2)
    return out % L.pn


def _vec_psi(F, L, Q):
    images = np.array([[e.coeffs for e in M.entries] for M in psi_basis(F).images], dtype=np.int64)
    out = np.zeros(Q.shape, dtype=np.int64)
    for t in range(4):
        out = out + _vec_mul(L, Q[..., t:t + 1, :], images[t])
    return out % L.pn


def check_psi(p: int, r: int):
    F = make_field(p, r)
    L = make_galois_ring(p, 1, r)
    elems = list(F.elements())
    N = F.q**4
    Q = np.array([[e.coeffs for e in (a, b, c, d)]
                  for a in elems for b in elems for c in elems for d in elems], dtype=np.int64)
    P = _vec_psi(F, L, Q)
    failures = []
    # homomorphism on all pairs, in row blocks
    step = max(1, 200000 // N)
    for s in range(0, N, step):
        A = Q[s:s + step, None]
        PA = P[s:s + step, None]
        if not np.array_equal(_vec_psi(F, L, (A + Q[None]) % p), (PA + P[None]) % p):
            failures.append("additive")
            break
        if not np.array_equal(_vec_psi(F, L, _vec_qmul(L, A, Q[None])), _vec_mmul(L, PA, P[None])):
            failures.append("multiplicative")
            break
    flat = P.reshape(N, -1)
    if len(np.unique(flat @ (p ** np.arange(flat.shape[1], dtype=np.int64)))) != N:
        failures.append("injective")
    # psi_inv(psi(a)) = a over all a, through the object-level API
    for row, img in zip(Q, P):
        qa = Quaternion(*(F.elem(list(map(int, v))) for v in row))
        if psi_inv(F, decode_matrix(F, img.reshape(-1))) != qa:
            failures.append("psi_inv")
            break
    # det(psi(a)) = N(a); a exceptional iff psi(a) and I - psi(a) invertible
    det = (_vec_mul(L, P[:, 0], P[:, 3]) - _vec_mul(L, P[:, 1], P[:, 2])) % p
    norm = sum(_vec_mul(L, Q[:, t], Q[:, t]) for t in range(4)) % p
    if not np.array_equal(det, norm):
        failures.append("det=norm")
    I = np.array([F.one().coeffs, F.zero().coeffs, F.zero().coeffs, F.one().coeffs], dtype=np.int64)
    IP = (I[None] - P) % p
    det_i = (_vec_mul(L, IP[:, 0], IP[:, 3]) - _vec_mul(L, IP[:, 1], IP[:, 2])) % p
    mat_exc = det.any(axis=1) & det_i.any(axis=1)
    hq = quat_ambient(RingSpec((L,)))
    quat_exc = hq.exceptional_mask[hq.index_of(Q.reshape(N, -1))]
    if not np.array_equal(mat_exc, quat_exc):
        failures.append("exceptional units")
    return not failures, "hom+bijective+det=norm+exceptional", f"{N} elements, {N * N} pairs", \
        f"failed: {failures}" if failures else ""


def check_product_rule(samples: int = 20):
    R = make_zn(15)
    rng = _rng("product", 15)
    bad = []
    for _ in range(samples):
        c = q_from(R, *(rng.randrange(15) for _ in range(4)))
        whole = phi2_scan_oracle(R, c).value
        parts = [phi2_scan_oracle(R.factor(i), part).value for i, part in enumerate(q_split(R, c))]
        if whole != prod(parts):
            bad.append(f"{c}: {whole} != {parts}")
    return not bad, f"{samples} products", "equal" if not bad else "differ", "; ".join(bad[:3])


def check_radical_rule():
    R = make_zn(9)
    F = R.local.residue_field
    mamb = mat2_ambient(F)
    rng = _rng("radical", 9)
    bad = 0
    for X in mamb.coords():
        C = decode_matrix(F, X)
        c = lift_quaternion(R, psi_inv(F, C), rng)
        if phi2_scan_oracle(R, c).value != 81 * mamb.scan_count(X):
            bad += 1
    return bad == 0, "81 * phi(M2(GF(3)), C)", f"{mamb.size} residue classes", f"{bad} mismatches" if bad else ""


# -- suite assembly ----------------------------------------------------------------

def build_checks(suite: str, max_q: int | None = None, max_order: int | None = None) -> list[tuple]:
    if suite == "all":
        return [c for s in SUITES for c in build_checks(s, max_q, max_order)]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    mq = DEFAULT_MAX_Q.get(suite) if max_q is None else max_q
    mo = DEFAULT_MAX_ORDER if max_order is None else max_order
    out = []
    if suite == "fields":
        out.append((suite, "binomial parity sums k<=30", "check_binomial", {}))
        for p, r in prime_powers(2, mq):
            for k in (2, 3, 4):
                out.append((suite, f"GF({p}^{r}) k={k} all c", "check_field", dict(p=p, r=r, k=k)))
    elif suite == "even":
        for n, r, ks in EVEN_CASES:
            if 2 ** (4 * n * r) > mo:
                continue
            for k in ks:
                out.append((suite, f"GR(2^{n},{r}) k={k}", "check_even", dict(n=n, r=r, k=k)))
    elif suite == "odd":
        for p, n, r in ODD_CASES:
            if p ** (4 * n * r) > mo:
                continue
            for tag in EXACT_REPS:
                for conj in (False, True):
                    name = f"GR({p}^{n},{r}) {tag}{' conjugated' if conj else ''}"
                    out.append((suite, name, "check_odd", dict(p=p, n=n, r=r, tag=tag, conjugated=conj)))
        if 15**4 <= mo:
            out.append((suite, "Z15 product k=2", "check_product_exact", dict(m=15, k=2)))
    elif suite == "matrix":
        for p, r in prime_powers(3, mq, odd_only=True):
            for tag in EXACT_REPS:
                for conj in (False, True):
                    name = f"M2(GF({p}^{r})) {tag}{' conjugated' if conj else ''}"
                    out.append((suite, name, "check_matrix", dict(p=p, r=r, tag=tag, conjugated=conj)))
            if p**r <= 5:
                out.append((suite, f"M2(GF({p}^{r})) similarity invariance", "check_similarity", dict(p=p, r=r)))
    elif suite == "bounds":
        for p, r in prime_powers(3, min(mq, 5), odd_only=True):
            out.append((suite, f"GF({p}^{r}) phi(C) <= phi(I)", "check_identity_max", dict(p=p, r=r)))
        for p, r in prime_powers(3, mq, odd_only=True):
            out.append((suite, f"GF({p}^{r}) intervals, all C", "check_intervals", dict(p=p, r=r)))
        for p, r in prime_powers(9, mq, odd_only=True):
            out.append((suite, f"GF({p}^{r}) scalar multiples", "check_scaling", dict(p=p, r=r)))
            out.append((suite, f"GF({p}^{r}) sampled invertible + lambda-idempotent",
                        "check_sampled_bounds", dict(p=p, r=r)))
    elif suite == "iso":
        for p in (3, 5):
            out.append((suite, f"psi over GF({p})", "check_psi", dict(p=p, r=1)))
    elif suite == "rules":
        if 15**4 <= mo:
            out.append((suite, "product rule Z15 = Z3 x Z5", "check_product_rule", {}))
        if 9**4 <= mo:
            out.append((suite, "radical rule Z9", "check_radical_rule", {}))
    return out


def run_check(spec: tuple) -> CheckResult:
    suite, name, fn, kwargs = spec
    t0 = time.perf_counter()
    try:
        ok, formula, oracle, detail = globals()[fn](**kwargs)
    except Exception as exc:  # a crashing check is a failing check
        ok, formula, oracle, detail = False, "-", "-", f"{type(exc).__name__}: {exc}"
    return CheckResult(suite, name, bool(ok), formula, oracle, detail,
                       round((time.perf_counter() - t0) * 1000, 1))


def run_checks(specs: list[tuple], jobs: int = 1) -> list[CheckResult]:
    if jobs <= 1 or len(specs) <= 1:
        return [run_check(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_check, specs))


def run_suite(suite: str, max_q: int | None = None, max_order: int | None = None,
              jobs: int = 1) -> list[CheckResult]:
    return run_checks(build_checks(suite, max_q, max_order), jobs)
