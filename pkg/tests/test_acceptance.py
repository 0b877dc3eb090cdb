"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest (lines appear in the terminal summary) or directly as a
script.  Every workload is drawn from SplitMix64 with fixed seeds.
"""

import sys
import time
from fractions import Fraction

import pytest

from bddlat import numerics as nm
from bddlat.decode import babai_nearest_plane, cvp_enumerate, decode_prepared, prepare
from bddlat.duality import dual_basis, lattice_equal, short_basis_with_certificate, change_of_basis
from bddlat.gso import Basis, det_sq, gram_matrix, gram_schmidt, log_profile
from bddlat.harness import serialize as ser
from bddlat.harness.experiment import ExperimentConfig, run_experiment, summary_to_json
from bddlat.harness.instances import RadiusPolicy, gen_instance, random_basis, random_spec
from bddlat.harness.rng import SplitMix64, derive_seed
from bddlat.qary import BOUND_TOL, suffix_bound_check, profile_floor, qary_basis
from bddlat.reduction import LllParams, is_lll_reduced, lll_reduce, svp_approx, svp_enumerate

DELTA = LllParams(Fraction(3, 4))
QS = (16, 64, 257, 1024)
RESULTS: dict = {}


def record(num, title, ok, elapsed, budget, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"{status} criterion {num:>2}: {title} ({elapsed:.2f}s, target < {budget}s){' ' + detail if detail else ''}"
    RESULTS[num] = line
    return line


def _finish(num, title, failures, start, budget, detail=""):
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < budget
    record(num, title, ok, elapsed, budget, detail if not failures else f"{detail} first failure: {failures[0]}")
    assert not failures, failures[:3]
    assert elapsed < budget


def test_criterion_01_worked_example():
    start = time.perf_counter()
    b = Basis.from_columns([(2, 1), (0, 2)])
    t = (4, Fraction(7, 2))
    failures = []
    if babai_nearest_plane(b, t).decoded_vector != (4, 4):
        failures.append("babai")
    if cvp_enumerate(b, t) != (4, 4):
        failures.append("cvp")
    if svp_enumerate(b) != (0, 2):
        failures.append("svp")
    if not lattice_equal(b, Basis.from_columns([(4, 0), (-2, 1)])):
        failures.append("two bases of one lattice")
    _finish(1, "worked example (Babai, CVP, SVP)", failures, start, 1.0)


_TRACES: list = []


def _lll_workload():
    if _TRACES:
        return _TRACES
    rng = SplitMix64(derive_seed(2, 0))
    for i in range(200):
        n = 2 + i % 11
        b = random_basis(rng, n, 2 ** 20)
        out, trace = lll_reduce(b, DELTA)
        _TRACES.append((b, out, trace))
    return _TRACES


def test_criterion_02_lll_contract():
    start = time.perf_counter()
    failures = []
    for idx, (b, out, _) in enumerate(_lll_workload()):
        if not is_lll_reduced(out, DELTA).ok:
            failures.append(f"basis {idx} not reduced")
        if not lattice_equal(out, b):
            failures.append(f"basis {idx} lattice changed")
    _finish(2, "LLL output reduced and lattice-preserving, 200 bases n=2..12", failures, start, 60)


def test_criterion_03_potential_and_prefix_products():
    start = time.perf_counter()
    failures = []
    for idx, (b, out, trace) in enumerate(_lll_workload()):
        h = trace.potential_sq_history
        if any(h[i + 1] / h[i] >= DELTA.delta for i in range(len(h) - 1)):
            failures.append(f"trace {idx} potential ratio")
        pin = pout = Fraction(1)
        for x, y in zip(gram_schmidt(b).star_norms_sq, gram_schmidt(out).star_norms_sq):
            pin, pout = pin * x, pout * y
            if pout > pin:
                failures.append(f"trace {idx} prefix product")
                break
    swaps = sum(t.swap_count for *_, t in _lll_workload())
    _finish(3, "potential drops below delta per swap; prefix products shrink", failures, start, 60,
            f"{swaps} swaps checked")


def test_criterion_04_svp_approximation():
    start = time.perf_counter()
    rng = SplitMix64(derive_seed(4, 0))
    failures = []
    for i in range(100):
        n = 2 + i % 7
        b = random_basis(rng, n, 2 ** 8)
        lam = nm.norm_sq(svp_enumerate(b))
        if nm.norm_sq(svp_approx(b, DELTA)) > 2 ** (n - 1) * lam:
            failures.append(f"basis {i}")
    _finish(4, "||b1||^2 <= 2^(n-1) lambda_1^2, 100 bases n<=8", failures, start, 120)


def test_criterion_05_duality():
    start = time.perf_counter()
    rng = SplitMix64(derive_seed(5, 0))
    failures = []
    for i in range(100):
        n = 1 + i % 8
        b = random_basis(rng, n, 50)
        d = dual_basis(b)
        eye = nm.identity(n)
        ok = (nm.mat_mul(nm.transpose(b.matrix()), d.matrix()) == eye
              and nm.mat_mul(gram_matrix(b), gram_matrix(d)) == eye
              and det_sq(b) * det_sq(d) == 1
              and dual_basis(d) == b)
        if not ok:
            failures.append(f"basis {i}")
    _finish(5, "dual identities exact, 100 bases n<=8", failures, start, 30)


def test_criterion_06_short_basis():
    start = time.perf_counter()
    rng = SplitMix64(derive_seed(6, 0))
    failures = []
    for i in range(100):
        n = 1 + i % 8
        bp = random_basis(rng, n, 20)
        while True:
            q = nm.int_matrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
            if nm.determinant(q) != 0:
                break
        s = nm.mat_mul(bp.matrix(), q)
        res = short_basis_with_certificate(bp, s)
        bound = max(nm.norm_sq(c) for c in nm.columns(s))
        gb = gram_schmidt(res.basis).star_norms_sq
        gs = gram_schmidt(Basis.from_matrix(s)).star_norms_sq
        x = change_of_basis(bp, res.basis)
        ok = (all(v <= bound for v in gb)
              and nm.is_integral_matrix(x) and nm.is_unimodular(nm.int_matrix(x))
              and all(gs[j] == res.t[j][j] ** 2 * gb[j] for j in range(n)))
        if not ok:
            failures.append(f"pair {i}")
    _finish(6, "short basis from a full-rank set, 100 pairs n<=8", failures, start, 30)


def _random_specs(tag, count, n_max, k_max=3):
    rng = SplitMix64(derive_seed(tag, 0))
    out = []
    while len(out) < count:
        n = 1 + rng.below(n_max)
        k = 1 + rng.below(min(k_max, n))
        q = QS[rng.below(len(QS))]
        out.append(random_spec(rng, n, k, q))
    return out


def test_criterion_07_suffix_products():
    start = time.perf_counter()
    failures = []
    for i, spec in enumerate(_random_specs(7, 100, 10)):
        red, _ = lll_reduce(qary_basis(spec), DELTA)
        if not suffix_bound_check(red, spec.q).ok:
            failures.append(f"spec {i}")
    _finish(7, "suffix products <= q^(2(n-i)), 100 specs n<=10", failures, start, 60)


def test_criterion_08_profile_floor():
    start = time.perf_counter()
    failures = []
    slack = []
    for i, spec in enumerate(_random_specs(8, 50, 8)):
        red, _ = lll_reduce(qary_basis(spec), DELTA)
        lam = nm.norm_sq(svp_enumerate(red))
        m = log_profile(gram_schmidt(red)).min()
        floor = profile_floor(spec, DELTA, lam)
        slack.append(m - floor)
        if m < floor - BOUND_TOL:
            failures.append(f"spec {i}: {m} < {floor}")
    _finish(8, "min log GS norm >= floor, 50 specs n<=8", failures, start, 120,
            f"min slack {min(slack):.4f}")


def test_criterion_09_end_to_end_recovery():
    start = time.perf_counter()
    failures = []
    theorem = RadiusPolicy("theorem_radius_fraction", 1)
    total = 0
    for q in QS:
        rng = SplitMix64(derive_seed(9, q))
        for s in range(20):
            n = 1 + rng.below(8)
            k = 1 + rng.below(min(3, n))
            spec = random_spec(rng, n, k, q)
            lat = prepare(spec, DELTA)
            for trial in range(10):
                inst = gen_instance(spec, theorem, derive_seed(9, q, s, trial), lattice=lat)
                total += 1
                if decode_prepared(lat, inst.target).decoded_vector != inst.planted_vector(lat.basis):
                    failures.append(f"q={q} spec {s} trial {trial}")
    half = RadiusPolicy("half_min_gs_fraction", 1)
    rng = SplitMix64(derive_seed(9, 24))
    for i in range(100):
        n = 9 + i % 16
        k = 1 + rng.below(3)
        spec = random_spec(rng, n, k, QS[rng.below(len(QS))])
        lat = prepare(spec, DELTA, svp_cap=0)
        inst = gen_instance(spec, half, derive_seed(9, 24, i), lattice=lat)
        total += 1
        if decode_prepared(lat, inst.target).decoded_vector != inst.planted_vector(lat.basis):
            failures.append(f"large instance {i}")
    _finish(9, "100% planted recovery (800 at the decoding radius, 100 at n<=24)", failures, start, 300,
            f"{total} instances")


def test_criterion_10_babai_factor():
    start = time.perf_counter()
    rng = SplitMix64(derive_seed(10, 0))
    failures = []
    for i in range(100):
        n = 1 + i % 6
        b, _ = lll_reduce(random_basis(rng, n, 30), DELTA)
        t = tuple(Fraction(rng.randint(-3000, 3000), 1 + rng.below(20)) for _ in range(n))
        r = babai_nearest_plane(b, t)
        best = nm.norm_sq(nm.vec_sub(t, cvp_enumerate(b, t)))
        if r.residual_sq > 2 ** n * best:
            failures.append(f"instance {i}")
    _finish(10, "Babai residual <= 2^n CVP residual, 100 instances n<=6", failures, start, 60)


def test_criterion_11_determinism():
    start = time.perf_counter()
    cfg = ExperimentConfig((2, 4, 6), (1, 2), (16, 257), RadiusPolicy("theorem_radius_fraction", 1),
                           trials=5, seed=2024)
    a = ser.dumps(summary_to_json(run_experiment(cfg)))
    b = ser.dumps(summary_to_json(run_experiment(cfg)))
    failures = [] if a == b else ["summaries differ"]
    _finish(11, "repeated seeded experiment gives byte-identical JSON", failures, start, 60)


if __name__ == "__main__":
    code = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                code = 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(code)
