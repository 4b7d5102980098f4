"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import time

import pytest

from siegelmaass import mutations
from siegelmaass.maassops import weight_k_eigenvalue
from siegelmaass.verify import SUITES, SuitePlan, run_suite


def _timed(plan):
    start = time.perf_counter()
    rep = run_suite(plan)
    return rep, time.perf_counter() - start


def _report(log, number, name, ok, detail):
    line = f"[{number}] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    log.append(line)
    assert ok, line


def _worst(rep, checks):
    recs = [r for r in rep.records if r.check in checks]
    return max(r.residual for r in recs), len(recs)


@pytest.fixture(scope="module")
def eigen_report():
    return _timed(SuitePlan("eigenvalue", degrees=(1, 2), seed=42))


def test_1_symplectic_suite(acceptance_log):
    rep, secs = _timed(SuitePlan("symplectic", degrees=(1, 2, 3), samples=100, seed=42))
    checks = {"block_relations", "action_composition", "cocycle_multiplicativity", "im_transform",
              "determinant_relation"}
    worst, count = _worst(rep, checks)
    samples = {n: sum(r.check == "action_composition" and r.n == n for r in rep.records) for n in (1, 2, 3)}
    ok = rep.passed and worst < 1e-10 and secs < 5 and samples == {1: 100, 2: 100, 3: 100}
    _report(acceptance_log, 1, "symplectic suite", ok,
            f"{count} records, worst {worst:.2e} < 1e-10, {secs:.2f} s < 5 s")


def test_2_operator_identity_suite(acceptance_log):
    rep, secs = _timed(SuitePlan("operators", degrees=(1, 2), samples=20, seed=42))
    first = {"shift_dZ_shift", "shift_dZbar_shift", "shift_general_C_D", "shift_general_C_D_bar",
             "det_Y", "det_Q", "cocycle_left", "cocycle_right"}
    second = {"omega_tilde_relation", "omega_trace_equality"}
    w1, c1 = _worst(rep, first)
    w2, c2 = _worst(rep, second)
    ok = rep.passed and w1 < 1e-6 and w2 < 1e-4 and secs < 30 and c1 == 40 * 8 and c2 == 40 * 2
    _report(acceptance_log, 2, "operator identities", ok,
            f"first order {w1:.2e} < 1e-6, second order {w2:.2e} < 1e-4, {secs:.1f} s < 30 s")


def test_3_transformation_suite(acceptance_log):
    rep, secs = _timed(SuitePlan("transforms", degrees=(1, 2), samples=20, seed=42))
    w1, _ = _worst(rep, {"partial_Z", "partial_Zbar", "K_transform", "Lambda_transform"})
    w2, _ = _worst(rep, {"Omega_transform", "laplacian_invariance"})
    pairs = {(r.params["alpha"], r.params["beta"]) for r in rep.records if r.check == "K_transform"}
    ok = (rep.passed and w1 < 1e-6 and w2 < 1e-4 and secs < 60
          and {(2.0, -1.0), (5.0, -5.0)} <= pairs and any(a == -b for a, b in pairs - {(5.0, -5.0)}))
    _report(acceptance_log, 3, "transformation laws", ok,
            f"first order {w1:.2e} < 1e-6, second order {w2:.2e} < 1e-4, {secs:.1f} s < 60 s")


def test_4_pointwise_divergence_identity(acceptance_log):
    rep, secs = _timed(SuitePlan("theorem51", degrees=(1, 2), samples=20, seed=42))
    worst, count = _worst(rep, {"divergence_identity"})
    ok = rep.passed and worst < 1e-4 and count == 40
    _report(acceptance_log, 4, "pointwise divergence identity", ok,
            f"{count} samples, worst {worst:.2e} < 1e-4, {secs:.1f} s")


def test_5_eigenvalues_of_lifts(acceptance_log, eigen_report):
    rep, secs = eigen_report
    assert weight_k_eigenvalue(12, 1) == 30 and weight_k_eigenvalue(10, 2) == 35
    ratios = {n: [r for r in rep.records if r.check.startswith("eigenvalue_") and r.n == n] for n in (1, 2)}
    err1 = max(abs(r.value - 30) for r in ratios[1])
    err2 = max(abs(r.value - 35) for r in ratios[2])
    points = {n: len({r.point for r in ratios[n]}) for n in (1, 2)}
    ok = err1 < 1e-4 and err2 < 1e-3 and points == {1: 10, 2: 5} and secs < 120
    _report(acceptance_log, 5, "eigenvalues 30 (n=1) and 35 (n=2)", ok,
            f"|ratio-30| {err1:.1e} < 1e-4 at {points[1]} pts, |ratio-35| {err2:.1e} < 1e-3 at {points[2]} pts, "
            f"{secs:.1f} s < 120 s")


def test_6_holomorphy_characterization(acceptance_log, eigen_report):
    rep, _ = eigen_report
    low = max(r.residual for r in rep.records if r.check == "lowering_vanishes")
    slopes = [r for r in rep.records if r.check == "antiholomorphic_slope"]
    worst_slope = max(abs(r.value / r.expected - 1) for r in slopes)
    forms = {r.params["form"] for r in slopes}
    ok = low < 1e-6 and worst_slope < 1e-3 and forms == {"Delta", "chi10"} and all(r.passed for r in slopes)
    _report(acceptance_log, 6, "holomorphy characterization", ok,
            f"max |Lambda phi|/|phi| {low:.1e} < 1e-6, eps-slope ratio within {worst_slope:.1e} of 10")


def test_7_forms_layer(acceptance_log):
    rep, secs = _timed(SuitePlan("forms", degrees=(1, 2), samples=20, seed=42))
    by = lambda name: [r for r in rep.records if r.check == name]
    eta = by("delta_eta24_oracle")[0]
    modular = max(r.residual for r in by("delta_modular") + by("delta_modular_reference"))
    equiv = max(r.residual for r in by("chi10_equivariance"))
    diag = by("chi10_diagonal_vanishing")[0]
    ok = rep.passed and eta.residual == 0 and modular < 1e-10 and equiv < 1e-8 and diag.passed
    _report(acceptance_log, 7, "forms layer", ok,
            f"eta^24 mismatches {int(eta.residual)}, Delta modular {modular:.1e} < 1e-10, "
            f"chi10 equivariance {equiv:.1e} < 1e-8, diagonal {diag.residual:.1e} <= {diag.tolerance:.1e}")


def test_8_mutation_sensitivity(acceptance_log):
    caught = {}
    for name in mutations.ALL:
        with mutations.inject(name):
            failing = [s for s in SUITES if not run_suite(SuitePlan(s, samples=2, seed=42)).passed]
        caught[name] = failing
    ok = all(caught.values())
    _report(acceptance_log, 8, "mutation sensitivity", ok,
            "; ".join(f"{m} -> {','.join(f) or 'NOT CAUGHT'}" for m, f in caught.items()))
