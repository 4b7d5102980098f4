"""Seeded verification suites.

Every sample draws from its own generator keyed by (seed, suite, n, index),
so records do not depend on evaluation order and samples can run in
parallel.  Samples that land too close to a branch cut or a singular
cocycle are redrawn from the same generator.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import BranchCut, InvalidPlan, NearSingularCocycle, TailBoundExceedsTol, TruncationFailure
from ..forms import chi10, delta_form, delta_q, eta24_coefficients, even_characteristics, maass_lift, theta_constant
from ..forms.qexpansion import eval_q
from ..forms.theta import ThetaCharacteristic, choose_radius, theta_sum
from ..maassops import DEFAULT_FD, FDConfig
from ..maassops.checks import (SHIFT_VARIANTS, automorphy_factor, check_det_derivatives,
                               check_divergence_identity, check_holomorphy_link, check_K_transform,
                               check_Lambda_transform, check_laplacian_routes, check_Omega_transform,
                               check_omega_relations, check_partial_transform, check_shift_identity, rel_residual)
from ..maassops.fields import GaussianField, PolynomialField, PolynomialMatrixField
from ..maassops.operators import apply_Lambda, laplacian_ab, laplacian_k_real, weight_k_eigenvalue
from ..matrixcore import SiegelPoint, Tolerances, make_siegel_point, random_point, symmetrize
from ..symplectic import (SymplecticElement, act, cocycle, im_transform, is_symplectic,
                          metric_invariance_residual, random_symplectic)
from .report import Record, ResidualReport, SuiteReport

SUITES = ("symplectic", "operators", "transforms", "theorem51", "eigenvalue", "forms")
SUITE_CODE = {name: i + 1 for i, name in enumerate(SUITES)}
SUPPORTED_DEGREES = {
    "symplectic": (1, 2, 3, 4),
    "operators": (1, 2, 3),
    "transforms": (1, 2, 3),
    "theorem51": (1, 2, 3),
    "eigenvalue": (1, 2),
    "forms": (1, 2),
}
DEFAULT_DEGREES = {"symplectic": (1, 2, 3)}
DEFAULT_SAMPLES = {"symplectic": 100, "eigenvalue": None}
EIGEN_POINTS = {1: 10, 2: 5}
EIGEN_TOL = {1: 1e-4, 2: 1e-3}
EIGEN_WEIGHT = {1: 12, 2: 10}
SLOPE_EPS = (1e-3, 1e-4)
SLOPE_TOL = 1e-3
MAX_RESAMPLES = 25
IMAGE_LAM_FLOOR = 1e-2
TRANSFORM_PAIRS = ((2.0, -1.0), (5.0, -5.0))

_RESAMPLE = (BranchCut, NearSingularCocycle, TruncationFailure, TailBoundExceedsTol)


@dataclass(frozen=True)
class SuitePlan:
    suite: str
    degrees: tuple | None = None
    samples: int | None = None
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    fd: FDConfig = DEFAULT_FD
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise InvalidPlan(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.samples is not None and (not isinstance(self.samples, (int, np.integer)) or self.samples < 1):
            raise InvalidPlan("sample count must be a positive integer")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise InvalidPlan("seed must be a non-negative integer")
        if self.jobs < 1:
            raise InvalidPlan("jobs must be >= 1")
        bad = [n for n in self.resolved_degrees() if n not in SUPPORTED_DEGREES[self.suite]]
        if bad:
            raise InvalidPlan(f"suite {self.suite} does not support degree(s) {bad}; "
                              f"supported: {SUPPORTED_DEGREES[self.suite]}")
        if not self.resolved_degrees():
            raise InvalidPlan("empty degree list")

    def resolved_degrees(self) -> tuple:
        if self.degrees is None:
            return DEFAULT_DEGREES.get(self.suite, (1, 2))
        return tuple(int(n) for n in self.degrees)

    def sample_count(self, n: int) -> int:
        if self.samples is not None:
            return int(self.samples)
        if self.suite == "eigenvalue":
            return EIGEN_POINTS[n]
        return DEFAULT_SAMPLES.get(self.suite, 20)


def sample_rng(seed: int, suite: str, n: int, idx: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, SUITE_CODE[suite], n, idx]))


def _point_summary(P: SiegelPoint) -> str:
    if P.n == 1:
        return f"z={P.X[0, 0]:.4f}{P.Y[0, 0]:+.4f}i"
    x = ",".join(f"{v:.3f}" for v in P.X[np.triu_indices(P.n)])
    y = ",".join(f"{v:.3f}" for v in P.Y[np.triu_indices(P.n)])
    return f"X=[{x}] Y=[{y}]"


def _num(v):
    return float(v) if isinstance(v, (float, np.floating)) else int(v) if isinstance(v, (int, np.integer)) else v


class _Recorder:
    """Collects records for one sample with the shared fields filled in."""

    def __init__(self, n: int, point: str = ""):
        self.n = n
        self.point = point
        self.records: list = []

    def add(self, check, anchor, residual, tolerance, params=None, sense="<=", expected=None, value=None):
        self.records.append(Record(
            check=check, anchor=anchor, n=self.n,
            params={k: _num(v) for k, v in (params or {}).items()},
            point=self.point, residual=float(residual), tolerance=float(tolerance), sense=sense,
            expected=None if expected is None else float(expected),
            value=None if value is None else float(value)))


def _word(rng, n, max_len=4) -> SymplecticElement:
    return random_symplectic(rng, n, word_length=int(rng.integers(1, max_len + 1)))


# symplectic ------------------------------------------------------------------

def _directional_fd(g, Z, H, h):
    def F(t):
        W = Z.Z + t * H
        return act(g, make_siegel_point(W.real, W.imag)).Z

    def central(s):
        return (F(s) - F(-s)) / (2 * s)
    return (4 * central(h / 2) - central(h)) / 3


def _landing_pair(rng, n, Z):
    """Words g, h with hZ, gZ and ghZ all at least IMAGE_LAM_FLOOR from
    the boundary; closer in, double precision cannot resolve Im(gZ)."""
    for _ in range(MAX_RESAMPLES):
        g, h = _word(rng, n), _word(rng, n)
        hZ = act(h, Z)
        if min(hZ.lambda_min, act(g, Z).lambda_min, act(g, hZ).lambda_min) >= IMAGE_LAM_FLOOR:
            return g, h
    raise NearSingularCocycle("no word pair kept the images away from the boundary")


def _sample_symplectic(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol = plan.tolerances
    Z = random_point(rng, n)
    g, h = _landing_pair(rng, n, Z)
    H = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    H = (H + H.T) / 2
    rec = _Recorder(n, _point_summary(Z))

    block = max(max(is_symplectic(x)[1].values()) for x in (g, h, g @ h, g.inverse()))
    rec.add("block_relations", "g^t J g = J; A^tC, B^tD symmetric; A^tD - C^tB = I", block, tol.eq_tol)

    gh = g @ h
    hZ = act(h, Z)
    rec.add("action_composition", "(gh)Z = g(hZ)", rel_residual(act(gh, Z).Z, act(g, hZ).Z), tol.eq_tol)
    lhs, rhs = cocycle(gh, Z), cocycle(g, hZ) * cocycle(h, Z)
    rec.add("cocycle_multiplicativity", "det(C_gh Z + D_gh) = j(g, hZ) j(h, Z)",
            abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)), tol.eq_tol)
    gZ = act(g, Z)
    rec.add("im_transform", "Im(gZ) = (CZ+D)^-t Y (CZbar+D)^-1", rel_residual(im_transform(g, Z), gZ.Y), tol.eq_tol)
    c = cocycle(g, Z)
    det_rel = abs(gZ.det_y - Z.det_y / abs(c) ** 2) / max(1.0, gZ.det_y, Z.det_y / abs(c) ** 2)
    rec.add("determinant_relation", "det Im(gZ) = det(Y) / |det(CZ+D)|^2", det_rel, tol.eq_tol)
    rec.add("metric_invariance", "tr(Y^-1 dZ Y^-1 dZbar) invariant", metric_invariance_residual(g, Z, H), tol.eq_tol)

    step = 1e-3 * min(1.0, Z.lambda_min)
    M_inv = np.linalg.inv(g.C @ Z.Z + g.D)
    rec.add("differential_transform", "d(gZ) = (CZ+D)^-t dZ (CZ+D)^-1",
            rel_residual(_directional_fd(g, Z, H, step), M_inv.T @ H @ M_inv), tol.fd_tol_1)

    if idx == 0:
        bad = SymplecticElement(2.0 * np.eye(2 * n))
        rec.add("metric_rejects_nonsymplectic", "2I is not symplectic: metric residual must be large",
                metric_invariance_residual(bad, Z, H), 1e3 * tol.eq_tol, sense=">=")
    return rec.records


# operators ----------------------------------------------------------------

def _scalar_field(rng, Z, idx):
    return GaussianField.random(rng, Z) if idx % 2 == 0 else PolynomialField.random(rng, Z.n)


def _sample_operators(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol, cfg = plan.tolerances, plan.fd
    Z = random_point(rng, n)
    rec = _Recorder(n, _point_summary(Z))
    phi = _scalar_field(rng, Z, idx)
    Phi = PolynomialMatrixField.random(rng, n)
    C, D = rng.normal(size=(n, n)), rng.normal(size=(n, n))
    g = _word(rng, n)
    alpha, beta = (round(float(v), 3) for v in rng.uniform(-3, 3, size=2))
    k = int(rng.integers(1, 13))
    kind = {"field": phi.label}

    anchors = {
        "dZ_shift": "d/dZ (Z-Zbar)^t Phi = ((Z-Zbar) d/dZ)^t Phi + (n+1)/2 Phi",
        "dZbar_shift": "d/dZbar (Z-Zbar)^t Phi = ((Z-Zbar) d/dZbar)^t Phi - (n+1)/2 Phi",
        "general_C_D": "d/dZ (CZ+D)^t Phi = ((CZ+D) d/dZ)^t Phi + (n+1)/2 C^t Phi",
        "general_C_D_bar": "d/dZbar (CZbar+D)^t Phi = ((CZbar+D) d/dZbar)^t Phi + (n+1)/2 C^t Phi",
    }
    for v in SHIFT_VARIANTS:
        rec.add(f"shift_{v}", anchors[v], check_shift_identity(v, Phi, Z, cfg, C, D), tol.fd_tol_1)
    if idx == 0:
        rec.add("shift_term_required", "dropping (n+1)/2 shift must break the identity",
                check_shift_identity("dZ_shift", Phi, Z, cfg, include_shift=False), 1e3 * tol.fd_tol_1, sense=">=")

    det_anchor = {
        "det_Y": "d det(Y)/dY = det(Y) Y^-1",
        "det_Q": "d det(Z-Zbar)/dZ = det(Z-Zbar) (Z-Zbar)^-1",
        "cocycle_left": "d det(CZ+D)/dZ = det(CZ+D) (CZ+D)^-1 C",
        "cocycle_right": "d det(CZ+D)/dZ = det(CZ+D) C^t (CZ+D)^-t",
    }
    for name, res in check_det_derivatives(Z, g, cfg).items():
        rec.add(name, det_anchor[name], res, tol.fd_tol_1)

    om_anchor = {
        "tilde_relation": "Omega~ = Q (Q^-1 Omega)^t, Q = Z - Zbar",
        "trace_equality": "tr Omega = tr Omega~",
        "nested": "Omega = Lambda_{beta-(n+1)/2} K_alpha + alpha(beta-(n+1)/2), nested FD",
    }
    for name, res in check_omega_relations(phi, alpha, beta, Z, cfg).items():
        rec.add(f"omega_{name}", om_anchor[name], res, tol.fd_tol_2, {**kind, "alpha": alpha, "beta": beta})
    rec.add("laplacian_routes", "-tr Omega_{k/2,-k/2} = tr(Y((Y dX)^t dX + (Y dY)^t dY) - ik Y dX)",
            check_laplacian_routes(phi, k, Z, cfg), tol.fd_tol_2, {**kind, "k": k})
    return rec.records


# transforms -----------------------------------------------------------------

def _nonaffine_word(rng, n, Z) -> SymplecticElement:
    """Random word with C != 0 and gZ at least IMAGE_LAM_FLOOR from the
    boundary.  For affine elements det(CZ+D) is constant and the
    transformation laws cannot tell its two sides apart."""
    for _ in range(MAX_RESAMPLES):
        g = _word(rng, n)
        if np.any(g.C) and act(g, Z).lambda_min >= IMAGE_LAM_FLOOR:
            return g
    raise NearSingularCocycle("no admissible non-affine word")


def _sample_transforms(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol, cfg = plan.tolerances, plan.fd
    Z = random_point(rng, n)
    g = _nonaffine_word(rng, n, Z)
    phi = GaussianField.random(rng, Z)
    k = int(rng.integers(1, 13))
    rec = _Recorder(n, _point_summary(Z))
    pz, pzb = check_partial_transform(g, phi, Z, cfg)
    rec.add("partial_Z", "d/dZ = (CZ+D)^-1 d/dW (CZ+D)^-t, W = gZ", pz, tol.fd_tol_1)
    rec.add("partial_Zbar", "d/dZbar = (CZbar+D)^-1 d/dWbar (CZbar+D)^-t", pzb, tol.fd_tol_1)
    for alpha, beta in TRANSFORM_PAIRS + ((k / 2, -k / 2),):
        p = {"alpha": alpha, "beta": beta}
        rec.add("K_transform", "K_alpha(j phi)(gZ) = j (CZbar+D)^-t K_alpha phi (CZ+D)^t",
                check_K_transform(g, alpha, beta, phi, Z, cfg), tol.fd_tol_1, p)
        rec.add("Lambda_transform", "Lambda_beta(j phi)(gZ) = j (CZ+D)^-t Lambda_beta phi (CZbar+D)^t",
                check_Lambda_transform(g, alpha, beta, phi, Z, cfg), tol.fd_tol_1, p)
        om, lap = check_Omega_transform(g, alpha, beta, phi, Z, cfg)
        rec.add("Omega_transform", "Omega(j phi)(gZ) = j (CZ+D)^-t Omega phi (CZ+D)^t", om, tol.fd_tol_2, p)
        rec.add("laplacian_invariance", "Delta_{alpha,beta}(j phi)(gZ) = j Delta_{alpha,beta} phi(Z)",
                lap, tol.fd_tol_2, p)
    return rec.records


# pointwise divergence identity and holomorphy link ---------------------------------

def _sample_theorem51(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol, cfg = plan.tolerances, plan.fd
    Z = random_point(rng, n)
    phi = _scalar_field(rng, Z, idx)
    psi = GaussianField.random(rng, Z)
    alpha = round(float(rng.uniform(-4, 6)), 3)
    beta = round(float(rng.uniform(-6, 4)), 3)
    rec = _Recorder(n, _point_summary(Z))
    p = {"field": phi.label, "alpha": alpha, "beta": beta}
    rec.add("divergence_identity",
            "sum (d/dZ)_lj (rho p_jk q_kl) = det(Q)^s (-Delta phi psibar - tr(Lambda phi conj Lambda psi) "
            "- n beta(alpha-(n+1)/2) phi psibar)",
            check_divergence_identity(phi, psi, alpha, beta, Z, cfg), tol.fd_tol_2, p)
    link = check_holomorphy_link(phi, beta, Z, cfg)
    rec.add("holomorphy_link", "d(det(Y)^beta phi)/dZbar = -(i/2) det(Y)^beta Y^-1 Lambda_beta phi",
            link.residual, tol.fd_tol_1, p)
    t = link.tr_s_sbar
    scale = max(1.0, abs(t))
    rec.add("tr_S_Sbar_nonnegative", "tr(S Sbar) real and >= 0",
            (abs(t.imag) + max(0.0, -t.real)) / scale, tol.eq_tol, p)
    return rec.records


# eigenvalues of lifted cusp forms ------------------------------------------------

def _eigen_point(rng, n) -> SiegelPoint:
    if n == 1:
        return make_siegel_point([[rng.uniform(-0.5, 0.5)]], [[rng.uniform(0.8, 1.6)]])
    while True:
        y12 = rng.uniform(0.25, 0.4) * rng.choice([-1.0, 1.0])
        Y = np.array([[rng.uniform(1.2, 1.6), y12], [y12, rng.uniform(1.2, 1.6)]])
        X = symmetrize(rng.uniform(-0.5, 0.5, size=(2, 2)))
        P = make_siegel_point(X, Y)
        if P.lambda_min >= 0.8:
            return P


def _base_form(n):
    return delta_form if n == 1 else chi10


def _sample_eigenvalue(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol, cfg = plan.tolerances, plan.fd
    k = EIGEN_WEIGHT[n]
    Z = _eigen_point(rng, n)
    f = _base_form(n)
    phi = maass_lift(f, k, n)
    rec = _Recorder(n, _point_summary(Z))
    val = phi(Z)
    expected = weight_k_eigenvalue(k, n)
    p = {"k": k, "form": "Delta" if n == 1 else "chi10"}
    anchor = "Delta_k phi = -(nk/4)(n-k+1) phi for phi = det(Y)^{k/2} f"
    for name, lap in (("eigenvalue_omega", laplacian_ab(phi, k / 2, -k / 2, Z, cfg)),
                      ("eigenvalue_real", laplacian_k_real(phi, k, Z, cfg))):
        ratio = lap / val
        rec.add(name, anchor, abs(ratio - expected), EIGEN_TOL[n], p, expected=expected, value=ratio.real)

    low = float(np.max(np.abs(apply_Lambda(phi, -k / 2, Z, cfg)))) / abs(val)
    rec.add("lowering_vanishes", "Lambda_{-k/2}(det(Y)^{k/2} f) = 0 for holomorphic f", low, tol.fd_tol_1, p)

    fz = abs(f(Z))
    sizes = []
    for eps in SLOPE_EPS:
        pert = maass_lift(lambda P, e=eps: f(P) + e * fz * np.conj(P.Z[0, 0]), k, n)
        sizes.append(float(np.max(np.abs(apply_Lambda(pert, -k / 2, Z, cfg)))) / abs(val))
    ratio = sizes[0] / sizes[1]
    expect = SLOPE_EPS[0] / SLOPE_EPS[1]
    rec.add("antiholomorphic_slope", "|Lambda(det(Y)^{k/2}(f + eps zbar))| linear in eps",
            abs(ratio / expect - 1), SLOPE_TOL, {**p, "eps": "1e-3,1e-4"}, expected=expect, value=ratio)
    return rec.records


# forms ------------------------------------------------------------------------

def _word_landing(rng, n, Z, lam_floor):
    """Random word g with lambda_min(Im gZ) >= lam_floor."""
    for _ in range(MAX_RESAMPLES):
        g = _word(rng, n)
        W = act(g, Z)
        if W.lambda_min >= lam_floor:
            return g, W
    raise NearSingularCocycle("no word kept gZ away from the boundary")


def _rel(a, b) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def _forms_once_n1(rec: _Recorder):
    N = 20
    oracle = eta24_coefficients(N)
    mism = sum(1 for a, b in zip(delta_q(N).coeffs, oracle) if a != b)
    rec.add("delta_eta24_oracle", "Delta = q prod (1-q^m)^24 coefficientwise, m <= 20", mism, 0, {"m_max": N})
    z = 0.3 + 1.1j
    a, b = eval_q(delta_q(), -1 / z)[0], z**12 * eval_q(delta_q(), z)[0]
    rec.add("delta_modular_reference", "Delta(-1/z) = z^12 Delta(z) at z = 0.3+1.1i", abs(a - b), 1e-10)


def _forms_once_n2(rec: _Recorder, tol: Tolerances):
    even = even_characteristics()
    rec.add("even_characteristic_count", "ten even characteristics in genus 2", abs(len(even) - 10), 0)

    diag = make_siegel_point([[0.1, 0.0], [0.0, -0.2]], [[1.1, 0.0], [0.0, 0.9]])
    vanish = ThetaCharacteristic((0.5, 0.5), (0.5, 0.5))
    cert = choose_radius(diag.lambda_min, 1e-16)
    others = np.prod([abs(theta_sum(m, diag.Z, cert.radius)) ** 2 for m in even if m != vanish])
    root = float(np.sqrt(abs(chi10(diag)) / (2.0**-12 * others)))
    rec.add("chi10_diagonal_vanishing", "chi10 = 0 on diagonal Z (via theta[1/2 1/2; 1/2 1/2])",
            root, cert.bound + 1e-13, {"radius": cert.radius})

    X = np.array([[0.13, -0.21], [-0.21, 0.37]])
    vals = [abs(chi10(make_siegel_point(X, t * np.eye(2)))) for t in (1, 2, 3)]
    decreasing = all(vals[i + 1] < vals[i] for i in range(2))
    rec.add("chi10_cusp_decay", "|chi10(X + itI)| decreasing, tiny at t = 3",
            vals[2] if decreasing else float("inf"), 1e-12, {"t": "1,2,3"})

    Z = make_siegel_point(X, [[1.0, 0.3], [0.3, 0.8]])
    worst = 0.0
    bound = 0.0
    for m in even:
        v1, c1 = theta_constant(m, Z, tol=1e-14)
        v2 = theta_sum(m, Z.Z, 2 * c1.radius)
        worst = max(worst, abs(v1 - v2))
        bound = max(bound, c1.bound)
    rec.add("theta_truncation_doubling", "|theta_R - theta_2R| <= certified tail", worst, bound + 1e-14)


def _sample_forms(plan: SuitePlan, n: int, idx: int, rng) -> list:
    tol = plan.tolerances
    rec = _Recorder(n)
    if n == 1:
        if idx == 0:
            _forms_once_n1(rec)
        while True:
            z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.2))
            if abs(z) <= 1.25:
                break
        Z = make_siegel_point([[z.real]], [[z.imag]])
        rec.point = _point_summary(Z)
        a, b = eval_q(delta_q(), -1 / z, tol=1e-15)[0], z**12 * eval_q(delta_q(), z, tol=1e-15)[0]
        rec.add("delta_modular", "Delta(-1/z) = z^12 Delta(z)", abs(a - b), 1e-10)
        a, b = eval_q(delta_q(), z + 1)[0], eval_q(delta_q(), z)[0]
        rec.add("delta_periodic", "Delta(z+1) = Delta(z)", abs(a - b), 1e-12)
        g, W = _word_landing(rng, 1, Z, 0.3)
        eval_q(delta_q(), complex(W.Z[0, 0]), tol=1e-14)
        lift = maass_lift(delta_form, 12, 1)
        rec.add("lift_automorphy", "phi(gZ) = det(CZ+D)^{k/2} det(CZbar+D)^{-k/2} phi(Z)",
                _rel(lift(W), automorphy_factor(g, Z, 6, -6) * lift(Z)), 1e-8, {"k": 12})
        return rec.records

    if idx == 0:
        _forms_once_n2(rec, tol)
    Z = random_point(rng, 2, lam_min=0.8, spread=0.6)
    rec.point = _point_summary(Z)
    g, W = _word_landing(rng, 2, Z, 0.05)
    c = cocycle(g, Z)
    rec.add("chi10_equivariance", "chi10(gZ) = det(CZ+D)^10 chi10(Z)", _rel(chi10(W), c**10 * chi10(Z)), 1e-8)
    lift = maass_lift(chi10, 10, 2)
    rec.add("lift_automorphy", "phi(gZ) = det(CZ+D)^{k/2} det(CZbar+D)^{-k/2} phi(Z)",
            _rel(lift(W), automorphy_factor(g, Z, 5, -5) * lift(Z)), 1e-8, {"k": 10})
    B = np.array([[1, -1], [-1, 2]])
    for a_, b_ in (((0.0, 0.5), (0.5, 0.0)), ((0.5, 0.5), (0.0, 0.0))):
        m = ThetaCharacteristic(a_, b_)
        a = np.array(a_)
        shifted = make_siegel_point(Z.X + 2 * B, Z.Y)
        lhs = theta_constant(m, shifted)[0]
        rhs = np.exp(2j * np.pi * a @ B @ a) * theta_constant(m, Z)[0]
        rec.add("theta_periodicity", "theta[a,b](Z+2B) = e(a^t B a) theta[a,b](Z)", _rel(lhs, rhs), 1e-10,
                {"a": str(a_), "b": str(b_)})
    return rec.records


_SAMPLERS = {
    "symplectic": _sample_symplectic,
    "operators": _sample_operators,
    "transforms": _sample_transforms,
    "theorem51": _sample_theorem51,
    "eigenvalue": _sample_eigenvalue,
    "forms": _sample_forms,
}


def _run_sample(plan: SuitePlan, n: int, idx: int) -> list:
    rng = sample_rng(plan.seed, plan.suite, n, idx)
    sampler = _SAMPLERS[plan.suite]
    last = None
    for _ in range(MAX_RESAMPLES):
        try:
            return sampler(plan, n, idx, rng)
        except _RESAMPLE as exc:
            last = exc
    rec = _Recorder(n)
    rec.add("resample_exhausted", f"no admissible sample after {MAX_RESAMPLES} draws: {last}",
            float("inf"), 0.0)
    return rec.records


def run_suite(plan: SuitePlan) -> SuiteReport:
    """Evaluate every sample of the plan; failures are recorded, not raised."""
    start = time.perf_counter()
    jobs = [(n, i) for n in plan.resolved_degrees() for i in range(plan.sample_count(n))]
    if plan.jobs > 1:
        with ThreadPoolExecutor(plan.jobs) as pool:
            chunks = list(pool.map(lambda t: _run_sample(plan, *t), jobs))
    else:
        chunks = [_run_sample(plan, n, i) for n, i in jobs]
    records = [r for chunk in chunks for r in chunk]
    return SuiteReport(plan.suite, records, time.perf_counter() - start)


def run_plans(plans, seed: int) -> ResidualReport:
    return ResidualReport(seed, [run_suite(p) for p in plans])
