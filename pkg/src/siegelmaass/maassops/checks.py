"""Residual checkers: each evaluates both sides of an operator identity by
independent finite-difference routes and reports their relative gap."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import mutations
from ..errors import BranchCut, SizeMismatch
from ..matrixcore import SiegelPoint, pd_sqrt
from ..symplectic import SymplecticElement, act, cocycle
from .fd import DEFAULT_FD, FDConfig, Field, scalar_jet
from .operators import (apply_K, apply_Lambda, borderline_eigenvalue, contract, d_dY, d_dZ, d_dZbar,
                        derivative_tensors, field_gradient, laplacian_from_jet, laplacian_k_real,
                        omega_from_jet, omega_tilde_from_jet)

BRANCH_MARGIN = 0.05


def rel_residual(lhs, rhs) -> float:
    """max|lhs - rhs| / max(1, max|lhs|, max|rhs|)."""
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    scale = max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale


def det_q_power(P: SiegelPoint, s: float) -> complex:
    """det(Z - Zbar)^s on the fixed branch (2i)^{ns} det(Y)^s.

    Z - Zbar = 2iY always lies on the same ray, so this branch is smooth.
    """
    n = P.n
    return complex(2.0 ** (n * s) * np.exp(1j * np.pi * n * s / 2) * P.det_y**s)


def automorphy_factor(g: SymplecticElement, Z: SiegelPoint, alpha: float, beta: float) -> complex:
    """det(CZ+D)^alpha det(CZbar+D)^beta with principal-branch powers.

    Raises BranchCut when a non-integer power is evaluated close to the cut
    of a non-constant cocycle; the caller is expected to resample.
    """
    c = cocycle(g, Z)
    integral = float(alpha).is_integer() and float(beta).is_integer()
    if not integral and np.any(g.C):
        if np.pi - abs(np.angle(c)) < BRANCH_MARGIN:
            raise BranchCut(f"det(CZ+D) = {c:.4g} is within {BRANCH_MARGIN} rad of the cut")
    return complex(c**alpha * c.conjugate()**beta)


def pulled_back(g: SymplecticElement, phi: Field, alpha: float, beta: float) -> Field:
    """W -> j(g, g^-1 W) phi(g^-1 W): the field whose W-chart operators are
    compared against the Z-chart ones."""
    ginv = g.inverse()

    def h(W):
        P = act(ginv, W)
        return automorphy_factor(g, P, alpha, beta) * phi(P)
    return h


# operator identities ---------------------------------------------------------

SHIFT_VARIANTS = ("dZ_shift", "dZbar_shift", "general_C_D", "general_C_D_bar")


def check_shift_identity(variant: str, testfield: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD,
                         C=None, D=None, include_shift: bool = True) -> float:
    """Residual of d/dZ (CZ+D)^t Phi = ((CZ+D) d/dZ)^t Phi + (n+1)/2 C^t Phi.

    ``dZ_shift``/``dZbar_shift`` use C = I, D = -Zbar (resp. -Z), i.e. the
    factor Z - Zbar; ``general_C_D`` and ``general_C_D_bar`` take constant
    C, D with CZ+D resp. CZbar+D.  The left side is a finite difference of
    the assembled product field, the right side uses partials of Phi only.
    """
    n = Z.n
    _, _, DZ, DZb, _ = derivative_tensors(n)
    eye = np.eye(n)
    if variant == "dZ_shift":
        T, C, sign = DZ, eye, 1.0
        factor = lambda P: P.Q
    elif variant == "dZbar_shift":
        T, C, sign = DZb, eye, -1.0
        factor = lambda P: P.Q
    elif variant in ("general_C_D", "general_C_D_bar"):
        if C is None or D is None:
            raise ValueError(f"{variant} needs constant matrices C and D")
        C, D = np.asarray(C, dtype=complex), np.asarray(D, dtype=complex)
        if C.shape != (n, n) or D.shape != (n, n):
            raise SizeMismatch("C and D must be n x n")
        sign = 1.0
        if variant == "general_C_D":
            T = DZ
            factor = lambda P: C @ P.Z + D
        else:
            T = DZb
            factor = lambda P: C @ P.Zbar + D
    else:
        raise ValueError(f"unknown variant {variant!r}")

    product = lambda P: factor(P).T @ testfield(P)
    lhs = contract(T, field_gradient(product, Z, cfg))
    M = factor(Z)
    Phi = np.asarray(testfield(Z))
    dPhi = field_gradient(testfield, Z, cfg)
    rhs = np.einsum("lm,mjc,clk->jk", M, T, dPhi)
    if include_shift:
        rhs = rhs + sign * (n + 1) / 2 * C.T @ Phi
    return rel_residual(lhs, rhs)


def check_det_derivatives(Z: SiegelPoint, g: SymplecticElement, cfg: FDConfig = DEFAULT_FD) -> dict:
    """Residuals of the determinant-derivative identities.

    * ``det_Y``: d det(Y)/dY = det(Y) Y^-1
    * ``det_Q``: d det(Z-Zbar)/dZ = det(Z-Zbar)(Z-Zbar)^-1
    * ``cocycle_left`` / ``cocycle_right``: d det(CZ+D)/dZ equals
      det(CZ+D)(CZ+D)^-1 C and det(CZ+D) C^t (CZ+D)^-t.
    """
    C, D = g.C, g.D
    detq = lambda P: complex(np.linalg.det(P.Q))
    detc = lambda P: complex(np.linalg.det(C @ P.Z + D))
    M = C @ Z.Z + D
    Minv = np.linalg.inv(M)
    c = np.linalg.det(M)
    dc = d_dZ(detc, Z, cfg)
    return {
        "det_Y": rel_residual(d_dY(lambda P: P.det_y, Z, cfg), Z.det_y * Z.y_inv),
        "det_Q": rel_residual(d_dZ(detq, Z, cfg), np.linalg.det(Z.Q) * np.linalg.inv(Z.Q)),
        "cocycle_left": rel_residual(dc, c * Minv @ C),
        "cocycle_right": rel_residual(dc, c * C.T @ Minv.T),
    }


def check_omega_relations(field: Field, alpha: float, beta: float, Z: SiegelPoint,
                          cfg: FDConfig = DEFAULT_FD) -> dict:
    """Omega / Omega-tilde relations at one point.

    * ``tilde_relation``: Omega~ = Q (Q^-1 Omega)^t with Q = Z - Zbar
    * ``trace_equality``: tr Omega = tr Omega~
    * ``nested``: the jet assembly of Omega against Lambda applied, by a
      second finite difference, to the matrix field K_alpha phi
    """
    n = Z.n
    jet = scalar_jet(field, Z, cfg)
    om = omega_from_jet(jet, alpha, beta)
    omt = omega_tilde_from_jet(jet, alpha, beta)
    Q = Z.Q
    s = 0.0 if mutations.active(mutations.DROP_OMEGA_SHIFT) else (n + 1) / 2
    outer = FDConfig(h_rel=cfg.h2_rel, h2_rel=cfg.h2_rel, richardson=cfg.richardson)
    k_field = lambda P: apply_K(field, alpha, P, cfg)
    nested = apply_Lambda(k_field, beta - s, Z, outer) + alpha * (beta - s) * jet.value * np.eye(n)
    return {
        "tilde_relation": rel_residual(omt, Q @ (np.linalg.inv(Q) @ om).T),
        "trace_equality": rel_residual(np.trace(om), np.trace(omt)),
        "nested": rel_residual(om, nested),
    }


def check_laplacian_routes(field: Field, k: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> float:
    """-tr Omega_{k/2,-k/2} against the real-coordinate weight-k Laplacian."""
    jet = scalar_jet(field, Z, cfg)
    return rel_residual(laplacian_from_jet(jet, k / 2, -k / 2), laplacian_k_real(field, k, Z, cfg))


# transformation laws ------------------------------------------------------------

def check_partial_transform(g: SymplecticElement, testfield: Field, Z: SiegelPoint,
                            cfg: FDConfig = DEFAULT_FD) -> tuple[float, float]:
    """Chain rule for d/dZ and d/dZbar under W = gZ, both charts by FD."""
    W = act(g, Z)
    ginv = g.inverse()
    moved = lambda P: testfield(act(ginv, P))
    M = g.C @ Z.Z + g.D
    Mb = g.C @ Z.Zbar + g.D
    Minv, Mbinv = np.linalg.inv(M), np.linalg.inv(Mb)
    res_z = rel_residual(d_dZ(testfield, Z, cfg), Minv @ d_dZ(moved, W, cfg) @ Minv.T)
    res_zb = rel_residual(d_dZbar(testfield, Z, cfg), Mbinv @ d_dZbar(moved, W, cfg) @ Mbinv.T)
    return res_z, res_zb


def _sides(g, Z):
    M = g.C @ Z.Z + g.D
    Mb = g.C @ Z.Zbar + g.D
    return M, Mb


def check_K_transform(g: SymplecticElement, alpha: float, beta: float, testfield: Field, Z: SiegelPoint,
                      cfg: FDConfig = DEFAULT_FD) -> float:
    """K^g_alpha(j phi) at gZ against j (CZbar+D)^-t K_alpha phi(Z) (CZ+D)^t."""
    W = act(g, Z)
    j = automorphy_factor(g, Z, alpha, beta)
    lhs = apply_K(pulled_back(g, testfield, alpha, beta), alpha, W, cfg)
    M, Mb = _sides(g, Z)
    K = apply_K(testfield, alpha, Z, cfg)
    if mutations.active(mutations.WRONG_COCYCLE_SIDE):
        rhs = j * np.linalg.inv(M).T @ K @ Mb.T
    else:
        rhs = j * np.linalg.inv(Mb).T @ K @ M.T
    return rel_residual(lhs, rhs)


def check_Lambda_transform(g: SymplecticElement, alpha: float, beta: float, testfield: Field, Z: SiegelPoint,
                           cfg: FDConfig = DEFAULT_FD) -> float:
    """Lambda^g_beta(j phi) at gZ against j (CZ+D)^-t Lambda_beta phi(Z) (CZbar+D)^t."""
    W = act(g, Z)
    j = automorphy_factor(g, Z, alpha, beta)
    lhs = apply_Lambda(pulled_back(g, testfield, alpha, beta), beta, W, cfg)
    M, Mb = _sides(g, Z)
    rhs = j * np.linalg.inv(M).T @ apply_Lambda(testfield, beta, Z, cfg) @ Mb.T
    return rel_residual(lhs, rhs)


def check_Omega_transform(g: SymplecticElement, alpha: float, beta: float, testfield: Field, Z: SiegelPoint,
                          cfg: FDConfig = DEFAULT_FD) -> tuple[float, float]:
    """Omega^g(j phi) at gZ against j (CZ+D)^-t Omega phi(Z) (CZ+D)^t.

    Returns the matrix residual and the residual of its trace (the
    Laplacian transformation law).
    """
    W = act(g, Z)
    j = automorphy_factor(g, Z, alpha, beta)
    jet_w = scalar_jet(pulled_back(g, testfield, alpha, beta), W, cfg)
    jet_z = scalar_jet(testfield, Z, cfg)
    M, _ = _sides(g, Z)
    lhs = omega_from_jet(jet_w, alpha, beta)
    rhs = j * np.linalg.inv(M).T @ omega_from_jet(jet_z, alpha, beta) @ M.T
    lap = rel_residual(laplacian_from_jet(jet_w, alpha, beta), j * laplacian_from_jet(jet_z, alpha, beta))
    return rel_residual(lhs, rhs), lap


# divergence and holomorphy identities ------------------------------------------

def check_divergence_identity(phi: Field, psi: Field, alpha: float, beta: float, Z: SiegelPoint,
                              cfg: FDConfig = DEFAULT_FD) -> float:
    """sum_{jkl} (d/dZ)_{lj}(rho p_jk q_kl) against
    det(Q)^s (-Delta phi psibar - tr(Lambda phi conj(Lambda psi)) - c phi psibar)

    with Q = Z - Zbar, s = alpha + beta - (n+1), rho = det(Q)^s psibar,
    P = Lambda_beta phi and c the borderline constant.  The left side is an
    outer finite difference (step h2) of a field that itself contains an
    inner finite difference (step h).
    """
    n = Z.n
    s = alpha + beta - (n + 1)
    _, _, DZ, _, _ = derivative_tensors(n)

    def assembled(P):
        rho = det_q_power(P, s) * np.conj(psi(P))
        return rho * apply_Lambda(phi, beta, P, cfg) @ P.Q

    outer = FDConfig(h_rel=cfg.h2_rel, h2_rel=cfg.h2_rel, richardson=cfg.richardson)
    dF = field_gradient(assembled, Z, outer)
    lhs = np.trace(contract(DZ, dF))

    jet = scalar_jet(phi, Z, cfg)
    ph, ps = jet.value, psi(Z)
    lam_phi = apply_Lambda(phi, beta, Z, cfg)
    lam_psi = apply_Lambda(psi, beta, Z, cfg)
    rhs = det_q_power(Z, s) * (
        -laplacian_from_jet(jet, alpha, beta) * np.conj(ps)
        - np.trace(lam_phi @ lam_psi.conj())
        - borderline_eigenvalue(alpha, beta, n) * ph * np.conj(ps))
    return rel_residual(lhs, rhs)


@dataclass(frozen=True)
class HolomorphyLink:
    residual: float      # d f/dZbar + (i/2) det(Y)^beta Y^-1 Lambda_beta phi, relative
    lowering: float      # max|Lambda_beta phi| / |phi|
    lowering_abs: float  # max|Lambda_beta phi|
    tr_s_sbar: complex   # tr(S Sbar), real and >= 0


def check_holomorphy_link(phi: Field, beta: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> HolomorphyLink:
    """Relate Lambda_beta phi to the Zbar-derivative of f = det(Y)^beta phi."""
    f = lambda P: P.det_y**beta * phi(P)
    lam = apply_Lambda(phi, beta, Z, cfg)
    lhs = d_dZbar(f, Z, cfg)
    rhs = -0.5j * Z.det_y**beta * Z.y_inv @ lam
    val = phi(Z)
    r = pd_sqrt(Z.Y)
    S = 2j * r @ d_dZbar(phi, Z, cfg) @ r - beta * val * np.eye(Z.n)
    low_abs = float(np.max(np.abs(lam)))
    low = low_abs / abs(val) if val != 0 else float("inf")
    return HolomorphyLink(rel_residual(lhs, rhs), low, low_abs, complex(np.trace(S @ S.conj())))
