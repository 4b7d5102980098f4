"""Matrix derivative operators and the Maass operators K, Lambda, Omega.

A matrix of differential operators acts on a matrix field entrywise and
then multiplies: ((A d) M)_{jk} = sum_{l,m} A_{jl} d_{lm} M_{mk}.  All
operators here are assembled from raw coordinate partials with the
coefficient tensors of :func:`derivative_tensors`.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import mutations
from ..matrixcore import SiegelPoint, upper_indices
from .fd import DEFAULT_FD, FDConfig, Field, Jet, field_gradient, field_partials, scalar_jet


@lru_cache(maxsize=None)
def _tensors(n: int, weighted: bool):
    idx = upper_indices(n)
    m = len(idx)
    DX = np.zeros((n, n, 2 * m))
    DY = np.zeros((n, n, 2 * m))
    for i, (j, k) in enumerate(idx):
        w = 1.0 if j == k or not weighted else 0.5
        DX[j, k, i] = DX[k, j, i] = w
        DY[j, k, m + i] = DY[k, j, m + i] = w
    dQ = np.zeros((2 * m, n, n), dtype=complex)
    for i, (j, k) in enumerate(idx):
        dQ[m + i, j, k] = dQ[m + i, k, j] = 2j
    for t in (DX, DY, dQ):
        t.setflags(write=False)
    return DX, DY, dQ


def derivative_tensors(n: int):
    """Coefficient tensors (DX, DY, DZ, DZbar, dQ).

    (d/dX)_{jk} = sum_c DX[j, k, c] d/du_c, and likewise for Y, Z, Zbar;
    dQ[c] is the raw partial of Z - Zbar = 2iY along coordinate c.
    """
    DX, DY, dQ = _tensors(n, not mutations.active(mutations.DROP_SYM_WEIGHT))
    return DX, DY, (DX - 1j * DY) / 2, (DX + 1j * DY) / 2, dQ


def _pick(n, which):
    DX, DY, DZ, DZb, _ = derivative_tensors(n)
    return {"X": DX, "Y": DY, "Z": DZ, "Zbar": DZb}[which]


def contract(T, grad) -> np.ndarray:
    """Apply an operator matrix to raw partials of a scalar or matrix field."""
    grad = np.asarray(grad)
    if grad.ndim == 1:
        return np.einsum("jkc,c->jk", T, grad)
    return np.einsum("jlc,clk->jk", T, grad)


def _derivative(field: Field, Z: SiegelPoint, cfg: FDConfig, which: str) -> np.ndarray:
    return contract(_pick(Z.n, which), field_gradient(field, Z, cfg))


def d_dX(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return _derivative(field, Z, cfg, "X")


def d_dY(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return _derivative(field, Z, cfg, "Y")


def d_dZ(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return _derivative(field, Z, cfg, "Z")


def d_dZbar(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return _derivative(field, Z, cfg, "Zbar")


def apply_K(field: Field, alpha: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """K_alpha = (Z - Zbar) d/dZ + alpha, on a scalar or matrix field."""
    value = np.asarray(field(Z), dtype=complex)
    eye = np.eye(Z.n) if value.ndim == 0 else 1.0
    return Z.Q @ d_dZ(field, Z, cfg) + alpha * value * eye


def apply_Lambda(field: Field, beta: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """Lambda_beta = (Z - Zbar) d/dZbar - beta, on a scalar or matrix field."""
    value = np.asarray(field(Z), dtype=complex)
    eye = np.eye(Z.n) if value.ndim == 0 else 1.0
    return Z.Q @ d_dZbar(field, Z, cfg) - beta * value * eye


# second-order operators, assembled from a 2-jet -----------------------------

def _shift(n: int) -> float:
    return 0.0 if mutations.active(mutations.DROP_OMEGA_SHIFT) else (n + 1) / 2


def _first_order_parts(jet: Jet, T):
    """Matrix G = T(grad) and its raw partials dG[c]."""
    G = np.einsum("jlc,c->jl", T, jet.grad)
    dG = np.einsum("jld,cd->cjl", T, jet.hess)
    return G, dG


def omega_from_jet(jet: Jet, alpha: float, beta: float) -> np.ndarray:
    """Lambda_{beta - s}(K_alpha phi) + alpha (beta - s) phi, s = (n+1)/2."""
    Z = jet.point
    n, Q, eye = Z.n, Z.Q, np.eye(Z.n)
    _, _, DZ, DZb, dQ = derivative_tensors(n)
    b1 = beta - _shift(n)
    G, dG = _first_order_parts(jet, DZ)
    Kphi = Q @ G + alpha * jet.value * eye
    dK = np.einsum("cjm,ml->cjl", dQ, G) + np.einsum("jm,cml->cjl", Q, dG) \
        + alpha * jet.grad[:, None, None] * eye
    lam_K = Q @ contract(DZb, dK) - b1 * Kphi
    return lam_K + alpha * b1 * jet.value * eye


def omega_tilde_from_jet(jet: Jet, alpha: float, beta: float) -> np.ndarray:
    """K_{alpha - s}(Lambda_beta phi) + beta (alpha - s) phi, s = (n+1)/2."""
    Z = jet.point
    n, Q, eye = Z.n, Z.Q, np.eye(Z.n)
    _, _, DZ, DZb, dQ = derivative_tensors(n)
    a1 = alpha - _shift(n)
    Gb, dGb = _first_order_parts(jet, DZb)
    Lphi = Q @ Gb - beta * jet.value * eye
    dL = np.einsum("cjm,ml->cjl", dQ, Gb) + np.einsum("jm,cml->cjl", Q, dGb) \
        - beta * jet.grad[:, None, None] * eye
    k_L = Q @ contract(DZ, dL) + a1 * Lphi
    return k_L + beta * a1 * jet.value * eye


def apply_Omega(field: Field, alpha: float, beta: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return omega_from_jet(scalar_jet(field, Z, cfg), alpha, beta)


def apply_Omega_tilde(field: Field, alpha: float, beta: float, Z: SiegelPoint,
                      cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    return omega_tilde_from_jet(scalar_jet(field, Z, cfg), alpha, beta)


def laplacian_from_jet(jet: Jet, alpha: float, beta: float) -> complex:
    tr = complex(np.trace(omega_from_jet(jet, alpha, beta)))
    return tr if mutations.active(mutations.FLIP_LAPLACIAN_SIGN) else -tr


def laplacian_ab(field: Field, alpha: float, beta: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> complex:
    """Delta_{alpha,beta} = -tr Omega_{alpha,beta}."""
    return laplacian_from_jet(scalar_jet(field, Z, cfg), alpha, beta)


def laplacian_k_real(field: Field, k: float, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> complex:
    """tr(Y((Y d/dX)^t d/dX + (Y d/dY)^t d/dY) - ik Y d/dX) in real coordinates.

    Needs only the XX and YY blocks of the Hessian, so it shares no
    assembly with :func:`laplacian_ab`.
    """
    n = Z.n
    m = n * (n + 1) // 2
    DX, DY, *_ = derivative_tensors(n)
    xs, ys = list(range(m)), list(range(m, 2 * m))
    gx = field_partials(field, Z, cfg, xs)
    Hxx = field_partials(field, Z, cfg, xs, second=True)
    Hyy = field_partials(field, Z, cfg, ys, second=True)
    Y = Z.Y
    DXx, DYy = DX[:, :, :m], DY[:, :, m:]
    second = (np.einsum("lm,mac,lbd,cd,ba->", Y, DXx, DXx, Hxx, Y)
              + np.einsum("lm,mac,lbd,cd,ba->", Y, DYy, DYy, Hyy, Y))
    first = np.trace(Y @ np.einsum("jkc,c->jk", DXx, gx))
    return complex(second - 1j * k * first)


def borderline_eigenvalue(alpha: float, beta: float, n: int) -> float:
    """n beta (alpha - (n+1)/2): the lower bound of the spectrum of
    -Delta_{alpha,beta}, attained exactly on the kernel of Lambda_beta."""
    scale = 1 if mutations.active(mutations.UNSCALED_BORDERLINE) else n
    return scale * beta * (alpha - (n + 1) / 2)


def weight_k_eigenvalue(k: float, n: int) -> float:
    """Eigenvalue of Delta_k on det(Y)^{k/2} f for a cusp form f of weight k."""
    return -borderline_eigenvalue(k / 2, -k / 2, n)
