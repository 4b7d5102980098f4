"""Central finite differences in the real coordinates of the half-space.

A point of degree n has N = n(n+1) coordinates: the x_jk with j <= k
followed by the y_jk with j <= k (see ``SiegelPoint.coords``).  Fields are
callables taking a :class:`SiegelPoint` and returning a complex scalar or a
complex array.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import StepUnderflow
from ..matrixcore import SiegelPoint, pd_sqrt, upper_indices

Field = Callable[[SiegelPoint], "complex | np.ndarray"]

SCHEMES = ("mixed9",)


@dataclass(frozen=True)
class FDConfig:
    """Step policy.

    ``h_rel`` drives first derivatives, ``h2_rel`` second derivatives.  Steps
    are taken in the frame T of :func:`adapted_frame` (Z = Z0 + R T R with
    R = Y^{1/2}), where the invariant metric is Euclidean, so a step of h in
    T is a step of length h for every point and direction.  With
    ``richardson`` one extrapolation level (h, h/2) is applied.
    """

    h_rel: float = 1e-5
    h2_rel: float = 2e-3
    richardson: bool = True
    second_order_scheme: str = "mixed9"

    def __post_init__(self):
        for name in ("h_rel", "h2_rel"):
            h = getattr(self, name)
            if not 1e-9 < h < 1e-2:
                raise ValueError(f"{name}={h} outside (1e-9, 1e-2)")
        if self.second_order_scheme not in SCHEMES:
            raise ValueError(f"unknown second-order scheme {self.second_order_scheme!r}")


DEFAULT_FD = FDConfig()


def coordinate_function(field: Field, n: int) -> Callable[[np.ndarray], np.ndarray]:
    def f(u):
        return np.asarray(field(SiegelPoint.from_coords(u, n)), dtype=complex)
    return f


def _steps(u: np.ndarray, h_rel: float) -> np.ndarray:
    h = h_rel * (1.0 + np.abs(u))
    if np.any((u + h) - u == 0) or np.any(h < 1e3 * np.finfo(float).eps * (1.0 + np.abs(u))):
        raise StepUnderflow(f"step {h.min():.3e} is not resolvable")
    return h


def _extrapolate(coarse, fine, richardson):
    return (4.0 * fine - coarse) / 3.0 if richardson else fine


def gradient(f, u, h_rel: float, richardson: bool = True, idx: Sequence[int] | None = None) -> np.ndarray:
    """Raw partials of ``f`` at ``u``; output shape (len(idx), *f(u).shape)."""
    u = np.asarray(u, dtype=float)
    idx = range(len(u)) if idx is None else idx
    h_all = _steps(u, h_rel)

    def central(c, h):
        e = np.zeros_like(u)
        e[c] = h
        return (f(u + e) - f(u - e)) / (2 * h)

    out = []
    for c in idx:
        h = h_all[c]
        if richardson:
            out.append(_extrapolate(central(c, h), central(c, h / 2), True))
        else:
            out.append(central(c, h))
    return np.array(out)


def hessian(f, u, h_rel: float, richardson: bool = True, idx: Sequence[int] | None = None,
            f0=None) -> np.ndarray:
    """Second partials over the coordinates ``idx`` (all by default).

    Diagonal entries use the 3-point stencil, mixed entries the corner
    points of the 3x3 grid.
    """
    u = np.asarray(u, dtype=float)
    idx = list(range(len(u)) if idx is None else idx)
    h_all = _steps(u, h_rel)
    if f0 is None:
        f0 = f(u)

    def shifted(pairs):
        e = np.zeros_like(u)
        for c, s in pairs:
            e[c] += s
        return f(u + e)

    def level(scale):
        m = len(idx)
        H = np.empty((m, m) + np.shape(f0), dtype=complex)
        for a, c in enumerate(idx):
            hc = h_all[c] * scale
            H[a, a] = (shifted([(c, hc)]) - 2 * f0 + shifted([(c, -hc)])) / hc**2
            for b in range(a + 1, m):
                d = idx[b]
                hd = h_all[d] * scale
                val = (shifted([(c, hc), (d, hd)]) - shifted([(c, hc), (d, -hd)])
                       - shifted([(c, -hc), (d, hd)]) + shifted([(c, -hc), (d, -hd)])) / (4 * hc * hd)
                H[a, b] = val
                H[b, a] = val
        return H

    if richardson:
        return _extrapolate(level(1.0), level(0.5), True)
    return level(1.0)


@dataclass(frozen=True)
class Jet:
    """Value, raw gradient and raw Hessian of a scalar field at a point."""

    point: SiegelPoint
    value: complex
    grad: np.ndarray
    hess: np.ndarray | None = None


def adapted_frame(Z: SiegelPoint) -> np.ndarray:
    """Matrix L with Z.coords() + L t = coords of Z + R T R, R = Y^{1/2}.

    t holds the upper-triangle coordinates of Re T followed by those of
    Im T; L is block diagonal with the same block for X and Y.
    """
    n = Z.n
    R = pd_sqrt(Z.Y)
    idx = upper_indices(n)
    m = len(idx)
    S = np.empty((m, m))
    for i, (j, k) in enumerate(idx):
        E = np.zeros((n, n))
        E[j, k] = E[k, j] = 1.0
        RER = R @ E @ R
        S[:, i] = [RER[a, b] for a, b in idx]
    L = np.zeros((2 * m, 2 * m))
    L[:m, :m] = S
    L[m:, m:] = S
    return L


class _Frame:
    """Field composed with t -> Z0 + R T R, plus the maps back to raw partials."""

    def __init__(self, field: Field, Z: SiegelPoint):
        self.u0 = Z.coords()
        self.L = adapted_frame(Z)
        self.Linv = np.linalg.inv(self.L)
        n = Z.n
        u0, L = self.u0, self.L
        scale = np.finfo(float).eps * (1.0 + np.max(np.abs(u0)))
        self._min_col = float(np.min(np.max(np.abs(L), axis=0))) / scale

        def f(t):
            return np.asarray(field(SiegelPoint.from_coords(u0 + L @ t, n)), dtype=complex)
        self.f = f
        self.t0 = np.zeros_like(u0)

    def check(self, h: float):
        if h * self._min_col < 1e3:
            raise StepUnderflow(f"step {h:.3e} is not resolvable at this point")

    def block(self, idx):
        # idx must select whole X or Y blocks, where L is block diagonal
        return self.Linv[np.ix_(idx, idx)]

    def grad(self, h_rel, richardson, idx=None):
        self.check(h_rel)
        idx = list(range(len(self.u0)) if idx is None else idx)
        gt = gradient(self.f, self.t0, h_rel, richardson, idx=idx)
        return np.tensordot(self.block(idx).T, gt, axes=1)

    def hess(self, h_rel, richardson, idx=None, f0=None):
        self.check(h_rel)
        idx = list(range(len(self.u0)) if idx is None else idx)
        Ht = hessian(self.f, self.t0, h_rel, richardson, idx=idx, f0=f0)
        B = self.block(idx)
        return np.einsum("ca,cd...,db->ab...", B, Ht, B)


def field_gradient(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD) -> np.ndarray:
    """Raw partials d/du_c of a scalar or matrix field."""
    return _Frame(field, Z).grad(cfg.h_rel, cfg.richardson)


def field_partials(field: Field, Z: SiegelPoint, cfg: FDConfig, idx: Sequence[int], second: bool = False):
    """Raw first (step h_rel) or second (step h2_rel) partials over a whole
    coordinate block ``idx`` (all x's or all y's)."""
    fr = _Frame(field, Z)
    if second:
        return fr.hess(cfg.h2_rel, cfg.richardson, idx=idx)
    return fr.grad(cfg.h_rel, cfg.richardson, idx=idx)


def scalar_jet(field: Field, Z: SiegelPoint, cfg: FDConfig = DEFAULT_FD, second: bool = True) -> Jet:
    fr = _Frame(field, Z)
    value = complex(fr.f(fr.t0))
    grad = fr.grad(cfg.h_rel, cfg.richardson)
    hess = fr.hess(cfg.h2_rel, cfg.richardson, f0=np.asarray(value)) if second else None
    return Jet(Z, value, grad, hess)
