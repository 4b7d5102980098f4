"""Symmetric matrix helpers and the :class:`SiegelPoint` type.

Symmetric matrices are plain numpy arrays rebuilt from their upper triangle,
so the independent coordinates are always ``{m[j, k] : j <= k}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotPositiveDefinite, Singular, SizeMismatch

PD_TOL = 1e-10
MAX_DEGREE = 4


@dataclass(frozen=True)
class Tolerances:
    pd_tol: float = PD_TOL
    eq_tol: float = 1e-10
    fd_tol_1: float = 1e-6
    fd_tol_2: float = 1e-4

    def __post_init__(self):
        for name in ("pd_tol", "eq_tol", "fd_tol_1", "fd_tol_2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


def sym_from_upper(m, dtype=float) -> np.ndarray:
    """Return the symmetric matrix whose upper triangle is that of ``m``."""
    m = np.atleast_2d(np.asarray(m, dtype=dtype))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {m.shape}")
    upper = np.triu(m)
    out = upper + np.triu(m, 1).T
    out.setflags(write=False)
    return out


def symmetrize(m) -> np.ndarray:
    m = np.asarray(m)
    return (m + m.T) / 2


def upper_indices(n: int) -> list[tuple[int, int]]:
    """Index pairs (j, k) with j <= k in row-major order."""
    return [(j, k) for j in range(n) for k in range(j, n)]


def _check_degree(n: int):
    if not 1 <= n <= MAX_DEGREE:
        raise SizeMismatch(f"degree {n} outside supported range 1..{MAX_DEGREE}")


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point Z = X + iY of the Siegel upper half-space.

    Build with :func:`make_siegel_point` (or :meth:`from_z`) so that the
    symmetry and positivity checks run.
    """

    X: np.ndarray
    Y: np.ndarray

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @cached_property
    def Z(self) -> np.ndarray:
        z = self.X + 1j * self.Y
        z.setflags(write=False)
        return z

    @property
    def Zbar(self) -> np.ndarray:
        return self.Z.conj()

    @cached_property
    def Q(self) -> np.ndarray:
        """Z - Zbar = 2iY."""
        return 2j * self.Y

    @cached_property
    def det_y(self) -> float:
        return float(np.linalg.det(self.Y))

    @cached_property
    def y_inv(self) -> np.ndarray:
        return np.linalg.inv(self.Y)

    @cached_property
    def lambda_min(self) -> float:
        return float(np.linalg.eigvalsh(self.Y)[0])

    def coords(self) -> np.ndarray:
        """Real coordinate vector (x_jk for j<=k, then y_jk for j<=k)."""
        idx = upper_indices(self.n)
        return np.array([self.X[j, k] for j, k in idx] + [self.Y[j, k] for j, k in idx])

    @classmethod
    def from_coords(cls, u, n: int, pd_tol: float = PD_TOL) -> "SiegelPoint":
        u = np.asarray(u, dtype=float)
        m = n * (n + 1) // 2
        if u.shape != (2 * m,):
            raise SizeMismatch(f"expected {2 * m} coordinates for degree {n}")
        X = np.zeros((n, n))
        Y = np.zeros((n, n))
        for i, (j, k) in enumerate(upper_indices(n)):
            X[j, k] = u[i]
            Y[j, k] = u[m + i]
        return make_siegel_point(X, Y, pd_tol=pd_tol)

    @classmethod
    def from_z(cls, Z, pd_tol: float = PD_TOL) -> "SiegelPoint":
        Z = np.atleast_2d(np.asarray(Z, dtype=complex))
        return make_siegel_point(Z.real, Z.imag, pd_tol=pd_tol)

    def __repr__(self):
        return f"SiegelPoint(n={self.n}, Z={np.array2string(self.Z, precision=4)})"


def make_siegel_point(X, Y, pd_tol: float = PD_TOL) -> SiegelPoint:
    X = sym_from_upper(X)
    Y = sym_from_upper(Y)
    if X.shape != Y.shape:
        raise SizeMismatch(f"X has shape {X.shape}, Y has shape {Y.shape}")
    _check_degree(X.shape[0])
    lam = np.linalg.eigvalsh(Y)[0]
    if not lam > pd_tol:
        raise NotPositiveDefinite(f"smallest eigenvalue of Y is {lam:.3e}")
    return SiegelPoint(X, Y)


def cdet(m) -> complex:
    """Determinant by pivoted LU."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {m.shape}")
    return complex(np.linalg.det(m))


def cinv(m, rcond: float = 1e-14) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {m.shape}")
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0 or s[-1] / s[0] < rcond:
        raise Singular("matrix is numerically singular")
    return np.linalg.inv(m)


def pd_sqrt(Y, pd_tol: float = PD_TOL) -> np.ndarray:
    """Symmetric positive-definite square root via eigendecomposition."""
    Y = sym_from_upper(Y)
    w, v = np.linalg.eigh(Y)
    if not w[0] > pd_tol:
        raise NotPositiveDefinite(f"smallest eigenvalue {w[0]:.3e}")
    r = (v * np.sqrt(w)) @ v.T
    return symmetrize(r)


def random_pd(rng: np.random.Generator, n: int, lam_min: float = 0.5, spread: float = 1.0) -> np.ndarray:
    """Random symmetric matrix with eigenvalues in [lam_min, lam_min + spread]."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    w = lam_min + spread * rng.random(n)
    return symmetrize((q * w) @ q.T)


def random_point(rng: np.random.Generator, n: int, lam_min: float = 0.5, spread: float = 1.0,
                 x_scale: float = 0.5) -> SiegelPoint:
    X = rng.uniform(-x_scale, x_scale, size=(n, n))
    return make_siegel_point(symmetrize(X), random_pd(rng, n, lam_min, spread))
