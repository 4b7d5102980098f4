"""Randomized smooth test fields.

None of these are holomorphic: each mixes Z and Zbar so that both the
d/dZ and the d/dZbar paths of an identity get exercised.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..matrixcore import SiegelPoint


def _cnormal(rng, shape, scale):
    return scale * (rng.normal(size=shape) + 1j * rng.normal(size=shape))


@dataclass(frozen=True, eq=False)
class GaussianField:
    """exp(-tr(W d W^* d^*) + i tr(V d) + i tr(V' dbar)) with d = Z - Z0."""

    Z0: np.ndarray
    W: np.ndarray
    V: np.ndarray
    Vb: np.ndarray
    label: str = "gaussian"

    @classmethod
    def random(cls, rng: np.random.Generator, center: SiegelPoint, scale: float = 0.4) -> "GaussianField":
        n = center.n
        Z0 = center.Z + _cnormal(rng, (n, n), 0.2)
        Z0 = (Z0 + Z0.T) / 2
        return cls(Z0, _cnormal(rng, (n, n), scale), _cnormal(rng, (n, n), scale), _cnormal(rng, (n, n), scale))

    def __call__(self, P: SiegelPoint) -> complex:
        d = P.Z - self.Z0
        e = (-np.trace(self.W @ d @ self.W.conj().T @ d.conj().T)
             + 1j * np.trace(self.V @ d) + 1j * np.trace(self.Vb @ d.conj()))
        return complex(np.exp(e))

    def conj(self):
        return lambda P: self(P).conjugate()


@dataclass(frozen=True, eq=False)
class PolynomialField:
    """c0 + tr(L1 Z) + tr(L2 Zbar) + tr(Q1 Z Q2 Zbar) + tr(C Z)^3 / 6."""

    c0: complex
    L1: np.ndarray
    L2: np.ndarray
    Q1: np.ndarray
    Q2: np.ndarray
    C: np.ndarray
    label: str = "polynomial"

    @classmethod
    def random(cls, rng: np.random.Generator, n: int, scale: float = 0.5) -> "PolynomialField":
        s = (n, n)
        return cls(complex(_cnormal(rng, (), 1.0)), _cnormal(rng, s, scale), _cnormal(rng, s, scale),
                   _cnormal(rng, s, scale), _cnormal(rng, s, scale), _cnormal(rng, s, scale))

    def __call__(self, P: SiegelPoint) -> complex:
        Z, Zb = P.Z, P.Zbar
        t = np.trace(self.C @ Z)
        return complex(self.c0 + np.trace(self.L1 @ Z) + np.trace(self.L2 @ Zb)
                       + np.trace(self.Q1 @ Z @ self.Q2 @ Zb) + t**3 / 6)


@dataclass(frozen=True, eq=False)
class PolynomialMatrixField:
    """M0 + A1 Z B1 + A2 Zbar B2 + A3 Z Zbar B3: an n x n matrix field."""

    M0: np.ndarray
    terms: tuple
    label: str = "matrix-polynomial"

    @classmethod
    def random(cls, rng: np.random.Generator, n: int, scale: float = 0.5) -> "PolynomialMatrixField":
        s = (n, n)
        terms = tuple(_cnormal(rng, s, scale) for _ in range(6))
        return cls(_cnormal(rng, s, 1.0), terms)

    def __call__(self, P: SiegelPoint) -> np.ndarray:
        A1, B1, A2, B2, A3, B3 = self.terms
        Z, Zb = P.Z, P.Zbar
        return self.M0 + A1 @ Z @ B1 + A2 @ Zb @ B2 + A3 @ Z @ Zb @ B3


def constant_field(c: complex = 1.0):
    return lambda P: complex(c)


def identity_matrix_field(n: int):
    return lambda P: np.eye(n, dtype=complex)
