"""Exact integer q-expansions of degree-1 forms (E4, E6, Delta)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import NonIntegralCoefficient, TailBoundExceedsTol, UnsupportedWeight

MAX_ORDER = 64

# -2k/B_k for the supported weights, and zeta(k-1) bounding sigma_{k-1}(m)/m^{k-1}
_EISENSTEIN = {4: (240, 1.2020569031595942), 6: (-504, 1.0369277551433699)}


@dataclass(frozen=True)
class QExpansion:
    """f = sum_{m=0}^{N} a_m q^m with |a_m| <= env_c * m**env_p for m >= 1."""

    weight: int
    coeffs: tuple
    env_c: float
    env_p: float

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("need at least a_0 and a_1")
        if not all(isinstance(a, int) for a in self.coeffs):
            raise TypeError("coefficients must be Python ints")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def to_text(self) -> str:
        """One ``m coefficient`` pair per line."""
        return "".join(f"{m} {a}\n" for m, a in enumerate(self.coeffs))

    @classmethod
    def from_text(cls, text: str, weight: int, env_c: float, env_p: float) -> "QExpansion":
        pairs = sorted((int(m), int(a)) for m, a in (line.split() for line in text.splitlines() if line.strip()))
        if [m for m, _ in pairs] != list(range(len(pairs))):
            raise ValueError("orders must run 0..N without gaps")
        return cls(weight, tuple(a for _, a in pairs), env_c, env_p)


def sigma(m: int, r: int) -> int:
    return sum(d**r for d in range(1, m + 1) if m % d == 0)


def eisenstein_q(k: int, N: int = MAX_ORDER) -> QExpansion:
    """E_k = 1 + (-2k/B_k) sum sigma_{k-1}(m) q^m for k in {4, 6}."""
    if k not in _EISENSTEIN:
        raise UnsupportedWeight(f"weight {k} not supported (use 4 or 6)")
    c, zeta = _EISENSTEIN[k]
    coeffs = (1,) + tuple(c * sigma(m, k - 1) for m in range(1, N + 1))
    return QExpansion(k, coeffs, abs(c) * zeta, k - 1)


def _mul(a, b, N):
    return [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(N + 1)]


def delta_q(N: int = MAX_ORDER) -> QExpansion:
    """Delta = (E4^3 - E6^2) / 1728, divided exactly coefficient by coefficient.

    The envelope |tau(m)| <= d(m) m^{11/2} <= 2 m^6 is Deligne's bound.
    """
    if not 1 <= N <= MAX_ORDER:
        raise ValueError(f"N must lie in 1..{MAX_ORDER}")
    e4 = eisenstein_q(4, N).coeffs
    e6 = eisenstein_q(6, N).coeffs
    num = [x - y for x, y in zip(_mul(_mul(e4, e4, N), e4, N), _mul(e6, e6, N))]
    coeffs = []
    for m, a in enumerate(num):
        q = Fraction(a, 1728)
        if q.denominator != 1:
            raise NonIntegralCoefficient(f"coefficient {m}: {a}/1728")
        coeffs.append(int(q))
    return QExpansion(12, tuple(coeffs), 2.0, 6.0)


def tail_bound(f: QExpansion, y: float) -> float:
    """Bound on sum_{m > N} |a_m| e^{-2 pi m y} from the stored envelope."""
    r = math.exp(-2 * math.pi * y)
    N = f.N
    rho = ((N + 2) / (N + 1)) ** f.env_p * r
    if rho >= 1:
        return math.inf
    return f.env_c * (N + 1) ** f.env_p * r ** (N + 1) / (1 - rho)


def eval_q(f: QExpansion, z: complex, tol: float | None = None) -> tuple[complex, float]:
    """Evaluate the truncated expansion at z; returns (value, tail bound)."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("z must lie in the upper half-plane")
    bound = tail_bound(f, z.imag)
    if tol is not None and bound > tol:
        raise TailBoundExceedsTol(f"tail bound {bound:.3e} exceeds {tol:.3e} at Im z = {z.imag}")
    m = np.arange(f.N + 1)
    q = np.exp(2j * np.pi * m * z)
    return complex(np.dot(np.array(f.coeffs, dtype=float), q)), bound


def eta24_coefficients(N: int) -> list:
    """Coefficients of q prod_{m>=1} (1 - q^m)^24 up to q^N, by direct product."""
    poly = [0] * (N + 1)
    poly[0] = 1
    for m in range(1, N + 1):
        for _ in range(24):
            for i in range(N, m - 1, -1):
                poly[i] -= poly[i - m]
    return [0] + poly[:N]
