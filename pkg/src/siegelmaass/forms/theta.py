"""Genus-2 theta constants with characteristics and the cusp form chi_10."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import SizeMismatch, TruncationFailure
from ..matrixcore import SiegelPoint

R_CAP = 40
CHI10_NORMALIZATION = -(2.0**-12)


@dataclass(frozen=True)
class ThetaCharacteristic:
    a: tuple
    b: tuple

    def __post_init__(self):
        for v in self.a + self.b:
            if Fraction(v) not in (0, Fraction(1, 2)):
                raise ValueError("characteristic entries must be 0 or 1/2")

    @property
    def parity(self) -> int:
        """4 a.b mod 2; 0 for even characteristics."""
        return int(4 * sum(Fraction(x) * Fraction(y) for x, y in zip(self.a, self.b))) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0


@dataclass(frozen=True)
class TruncationCert:
    """The sum over max|v_i| <= radius differs from the full sum by at most bound."""

    radius: int
    bound: float


def all_characteristics():
    half = (0.0, 0.5)
    return [ThetaCharacteristic(a, b) for a in itertools.product(half, repeat=2)
            for b in itertools.product(half, repeat=2)]


def even_characteristics() -> list:
    return [m for m in all_characteristics() if m.is_even]


def truncation_bound(radius: int, lam: float) -> float:
    """Tail of sum_{w in Z^2 + a} exp(-pi lam |w|^2) outside the box max|v_i| <= radius.

    Excluded points have some |w_i| >= s = radius + 1/2.  Each 1-d tail is at
    most 2 e^{-pi lam s^2} / (1 - e^{-2 pi lam s}) and each full 1-d sum at
    most 2 + lam^{-1/2}; the union over the two axes doubles the product.
    """
    s = radius + 0.5
    one_tail = 2 * math.exp(-math.pi * lam * s * s) / (1 - math.exp(-2 * math.pi * lam * s))
    return 2 * one_tail * (2 + 1 / math.sqrt(lam))


def choose_radius(lam: float, tol: float, cap: int = R_CAP) -> TruncationCert:
    for R in range(1, cap + 1):
        b = truncation_bound(R, lam)
        if b < tol:
            return TruncationCert(R, b)
    raise TruncationFailure(f"radius above {cap} needed for tol {tol:.1e} at lambda_min {lam:.3g}")


def theta_sum(m: ThetaCharacteristic, Z: np.ndarray, radius: int) -> complex:
    v = np.arange(-radius, radius + 1)
    w1, w2 = np.meshgrid(v + m.a[0], v + m.a[1], indexing="ij")
    quad = Z[0, 0] * w1 * w1 + 2 * Z[0, 1] * w1 * w2 + Z[1, 1] * w2 * w2
    lin = 2 * (w1 * m.b[0] + w2 * m.b[1])
    return complex(np.exp(1j * np.pi * (quad + lin)).sum())


def theta_constant(m: ThetaCharacteristic, Z: SiegelPoint, tol: float = 1e-16,
                   radius: int | None = None) -> tuple[complex, TruncationCert]:
    """theta[a, b](Z) = sum_{v in Z^2} exp(pi i ((v+a)^t Z (v+a) + 2 (v+a)^t b))."""
    if Z.n != 2:
        raise SizeMismatch("theta constants are implemented for degree 2")
    lam = Z.lambda_min
    cert = choose_radius(lam, tol) if radius is None else TruncationCert(radius, truncation_bound(radius, lam))
    return theta_sum(m, Z.Z, cert.radius), cert


def chi10(Z: SiegelPoint, tol: float = 1e-16, c: float = CHI10_NORMALIZATION) -> complex:
    """c times the product of the squares of the ten even theta constants."""
    if Z.n != 2:
        raise SizeMismatch("chi10 is a degree-2 form")
    cert = choose_radius(Z.lambda_min, tol)
    out = complex(c)
    for m in even_characteristics():
        out *= theta_sum(m, Z.Z, cert.radius) ** 2
    return out
