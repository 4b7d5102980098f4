"""Explicit cusp forms and the lift f -> det(Y)^{k/2} f."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..matrixcore import SiegelPoint
from .qexpansion import QExpansion, delta_q, eisenstein_q, eta24_coefficients, eval_q, sigma, tail_bound
from .theta import (ThetaCharacteristic, TruncationCert, chi10, even_characteristics, theta_constant,
                    truncation_bound)

_DELTA = delta_q()


def delta_form(P: SiegelPoint) -> complex:
    """Delta on the degree-1 half-space, as a field on 1x1 points."""
    return eval_q(_DELTA, complex(P.Z[0, 0]))[0]


def chi10_form(P: SiegelPoint) -> complex:
    return chi10(P)


@dataclass(frozen=True)
class MaassLift:
    """Z -> det(Y)^{k/2} f(Z)."""

    base: Callable[[SiegelPoint], complex]
    k: float
    n: int

    def __call__(self, P: SiegelPoint) -> complex:
        return P.det_y ** (self.k / 2) * self.base(P)


def maass_lift(f: Callable[[SiegelPoint], complex], k: float, n: int) -> MaassLift:
    return MaassLift(f, k, n)


__all__ = [
    "QExpansion", "delta_q", "eisenstein_q", "eta24_coefficients", "eval_q", "sigma", "tail_bound",
    "ThetaCharacteristic", "TruncationCert", "chi10", "even_characteristics", "theta_constant",
    "truncation_bound", "delta_form", "chi10_form", "MaassLift", "maass_lift",
]
