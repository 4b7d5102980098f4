"""Switches that deliberately break one formula each.

The verification suites must notice every one of them; this module exists
only so that claim can be tested.
"""
from __future__ import annotations

from contextlib import contextmanager

DROP_SYM_WEIGHT = "drop_sym_weight"          # (1 + delta_jk)/2 weighting of derivative matrices
DROP_OMEGA_SHIFT = "drop_omega_shift"        # (n + 1)/2 shift inside Omega
UNSCALED_BORDERLINE = "unscaled_borderline"  # beta(alpha - (n+1)/2) without the factor n
WRONG_COCYCLE_SIDE = "wrong_cocycle_side"    # swapped factors in the K transformation law
FLIP_LAPLACIAN_SIGN = "flip_laplacian_sign"  # Delta = +tr(Omega)

ALL = (DROP_SYM_WEIGHT, DROP_OMEGA_SHIFT, UNSCALED_BORDERLINE, WRONG_COCYCLE_SIDE, FLIP_LAPLACIAN_SIGN)

_active: frozenset = frozenset()


def active(name: str) -> bool:
    return name in _active


@contextmanager
def inject(*names: str):
    """Activate the named mutations for the duration of the block.

    Process-global; not meant to be combined with concurrent runs that
    expect unmutated operators.
    """
    global _active
    unknown = set(names) - set(ALL)
    if unknown:
        raise ValueError(f"unknown mutation(s): {sorted(unknown)}")
    previous = _active
    _active = previous | frozenset(names)
    try:
        yield
    finally:
        _active = previous
