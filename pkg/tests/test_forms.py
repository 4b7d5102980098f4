import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from siegelmaass.errors import SizeMismatch, TailBoundExceedsTol, TruncationFailure, UnsupportedWeight
from siegelmaass.forms import (QExpansion, chi10, delta_form, delta_q, eisenstein_q, eta24_coefficients, eval_q,
                               even_characteristics, maass_lift, theta_constant)
from siegelmaass.forms.theta import ThetaCharacteristic, all_characteristics, choose_radius, theta_sum
from siegelmaass.maassops import apply_Lambda
from siegelmaass.maassops.checks import automorphy_factor
from siegelmaass.matrixcore import make_siegel_point, random_point
from siegelmaass.symplectic import act, cocycle, random_symplectic

# Ramanujan tau(1..20), frozen from a separate expansion of q prod (1 - q^m)^24
TAU = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944, -577738,
       401856, 1217160, 987136, -6905934, 2727432, 10661420, -7109760)
seeds = st.integers(0, 2**32 - 1)


def test_eisenstein_coefficients():
    e4, e6 = eisenstein_q(4, 10), eisenstein_q(6, 10)
    assert e4.coeffs[:3] == (1, 240, 2160)
    assert e6.coeffs[1] == -504
    with pytest.raises(UnsupportedWeight):
        eisenstein_q(8)


def test_delta_coefficients():
    d = delta_q(20)
    assert d.coeffs[0] == 0
    assert d.coeffs[1:] == TAU
    assert tuple(eta24_coefficients(20)) == d.coeffs


def test_qexpansion_text_round_trip():
    d = delta_q(12)
    assert QExpansion.from_text(d.to_text(), 12, d.env_c, d.env_p) == d


def test_delta_decays_along_imaginary_axis():
    vals = [abs(eval_q(delta_q(), 1j * y)[0]) for y in (1.0, 1.5, 2.0, 3.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] / math.exp(-2 * math.pi * 3.0) == pytest.approx(1.0, rel=1e-6)


def test_delta_modular_relations():
    z = 0.3 + 1.1j
    assert abs(eval_q(delta_q(), -1 / z)[0] - z**12 * eval_q(delta_q(), z)[0]) < 1e-10
    assert eval_q(delta_q(), z + 1)[0] == pytest.approx(eval_q(delta_q(), z)[0], abs=1e-15)


def test_tail_bound_enforced():
    with pytest.raises(TailBoundExceedsTol):
        eval_q(delta_q(8), 0.05j, tol=1e-12)


def test_even_characteristics():
    even = even_characteristics()
    assert len(all_characteristics()) == 16
    assert len(even) == 10
    assert ThetaCharacteristic((0, 0), (0, 0)) in even
    assert ThetaCharacteristic((0.5, 0), (0.5, 0)) not in even


def test_theta_factorizes_at_i():
    iI = make_siegel_point(np.zeros((2, 2)), np.eye(2))
    theta3_i = math.pi**0.25 / math.gamma(0.75)
    val, cert = theta_constant(ThetaCharacteristic((0, 0), (0, 0)), iI)
    assert val == pytest.approx(theta3_i**2, rel=1e-14)
    assert cert.bound < 1e-16


def test_theta_truncation_and_radius():
    Z = make_siegel_point([[0.1, 0.2], [0.2, -0.3]], [[1.0, 0.3], [0.3, 0.8]])
    for m in even_characteristics():
        v, cert = theta_constant(m, Z, tol=1e-12)
        assert abs(v - theta_sum(m, Z.Z, 2 * cert.radius)) <= cert.bound + 1e-14
    with pytest.raises(TruncationFailure):
        choose_radius(1e-4, 1e-16)


@given(seeds)
def test_theta_symmetries(seed):
    rng = np.random.default_rng(seed)
    Z = random_point(rng, 2, lam_min=0.6)
    B = rng.integers(-2, 3, size=(2, 2))
    B = np.triu(B) + np.triu(B, 1).T
    mirror = make_siegel_point(-Z.X, Z.Y)
    shifted = make_siegel_point(Z.X + 2 * B, Z.Y)
    for m in even_characteristics():
        v = theta_constant(m, Z)[0]
        assert theta_constant(m, mirror)[0] == pytest.approx(np.conj(v), abs=1e-13)
        a = np.array(m.a)
        phase = np.exp(2j * np.pi * a @ B @ a)
        assert theta_constant(m, shifted)[0] == pytest.approx(phase * v, abs=1e-12)


def test_chi10_vanishes_on_diagonal():
    Z = make_siegel_point([[0.2, 0.0], [0.0, -0.4]], [[0.9, 0.0], [0.0, 1.3]])
    off = make_siegel_point([[0.2, 0.1], [0.1, -0.4]], [[0.9, 0.2], [0.2, 1.3]])
    assert abs(chi10(Z)) < 1e-20 * abs(chi10(off))


def test_chi10_requires_degree_two(rng):
    with pytest.raises(SizeMismatch):
        chi10(random_point(rng, 1))


def test_chi10_cusp_decay():
    X = np.array([[0.13, -0.21], [-0.21, 0.37]])
    vals = [abs(chi10(make_siegel_point(X, t * np.eye(2)))) for t in (1, 2, 3, 4)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-20


@given(seeds)
def test_chi10_equivariance(seed):
    rng = np.random.default_rng(seed)
    Z = random_point(rng, 2, lam_min=0.8, spread=0.6)
    g = random_symplectic(rng, 2, word_length=int(rng.integers(1, 5)))
    W = act(g, Z)
    if W.lambda_min < 0.05:
        return
    lhs, rhs = chi10(W), cocycle(g, Z) ** 10 * chi10(Z)
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


def test_lift_of_constant():
    lift = maass_lift(lambda P: 1.0, 0, 2)
    assert lift(make_siegel_point(np.zeros((2, 2)), 2 * np.eye(2))) == 1.0


@given(seeds)
def test_delta_lift_has_invariant_modulus(seed):
    rng = np.random.default_rng(seed)
    z = make_siegel_point([[rng.uniform(-0.5, 0.5)]], [[rng.uniform(0.8, 1.5)]])
    g = random_symplectic(rng, 1, word_length=int(rng.integers(1, 5)))
    w = act(g, z)
    if w.Y[0, 0] < 0.3:
        return
    lift = maass_lift(delta_form, 12, 1)
    assert abs(abs(lift(w)) - abs(lift(z))) <= 1e-10 * abs(lift(z))


def test_chi10_lift_automorphy(rng):
    Z = random_point(rng, 2, lam_min=0.8)
    g = random_symplectic(rng, 2, word_length=3)
    lift = maass_lift(chi10, 10, 2)
    want = automorphy_factor(g, Z, 5, -5) * lift(Z)
    assert abs(lift(act(g, Z)) - want) < 1e-7 * abs(want)


def test_lifts_are_killed_by_lowering():
    z = make_siegel_point([[0.17]], [[1.1]])
    phi = maass_lift(delta_form, 12, 1)
    assert np.max(np.abs(apply_Lambda(phi, -6, z))) < 1e-6 * abs(phi(z))
    Z = make_siegel_point([[0.1, -0.2], [-0.2, 0.3]], [[1.3, 0.3], [0.3, 1.4]])
    phi = maass_lift(chi10, 10, 2)
    assert np.max(np.abs(apply_Lambda(phi, -5, Z))) < 1e-6 * abs(phi(Z))
