import numpy as np
import pytest
from hypothesis import given, strategies as st

from siegelmaass.errors import NotPositiveDefinite, Singular, SizeMismatch
from siegelmaass.matrixcore import (Tolerances, cdet, cinv, make_siegel_point, pd_sqrt, random_pd,
                                    random_point, sym_from_upper, SiegelPoint)

seeds = st.integers(0, 2**32 - 1)
degrees = st.integers(1, 4)


def test_point_i_in_degree_one():
    P = make_siegel_point([[0.0]], [[1.0]])
    assert P.n == 1
    assert P.Z[0, 0] == 1j


def test_point_i_identity_in_degree_two():
    P = make_siegel_point(np.zeros((2, 2)), np.eye(2))
    assert np.array_equal(P.Z, 1j * np.eye(2))


def test_negative_y_rejected():
    with pytest.raises(NotPositiveDefinite):
        make_siegel_point([[0.0]], [[-1.0]])


def test_shape_mismatch_rejected():
    with pytest.raises(SizeMismatch):
        make_siegel_point(np.zeros((2, 2)), np.eye(3))


def test_degree_above_four_rejected():
    with pytest.raises(SizeMismatch):
        make_siegel_point(np.zeros((5, 5)), np.eye(5))


def test_storage_is_canonical_upper_triangle():
    m = np.array([[1.0, 2.0], [7.0, 3.0]])
    s = sym_from_upper(m)
    assert s[1, 0] == s[0, 1] == 2.0
    P = make_siegel_point(m, [[2.0, 0.5], [99.0, 2.0]])
    assert P.Y[1, 0] == P.Y[0, 1] == 0.5
    assert np.array_equal(P.Z, P.Z.T)


def test_coords_round_trip(rng):
    P = random_point(rng, 3)
    Q = SiegelPoint.from_coords(P.coords(), 3)
    assert np.array_equal(P.Z, Q.Z)


def test_tolerances_must_be_positive():
    assert Tolerances().fd_tol_2 == 1e-4
    with pytest.raises(ValueError):
        Tolerances(eq_tol=0.0)


def test_cdet_examples():
    assert cdet(np.eye(3)) == pytest.approx(1.0)
    P = make_siegel_point(np.zeros((2, 2)), np.eye(2))
    assert cdet(P.Z - P.Zbar) == pytest.approx(-4.0)
    assert cdet(np.diag([2j, 3j])) == pytest.approx(-6.0)


def test_cinv_examples():
    assert np.allclose(cinv(np.eye(2)), np.eye(2))
    assert np.allclose(cinv(2j * np.eye(2)), -0.5j * np.eye(2))
    with pytest.raises(Singular):
        cinv(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_pd_sqrt_examples():
    assert np.allclose(pd_sqrt(np.eye(2)), np.eye(2))
    assert np.allclose(pd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    with pytest.raises(NotPositiveDefinite):
        pd_sqrt(np.diag([1.0, 0.0]))


@given(seeds, degrees)
def test_pd_sqrt_squares_back(seed, n):
    Y = random_pd(np.random.default_rng(seed), n)
    r = pd_sqrt(Y)
    assert np.max(np.abs(r @ r - Y)) < 1e-12


@given(seeds, degrees)
def test_det_of_z_minus_zbar(seed, n):
    P = random_point(np.random.default_rng(seed), n)
    lhs = cdet(P.Z - P.Zbar)
    rhs = (2j) ** n * np.linalg.det(P.Y)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@given(seeds, degrees)
def test_det_inverse_consistency(seed, n):
    rng = np.random.default_rng(seed)
    M = np.eye(n) * 3 + rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if np.linalg.cond(M) > 1e3:
        return
    assert abs(cdet(cinv(M)) * cdet(M) - 1) < 1e-10
