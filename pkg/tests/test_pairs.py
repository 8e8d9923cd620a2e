import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbdirichlet.errors import DomainError, ValidationError
from hbdirichlet.functions import S0, Polynomial
from hbdirichlet.pairs import (
    PythagoreanPair,
    costara_ransford_pair,
    exponential_pair,
    mate_pair,
    polynomial_type_pair,
    sarason_pair,
)
from hbdirichlet.outer import mean_log_modulus, LogModulusProfile

Z = np.array([0.0, 0.3, -0.5 + 0.2j, 0.1j, 0.7 - 0.6j])


class TestSarason:
    def test_values(self):
        p = sarason_pair(1.0)
        assert p.b.eval(0.0) == 0
        assert complex(p.a.eval(0.0)).real == pytest.approx((np.sqrt(5) - 1) / 2)
        assert p.boundary_residual <= 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            sarason_pair(0.9)


class TestCostaraRansford:
    def test_single_atom(self):
        p = costara_ransford_pair([1.0])
        assert np.allclose(p.b.coeffs, [0.5, 0.5])
        assert np.allclose(p.a.coeffs, [0.5, -0.5])

    def test_two_atoms(self):
        p = costara_ransford_pair([1.0, -1.0])
        assert np.allclose(p.b.coeffs, [0.5, 0, 0.5], atol=1e-7)
        assert np.allclose(p.a.coeffs, [0.5, 0, -0.5])

    def test_duplicate_atoms(self):
        with pytest.raises(ValidationError):
            costara_ransford_pair([1.0, 1.0])

    @given(st.floats(0, 2 * np.pi))
    def test_rotation(self, t):
        zeta = np.exp(1j * t)
        base, rot = costara_ransford_pair([1.0]), costara_ransford_pair([zeta])
        w = np.conj(zeta) * Z
        assert np.max(np.abs(rot.a.eval(Z) - base.a.eval(w))) <= 1e-10
        assert np.max(np.abs(rot.b.eval(Z) - base.b.eval(w))) <= 1e-10


class TestPolynomialType:
    def test_reduces_to_cr(self):
        p, q = polynomial_type_pair([1.0], [1]), costara_ransford_pair([1.0])
        assert np.allclose(p.a.coeffs, q.a.coeffs) and np.allclose(p.b.coeffs, q.b.coeffs)

    def test_double_atom(self):
        p = polynomial_type_pair([1.0], [2])
        assert np.allclose(p.a.coeffs, np.array([1, -2, 1]) / 4)

    def test_roots_of_unity_residual(self):
        p = polynomial_type_pair(np.exp(2j * np.pi * np.arange(3) / 3), [1, 1, 1])
        assert p.boundary_residual <= 1e-8

    def test_bad_multiplicities(self):
        with pytest.raises(ValidationError):
            polynomial_type_pair([1.0], [0])
        with pytest.raises(ValidationError):
            polynomial_type_pair([1.0, -1.0], [1])

    @settings(max_examples=15)
    @given(st.lists(st.floats(0, 2 * np.pi, exclude_max=True), min_size=1, max_size=3), st.lists(st.integers(1, 3), min_size=3, max_size=3))
    def test_b_unimodular_at_atoms(self, angles, mults):
        angles = np.sort(angles)
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
        if angles.size > 1 and gaps.min() < 0.3:
            return
        pair = polynomial_type_pair(np.exp(1j * angles), mults[: angles.size])
        radial = np.abs(pair.b.eval((1 - 1e-9) * np.exp(1j * angles)))
        assert np.max(np.abs(radial - 1)) <= 1e-6


class TestExponential:
    def test_values(self):
        p = exponential_pair(1, 4096)
        assert complex(p.b.eval(0.0)).real == pytest.approx(np.exp(-1))
        theta = np.linspace(0, 2 * np.pi, 1001)
        mod = np.abs(p.b.boundary_values(theta))
        assert np.allclose(mod, np.exp(np.cos(theta) - 1))
        assert np.max(mod) <= 1

    def test_non_extreme(self):
        b = exponential_pair(2, 4096).b
        prof = LogModulusProfile.from_function(lambda t: np.log(-np.expm1(2 * (np.cos(2 * t) - 1)) + 0.0), 4096)
        assert np.isfinite(mean_log_modulus(prof))

    def test_bad_n(self):
        with pytest.raises(ValidationError):
            exponential_pair(0)


def test_invalid_pair_rejected():
    with pytest.raises(ValidationError):
        PythagoreanPair(Polynomial([0.5]), Polynomial([0.5]))
    with pytest.raises(ValidationError):
        PythagoreanPair(Polynomial([0.5, 0.5]), Polynomial([-0.5, 0.5]))


def test_mate_pair_records_zeros():
    p = mate_pair(Polynomial([0.5, 0.5]))
    assert p.numerical
    assert len(p.meta["atoms"]) == 1 and abs(p.meta["atoms"][0] - 1) < 1e-9
