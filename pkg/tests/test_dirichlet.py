import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbdirichlet.dirichlet import (
    QuadratureSpec,
    cauchy_norm_dmu,
    cauchy_norm_hb,
    dirichlet_mu,
    dirichlet_mu_area,
    dmu_norm_sq,
    hardy_norm_sq,
    local_dirichlet,
    rk_hb_norm_sq,
)
from hbdirichlet.errors import DomainError, ValidationError
from hbdirichlet.functions import S0, Polynomial, cauchy_kernel, constant, identity, poly_divide_linear
from hbdirichlet.measures import AtomicMeasure
from hbdirichlet.pairs import PythagoreanPair, costara_ransford_pair, sarason_pair

from strategies import complex_coeffs

D1 = AtomicMeasure.unit([1.0])
Z2 = Polynomial([0, 0, 1])


def local_oracle(c, zeta):
    # D_zeta(f) = || (f - f(zeta)) / (z - zeta) ||_{H^2}^2
    q, _ = poly_divide_linear(c, zeta)
    return float(np.sum(np.abs(q.coeffs) ** 2))


class TestLocal:
    @pytest.mark.parametrize("zeta", [1.0, 1j, np.exp(2.1j)])
    def test_identity(self, zeta):
        assert local_dirichlet(identity(), zeta) == pytest.approx(1.0, abs=1e-12)

    def test_constant(self):
        assert local_dirichlet(constant(3.0), 1.0) == 0

    def test_z_squared(self):
        assert local_dirichlet(Z2, 1.0) == pytest.approx(2.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            local_dirichlet(identity(), 0.5)

    def test_unresolved_growth_is_infinite(self):
        # the kernel at a point this close to the atom keeps growing under grid doubling
        assert local_dirichlet(cauchy_kernel(1 - 1e-7), 1.0, QuadratureSpec(boundary_size=1024)) == np.inf

    def test_cauchy_kernel_value(self):
        # |w|^2 V(w) / (1 - |w|^2) at w = 1/2
        assert local_dirichlet(cauchy_kernel(0.5), 1.0, QuadratureSpec(boundary_size=1024)) == pytest.approx(4 / 3, rel=1e-12)

    @settings(max_examples=30)
    @given(complex_coeffs(min_size=2, max_size=9), st.floats(0, 2 * np.pi))
    def test_taylor_oracle(self, c, t):
        zeta = np.exp(1j * t)
        if not np.any(c):
            return
        ref = local_oracle(c, zeta)
        got = local_dirichlet(Polynomial(c), zeta, QuadratureSpec(boundary_size=1024))
        assert got == pytest.approx(ref, rel=1e-9, abs=1e-12)


class TestMu:
    def test_two_atoms(self):
        assert dirichlet_mu(identity(), AtomicMeasure.unit([1.0, -1.0])) == pytest.approx(2.0)

    def test_constant(self):
        assert dirichlet_mu(constant(1.0), AtomicMeasure.unit([1.0, 1j])) == 0

    def test_z_squared(self):
        assert dirichlet_mu(Z2, D1) == pytest.approx(2.0)

    @pytest.mark.parametrize("f,expected", [(identity(), 1.0), (constant(2.0), 0.0), (Z2, 2.0)])
    def test_area_form(self, f, expected):
        assert dirichlet_mu_area(f, D1) == pytest.approx(expected, abs=1e-3)

    @settings(max_examples=10)
    @given(complex_coeffs(min_size=2, max_size=9), st.lists(st.floats(0, 2 * np.pi, exclude_max=True), min_size=1, max_size=4, unique=True))
    def test_area_matches_boundary(self, c, angles):
        angles = np.sort(angles)
        if angles.size > 1 and np.min(np.diff(angles)) < 1e-2:
            return
        f = Polynomial(c)
        mu = AtomicMeasure.unit(np.exp(1j * angles))
        ref = dirichlet_mu(f, mu)
        area = dirichlet_mu_area(f, mu)
        assert abs(area - ref) <= 1e-2 * max(ref, 1e-8) + 1e-10

    @settings(max_examples=20)
    @given(complex_coeffs(min_size=2, max_size=6), complex_coeffs(min_size=2, max_size=6))
    def test_additivity_over_atoms(self, c, _):
        f = Polynomial(c)
        m1, m2 = AtomicMeasure([1.0], [1.5]), AtomicMeasure([-1j], [0.5])
        both = AtomicMeasure([1.0, -1j], [1.5, 0.5])
        q = QuadratureSpec(boundary_size=1024)
        assert dirichlet_mu(f, both, q) == pytest.approx(dirichlet_mu(f, m1, q) + dirichlet_mu(f, m2, q), rel=1e-10, abs=1e-14)


class TestNorms:
    def test_one(self):
        assert dmu_norm_sq(constant(1.0), D1) == pytest.approx(1.0)

    def test_cauchy_half(self):
        assert dmu_norm_sq(cauchy_kernel(0.5), D1) == pytest.approx(8 / 3, rel=1e-8)

    def test_identity(self):
        assert dmu_norm_sq(identity(), D1) == pytest.approx(2.0)

    def test_hardy(self):
        assert hardy_norm_sq(Polynomial([1, 2j])) == pytest.approx(5.0)

    def test_cauchy_hb(self):
        assert cauchy_norm_hb(sarason_pair(1.0), 0.0) == 1.0
        assert cauchy_norm_hb(sarason_pair(1.0), 0.5) == pytest.approx(8 / 3, rel=1e-14)
        assert cauchy_norm_hb(costara_ransford_pair([1.0]), 0.0) == pytest.approx(2.0)

    def test_cauchy_dmu(self):
        assert cauchy_norm_dmu(AtomicMeasure.unit([1j, -1]), 0.0) == 1.0
        assert cauchy_norm_dmu(D1, 0.5) == pytest.approx(8 / 3)
        assert cauchy_norm_dmu(AtomicMeasure.unit([1, -1]), 0.0) == 1.0

    def test_rk(self):
        assert rk_hb_norm_sq(sarason_pair(1.0), 0.0) == 1.0
        b = (1 - S0) / 2 / (1 - S0 / 2)
        assert rk_hb_norm_sq(sarason_pair(1.0), 0.5) == pytest.approx((1 - b * b) / 0.75, rel=1e-14)
        assert rk_hb_norm_sq(constant(0.0), 0.6) == pytest.approx(1 / 0.64)

    def test_disk_point(self):
        with pytest.raises(DomainError):
            cauchy_norm_dmu(D1, 1.0)

    def test_quadrature_spec(self):
        with pytest.raises(ValidationError):
            QuadratureSpec(exclusion_radius=0.1)
