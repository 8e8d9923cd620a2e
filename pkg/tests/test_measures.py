import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hbdirichlet.errors import DomainError, ValidationError
from hbdirichlet.grids import DiskGrid
from hbdirichlet.measures import AtomicMeasure, poisson, potential, sandwich_bounds, sandwich_check

from strategies import atomic_measures, disk_points

D1 = AtomicMeasure.unit([1.0])
D1M1 = AtomicMeasure.unit([1.0, -1.0])


class TestPotential:
    def test_origin(self):
        assert potential(D1, 0.0) == 1.0

    def test_atom_is_infinite(self):
        assert potential(D1, 1.0) == np.inf

    def test_two_atoms_at_i(self):
        assert potential(D1M1, 1j) == pytest.approx(1.0, abs=1e-15)

    def test_defined_outside_disk(self):
        assert potential(D1, 3.0) == pytest.approx(0.25)


class TestPoisson:
    def test_origin(self):
        assert poisson(D1, 0.0) == 1.0

    def test_half(self):
        assert poisson(D1, 0.5) == pytest.approx(3.0, abs=1e-15)

    def test_mass_two(self):
        assert poisson(AtomicMeasure([1.0], [2.0]), 0.0) == 2.0

    def test_domain(self):
        with pytest.raises(DomainError):
            poisson(D1, 1.0)


class TestSandwich:
    @pytest.mark.parametrize("mu,z,lo,v,hi", [(D1, 0.0, 1, 1, 1), (D1, -1.0, 0.25, 0.25, 0.25), (D1M1, 1j, 0.5, 1, 1)])
    def test_examples(self, mu, z, lo, v, hi):
        assert sandwich_check(mu, z)
        bounds = sandwich_bounds(mu, z)
        assert bounds[0] == pytest.approx(lo)
        assert bounds[1] == pytest.approx(hi)
        assert potential(mu, z) == pytest.approx(v)

    @given(atomic_measures())
    def test_holds_on_disk_grid(self, mu):
        z = DiskGrid.default(mu.atoms, radii=12, angles=32).points()
        z = z[np.min(np.abs(z[:, None] - mu.atoms[None, :]), axis=1) > 0]
        assert np.all(sandwich_check(mu, z))


@given(atomic_measures(), disk_points(rmax=0.99), st.floats(0, 2 * np.pi))
def test_rotation_symmetry(mu, z, phi):
    rot = np.exp(1j * phi)
    a = potential(mu.rotated(phi), rot * z)
    b = potential(mu, z)
    assert np.allclose(a, b, rtol=1e-12)


@given(atomic_measures(), disk_points(rmax=0.99))
def test_poisson_is_scaled_potential(mu, z):
    assert np.array_equal(poisson(mu, z), (1 - np.abs(z) ** 2) * potential(mu, z))


class TestValidation:
    def test_off_circle(self):
        with pytest.raises(ValidationError):
            AtomicMeasure([0.5], [1.0])

    def test_nonpositive_mass(self):
        with pytest.raises(ValidationError):
            AtomicMeasure([1.0], [0.0])

    def test_duplicate_atoms(self):
        with pytest.raises(ValidationError):
            AtomicMeasure.unit([1.0, 1.0 + 1e-12j])

    def test_descriptors(self):
        mu = AtomicMeasure.from_descriptor({"roots_of_unity": 3})
        assert np.allclose(mu.atoms ** 3, 1)
        back = AtomicMeasure.from_descriptor(AtomicMeasure([1j, -1], [2.0, 0.5]).to_descriptor())
        assert np.allclose(back.atoms, [1j, -1]) and np.allclose(back.masses, [2.0, 0.5])
        with pytest.raises(ValidationError):
            AtomicMeasure.from_descriptor({"atom": []})
