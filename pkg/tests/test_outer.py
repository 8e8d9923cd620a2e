import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbdirichlet.errors import ExtremenessError, NormError, ValidationError
from hbdirichlet.functions import ExpPoly, Polynomial, constant, identity, sarason_a, sarason_b
from hbdirichlet.grids import DiskGrid, UnitCircleGrid
from hbdirichlet.outer import LogModulusProfile, mean_log_modulus, outer_from_log_modulus, pythagorean_mate
from hbdirichlet.pairs import costara_ransford_pair

G = 4096
THETA = UnitCircleGrid(G).theta
DISK = np.concatenate([[0.0], DiskGrid(np.linspace(0.0, 0.99, 100)[1:], 512).points()])


def log_abs_one_minus(theta):
    with np.errstate(divide="ignore"):
        return np.log(2 * np.abs(np.sin(theta / 2)))


class TestOuterFromLogModulus:
    def test_zero_profile(self):
        o = outer_from_log_modulus(LogModulusProfile(np.zeros(G)))
        assert np.max(np.abs(o.eval(DISK) - 1.0)) <= 1e-12

    def test_half_one_minus_z(self):
        prof = LogModulusProfile.from_function(lambda t: log_abs_one_minus(t) - np.log(2), G)
        o = outer_from_log_modulus(prof)
        assert np.max(np.abs(o.eval(DISK) - (1 - DISK) / 2)) <= 1e-6

    def test_sarason_mate(self):
        b = sarason_b(1.0)
        prof = LogModulusProfile.from_function(lambda t: 0.5 * np.log1p(-np.abs(b.boundary_values(t)) ** 2), G)
        o = outer_from_log_modulus(prof)
        assert np.max(np.abs(o.eval(DISK) - sarason_a(1.0).eval(DISK))) <= 1e-6

    def test_positive_at_origin(self):
        rng = np.random.default_rng(7)
        prof = LogModulusProfile(np.real(np.fft.ifft(np.fft.fft(rng.normal(size=1024)) * (np.arange(1024) < 20))))
        o = outer_from_log_modulus(prof)
        v = complex(o.eval(0.0))
        assert v.real > 0 and v.imag == 0
        assert np.log(v.real) == pytest.approx(mean_log_modulus(prof), abs=1e-12)

    def test_roundtrip_near_boundary(self):
        values = np.log(np.abs(2 + np.cos(3 * THETA) + 0.5 * np.sin(THETA)))
        with np.errstate(divide="ignore"):
            values = values + log_abs_one_minus(THETA)
        prof = LogModulusProfile(values)
        o = outer_from_log_modulus(prof)
        got = np.log(np.abs(o.eval((1 - 1e-6) * np.exp(1j * THETA))))
        keep = np.ones(G, dtype=bool)
        for j in np.flatnonzero(~np.isfinite(values)):
            keep[[(j + k) % G for k in range(-3, 4)]] = False
        assert np.max(np.abs(got[keep] - values[keep])) <= 1e-4

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValidationError):
            LogModulusProfile(np.zeros(100))
        with pytest.raises(ValidationError):
            LogModulusProfile(np.full(64, np.nan))


class TestMeanLogModulus:
    def test_zero(self):
        assert mean_log_modulus(LogModulusProfile(np.zeros(256))) == 0

    def test_one_minus_z(self):
        prof = LogModulusProfile.from_function(log_abs_one_minus, G)
        assert abs(mean_log_modulus(prof)) <= 1e-3

    def test_constant(self):
        assert mean_log_modulus(LogModulusProfile(np.full(256, np.log(0.5)))) == pytest.approx(np.log(0.5))

    def test_divergent_profile(self):
        # log of exp(-1/|theta|) style decay is not integrable: the mean keeps sliding
        def bad(t):
            d = np.abs(np.angle(np.exp(1j * t)))
            with np.errstate(divide="ignore"):
                return -1.0 / d**2
        assert mean_log_modulus(LogModulusProfile.from_function(bad, 1024)) == -np.inf


class TestMate:
    def test_half_pair(self):
        a = pythagorean_mate(Polynomial([0.5, 0.5]), G)
        assert np.max(np.abs(a.eval(DISK) - (1 - DISK) / 2)) <= 1e-6

    def test_zero_b(self):
        a = pythagorean_mate(constant(0.0), G)
        assert np.allclose(a.eval(DISK), 1.0)

    def test_norm_error(self):
        with pytest.raises(NormError):
            pythagorean_mate(Polynomial([0.0, 1.01]), G)

    def test_extreme_b(self):
        with pytest.raises(ExtremenessError):
            pythagorean_mate(identity(), G)

    @pytest.mark.parametrize("b", [Polynomial([0.5, 0.5]), sarason_b(1j), ExpPoly(Polynomial([-1, 0, 1]))])
    def test_pair_validity(self, b):
        a = pythagorean_mate(b, G)
        z = DiskGrid(np.arange(1, 65) / 65.0, 512).points()
        assert np.max(np.abs(a.eval(z)) ** 2 + np.abs(b.eval(z)) ** 2) <= 1 + 1e-6
        assert complex(a.eval(0.0)).real > 0

    @settings(max_examples=8)
    @given(st.lists(st.floats(0, 2 * np.pi, exclude_max=True), min_size=1, max_size=4))
    def test_idempotent_on_shipped_pairs(self, angles):
        angles = np.sort(angles)
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
        if angles.size > 1 and gaps.min() < 0.3:
            return
        pair = costara_ransford_pair(np.exp(1j * angles))
        a = pythagorean_mate(pair.b, G)
        assert np.max(np.abs(a.eval(DISK[::7]) - pair.a.eval(DISK[::7]))) <= 1e-6
