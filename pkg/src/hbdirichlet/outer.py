"""Outer functions from boundary log-modulus, and Pythagorean mates.

The analytic completion of a real boundary function ``u`` is
``G(z) = u_0 + 2 sum_{k>=1} u_k z^k`` (``u_k`` its Fourier coefficients),
so that ``Re G = u`` on the circle and ``exp(G)`` is outer with modulus
``exp(u)``.  Logarithmic singularities of ``u`` (boundary zeros of the
outer function) spoil the decay of ``u_k``.  Zeros of integer order
``m`` at ``zeta`` are therefore split off first: ``m log|lambda - zeta|``
has the exact completion ``m log(1 - conj(zeta) z)``, and only the smooth
remainder goes through the FFT.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import ExtremenessError, NormError, ValidationError
from .functions import AnalyticFunction, ExpPoly, OuterFromSamples, Polynomial, Scaled, constant
from .grids import TWO_PI, UnitCircleGrid, is_power_of_two

log = logging.getLogger(__name__)

DEFAULT_G = 4096
UNIMODULAR_TOL = 1e-10
NORM_TOL = 1e-9
_ORDER_STEPS = (1e-3, 2e-3)
_NEAR_ZERO = 1e-5


@dataclass(frozen=True, eq=False)
class LogModulusProfile:
    """Samples of a boundary log-modulus on a uniform grid.

    ``source``, when given, evaluates the same log-modulus at arbitrary
    angles; it is used for grid-doubling refinement and for the
    quarter-step offset rule.
    """

    values: np.ndarray
    source: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    integrable: Optional[bool] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if not is_power_of_two(v.size) or v.size < 16:
            raise ValidationError("profile length must be a power of two >= 16")
        if np.any(np.isnan(v)) or np.any(v == np.inf):
            raise ValidationError("log-modulus samples must be finite or -inf")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def grid(self) -> UnitCircleGrid:
        return UnitCircleGrid(self.values.size)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], size: int) -> "LogModulusProfile":
        theta = UnitCircleGrid(size).theta
        with np.errstate(divide="ignore"):
            return cls(fn(theta), source=fn)

    @classmethod
    def from_csv(cls, path) -> "LogModulusProfile":
        data = np.genfromtxt(path, delimiter=",", names=True)
        theta, values = np.asarray(data["theta"], dtype=float), np.asarray(data["value"], dtype=float)
        grid = UnitCircleGrid(theta.size)
        if not np.allclose(theta, grid.theta, atol=1e-9):
            raise ValidationError("CSV profile must be sampled on the uniform grid theta_k = 2 pi k / G")
        return cls(values)

    def with_integrability(self, flag: bool) -> "LogModulusProfile":
        return LogModulusProfile(self.values, self.source, flag)


@dataclass(frozen=True)
class _Split:
    residual: np.ndarray
    zeros: tuple
    offset_points: tuple


def _singular_runs(values: np.ndarray) -> np.ndarray:
    bad = np.isneginf(values)
    if not np.any(bad):
        return np.zeros(0, dtype=int)
    if np.all(bad) or np.count_nonzero(bad) > values.size // 64:
        raise ExtremenessError("log-modulus is -inf on a set of positive measure at grid resolution")
    idx = np.flatnonzero(bad)
    n = values.size
    if np.any(bad[(idx + 1) % n]):
        raise ExtremenessError("log-modulus is -inf on consecutive samples (an arc, not isolated points)")
    return idx


def _split_samples(profile: LogModulusProfile) -> _Split:
    """Separate isolated ``-inf`` samples into exact ``m log|lambda - zeta|`` terms."""
    u = profile.values
    n = u.size
    theta = profile.grid.theta
    lam = np.exp(1j * theta)
    idx = _singular_runs(u)
    zeros = []
    offsets = []
    work = u.copy()
    for j in idx:
        right = u[(j + 2) % n] - u[(j + 1) % n]
        left = u[(j - 2) % n] - u[(j - 1) % n]
        est = 0.5 * (left + right) / np.log(2.0)
        m = int(round(est))
        if m >= 1 and abs(est - m) < 0.25 and np.all(np.isfinite([left, right])):
            zeros.append((complex(lam[j]), m))
        else:
            offsets.append(float(theta[j]))
            if profile.source is not None:
                work[j] = float(profile.source(np.array([theta[j] + profile.grid.step / 4]))[0])
            else:
                work[j] = 0.5 * (u[(j - 1) % n] + u[(j + 1) % n])
    residual = work.copy()
    for zeta, m in zeros:
        with np.errstate(divide="ignore", invalid="ignore"):
            residual -= m * np.log(np.abs(lam - zeta))
    for zeta, _ in zeros:
        j = int(np.argmin(np.abs(lam - zeta)))
        nb = residual[[(j - 2) % n, (j - 1) % n, (j + 1) % n, (j + 2) % n]]
        residual[j] = np.dot([-1 / 6, 2 / 3, 2 / 3, -1 / 6], nb)
    if not np.all(np.isfinite(residual)):
        raise ExtremenessError("log-modulus residual is not finite after singularity removal")
    return _Split(residual, tuple(zeros), tuple(offsets))


def analytic_completion(residual: np.ndarray) -> np.ndarray:
    """Taylor coefficients ``u_0, 2u_1, ..., 2u_{G/2-1}, u_{G/2}`` of the completion."""
    g = residual.size
    uk = np.fft.fft(residual) / g
    coeffs = np.empty(g // 2 + 1, dtype=complex)
    coeffs[0] = uk[0].real
    coeffs[1 : g // 2] = 2.0 * uk[1 : g // 2]
    coeffs[g // 2] = uk[g // 2].real
    return coeffs


def _build_outer(residual, zeros, log_modulus, meta) -> OuterFromSamples:
    return OuterFromSamples(log_modulus, analytic_completion(residual), zeros, meta)


def outer_from_log_modulus(profile: LogModulusProfile) -> OuterFromSamples:
    """Outer function ``O`` with ``|O| = exp(values)`` on the grid and ``O(0) > 0``."""
    split = _split_samples(profile)
    if profile.values.size < 256:
        raise ValidationError("outer functions need G >= 256 samples")
    meta = {
        "grid": profile.grid.describe(),
        "boundary_zeros": [[z.real, z.imag, m] for z, m in split.zeros],
        "offset_points": list(split.offset_points),
        "method": "sampled-profile",
    }
    return _build_outer(split.residual, split.zeros, profile.values, meta)


def _discrete_mean(profile: LogModulusProfile) -> float:
    split = _split_samples(profile)
    return float(np.mean(split.residual))


def mean_log_modulus(profile: LogModulusProfile) -> float:
    """Boundary mean of the log-modulus; equals ``log O(0)`` of the constructed outer function.

    Returns ``-inf`` when the profile is not integrable, or when grid
    doubling (possible only with a ``source``) moves the mean by more
    than 0.1 twice in a row.
    """
    try:
        m0 = _discrete_mean(profile)
    except ExtremenessError:
        return -np.inf
    if profile.source is None:
        return m0
    means = [m0]
    size = profile.values.size
    for _ in range(2):
        size *= 2
        try:
            means.append(_discrete_mean(LogModulusProfile.from_function(profile.source, size)))
        except ExtremenessError:
            return -np.inf
    if abs(means[1] - means[0]) > 0.1 and abs(means[2] - means[1]) > 0.1:
        return -np.inf
    return m0


# ----------------------------------------------------------------------
# Pythagorean mate


def _one_minus_mod2(b: AnalyticFunction) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(b, ExpPoly):
        return lambda th: -np.expm1(2.0 * b.log_modulus_boundary(th))
    if isinstance(b, Scaled) and isinstance(b.inner, ExpPoly):
        c2 = abs(b.constant) ** 2
        return lambda th: 1.0 - c2 * np.exp(2.0 * b.inner.log_modulus_boundary(th))
    return lambda th: 1.0 - np.abs(b.boundary_values(th)) ** 2


def _mod2_slope(b: AnalyticFunction, th: float) -> float:
    lam = np.exp(1j * th)
    bv = b.boundary_values(th)
    bd = b.boundary_derivative(th)
    return float(2.0 * np.real(np.conj(bv) * bd * 1j * lam))


def locate_unimodular_points(b: AnalyticFunction, grid: UnitCircleGrid, w: np.ndarray | None = None,
                             tol: float = UNIMODULAR_TOL) -> list[tuple[float, float]]:
    """Angles where ``|b| = 1`` on the circle, refined off-grid, with ``1 - |b|^2`` there."""
    wfun = _one_minus_mod2(b)
    theta = grid.theta
    if w is None:
        w = wfun(theta)
    h = grid.step
    prev, nxt = np.roll(w, 1), np.roll(w, -1)
    cand = np.flatnonzero((w <= prev) & (w <= nxt) & (w < 0.05))
    found: list[tuple[float, float]] = []
    for k in cand:
        lo, hi = theta[k] - h, theta[k] + h
        th0 = theta[k]
        if w[k] > 0:
            try:
                s_lo, s_hi = _mod2_slope(b, lo), _mod2_slope(b, hi)
                if s_lo > 0 > s_hi:
                    th0 = brentq(lambda t: _mod2_slope(b, t), lo, hi, xtol=1e-15, rtol=1e-15)
            except (ValueError, RuntimeError):
                pass
        w0 = float(wfun(np.array([th0]))[0])
        if w0 <= tol:
            th0 = th0 % TWO_PI
            if all(abs(np.angle(np.exp(1j * (th0 - t)))) > 1e-9 for t, _ in found):
                found.append((th0, w0))
    return found


def _zero_order(wfun, th0: float) -> Optional[int]:
    ests = []
    for sign in (1.0, -1.0):
        a, b2 = wfun(np.array([th0 + sign * _ORDER_STEPS[0], th0 + sign * _ORDER_STEPS[1]]))
        if a <= 0 or b2 <= 0:
            return None
        ests.append(np.log(b2 / a) / (2.0 * np.log(_ORDER_STEPS[1] / _ORDER_STEPS[0])))
    est = float(np.mean(ests))
    m = int(round(est))
    if m >= 1 and abs(est - m) < 0.2:
        return m
    return None


def pythagorean_mate(b: AnalyticFunction, G: int = DEFAULT_G) -> OuterFromSamples | Polynomial:
    """The outer ``a`` with ``|a|^2 + |b|^2 = 1`` on the circle and ``a(0) > 0``."""
    if not is_power_of_two(G) or G < 256:
        raise ValidationError("mate grid size must be a power of two >= 256")
    grid = UnitCircleGrid(G)
    theta = grid.theta
    wfun = _one_minus_mod2(b)
    w = wfun(theta)
    if np.min(w) < -2 * NORM_TOL:
        raise NormError(f"|b| exceeds 1 on the boundary (max |b|^2 - 1 = {-np.min(w):.3e})")
    if np.max(np.abs(b.boundary_values(theta))) == 0:
        return constant(1.0)

    def half_log(th):
        with np.errstate(divide="ignore", invalid="ignore"):
            return 0.5 * np.log(np.clip(wfun(th), 0.0, None))

    mean = mean_log_modulus(LogModulusProfile.from_function(half_log, G))
    if not np.isfinite(mean):
        raise ExtremenessError("log(1 - |b|^2) is not integrable at grid resolution: b looks extreme")

    zeros = []
    offsets = []
    for th0, _ in locate_unimodular_points(b, grid, w):
        m = _zero_order(wfun, th0)
        if m is None:
            offsets.append(th0)
        else:
            zeros.append((th0, m))

    def residual_at(th):
        th = np.asarray(th, dtype=float)
        lam = np.exp(1j * th)
        v = half_log(th)
        for t0, m in zeros:
            with np.errstate(divide="ignore", invalid="ignore"):
                v = v - m * np.log(np.abs(lam - np.exp(1j * t0)))
        return v

    v = residual_at(theta)
    for t0, m in zeros:
        e1, e2 = _ORDER_STEPS
        s1 = residual_at(np.array([t0 - e1, t0 + e1]))
        s2 = residual_at(np.array([t0 - e2, t0 + e2]))
        limit = (4.0 * np.mean(s1) - np.mean(s2)) / 3.0
        slope = (s1[1] - s1[0]) / (2 * e1)
        d = np.angle(np.exp(1j * (theta - t0)))
        near = np.abs(d) < _NEAR_ZERO
        v[near] = limit + slope * d[near]
    for t0 in offsets:
        j = int(np.argmin(np.abs(np.angle(np.exp(1j * (theta - t0))))))
        v[j] = float(half_log(np.array([theta[j] + grid.step / 4]))[0])
    bad = ~np.isfinite(v)
    if np.any(bad):
        # remaining isolated singular samples: quarter-step offset rule
        for j in np.flatnonzero(bad):
            v[j] = float(half_log(np.array([theta[j] + grid.step / 4]))[0])
            offsets.append(float(theta[j]))
        if not np.all(np.isfinite(v)):
            raise ExtremenessError("log(1 - |b|^2) has non-isolated singularities on the grid")

    zero_pts = tuple((np.exp(1j * t0), m) for t0, m in zeros)
    meta = {
        "grid": grid.describe(),
        "boundary_zeros": [[float(np.cos(t0)), float(np.sin(t0)), m] for t0, m in zeros],
        "offset_points": [float(t) for t in offsets],
        "method": "split-boundary-zeros+fft",
        "truncation_degree": G // 2,
    }
    with np.errstate(divide="ignore"):
        lm = half_log(theta)
    return _build_outer(v, zero_pts, lm, meta)
