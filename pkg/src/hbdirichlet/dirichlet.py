"""Local and harmonically weighted Dirichlet integrals, and kernel norms.

Norm convention: ``||f||^2 = ||f||_{H^2}^2 + D_mu(f)`` with the area form
normalized by ``1/pi``, which makes the area form agree with the boundary
(Douglas) form ``D_zeta(f) = int |f(l) - f(zeta)|^2 / |l - zeta|^2 dm(l)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .functions import AnalyticFunction
from .grids import TWO_PI, UnitCircleGrid
from .measures import AtomicMeasure, potential

NORM_CONVENTION = "H2 + D_mu"
GROWTH = 1.10


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid parameters for the boundary and area forms.

    The boundary form samples ``boundary_size`` points; the area form uses
    ``area_radii`` Gauss-Legendre radii, each with at least
    ``area_angles`` uniform angles (more close to the circle, where the
    Poisson kernel sharpens).
    """

    boundary_size: int = 8192
    area_radii: int = 64
    area_angles: int = 512
    exclusion_radius: float = 0.0

    def __post_init__(self):
        UnitCircleGrid(self.boundary_size)
        if self.area_radii < 1 or self.area_angles < 16:
            raise ValidationError("area quadrature grids must be nonempty")
        if not 0.0 <= self.exclusion_radius <= 1e-3:
            raise ValidationError("exclusion radius must lie in [0, 1e-3]")

    def describe(self) -> dict:
        return {
            "boundary_size": self.boundary_size,
            "area_radii": self.area_radii,
            "area_angles": self.area_angles,
            "exclusion_radius": self.exclusion_radius,
        }


def _douglas_sum(f: AnalyticFunction, zeta: complex, size: int, exclusion: float) -> float:
    # midpoint grid anchored at zeta: no sample ever coincides with the atom
    phi = TWO_PI * (np.arange(size) + 0.5) / size
    phi = np.where(phi > np.pi, phi - TWO_PI, phi)
    keep = np.abs(phi) >= exclusion
    theta = np.angle(zeta) + phi[keep]
    lam = np.exp(1j * theta)
    fz = f.boundary_values(np.angle(zeta))
    with np.errstate(over="ignore", invalid="ignore"):
        q = np.abs(f.boundary_values(theta) - fz) ** 2 / np.abs(lam - zeta) ** 2
        total = np.sum(q) / size
    return float(total) if np.isfinite(total) else np.inf


def local_dirichlet(f: AnalyticFunction, zeta, q: QuadratureSpec = QuadratureSpec()) -> float:
    """``D_zeta(f)``; ``inf`` when two grid doublings each grow the value by over 10%."""
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-12:
        raise DomainError("local Dirichlet integral needs a unimodular point")
    vals = [_douglas_sum(f, zeta, q.boundary_size * 2**k, q.exclusion_radius) for k in range(3)]
    if not np.isfinite(vals[0]):
        return np.inf
    if vals[1] > GROWTH * vals[0] and vals[2] > GROWTH * vals[1]:
        return np.inf
    return vals[0]


def dirichlet_mu(f: AnalyticFunction, mu: AtomicMeasure, q: QuadratureSpec = QuadratureSpec()) -> float:
    """``D_mu(f) = sum_j m_j D_{zeta_j}(f)``."""
    total = 0.0
    for zeta, m in zip(mu.atoms, mu.masses):
        total += m * local_dirichlet(f, zeta, q)
    return float(total)


def _area_angles(r: float, base: int) -> int:
    need = 64.0 / max(1.0 - r, 1e-12)
    m = base
    while m < need and m < 2**20:
        m *= 2
    return m


def dirichlet_mu_area(f: AnalyticFunction, mu: AtomicMeasure, q: QuadratureSpec = QuadratureSpec()) -> float:
    """``(1/pi) int_D |f'|^2 P_mu dA`` by Gauss-Legendre in ``r`` and the periodic trapezoid rule in ``theta``."""
    x, w = np.polynomial.legendre.leggauss(q.area_radii)
    radii, weights = 0.5 * (x + 1.0), 0.5 * w
    total = 0.0
    for r, wr in zip(radii, weights):
        m = _area_angles(r, q.area_angles)
        z = r * np.exp(1j * TWO_PI * np.arange(m) / m)
        dens = np.abs(f.derivative(z)) ** 2 * (1.0 - r * r) * potential(mu, z)
        # (1/pi) * r * (2 pi) * mean over the circle of radius r
        total += wr * 2.0 * r * np.mean(dens)
    return float(total)


def hardy_norm_sq(f: AnalyticFunction, size: int = 8192) -> float:
    theta = UnitCircleGrid(size).theta
    return float(np.mean(np.abs(f.boundary_values(theta)) ** 2))


def dmu_norm_sq(f: AnalyticFunction, mu: AtomicMeasure, q: QuadratureSpec = QuadratureSpec()) -> float:
    """``||f||_{H^2}^2 + D_mu(f)``."""
    d = dirichlet_mu(f, mu, q)
    if not np.isfinite(d):
        return np.inf
    return hardy_norm_sq(f, q.boundary_size) + d


def _disk_point(w) -> complex:
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError("kernel point must lie in the open disk")
    return w


def cauchy_norm_hb(pair, w) -> float:
    """Closed form ``(1 + |b(w)/a(w)|^2) / (1 - |w|^2)`` of the Cauchy kernel's H(b) norm."""
    w = _disk_point(w)
    ratio = pair.b.eval(w) / pair.a.eval(w)
    return (1.0 + abs(ratio) ** 2) / (1.0 - abs(w) ** 2)


def cauchy_norm_dmu(mu: AtomicMeasure, w) -> float:
    """Closed form ``(1 + |w|^2 V_mu(w)) / (1 - |w|^2)`` of the Cauchy kernel's D_mu norm."""
    w = _disk_point(w)
    return (1.0 + abs(w) ** 2 * potential(mu, w)) / (1.0 - abs(w) ** 2)


def rk_hb_norm_sq(pair_or_b, w) -> float:
    """Diagonal of the H(b) reproducing kernel, ``(1 - |b(w)|^2) / (1 - |w|^2)``."""
    w = _disk_point(w)
    b = getattr(pair_or_b, "b", pair_or_b)
    return (1.0 - abs(b.eval(w)) ** 2) / (1.0 - abs(w) ** 2)
