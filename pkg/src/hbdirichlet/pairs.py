"""Pythagorean pairs ``(b, a)`` from the literature, validated on construction."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import minimize_scalar

from .errors import DomainError, ValidationError
from .fejer import TrigPolynomial, factor, factorization_residual, trig_from_modulus_squared
from .functions import AnalyticFunction, ExpPoly, Polynomial, sarason_a, sarason_b
from .grids import DiskGrid, UnitCircleGrid
from .outer import DEFAULT_G, pythagorean_mate

CLOSED_FORM_RESIDUAL = 1e-6
NUMERICAL_RESIDUAL = 1e-4
DISK_SLACK = 1e-6


@dataclass(frozen=True, eq=False)
class PythagoreanPair:
    """A pair with ``|a|^2 + |b|^2 = 1`` on the circle, checked on ``validation_grid``."""

    b: AnalyticFunction
    a: AnalyticFunction
    name: str = "pair"
    numerical: bool = False
    validation_grid: UnitCircleGrid = field(default_factory=lambda: UnitCircleGrid(4096))
    meta: dict = field(default_factory=dict)
    boundary_residual: float = float("nan")
    disk_max: float = float("nan")

    def __post_init__(self):
        theta = self.validation_grid.theta
        bv = self.b.boundary_values(theta)
        av = self.a.boundary_values(theta)
        residual = float(np.max(np.abs(np.abs(av) ** 2 + np.abs(bv) ** 2 - 1.0)))
        limit = NUMERICAL_RESIDUAL if self.numerical else CLOSED_FORM_RESIDUAL
        if not residual <= limit:
            raise ValidationError(f"{self.name}: boundary residual {residual:.3e} exceeds {limit:.0e}")
        a0 = complex(self.a.eval(0.0))
        if not (a0.real > 0 and abs(a0.imag) <= 1e-12 * max(1.0, abs(a0))):
            raise ValidationError(f"{self.name}: mate must satisfy a(0) > 0, got {a0}")
        pts = DiskGrid.default(self.meta.get("atoms", ())).points()
        disk_max = float(np.max(np.abs(self.a.eval(pts)) ** 2 + np.abs(self.b.eval(pts)) ** 2))
        if disk_max > 1.0 + DISK_SLACK:
            raise ValidationError(f"{self.name}: |a|^2 + |b|^2 reaches {disk_max:.8f} inside the disk")
        object.__setattr__(self, "boundary_residual", residual)
        object.__setattr__(self, "disk_max", disk_max)

    def describe(self) -> dict:
        out = {
            "name": self.name,
            "numerical": self.numerical,
            "boundary_residual": self.boundary_residual,
            "disk_max": self.disk_max,
            "validation_grid": self.validation_grid.describe(),
        }
        for side in ("b", "a"):
            try:
                out[side] = getattr(self, side).to_descriptor()
            except ValidationError:
                out[side] = {"type": getattr(self, side).kind}
        out.update({k: v for k, v in self.meta.items() if k != "atoms"})
        return out


def _unimodular(zeta) -> complex:
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-12:
        raise DomainError(f"boundary point must be unimodular, |zeta| = {abs(zeta)!r}")
    return zeta


def sarason_pair(zeta=1.0) -> PythagoreanPair:
    zeta = _unimodular(zeta)
    return PythagoreanPair(
        sarason_b(zeta), sarason_a(zeta), name="sarason", meta={"zeta": [zeta.real, zeta.imag], "atoms": (zeta,)}
    )


def _boundary_max(coeffs: np.ndarray) -> float:
    """``max_theta |p(e^{i theta})|`` by a dense scan and local refinement."""
    m = max(4096, 64 * coeffs.size)
    theta = 2 * np.pi * np.arange(m) / m
    vals = np.abs(npoly.polyval(np.exp(1j * theta), coeffs))
    k = int(np.argmax(vals))
    h = 2 * np.pi / m
    neg = lambda t: -abs(npoly.polyval(np.exp(1j * t), coeffs))
    res = minimize_scalar(neg, bounds=(theta[k] - h, theta[k] + h), method="bounded", options={"xatol": 1e-13})
    return max(float(vals[k]), -float(res.fun))


def polynomial_type_pair(atoms, multiplicities) -> PythagoreanPair:
    """``p_a = C prod (z - zeta_j)^{m_j}`` with ``||p_a||_inf = 1``, ``p_a(0) > 0``; ``p_b`` by Fejer-Riesz."""
    atoms = [_unimodular(z) for z in np.atleast_1d(atoms)]
    mults = [int(m) for m in np.atleast_1d(multiplicities)]
    if len(atoms) != len(mults) or not atoms:
        raise ValidationError("one multiplicity per atom is required")
    if any(m < 1 for m in mults):
        raise ValidationError("multiplicities must be >= 1")
    for i in range(len(atoms)):
        for j in range(i):
            if abs(atoms[i] - atoms[j]) <= 1e-9:
                raise ValidationError("atoms must be distinct")
    roots = np.concatenate([np.full(m, z) for z, m in zip(atoms, mults)])
    monic = npoly.polyfromroots(roots)
    size = 1.0 / _boundary_max(monic)
    at0 = monic[0]
    c = size * abs(at0) / at0
    pa = Polynomial(c * monic)
    omega_coeffs = -trig_from_modulus_squared(pa).coeffs
    omega_coeffs[omega_coeffs.size // 2] += 1.0
    omega = TrigPolynomial(omega_coeffs)
    pb = factor(omega)
    meta = {
        "atoms": tuple(atoms),
        "multiplicities": mults,
        "normalization": "C = 1/max|prod (z - zeta_j)^m_j| on T, phase so that a(0) > 0",
        "b_phase": "lowest nonzero coefficient of b positive real",
        "fejer_residual": factorization_residual(omega, pb),
        "C": [c.real, c.imag],
    }
    name = "costara-ransford" if all(m == 1 for m in mults) else "polynomial-type"
    return PythagoreanPair(pb, pa, name=name, meta=meta)


def costara_ransford_pair(atoms) -> PythagoreanPair:
    atoms = np.atleast_1d(atoms)
    return polynomial_type_pair(atoms, np.ones(atoms.size, dtype=int))


def exponential_pair(n: int, G: int = DEFAULT_G) -> PythagoreanPair:
    """``b = exp(z^N - 1)`` with its numerically constructed outer mate."""
    if int(n) != n or n < 1:
        raise ValidationError("exponential pair needs an integer N >= 1")
    n = int(n)
    exponent = np.zeros(n + 1, dtype=complex)
    exponent[0], exponent[n] = -1.0, 1.0
    b = ExpPoly(Polynomial(exponent))
    a = pythagorean_mate(b, G)
    atoms = tuple(np.exp(2j * np.pi * np.arange(n) / n))
    return PythagoreanPair(b, a, name="exponential", numerical=True, meta={"N": n, "G": G, "atoms": atoms, "mate": a.meta})


def mate_pair(b: AnalyticFunction, G: int = DEFAULT_G) -> PythagoreanPair:
    a = pythagorean_mate(b, G)
    meta = {"G": G}
    if hasattr(a, "meta"):
        meta["mate"] = a.meta
        meta["atoms"] = tuple(complex(x, y) for x, y, _ in a.meta.get("boundary_zeros", []))
    return PythagoreanPair(b, a, name="mated", numerical=True, meta=meta)
