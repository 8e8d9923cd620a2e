"""Fejer-Riesz factorization of non-negative trigonometric polynomials."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import NegativityError, PairingError, ValidationError
from .functions import Polynomial, polyroots

NEGATIVITY_TOL = 1e-10
PAIRING_TOL = 1e-6
CIRCLE_CLUSTER = 1e-3


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """``omega(theta) = sum_{k=-n}^{n} c_k e^{ik theta}`` with ``c_{-k} = conj(c_k)``.

    ``coeffs`` is stored ascending from ``c_{-n}``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValidationError("trigonometric polynomial needs 2n+1 coefficients")
        scale = max(1.0, float(np.max(np.abs(c))))
        if np.max(np.abs(c - np.conj(c[::-1]))) > 1e-13 * scale:
            raise ValidationError("coefficients are not Hermitian-symmetric (c_-k = conj c_k)")
        c = 0.5 * (c + np.conj(c[::-1]))
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coefficient(self, k: int) -> complex:
        return complex(self.coeffs[k + self.degree])

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        n = self.degree
        lam = np.exp(1j * theta)
        # omega = lam^{-n} * sum_k c_{k-n} lam^k
        val = npoly.polyval(lam, self.coeffs) * lam ** (-n)
        return val.real

    def check_grid(self) -> np.ndarray:
        m = 16 * max(self.degree, 1)
        return 2 * np.pi * np.arange(m) / m

    def min_on_grid(self) -> float:
        return float(np.min(self(self.check_grid())))

    def trimmed(self) -> "TrigPolynomial":
        c = self.coeffs
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        while c.size > 1 and abs(c[-1]) <= 1e-14 * scale:
            c = c[1:-1]
        return TrigPolynomial(c)

    def to_descriptor(self) -> dict:
        return {"n": self.degree, "coeffs": [[x.real, x.imag] for x in self.coeffs]}

    @classmethod
    def from_descriptor(cls, d: dict) -> "TrigPolynomial":
        coeffs = [complex(float(x[0]), float(x[1])) for x in d["coeffs"]]
        if "n" in d and len(coeffs) != 2 * int(d["n"]) + 1:
            raise ValidationError(f"expected {2 * int(d['n']) + 1} coefficients for n={d['n']}, got {len(coeffs)}")
        return cls(np.array(coeffs))


def trig_from_modulus_squared(p) -> TrigPolynomial:
    """Coefficients of ``|p(e^{i theta})|^2``: ``c_k = sum_j p_{j+k} conj(p_j)``."""
    c = np.asarray(p.coeffs if isinstance(p, Polynomial) else p, dtype=complex)
    if not np.any(c):
        raise ValidationError("p must be nonzero")
    return TrigPolynomial(np.convolve(c, np.conj(c[::-1])))


def _cluster_circle_roots(roots: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(np.angle(roots))
    roots = roots[order]
    clusters: list[list[complex]] = []
    for r in roots:
        for cl in clusters:
            if np.min(np.abs(np.asarray(cl) - r)) < CIRCLE_CLUSTER:
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [np.asarray(cl) for cl in clusters]


def select_roots(roots: np.ndarray) -> np.ndarray:
    """Keep one root from every reflected pair ``(r, 1/conj r)``, the one with ``|r| >= 1``.

    Roots on the circle must come in clusters of even size; each cluster
    contributes half of its members at its mean position projected onto
    the circle.
    """
    mod = np.abs(roots)
    on_circle = np.abs(mod - 1.0) < PAIRING_TOL
    outside = roots[(~on_circle) & (mod > 1.0)]
    inside = roots[(~on_circle) & (mod < 1.0)]
    if outside.size != inside.size:
        raise PairingError(
            f"{outside.size} roots outside vs {inside.size} inside the circle", roots
        )
    mirrored = 1.0 / np.conj(inside)
    unused = list(range(outside.size))
    for m in mirrored:
        if not unused:
            break
        dist = np.abs(outside[unused] - m)
        k = int(np.argmin(dist))
        if dist[k] > PAIRING_TOL * max(1.0, abs(m)):
            raise PairingError(f"root {m!r} has no reflected partner within tolerance", roots)
        unused.pop(k)
    chosen = [outside]
    for cl in _cluster_circle_roots(roots[on_circle]) if np.any(on_circle) else []:
        if cl.size % 2:
            raise PairingError("a root on the circle has odd multiplicity", cl)
        centre = np.mean(cl)
        centre = centre / abs(centre)
        chosen.append(np.full(cl.size // 2, centre))
    return np.concatenate(chosen) if chosen else np.zeros(0, dtype=complex)


def normalize_phase(coeffs: np.ndarray) -> np.ndarray:
    """Rotate so the lowest-order nonzero coefficient is positive real."""
    c = np.asarray(coeffs, dtype=complex)
    nz = np.flatnonzero(np.abs(c) > 1e-300)
    if nz.size == 0:
        return c
    lead = c[nz[0]]
    out = c * (abs(lead) / lead)
    out[nz[0]] = abs(lead)
    return out


def factor(omega: TrigPolynomial) -> Polynomial:
    """Analytic polynomial ``p`` with ``|p|^2 = omega`` on the circle, zero-free in the disk."""
    if omega.min_on_grid() < -NEGATIVITY_TOL:
        raise NegativityError(f"trigonometric polynomial dips to {omega.min_on_grid():.3e} on the check grid")
    om = omega.trimmed()
    n = om.degree
    c0 = om.coefficient(0).real
    if c0 <= 0:
        raise NegativityError("zero or negative mean; omega must be a non-zero non-negative polynomial")
    if n == 0:
        return Polynomial([np.sqrt(c0)])
    roots = polyroots(om.coeffs)  # roots of z^n omega(z), degree 2n
    if roots.size != 2 * n:
        raise PairingError("Laurent polynomial lost degree; leading coefficient vanishes", roots)
    chosen = select_roots(roots)
    if chosen.size != n:
        raise PairingError(f"selected {chosen.size} roots, expected {n}", roots)
    shape = npoly.polyfromroots(chosen)
    # match the mean coefficient c_0 = sum |p_j|^2
    scale = np.sqrt(c0 / np.sum(np.abs(shape) ** 2))
    return Polynomial(normalize_phase(scale * shape))


def factorization_residual(omega: TrigPolynomial, p: Polynomial) -> float:
    theta = omega.check_grid()
    return float(np.max(np.abs(np.abs(p.boundary_values(theta)) ** 2 - omega(theta))))
