"""Finitely supported positive measures on the unit circle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

ATOM_HIT = 1e-14


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """``sum_j masses[j] * delta_{atoms[j]}`` with distinct unimodular atoms."""

    atoms: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        atoms = np.atleast_1d(np.asarray(self.atoms, dtype=complex)).copy()
        masses = np.atleast_1d(np.asarray(self.masses, dtype=float)).copy()
        if atoms.size == 0:
            raise ValidationError("measure needs at least one atom")
        if atoms.shape != masses.shape:
            raise ValidationError("one mass per atom is required")
        if np.any(np.abs(np.abs(atoms) - 1.0) > 1e-12):
            raise ValidationError("atoms must lie on the unit circle")
        if np.any(masses <= 0) or not np.all(np.isfinite(masses)):
            raise ValidationError("masses must be positive and finite")
        if atoms.size > 1:
            sep = np.abs(atoms[:, None] - atoms[None, :]) + np.eye(atoms.size) * 10
            if np.min(sep) <= 1e-9:
                raise ValidationError("atoms must be pairwise distinct")
        atoms.setflags(write=False)
        masses.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def unit(cls, atoms) -> "AtomicMeasure":
        atoms = np.atleast_1d(np.asarray(atoms, dtype=complex))
        return cls(atoms, np.ones(atoms.size))

    @classmethod
    def roots_of_unity(cls, n: int) -> "AtomicMeasure":
        if n < 1:
            raise ValidationError("roots_of_unity needs N >= 1")
        return cls.unit(np.exp(2j * np.pi * np.arange(n) / n))

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def __add__(self, other: "AtomicMeasure") -> "AtomicMeasure":
        return AtomicMeasure(np.concatenate([self.atoms, other.atoms]), np.concatenate([self.masses, other.masses]))

    def rotated(self, phi: float) -> "AtomicMeasure":
        return AtomicMeasure(self.atoms * np.exp(1j * phi), self.masses)

    def to_descriptor(self) -> dict:
        return {"atoms": [[a.real, a.imag] for a in self.atoms], "masses": [float(m) for m in self.masses]}

    @classmethod
    def from_descriptor(cls, d: dict) -> "AtomicMeasure":
        if "roots_of_unity" in d:
            return cls.roots_of_unity(int(d["roots_of_unity"]))
        try:
            atoms = [complex(float(a[0]), float(a[1])) for a in d["atoms"]]
        except (KeyError, TypeError, IndexError):
            raise ValidationError("measure descriptor needs 'atoms': [[re, im], ...]") from None
        masses = d.get("masses", [1.0] * len(atoms))
        return cls(np.array(atoms), np.array(masses, dtype=float))


def _sq_distances(mu: AtomicMeasure, z: np.ndarray) -> np.ndarray:
    return np.abs(z[..., None] - mu.atoms) ** 2


def potential(mu: AtomicMeasure, z):
    """``V(z) = sum_j m_j / |z - zeta_j|^2`` on the whole plane, ``inf`` at atoms."""
    zz = np.asarray(z, dtype=complex)
    d2 = _sq_distances(mu, zz)
    hit = np.any(np.sqrt(d2) < ATOM_HIT, axis=-1)
    with np.errstate(divide="ignore"):
        v = np.sum(mu.masses / d2, axis=-1)
    v = np.where(hit, np.inf, v)
    return float(v) if np.ndim(z) == 0 else v


def poisson(mu: AtomicMeasure, z):
    """Poisson integral ``(1 - |z|^2) V(z)`` for ``|z| < 1``."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("Poisson integral needs |z| < 1")
    out = (1.0 - np.abs(zz) ** 2) * potential(mu, zz)
    return float(out) if np.ndim(z) == 0 else out


def sandwich_bounds(mu: AtomicMeasure, z):
    zz = np.asarray(z, dtype=complex)
    lower = mu.total_mass / (1.0 + np.abs(zz)) ** 2
    dist = np.sqrt(np.min(_sq_distances(mu, zz), axis=-1))
    with np.errstate(divide="ignore"):
        upper = mu.total_mass / dist**2
    return lower, upper


def sandwich_check(mu: AtomicMeasure, z, rtol: float = 1e-12):
    """``total/(1+|z|)^2 <= V(z) <= total/dist(z, atoms)^2`` (with rounding slack)."""
    zz = np.asarray(z, dtype=complex)
    lower, upper = sandwich_bounds(mu, zz)
    v = potential(mu, zz)
    ok = (lower <= v * (1 + rtol)) & (v <= upper * (1 + rtol))
    return bool(ok) if np.ndim(z) == 0 else ok
