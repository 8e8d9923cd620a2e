"""Sampling grids on the unit circle and in the unit disk."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class UnitCircleGrid:
    """Uniform grid ``theta_k = 2 pi k / size`` on the circle."""

    size: int

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 16:
            raise ValidationError(f"circle grid size must be an integer >= 16, got {self.size}")

    @property
    def step(self) -> float:
        return TWO_PI / self.size

    @property
    def theta(self) -> np.ndarray:
        return TWO_PI * np.arange(self.size) / self.size

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.theta)

    def doubled(self) -> "UnitCircleGrid":
        return UnitCircleGrid(2 * self.size)

    def describe(self) -> dict:
        return {"kind": "circle", "size": int(self.size)}


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def default_radii(count: int = 64, closest: float = 1e-6) -> np.ndarray:
    """Radii accumulating geometrically at the boundary, ``1 - r`` from 0.999 down to ``closest``."""
    return 1.0 - np.geomspace(0.999, closest, count)


@dataclass(frozen=True, eq=False)
class DiskGrid:
    """Polar grid in the open disk with angular refinement toward boundary atoms.

    Each radius carries ``angles_per_radius`` uniform angles.  For every
    refinement atom the atom's own angle is added together with angles at
    geometrically spaced offsets ``min_offset ... pi/angles_per_radius`` on
    either side.
    """

    radii: np.ndarray
    angles_per_radius: int = 512
    refinement_atoms: tuple = ()
    min_offset: float = 1e-6
    offsets_per_atom: int = 24

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        if radii.size == 0 or self.angles_per_radius < 1:
            raise ValidationError("disk grid must be nonempty")
        if np.any(radii <= 0) or np.any(radii >= 1) or np.any(np.diff(radii) <= 0):
            raise ValidationError("disk grid radii must be increasing and lie in (0, 1)")
        radii.setflags(write=False)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "refinement_atoms", tuple(complex(a) for a in self.refinement_atoms))

    @classmethod
    def default(cls, atoms=(), radii: int = 64, angles: int = 512) -> "DiskGrid":
        return cls(default_radii(radii), angles, tuple(atoms))

    def angles(self) -> np.ndarray:
        base = TWO_PI * np.arange(self.angles_per_radius) / self.angles_per_radius
        if not self.refinement_atoms:
            return base
        offsets = np.geomspace(self.min_offset, np.pi / self.angles_per_radius, self.offsets_per_atom)
        extra = []
        for atom in self.refinement_atoms:
            alpha = np.angle(atom)
            extra.append([alpha])
            extra.append(alpha + offsets)
            extra.append(alpha - offsets)
        allangles = np.concatenate([base, *extra]) % TWO_PI
        return np.unique(allangles)

    def points(self) -> np.ndarray:
        ang = self.angles()
        return (self.radii[:, None] * np.exp(1j * ang)[None, :]).ravel()

    @property
    def shape(self) -> tuple:
        return (self.radii.size, self.angles().size)

    def refined(self) -> "DiskGrid":
        """A grid whose point set contains this one.

        Geometric midpoints are inserted between radii, one extra radius is
        added closer to the circle, the angular count doubles and the
        smallest atom offset shrinks by four.
        """
        gaps = 1.0 - self.radii
        mids = 1.0 - np.sqrt(gaps[:-1] * gaps[1:])
        outer = 1.0 - gaps[-1] / 4.0
        radii = np.unique(np.concatenate([self.radii, mids, [outer]]))
        # new offsets do not contain the old ones; the parent's angles are merged in
        return _RefinedDiskGrid(
            radii,
            2 * self.angles_per_radius,
            self.refinement_atoms,
            self.min_offset / 4.0,
            2 * self.offsets_per_atom,
            parent=self,
        )

    def describe(self) -> dict:
        return {
            "kind": "disk",
            "radii": int(self.radii.size),
            "min_gap": float(1.0 - self.radii[-1]),
            "angles_per_radius": int(self.angles_per_radius),
            "refinement_atoms": [[a.real, a.imag] for a in self.refinement_atoms],
            "min_offset": float(self.min_offset),
            "points": int(self.points().size),
        }


@dataclass(frozen=True, eq=False)
class _RefinedDiskGrid(DiskGrid):
    parent: DiskGrid | None = field(default=None, repr=False)

    def angles(self) -> np.ndarray:
        own = DiskGrid.angles(self)
        if self.parent is None:
            return own
        return np.unique(np.concatenate([own, self.parent.angles()]))
