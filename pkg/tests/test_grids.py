import numpy as np
import pytest

from hbdirichlet.errors import ValidationError
from hbdirichlet.grids import DiskGrid, UnitCircleGrid, default_radii


def test_circle_grid_spacing():
    g = UnitCircleGrid(16)
    assert np.allclose(np.diff(g.theta), g.step)
    assert g.doubled().size == 32


def test_circle_grid_minimum_size():
    with pytest.raises(ValidationError):
        UnitCircleGrid(8)


def test_disk_grid_inside_disk_and_refined_near_atom():
    g = DiskGrid.default([1.0, -1j], radii=16, angles=64)
    z = g.points()
    assert np.all(np.abs(z) < 1)
    ang = g.angles()
    d = np.abs(np.angle(np.exp(1j * ang)))
    positive = d[d > 0]
    assert positive.min() <= 1e-6 * (1 + 1e-9)


def test_refinement_is_superset():
    g = DiskGrid(default_radii(8), 32, (1.0,))
    r = g.refined()
    pts = set(np.round(g.points(), 14))
    fine = set(np.round(r.points(), 14))
    assert pts <= fine
    assert r.points().size > g.points().size


def test_bad_radii():
    with pytest.raises(ValidationError):
        DiskGrid(np.array([0.5, 0.4]))
    with pytest.raises(ValidationError):
        DiskGrid(np.array([0.5, 1.0]))
