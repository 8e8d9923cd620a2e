"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_coeffs(draw, min_size=1, max_size=9):
    re = draw(st.lists(finite, min_size=min_size, max_size=max_size))
    im = draw(st.lists(finite, min_size=len(re), max_size=len(re)))
    return np.array(re) + 1j * np.array(im)


@st.composite
def disk_points(draw, n=8, rmax=0.999):
    r = draw(st.lists(st.floats(0.0, rmax), min_size=n, max_size=n))
    t = draw(st.lists(st.floats(0.0, 2 * np.pi), min_size=n, max_size=n))
    return np.array(r) * np.exp(1j * np.array(t))


@st.composite
def atomic_measures(draw, max_atoms=6, min_gap=1e-3):
    n = draw(st.integers(1, max_atoms))
    angles = sorted(draw(st.lists(st.floats(0.0, 2 * np.pi, exclude_max=True), min_size=n, max_size=n, unique=True)))
    kept = [angles[0]]
    for a in angles[1:]:
        if a - kept[-1] > min_gap and (2 * np.pi - a + kept[0]) > min_gap:
            kept.append(a)
    masses = draw(st.lists(st.floats(0.1, 5.0), min_size=len(kept), max_size=len(kept)))
    from hbdirichlet.measures import AtomicMeasure

    return AtomicMeasure(np.exp(1j * np.array(kept)), np.array(masses))
