"""Hypothesis strategies shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

finite = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False)
angles = st.floats(0.0, 2 * np.pi, allow_nan=False, exclude_max=True)
complex_small = st.builds(complex, finite, finite)


@st.composite
def disk_points(draw, radius=0.95):
    r = draw(st.floats(0.0, radius))
    t = draw(angles)
    return r * np.exp(1j * t)


@st.composite
def series_coeffs(draw, min_order=1, max_order=12):
    n = draw(st.integers(min_order, max_order))
    re = draw(st.lists(finite, min_size=n + 1, max_size=n + 1))
    im = draw(st.lists(finite, min_size=n + 1, max_size=n + 1))
    return np.array(re) + 1j * np.array(im)
