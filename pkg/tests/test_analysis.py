import numpy as np
import pytest

from picsweep.analysis import free_spectral_range, local_maxima, local_minima


def test_parabolic_refinement_is_exact_on_a_parabola():
    x = np.linspace(0, 1, 11)
    y = -((x - 0.537) ** 2) + 2.0
    xv, yv = local_maxima(x, y)
    assert xv == pytest.approx([0.537], abs=1e-12)
    assert yv == pytest.approx([2.0], abs=1e-12)


def test_minima_of_cosine():
    x = np.linspace(0, 4 * np.pi, 4001)
    xv, yv = local_minima(x, np.cos(x))
    assert xv == pytest.approx([np.pi, 3 * np.pi], abs=1e-6)
    assert yv == pytest.approx([-1, -1], abs=1e-9)


def test_height_threshold_and_unsorted_input():
    x = np.linspace(0, 10, 1001)
    y = np.exp(-((x - 2) ** 2) * 20) + 0.2 * np.exp(-((x - 6) ** 2) * 20)
    rev = slice(None, None, -1)
    xv, _ = local_maxima(x[rev], y[rev], min_height=0.5)
    assert xv == pytest.approx([2.0], abs=1e-3)


def test_free_spectral_range_picks_pair_nearest_target():
    spacing, mid = free_spectral_range([1.0, 2.0, 4.0, 8.0], near=3.2)
    assert (spacing, mid) == (2.0, 3.0)
    with pytest.raises(ValueError):
        free_spectral_range([1.0], near=1.0)
