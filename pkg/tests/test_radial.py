import math

import numpy as np
import pytest

from mixmorrey.radial import DIVERGENT, FINITE, INCONCLUSIVE, RadialGrid, doubling_verdict


def test_log_spaced_weights_sum_to_window():
    g = RadialGrid.log_spaced(0.1, 10.0, 32)
    assert len(g) == 32
    assert g.weights.sum() == pytest.approx(9.9, rel=1e-12)
    assert 0.1 < g.r_min < g.r_max < 10.0


def test_log_spaced_integrates_power_exactly_enough():
    g = RadialGrid.log_spaced(1.0, 100.0, 512)
    assert np.sum(g.radii ** -2 * g.weights) == pytest.approx(0.99, rel=1e-4)


@pytest.mark.parametrize("radii,weights", [
    (np.geomspace(1, 2, 4), np.ones(4)),
    (np.linspace(0, 1, 8), np.ones(8)),
    (np.linspace(1, 2, 8)[::-1], np.ones(8)),
    (np.linspace(1, 2, 8), -np.ones(8)),
])
def test_rejects_bad_grids(radii, weights):
    with pytest.raises(ValueError):
        RadialGrid(radii, weights)


@pytest.mark.parametrize("values,verdict", [
    ([1.0, 2.0, 4.0, 8.0], DIVERGENT),
    ([1.0, 1.5, 1.5], FINITE),
    ([1.0, 1.5, 1.6], INCONCLUSIVE),
    ([1.0, math.inf], DIVERGENT),
    ([0.0, 0.0], FINITE),
    ([3.0], INCONCLUSIVE),
])
def test_doubling_verdict(values, verdict):
    assert doubling_verdict(values) == verdict
