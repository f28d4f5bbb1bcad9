import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from mixmorrey.core import Cube, GridFunction, GridSpec
from mixmorrey.estimators import FractionalIntegral, FractionalMaximal, HardyOperator
from mixmorrey.operators import FractionalKernelSpec, fractional_integral, fractional_maximal, hardy, inner_points
from mixmorrey.radial import RadialGrid

GRID = GridSpec(Cube((0.0, 0.0), 1.0), 8)


@pytest.fixture
def rows(rng):
    return rng.random((3, 64))


def test_fractional_integral_matches_function(rows):
    est = FractionalIntegral(alpha=0.6, grid=GRID)
    out = est.fit_transform(rows)
    assert out.shape == (3, 16)
    ref = fractional_integral(GridFunction(GRID, rows[1].reshape(8, 8)), FractionalKernelSpec(0.6, 2, near_field=1))
    np.testing.assert_allclose(out[1], ref.samples.ravel(), rtol=1e-13)
    assert est.get_feature_names_out().shape == (16,)


def test_grid_as_dict_and_custom_eval_grid(rows):
    target = GridSpec(Cube((0.0, 0.0), 0.25), 2)
    est = FractionalIntegral(alpha=1.0, grid=GRID.to_dict(), eval_grid=target.to_dict()).fit(rows)
    assert est.transform(rows).shape == (3, 4)


def test_fractional_maximal(rows):
    out = FractionalMaximal(alpha=0.5, grid=GRID).fit_transform(rows)
    pts = inner_points(GRID).points().reshape(-1, 2)
    ref = fractional_maximal(GridFunction(GRID, rows[0].reshape(8, 8)), 0.5, pts)
    np.testing.assert_allclose(out[0], ref, rtol=1e-13)
    with pytest.raises(ValueError):
        FractionalMaximal(alpha=2.0, grid=GRID).fit(rows)


def test_hardy(rng):
    t = RadialGrid.log_spaced(0.01, 1.0, 16)
    X = rng.random((4, 16))
    out = HardyOperator(t).fit_transform(X)
    np.testing.assert_allclose(out[2], hardy(X[2], t), rtol=1e-13)
    with pytest.raises(ValueError):
        HardyOperator(t).fit(rng.random((2, 5)))


def test_clone_and_params():
    est = FractionalIntegral(alpha=0.3, grid=GRID, near_field=2)
    twin = clone(est)
    assert twin.get_params()["near_field"] == 2 and twin.alpha == 0.3
    assert not hasattr(twin, "grid_")


def test_feature_count_checked(rows):
    est = FractionalIntegral(alpha=0.5, grid=GRID)
    with pytest.raises(ValueError, match="cells"):
        est.fit(rows[:, :10])
    est.fit(rows)
    with pytest.raises(ValueError, match="expected"):
        est.transform(rows[:, :10])


def test_transform_before_fit(rows):
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        FractionalIntegral(alpha=0.5, grid=GRID).transform(rows)


def test_pipeline(rows):
    target = GridSpec(Cube((0.0, 0.0), 0.5), 4)
    pipe = make_pipeline(FractionalIntegral(alpha=0.5, grid=GRID, eval_grid=target))
    assert pipe.fit_transform(rows).shape == (3, 16)
