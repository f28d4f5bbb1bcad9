"""scikit-learn transformers wrapping the operators.

Each row of ``X`` holds the flattened midpoint samples of one function on
the ``grid`` given at construction; ``transform`` returns one row of
operator values per input row. Norms are not estimators and stay plain
functions in :mod:`mixmorrey.mixed_norm` and :mod:`mixmorrey.morrey`.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import GridFunction, GridSpec
from .operators import FractionalKernelSpec, fractional_integral, fractional_maximal, hardy, inner_points
from .radial import RadialGrid


def _grid(grid):
    if isinstance(grid, GridSpec):
        return grid
    if isinstance(grid, dict):
        return GridSpec.from_dict(grid)
    raise TypeError("grid must be a GridSpec or a grid dict")


class _GridTransformer(TransformerMixin, BaseEstimator):

    def _fit_grid(self, X):
        grid = _grid(self.grid)
        X = check_array(X, dtype=float)
        size = int(np.prod(grid.shape))
        if X.shape[1] != size:
            raise ValueError(f"X has {X.shape[1]} features, the grid has {size} cells")
        self.grid_ = grid
        self.n_features_in_ = size
        if self.eval_grid is None:
            self.eval_grid_ = inner_points(grid)
        else:
            self.eval_grid_ = _grid(self.eval_grid)
        return X

    def _rows(self, X):
        check_is_fitted(self, "grid_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return [GridFunction(self.grid_, row.reshape(self.grid_.shape)) for row in X]

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "eval_grid_")
        m = int(np.prod(self.eval_grid_.shape))
        return np.array([f"{type(self).__name__.lower()}{i}" for i in range(m)], dtype=object)


class FractionalIntegral(_GridTransformer):
    """``I_alpha`` applied row by row.

    Parameters
    ----------
    alpha : float
        Order, ``0 < alpha < n``.
    grid : GridSpec or dict
        Grid the rows of ``X`` are sampled on.
    eval_grid : GridSpec or dict, optional
        Output grid; the inner half of ``grid`` by default.
    singular_cell_rule : {"ball_equivalent", "exclude"}
    near_field : int
        Cells within this many layers get exact kernel integrals.
    absolute : bool
        Integrate ``|f|``.
    """

    def __init__(self, alpha=1.0, grid=None, eval_grid=None, singular_cell_rule="ball_equivalent", near_field=1,
                 absolute=False):
        self.alpha = alpha
        self.grid = grid
        self.eval_grid = eval_grid
        self.singular_cell_rule = singular_cell_rule
        self.near_field = near_field
        self.absolute = absolute

    def fit(self, X, y=None):
        self._fit_grid(X)
        self.kernel_ = FractionalKernelSpec(self.alpha, self.grid_.n, self.singular_cell_rule, self.near_field)
        return self

    def transform(self, X):
        out = [fractional_integral(f, self.kernel_, self.eval_grid_, absolute=self.absolute).samples.ravel()
               for f in self._rows(X)]
        return np.vstack(out)


class FractionalMaximal(_GridTransformer):
    """``M_alpha`` applied row by row, at the midpoints of ``eval_grid``."""

    def __init__(self, alpha=1.0, grid=None, eval_grid=None):
        self.alpha = alpha
        self.grid = grid
        self.eval_grid = eval_grid

    def fit(self, X, y=None):
        self._fit_grid(X)
        if not 0 < self.alpha < self.grid_.n:
            raise ValueError(f"alpha must lie in (0, {self.grid_.n}), got {self.alpha}")
        return self

    def transform(self, X):
        pts = self.eval_grid_.points().reshape(-1, self.grid_.n)
        return np.vstack([fractional_maximal(f, self.alpha, pts) for f in self._rows(X)])


class HardyOperator(TransformerMixin, BaseEstimator):
    """``(Hg)(t) = int_0^t g`` for rows of samples ``g(t_k)``.

    Parameters
    ----------
    t : array or RadialGrid
        Increasing nodes shared by every row.
    """

    def __init__(self, t=None):
        self.t = t

    def fit(self, X, y=None):
        t = self.t.radii if isinstance(self.t, RadialGrid) else np.asarray(self.t, dtype=float)
        X = check_array(X, dtype=float)
        if t.ndim != 1 or X.shape[1] != t.size:
            raise ValueError(f"X has {X.shape[1]} features, t has {t.size} nodes")
        self.t_ = t
        self.n_features_in_ = t.size
        return self

    def transform(self, X):
        check_is_fitted(self, "t_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return np.vstack([hardy(row, self.t_) for row in X])


__all__ = ["FractionalIntegral", "FractionalMaximal", "HardyOperator"]
