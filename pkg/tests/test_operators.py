import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixmorrey.core import Cube, GridFunction, GridSpec, dilate, indicator, power, sample, tensor_power
from mixmorrey.operators import (FractionalKernelSpec, fractional_integral, fractional_integral_richardson,
                                 fractional_maximal, hardy, inner_points, layer_cake_pair, maximal_constant,
                                 partial_inner, partial_outer)
from mixmorrey.radial import RadialGrid

ORIGIN1 = np.zeros((1, 1))
ORIGIN2 = np.zeros((1, 2))


def chi1(r=1.0, half=2.0, res=256):
    return sample(indicator([0.0], r), GridSpec(Cube((0.0,), half), res))


def chi2(r=1.0, half=2.0, res=64):
    return sample(indicator([0.0, 0.0], r), GridSpec(Cube((0.0, 0.0), half), res))


def riesz_unit_square(x):
    """``I_1 chi_{Q(0,1)}(x)`` in 2D from four rectangle corner integrals."""
    total = 0.0
    for a in (1 - x[0], 1 + x[0]):
        for b in (1 - x[1], 1 + x[1]):
            total += a * math.asinh(b / a) + b * math.asinh(a / b)
    return total


class TestKernelSpec:
    @pytest.mark.parametrize("alpha,n", [(0.0, 1), (1.0, 1), (2.5, 2), (-0.5, 3)])
    def test_alpha_range(self, alpha, n):
        with pytest.raises(ValueError):
            FractionalKernelSpec(alpha, n)

    def test_rule_and_near_field_validated(self):
        with pytest.raises(ValueError):
            FractionalKernelSpec(0.5, 1, "truncate")
        with pytest.raises(ValueError):
            FractionalKernelSpec(0.5, 1, near_field=-1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_ball_term_matches_radial_integral(self, n):
        # int_{|y| < rho} |y|^(a - n) dy = surface * rho^a / a, with |B_rho| = h^n
        spec = FractionalKernelSpec(0.7, n)
        h = 0.1
        rho = {1: h / 2, 2: h / math.sqrt(math.pi), 3: h * (3 / (4 * math.pi)) ** (1 / 3)}[n]
        surface = {1: 2.0, 2: 2 * math.pi, 3: 4 * math.pi}[n]
        assert spec.ball_term(h) == pytest.approx(surface * rho ** 0.7 / 0.7, rel=1e-12)


class TestFractionalIntegral:
    def test_one_dimensional_closed_form(self):
        spec = FractionalKernelSpec(0.5, 1, near_field=1)
        errs = [abs(fractional_integral(chi1(res=res), spec, ORIGIN1)[0] - 4.0) for res in (128, 256, 512)]
        assert errs[1] < 5e-3 * 4
        assert errs[0] > errs[1] > errs[2]

    def test_two_dimensional_closed_form(self):
        exact = 8 * math.log(1 + math.sqrt(2))
        spec = FractionalKernelSpec(1.0, 2, near_field=1)
        v = fractional_integral(chi2(res=256), spec, ORIGIN2)[0]
        assert v == pytest.approx(exact, rel=1e-3)

    def test_ball_rule_beats_excluded_cell(self):
        # x on a midpoint, so the cell containing x is singular
        f = chi2(res=128)
        x = np.array([[f.grid.h / 2, f.grid.h / 2]])
        exact = riesz_unit_square(x[0])
        ball = fractional_integral(f, FractionalKernelSpec(1.0, 2), x)[0]
        excl = fractional_integral(f, FractionalKernelSpec(1.0, 2, "exclude"), x)[0]
        assert excl < ball
        assert abs(ball - exact) < abs(excl - exact)
        assert ball == pytest.approx(exact, rel=1e-2)

    @pytest.mark.parametrize("x", [(0.0, 0.0), (0.3, -0.2), (0.7, 0.7)])
    def test_corner_integral_oracle(self, x):
        f = chi2(res=256)
        v = fractional_integral(f, FractionalKernelSpec(1.0, 2, near_field=1), np.array([x]))[0]
        assert v == pytest.approx(riesz_unit_square(x), rel=1e-3)

    def test_linearity(self, rng):
        grid = GridSpec(Cube((0.0, 0.0), 1.0), 16)
        f, g = (GridFunction(grid, rng.standard_normal(grid.shape)) for _ in range(2))
        spec = FractionalKernelSpec(0.8, 2, near_field=1)
        a, b = 2.5, -0.75
        lhs = fractional_integral(a * f + b * g, spec).samples
        rhs = a * fractional_integral(f, spec).samples + b * fractional_integral(g, spec).samples
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12 * np.abs(rhs).max())

    @pytest.mark.parametrize("n,alpha,res", [(1, 0.3, 64), (2, 1.2, 16), (3, 2.0, 8)])
    @pytest.mark.parametrize("near_field", [0, 1, 2])
    def test_fft_matches_direct(self, rng, n, alpha, res, near_field):
        grid = GridSpec(Cube((0.0,) * n, 1.0), res)
        f = GridFunction(grid, rng.random(grid.shape))
        spec = FractionalKernelSpec(alpha, n, near_field=near_field)
        fft = fractional_integral(f, spec, method="fft").samples
        direct = fractional_integral(f, spec, method="direct").samples
        np.testing.assert_allclose(fft, direct, rtol=1e-12)

    def test_points_and_grid_agree(self):
        f = chi2(res=32)
        spec = FractionalKernelSpec(0.5, 2)
        target = inner_points(f.grid)
        on_grid = fractional_integral(f, spec, target).samples.ravel()
        at_points = fractional_integral(f, spec, target.points().reshape(-1, 2))
        np.testing.assert_allclose(on_grid, at_points, rtol=1e-12)

    def test_fft_needs_aligned_target(self):
        f = chi2(res=32)
        with pytest.raises(ValueError, match="lattice"):
            fractional_integral(f, FractionalKernelSpec(0.5, 2), GridSpec(Cube((0.01, 0.0), 0.5), 8), method="fft")

    def test_points_outside_box(self):
        with pytest.raises(ValueError):
            fractional_integral(chi2(res=16), FractionalKernelSpec(0.5, 2), np.array([[3.0, 0.0]]))

    @pytest.mark.parametrize("t", [2.0, 4.0])
    @pytest.mark.parametrize("near_field", [0, 1])
    def test_dilation_commutes_exactly_on_scaled_grids(self, t, near_field):
        # the discrete sum on the box scaled by 1/t is the continuous identity term by term
        f = sample(tensor_power([0.5, 1.0], half_side=1.0), GridSpec(Cube((0.0, 0.0), 2.0), 32))
        spec = FractionalKernelSpec(0.9, 2, near_field=near_field)
        lhs = fractional_integral(dilate(f, t), spec).samples
        rhs = t ** -0.9 * fractional_integral(f, spec).samples
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12)

    def test_richardson_estimate_brackets_error(self):
        f = chi2(res=64)
        spec = FractionalKernelSpec(1.0, 2, near_field=1)
        v, err = fractional_integral_richardson(f, spec, ORIGIN2)
        assert abs(v[0] - 8 * math.log(1 + math.sqrt(2))) <= 2 * err[0]


class TestPartialOperators:
    def test_inner_with_large_radius_is_full_integral(self):
        f = chi2(res=32)
        full = fractional_integral(f, FractionalKernelSpec(1.0, 2), ORIGIN2, absolute=True)[0]
        assert partial_inner(f, 1.0, [0, 0], 5.0) == pytest.approx(full, rel=1e-13)

    def test_inner_constant_one_dimensional(self):
        f = chi1(res=256)
        v = partial_inner(f, 0.5, [0.0], 1.0, near_field=1)
        assert v == pytest.approx(4.0, rel=5e-3)

    def test_outer_closed_form(self):
        f = chi1(r=4.0, half=4.0, res=512)
        assert partial_outer(f, 0.5, [0.0], 1.0) == pytest.approx(4.0, rel=1e-3)

    def test_outer_vanishes_for_support_inside(self):
        assert partial_outer(chi2(r=0.5, res=32), 1.0, [0, 0], 1.0) == 0.0

    @given(st.floats(0.1, 1.9), st.floats(0.2, 1.5), st.integers(0, 1))
    def test_inner_plus_outer_is_whole(self, r, alpha, nf):
        f = sample(tensor_power([0.5, 1.0], half_side=1.0), GridSpec(Cube((0.0, 0.0), 2.0), 16))
        x = [0.0625, -0.1875]
        whole = fractional_integral(f, FractionalKernelSpec(alpha, 2, near_field=nf), np.array([x]),
                                    absolute=True)[0]
        parts = partial_inner(f, alpha, x, r, near_field=nf) + partial_outer(f, alpha, x, r, near_field=nf)
        assert parts == pytest.approx(whole, rel=1e-12)

    def test_outer_decreasing_in_radius(self, rng):
        grid = GridSpec(Cube((0.0, 0.0), 1.0), 16)
        f = GridFunction(grid, rng.random(grid.shape))
        vals = [partial_outer(f, 0.7, [0.03125, 0.03125], r) for r in np.linspace(0.05, 1.2, 12)]
        assert np.all(np.diff(vals) <= 0)


class TestFractionalMaximal:
    def test_indicator_one_dimensional(self):
        assert fractional_maximal(chi1(res=64), 0.5, ORIGIN1)[0] == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_radius_grid_is_a_lower_bound(self):
        grid_val = fractional_maximal(chi1(res=64), 0.5, ORIGIN1, RadialGrid.log_spaced(0.1, 1.9, 16))[0]
        assert grid_val <= math.sqrt(2)
        assert grid_val == pytest.approx(math.sqrt(2), rel=0.05)

    def test_zero(self):
        z = GridFunction(GridSpec(Cube((0.0,), 1.0), 8), np.zeros(8))
        assert fractional_maximal(z, 0.5, ORIGIN1)[0] == 0.0

    @pytest.mark.parametrize("n,alpha", [(1, 0.5), (2, 1.0), (2, 0.4)])
    def test_dominated_by_riesz_potential(self, rng, n, alpha):
        grid = GridSpec(Cube((0.0,) * n, 1.0), 16 if n == 2 else 64)
        f = GridFunction(grid, rng.standard_normal(grid.shape))
        pts = inner_points(grid).points().reshape(-1, n)
        m = fractional_maximal(f, alpha, pts)
        i = fractional_integral(f, FractionalKernelSpec(alpha, n), pts, absolute=True)
        assert np.all(m <= maximal_constant(n, alpha) * i * (1 + 1e-12))


class TestHardy:
    def test_indicator(self):
        t = np.linspace(0, 3, 301)
        np.testing.assert_allclose(hardy((t < 1).astype(float), t), np.minimum(t, 1), atol=1e-2)
        np.testing.assert_allclose(hardy(np.where(t <= 1, 1.0, 0.0), t)[t >= 1.01], 1.005, atol=1e-12)

    def test_identity_function(self):
        t = np.linspace(0, 2, 11)
        np.testing.assert_allclose(hardy(lambda s: s, t), t ** 2 / 2, rtol=1e-12)

    def test_random_against_refined_sum(self, rng):
        t = np.linspace(0, 1, 101)
        knots = rng.random(6)
        g = lambda s: np.interp(s, np.linspace(0, 1, 6), knots)
        fine = np.linspace(0, 1, 10001)
        oracle = np.concatenate([[0.0], np.cumsum(g(0.5 * (fine[1:] + fine[:-1])) * np.diff(fine))])[::100]
        np.testing.assert_allclose(hardy(g, t)[1:], oracle[1:], rtol=1e-4)

    def test_positive_first_node(self):
        t = RadialGrid.log_spaced(0.01, 1.0, 64)
        assert hardy(np.ones(64), t)[0] == pytest.approx(t.radii[0])

    def test_monotone_and_linear(self, rng):
        t = np.sort(rng.random(50))
        g1, g2 = rng.random(50), rng.random(50)
        assert np.all(np.diff(hardy(g1, t)) >= 0)
        np.testing.assert_allclose(hardy(2 * g1 + 3 * g2, t), 2 * hardy(g1, t) + 3 * hardy(g2, t), rtol=1e-12)

    def test_negative_samples(self):
        with pytest.raises(ValueError, match="g >= 0"):
            hardy(np.array([1.0, -1.0]), np.array([0.0, 1.0]))

    def test_bad_nodes(self):
        with pytest.raises(ValueError):
            hardy(np.ones(3), np.array([0.0, 2.0, 1.0]))


class TestLayerCake:
    def test_constant_on_interval(self):
        lhs, rhs = layer_cake_pair(chi1(r=4.0, half=4.0, res=512), 2.0, 1.0)
        assert lhs == pytest.approx(1.5, rel=1e-3)
        assert rhs == pytest.approx(lhs, rel=1e-3)

    def test_annulus(self):
        f = sample(indicator([0.0], 2.0), GridSpec(Cube((0.0,), 2.0), 512))
        lhs, rhs = layer_cake_pair(f, 2.0, 1.0)
        assert lhs == pytest.approx(1.0, rel=1e-3)
        assert rhs == pytest.approx(lhs, rel=1e-3)

    def test_zero(self):
        z = GridFunction(GridSpec(Cube((0.0,), 1.0), 8), np.zeros(8))
        assert layer_cake_pair(z, 1.0, 0.5) == (0.0, 0.0)

    def test_negative_samples(self):
        f = GridFunction(GridSpec(Cube((0.0,), 1.0), 8), -np.ones(8))
        with pytest.raises(ValueError, match="f >= 0"):
            layer_cake_pair(f, 1.0, 0.5)

    def test_two_dimensional_power(self):
        f = sample(power(-0.5, [0.0, 0.0], r_max=1.5), GridSpec(Cube((0.0, 0.0), 2.0), 64))
        lhs, rhs = layer_cake_pair(f, 1.5, 0.3)
        assert rhs == pytest.approx(lhs, rel=1e-3)
