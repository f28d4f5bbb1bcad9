import json
import math

import numpy as np
import pytest

from mixmorrey.core import Weight, indicator, sample
from mixmorrey.exceptions import HypothesisError
from mixmorrey.mixed_norm import mixed_norm
from mixmorrey.verify import (SCHEMA_VERSION, THEOREM_IDS, NormSpec, OperatorSpec, TestFamily, VerificationReport,
                              default_config, make_family, member_grid, predicted_slope, ratio_sup, scaling_slope,
                              support_reach, verify_theorem)

L22 = NormSpec("lebesgue", [2, 2])
L44 = NormSpec("lebesgue", [4, 4])
IDENTITY = OperatorSpec()


class TestFamilies:
    def test_cube_indicators(self):
        fam = make_family("cube_indicators")
        assert len(fam) == 3 and fam.params["radii"] == [0.5, 1.0, 2.0]

    def test_dilation_orbit(self):
        fam = make_family("dilation_orbit")
        assert len(fam) == 5
        assert [support_reach(g, 2) for g in fam.members] == [4.0, 2.0, 1.0, 0.5, 0.25]

    @pytest.mark.parametrize("beta", [0.25, 0.5])
    def test_power_members_have_closed_form_norms(self, beta):
        fam = make_family("power_functions", {"betas": [beta]})
        g = fam.members[0]
        f = sample(g, member_grid(g, 2, 1024, pad=1.0))
        # Euclidean annulus 0.1 < |x| < 2: 2 pi int r^(1 - 2 beta) dr
        e = 2 - 2 * beta
        exact = math.sqrt(2 * math.pi * (2 ** e - 0.1 ** e) / e)
        assert mixed_norm(f, [2, 2]).value == pytest.approx(exact, rel=1e-2)

    def test_tensor_products_are_seeded(self):
        a = make_family("tensor_products", {"count": 3}, seed=7)
        b = make_family("tensor_products", {"count": 3}, seed=7)
        c = make_family("tensor_products", {"count": 3}, seed=8)
        assert a.to_dict() == b.to_dict() != c.to_dict()

    def test_empty_and_unknown(self):
        with pytest.raises(ValueError, match="empty"):
            make_family("cube_indicators", {"radii": []})
        with pytest.raises(ValueError, match="unknown family"):
            make_family("gaussians")

    def test_signed_members_need_flag(self):
        g = indicator([0.0, 0.0], 1.0).scaled_by(-1.0)
        with pytest.raises(ValueError, match="signed"):
            TestFamily("cube_indicators", (g,))
        assert TestFamily("cube_indicators", (g,), signed=True).signed

    def test_head(self):
        assert len(make_family("dilation_orbit").head(2)) == 2


class TestRatioSup:
    def test_identity_same_norm(self):
        rep = ratio_sup(IDENTITY, L22, L22, make_family("tensor_products", {"count": 4}))
        np.testing.assert_allclose(rep.ratios, 1.0, rtol=1e-12)
        assert rep.spread == pytest.approx(1.0)

    def test_scale_invariant_alpha_gives_flat_orbit(self):
        op = OperatorSpec("fractional_integral", 0.5)
        rep = ratio_sup(op, L22, L44, make_family("dilation_orbit"), res=32)
        assert rep.spread == pytest.approx(1.0, abs=1e-9)

    def test_mismatched_alpha_follows_scaling_law(self):
        op = OperatorSpec("fractional_integral", 0.7)
        rep = ratio_sup(op, L22, L44, make_family("dilation_orbit"), res=32)
        # t spans 2^-2 .. 2^2 and the ratio scales like t^-0.2
        assert rep.spread == pytest.approx(2 ** (0.2 * 4), rel=1e-9)

    def test_zero_source_member_is_skipped(self):
        # the weight only sees r < 0.05, where the off-centre indicator vanishes
        near = NormSpec("local_morrey", [1, 1], 1.0, Weight.power(0.0, hi=0.05))
        hollow = indicator([3.0, 0.0], 0.5)
        fam = TestFamily("cube_indicators", (indicator([0.0, 0.0], 1.0), hollow))
        rep = ratio_sup(IDENTITY, near, L22, fam, res=16)
        assert any("skipped" in note for note in rep.notes)
        assert len(rep.ratios) == 1
        with pytest.raises(ValueError, match="zero source norm"):
            ratio_sup(IDENTITY, near, L22, TestFamily("cube_indicators", (hollow,)), res=16)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            ratio_sup(IDENTITY, NormSpec("lebesgue", [2]), L22, make_family("cube_indicators"))


class TestScalingSlope:
    T = [2.0 ** k for k in range(-2, 3)]

    def test_identity_same_norm_is_flat(self):
        fit = scaling_slope(IDENTITY, L22, L22, indicator([0.0, 0.0], 1.0), self.T, res=16)
        assert fit.slope == pytest.approx(0.0, abs=1e-12)

    def test_identity_between_lebesgue_norms(self):
        fit = scaling_slope(IDENTITY, L22, L44, indicator([0.0, 0.0], 1.0), self.T, res=16)
        assert fit.slope == pytest.approx(0.5, abs=1e-12) == pytest.approx(fit.predicted)

    def test_riesz_potential_on_scale_line(self):
        op = OperatorSpec("fractional_integral", 0.5)
        fit = scaling_slope(op, L22, L44, indicator([0.0, 0.0], 1.0), self.T, res=32)
        assert abs(fit.slope) <= 0.05 and fit.error <= 0.05

    def test_predicted_slope_only_for_lebesgue(self):
        lm = NormSpec("local_morrey", [2, 2], 2.0, Weight.power(-1.0))
        assert predicted_slope(IDENTITY, lm, L22) is None
        assert predicted_slope(OperatorSpec("fractional_integral", 0.3), L22, L44) == pytest.approx(0.2)

    @pytest.mark.parametrize("t", [[1, 2, 4], [1, 2, 3, 4], [0, 1, 2, 4]])
    def test_bad_t_lists(self, t):
        with pytest.raises(ValueError):
            scaling_slope(IDENTITY, L22, L22, indicator([0.0, 0.0], 1.0), t)


class TestReport:
    def test_round_trip_and_csv(self):
        rep = ratio_sup(IDENTITY, L22, L44, make_family("cube_indicators"), res=16)
        d = json.loads(rep.to_json())
        assert d["schema"] == SCHEMA_VERSION == 1
        lines = rep.to_csv().splitlines()
        assert lines[0] == "section,name,value,passed" and len(lines) == 2 + 3

    def test_infinite_values_are_strings(self):
        rep = VerificationReport("x", False, worst=math.inf)
        assert rep.to_dict()["worst"] == "inf"

    def test_check_lookup(self):
        rep = VerificationReport("x", True, checks=[{"name": "a", "passed": True}])
        assert rep.check("a")["passed"]
        with pytest.raises(KeyError):
            rep.check("b")


class TestVerifyTheorem:
    def test_registry(self):
        assert set(THEOREM_IDS) == {"theorem-2.9", "theorem-4.1", "theorem-4.2", "lemma-4.3", "theorem-4.4",
                                    "theorem-5.1", "corollary-5.6", "corollary-5.7"}
        with pytest.raises(KeyError, match="unknown theorem id"):
            verify_theorem("theorem-9.9")

    def test_deterministic_bytes(self):
        a = verify_theorem("theorem-2.9", seed=3).to_json()
        b = verify_theorem("theorem-2.9", seed=3).to_json()
        assert a == b

    def test_doubling_detection(self):
        rep = verify_theorem("theorem-2.9")
        assert rep.passed
        assert all(c["passed"] for c in rep.checks)

    def test_layer_cake_residual(self):
        rep = verify_theorem("lemma-4.3")
        assert rep.passed and rep.worst <= 1e-3

    def test_two_sided_bound(self):
        rep = verify_theorem("theorem-4.1", {"radii": [0.25, 0.5, 1.0]})
        assert rep.passed and math.isfinite(rep.worst)

    @pytest.mark.parametrize("theorem_id,override,condition", [
        ("theorem-4.1", {"alpha": 2.5}, "0 < alpha < n"),
        ("theorem-4.2", {"p1": [2, 2], "p2": [4, 4], "alpha": 0.1}, "(4.1)/(4.2)/(4.3)"),
        ("theorem-4.4", {"p1": [1.5, 1.5], "p2": [1.2, 1.2], "alpha": 1.5}, "sigma > 0"),
        ("theorem-5.1", {"omega2": "power:-0.1"}, "omega_2 in Omega_theta2"),
        ("corollary-5.6", {"q2": 3.0}, "1/q2 = 1/q1 - alpha/n"),
    ])
    def test_hypothesis_gating(self, theorem_id, override, condition):
        with pytest.raises(HypothesisError) as exc:
            verify_theorem(theorem_id, override)
        assert exc.value.condition == condition

    def test_default_config_is_a_copy(self):
        cfg = default_config("theorem-5.1")
        cfg["alpha"] = 99
        assert default_config("theorem-5.1")["alpha"] != 99

    def test_unknown_config_key(self):
        with pytest.raises(ValueError, match="bogus"):
            verify_theorem("theorem-2.9", {"bogus": 1})
