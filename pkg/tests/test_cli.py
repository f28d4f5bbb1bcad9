import csv
import io
import json
import math
import subprocess
import sys

import pytest

from mixmorrey.cli import EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_PASS, run

CHI = json.dumps({"kind": "indicator", "center": [0.0, 0.0], "half_side": 1.0})
CHI1 = json.dumps({"kind": "indicator", "center": [0.0], "half_side": 1.0})
GRID = json.dumps({"center": [0.0, 0.0], "half_side": 2.0, "points_per_axis": 16})


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


class TestNorm:
    def test_lebesgue(self):
        code, out = run_json(["norm", "--f", CHI, "--grid", GRID, "--p", "1,1"])
        assert code == EXIT_PASS and out["schema"] == 1
        assert out["value"] == pytest.approx(4.0)

    def test_region_and_richardson(self):
        code, out = run_json(["norm", "--f", CHI, "--grid", GRID, "--p", "2,inf", "--region", "cube:0,0,0.5",
                              "--richardson"])
        assert out["value"] == pytest.approx(1.0) and out["richardson_error"] is not None

    def test_global_flags_after_subcommand(self):
        code, out = run_json(["norm", "--f", CHI, "--p", "1,1", "--res", "32"])
        assert out["resolution"] == 32

    def test_local_morrey(self):
        code, out = run_json(["--res", "16", "norm", "--f", CHI, "--p", "1,1", "--space", "lm", "--theta", "inf",
                              "--omega", "power:0"])
        assert out["value"] == pytest.approx(4.0) and out["method"] == "closed_form"

    def test_global_and_mixed_morrey(self):
        _, gm = run_json(["norm", "--f", CHI, "--grid", GRID, "--p", "1,1", "--space", "gm", "--theta", "inf",
                          "--omega", "power:0"])
        _, mm = run_json(["norm", "--f", CHI, "--grid", GRID, "--p", "1,1", "--space", "mixed-morrey", "--q", "1"])
        assert gm["value"] == pytest.approx(4.0) == pytest.approx(mm["value"])

    def test_divergent_norm_reported(self):
        _, out = run_json(["norm", "--f", CHI, "--grid", GRID, "--p", "1,1", "--space", "lm", "--theta", "1",
                           "--omega", "power:0"])
        assert out["value"] == "inf" and out["verdict"] == "divergent"

    def test_csv(self):
        code, text = run(["--out", "csv", "norm", "--f", CHI, "--grid", GRID, "--p", "1,1"])
        rows = dict(csv.reader(io.StringIO(text)))
        assert rows["schema"] == "1" and float(rows["value"]) == pytest.approx(4.0)

    def test_missing_theta(self, capsys):
        code, _ = run(["norm", "--f", CHI, "--p", "1,1", "--space", "lm"])
        assert code == EXIT_HYPOTHESIS
        assert "theta" in json.loads(capsys.readouterr().err)["error"]

    def test_generator_from_file(self, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(CHI)
        code, out = run_json(["norm", "--f", str(path), "--grid", GRID, "--p", "1,1"])
        assert out["value"] == pytest.approx(4.0)


class TestOp:
    def test_riesz_potential_csv(self):
        code, text = run(["--res", "32", "op", "--kind", "ialpha", "--alpha", "1", "--f", CHI])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["x1", "x2", "value"] and len(rows) == 1 + 16 * 16

    def test_maximal_json(self):
        code, out = run_json(["--out", "json", "--res", "16", "op", "--kind", "malpha", "--alpha", "0.5", "--f", CHI1])
        assert out["columns"] == ["x1", "value"] and len(out["rows"]) == 8

    def test_partial_operators(self):
        _, inner = run_json(["--out", "json", "op", "--kind", "inner", "--alpha", "1", "--f", CHI, "--r", "0.5"])
        _, outer = run_json(["--out", "json", "op", "--kind", "outer", "--alpha", "1", "--f", CHI, "--r", "0.5"])
        _, whole = run_json(["--out", "json", "op", "--kind", "inner", "--alpha", "1", "--f", CHI, "--r", "9"])
        assert inner["rows"][0][-1] + outer["rows"][0][-1] == pytest.approx(whole["rows"][0][-1], rel=1e-12)

    def test_hardy(self):
        const = json.dumps({"kind": "constant", "value": 2.0})
        _, out = run_json(["--out", "json", "--res", "4", "op", "--kind", "hardy", "--f", const, "--t-max", "2"])
        assert [row[1] for row in out["rows"]] == pytest.approx([0.0, 1.0, 2.0, 3.0, 4.0])

    def test_alpha_required(self):
        assert run(["op", "--kind", "ialpha", "--f", CHI])[0] == EXIT_HYPOTHESIS

    def test_alpha_out_of_range(self):
        assert run(["op", "--kind", "ialpha", "--alpha", "3", "--f", CHI])[0] == EXIT_HYPOTHESIS


class TestCheckConditions:
    BASE = ["check-conditions", "--theta1", "inf", "--theta2", "inf", "--p1", "2,2", "--p2", "2,2", "--alpha", "0.5"]

    def test_finite(self):
        # n/q1 = 0.8, n/q2 = 0.3: omega_i = r^(n/q_i - 1)
        code, out = run_json(self.BASE + ["--omega1", "power:-0.2", "--omega2", "power:-0.7"])
        assert code == EXIT_PASS and out["case"] == 9 and out["passed"]

    def test_divergent_exits_one(self):
        code, out = run_json(self.BASE + ["--omega1", "power:-0.2", "--omega2", "power:-0.5"])
        assert code == EXIT_FAIL and not out["passed"]

    def test_no_exponent_regime(self, capsys):
        argv = ["check-conditions", "--theta1", "2", "--theta2", "2", "--p1", "2,2", "--p2", "4,4", "--alpha", "0.1",
                "--omega1", "power:-1", "--omega2", "power:-1"]
        assert run(argv)[0] == EXIT_HYPOTHESIS
        assert json.loads(capsys.readouterr().err)["condition"] == "(4.1)/(4.2)/(4.3)"


class TestVerify:
    def test_pass(self):
        code, out = run_json(["verify", "theorem-2.9"])
        assert code == EXIT_PASS and out["schema"] == 1 and out["passed"]

    def test_csv(self):
        code, text = run(["--out", "csv", "verify", "theorem-2.9"])
        assert text.startswith("section,name,value,passed")

    def test_hypothesis_error(self, capsys):
        code, _ = run(["verify", "theorem-5.1", "--config", '{"omega2": "power:-0.1"}'])
        assert code == EXIT_HYPOTHESIS
        assert json.loads(capsys.readouterr().err)["condition"] == "omega_2 in Omega_theta2"

    def test_failing_check_exits_one(self, monkeypatch):
        import mixmorrey.cli as cli
        from mixmorrey.verify import VerificationReport

        monkeypatch.setattr(cli, "verify_theorem", lambda *a, **k: VerificationReport("theorem-2.9", False))
        code, out = run_json(["verify", "theorem-2.9"])
        assert code == EXIT_FAIL and out["passed"] is False

    def test_unknown_theorem(self):
        with pytest.raises(SystemExit):
            run(["verify", "theorem-0.0"])


class TestFamily:
    def test_family(self):
        code, out = run_json(["--seed", "4", "family", "tensor_products", "--params", '{"count": 2}'])
        assert code == EXIT_PASS and out["size"] == 2 and out["family"]["seed"] == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mixmorrey", "norm", "--f", CHI, "--p", "inf,inf"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 1.0
