import json
import math
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "arqsched.cli"]

P_A = [[0.8, 0.15, 0.05], [0.1, 0.7, 0.2], [0.05, 0.15, 0.8]]
P_BAD_ORDER = [[0.2, 0.3, 0.5], [0.3, 0.3, 0.4], [0.5, 0.3, 0.2]]


def write_instance(tmp_path, P, alpha, name="inst.json", **extra):
    path = tmp_path / name
    path.write_text(json.dumps({"P": P, "alpha": alpha, **extra}))
    return str(path)


def run_cli(*argv):
    proc = subprocess.run(CLI + list(argv), capture_output=True, text=True)
    return proc.returncode, proc.stdout


class TestValidate:
    def test_good_instance(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("validate", inst)
        doc = json.loads(out)
        assert code == 0 and doc["valid"]
        assert doc["steady_state"] == pytest.approx([4 / 15, 1 / 3, 2 / 5],
                                                    abs=1e-12)

    def test_ordering_violation_exits_2(self, tmp_path):
        inst = write_instance(tmp_path, P_BAD_ORDER, [0, 0.5, 1])
        code, out = run_cli("validate", inst)
        doc = json.loads(out)
        assert code == 2
        assert doc["error"] == "OrderingViolation"

    def test_missing_file_exits_2(self):
        code, out = run_cli("validate", "/nonexistent/inst.json")
        assert code == 2
        assert json.loads(out)["error"] == "InvalidInstance"


class TestClassify:
    def test_type2(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("classify", inst)
        doc = json.loads(out)
        assert code == 0
        assert doc["type"] == "II"
        assert doc["threshold_L"] is None
        assert doc["p2_alpha"] == pytest.approx(0.55, abs=1e-12)

    def test_type1_with_threshold(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.9, 1])
        code, out = run_cli("classify", inst)
        doc = json.loads(out)
        assert code == 0
        assert doc["type"] == "I"
        assert doc["threshold_L"] == 3


class TestCurves:
    def test_csv_export(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        out_csv = tmp_path / "curves.csv"
        code, out = run_cli("curves", inst, "--out", str(out_csv))
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "k,r1,r2,r3"
        assert len(lines) == 66  # header + k = 0..64
        k, r1, r2, r3 = lines[1].split(",")
        assert (k, r2) == ("0", "0.55")
        assert float(r1) == pytest.approx(0.125, abs=1e-12)
        assert float(r3) == pytest.approx(0.875, abs=1e-12)
        last = [float(x) for x in lines[-1].split(",")[1:]]
        doc = json.loads(out)
        for v in last:
            assert v == pytest.approx(doc["pss_alpha"], abs=1e-6)


class TestBounds:
    def test_type2_values(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("bounds", inst)
        doc = json.loads(out)
        assert code == 0
        assert doc["type"] == "II"
        assert doc["lower"] == pytest.approx(0.605, abs=1e-12)
        assert doc["upper"] == pytest.approx(0.7277778, abs=1e-6)


class TestSimulate:
    def test_deterministic_output(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        args = ("simulate", inst, "--horizon", "2000", "--episodes", "5",
                "--seed", "12")
        code1, out1 = run_cli(*args)
        code2, out2 = run_cli(*args)
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["policy"] == "greedy-structured"
        assert doc["slots_accounted"] == 5 * (2000 - 200)
        assert 0.55 < doc["eta_hat"] < 0.75

    def test_trace_export(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        trace = tmp_path / "trace.csv"
        code, _ = run_cli("simulate", inst, "--horizon", "50",
                          "--episodes", "1", "--out", str(trace))
        assert code == 0
        lines = trace.read_text().strip().splitlines()
        assert lines[0] == "slot,s1,s2,action,feedback,reward,belief1,belief2"
        assert len(lines) == 51

    def test_unknown_policy_exits_4(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("simulate", inst, "--policy", "oracle")
        assert code == 4

    def test_sim_block_defaults(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1],
                              sim={"horizon": 1000, "episodes": 3, "seed": 9,
                                   "policy": "round-robin"})
        code, out = run_cli("simulate", inst)
        doc = json.loads(out)
        assert code == 0
        assert doc["policy"] == "round-robin"
        assert doc["episodes"] == 3 and doc["seed"] == 9


class TestSandwich:
    def test_passes_on_example(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        out_json = tmp_path / "sandwich.json"
        code, out = run_cli("sandwich", inst, "--horizon", "5000",
                            "--episodes", "20", "--out", str(out_json))
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"]
        assert json.loads(out_json.read_text()) == doc
        assert {c["check"] for c in doc["checks"]} == {
            "lower <= greedy", "greedy <= upper", "greedy <= genie",
            "genie matches upper"}


class TestCompareOptimal:
    def test_keys_and_agreement(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("compare-optimal", inst, "--horizon", "4")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"horizon", "restricted_gap", "unrestricted_gap",
                            "agreement", "counterexample"}
        assert doc["unrestricted_gap"] >= -1e-12
        assert 0.0 <= doc["agreement"] <= 1.0


class TestVerify:
    def test_all_pass_on_equal_column(self, tmp_path):
        P = [[0.7, 0.2, 0.1], [0.3, 0.2, 0.5], [0.1, 0.2, 0.7]]
        inst = write_instance(tmp_path, P, [0, 0.4, 1])
        code, out = run_cli("verify", inst)
        docs = json.loads(out)
        assert code == 0
        assert all(d["passed"] for d in docs)
        names = {d["name"] for d in docs}
        assert "condition_S_case1" in names and "equivalence_mode" in names


class TestUsage:
    def test_unknown_command_exits_4(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, _ = run_cli("frobnicate", inst)
        assert code == 4

    def test_no_command_exits_4(self):
        code, out = run_cli()
        assert code == 4
        assert json.loads(out)["error"] == "UnknownCommand"

    def test_unknown_flag_exits_4(self, tmp_path):
        inst = write_instance(tmp_path, P_A, [0, 0.5, 1])
        code, out = run_cli("classify", inst, "--frob", "1")
        assert code == 4
        assert json.loads(out)["error"] == "UsageError"
