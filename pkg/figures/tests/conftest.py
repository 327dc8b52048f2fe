"""Fixtures that produce real primary-CLI outputs for the renderers.

The figures package consumes only files; these fixtures shell out to the
`arqsched` CLI exactly as a user would.
"""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "arqsched.cli"]

P_EXAMPLE = [[0.8, 0.15, 0.05], [0.1, 0.7, 0.2], [0.05, 0.15, 0.8]]
P_IID = [[1 / 3, 1 / 3, 1 / 3]] * 3


def _run(args):
    proc = subprocess.run(CLI + list(args), capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    return proc.stdout


def make_outputs(tmp_path, P, alpha, tag):
    """Instance JSON -> (curves CSV, refs JSON) via the primary CLI."""
    inst = tmp_path / f"{tag}-inst.json"
    inst.write_text(json.dumps({"P": P, "alpha": alpha}))
    curves = tmp_path / f"{tag}-curves.csv"
    out = _run(["curves", str(inst), "--out", str(curves)])
    refs = tmp_path / f"{tag}-refs.json"
    refs.write_text(out)
    return curves, refs


@pytest.fixture(scope="session")
def type1_outputs(tmp_path_factory):
    base = tmp_path_factory.mktemp("type1")
    return make_outputs(base, P_EXAMPLE, [0, 0.9, 1], "type1")


@pytest.fixture(scope="session")
def type2_outputs(tmp_path_factory):
    base = tmp_path_factory.mktemp("type2")
    return make_outputs(base, P_EXAMPLE, [0, 0.5, 1], "type2")


@pytest.fixture(scope="session")
def iid_outputs(tmp_path_factory):
    base = tmp_path_factory.mktemp("iid")
    return make_outputs(base, P_IID, [0, 0.5, 1], "iid")


@pytest.fixture(scope="session")
def sandwich_json(tmp_path_factory):
    base = tmp_path_factory.mktemp("sandwich")
    inst = base / "inst.json"
    inst.write_text(json.dumps({"P": P_EXAMPLE, "alpha": [0, 0.5, 1]}))
    out = base / "sandwich.json"
    _run(["sandwich", str(inst), "--horizon", "4000", "--episodes", "20",
          "--out", str(out)])
    return out
