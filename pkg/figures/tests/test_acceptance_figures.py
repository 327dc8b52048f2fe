"""Acceptance criterion for the figures component: correct chart geometry
from primary CLI files alone, with pixel-stable reruns."""

import hashlib

import pytest
from PIL import Image

from schedfig import render_curves


@pytest.fixture
def verdict(capsys):
    def _verdict(label, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            suffix = f"  ({detail})" if detail else ""
            print(f"\n[ACCEPTANCE] {label}: {status}{suffix}")
        assert ok, f"{label} failed: {detail}"
    return _verdict


def _hash(path):
    with Image.open(path) as img:
        return hashlib.sha256(img.convert("RGB").tobytes()).hexdigest()


def test_10_figures_geometry_and_stability(verdict, type1_outputs,
                                           type2_outputs, tmp_path):
    s1 = render_curves(*type1_outputs, tmp_path / "t1a.png")
    s2 = render_curves(*type2_outputs, tmp_path / "t2a.png")
    if not s1["p2_line_above_steady"]:
        verdict("10 figures", False,
                "retain-biased instance drew its reference line low")
    if s2["p2_line_above_steady"]:
        verdict("10 figures", False,
                "switch-biased instance drew its reference line high")
    render_curves(*type1_outputs, tmp_path / "t1b.png")
    render_curves(*type2_outputs, tmp_path / "t2b.png")
    stable = (_hash(tmp_path / "t1a.png") == _hash(tmp_path / "t1b.png")
              and _hash(tmp_path / "t2a.png") == _hash(tmp_path / "t2b.png"))
    distinct = _hash(tmp_path / "t1a.png") != _hash(tmp_path / "t2a.png")
    verdict("10 figures", stable and distinct,
            "reference-line geometry correct for both system types, "
            "pixel hashes stable across reruns")
