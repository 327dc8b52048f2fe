"""Strict parsers for the scheduler CLI's CSV and JSON outputs."""

import csv
import json
import math
from dataclasses import dataclass


class MalformedCSV(ValueError):
    """Curve CSV does not match the CLI's exact output shape."""


class MalformedJSON(ValueError):
    """JSON document is missing a required field or has the wrong shape."""


_CURVE_HEADER = ["k", "r1", "r2", "r3"]


@dataclass(frozen=True)
class CurveSheet:
    """Parsed `k,r1,r2,r3` rows: expected reward after each lag, by origin."""

    k: tuple
    r1: tuple
    r2: tuple
    r3: tuple


@dataclass(frozen=True)
class RefLines:
    """Horizontal reference levels and the optional retain/switch threshold."""

    pss_alpha: float
    p2_alpha: float
    threshold_L: float | None  # None when not applicable, inf when unbounded


def load_curve_sheet(path) -> CurveSheet:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise MalformedCSV(f"cannot read curve CSV: {exc}")
    if not rows or rows[0] != _CURVE_HEADER:
        raise MalformedCSV(f"expected header {','.join(_CURVE_HEADER)}")
    if len(rows) < 2:
        raise MalformedCSV("no data rows")
    k, r1, r2, r3 = [], [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise MalformedCSV(f"line {lineno}: expected 4 columns")
        try:
            k.append(int(row[0]))
            for out, cell in zip((r1, r2, r3), row[1:]):
                out.append(float(cell))
        except ValueError as exc:
            raise MalformedCSV(f"line {lineno}: {exc}")
    if k[0] != 0 or any(b <= a for a, b in zip(k, k[1:])):
        raise MalformedCSV("k must increase strictly from 0")
    return CurveSheet(tuple(k), tuple(r1), tuple(r2), tuple(r3))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedJSON(f"cannot read JSON: {exc}")


def load_refs(path) -> RefLines:
    """Reference levels from the CLI's `classify` or `curves` JSON output."""
    doc = _load_json(path)
    for field in ("pss_alpha", "p2_alpha"):
        if field not in doc:
            raise MalformedJSON(f"missing field '{field}'")
    L = doc.get("threshold_L")
    if L == "inf":
        L = math.inf
    elif L is not None:
        try:
            L = float(L)
        except (TypeError, ValueError):
            raise MalformedJSON(f"bad threshold_L value {L!r}")
    return RefLines(float(doc["pss_alpha"]), float(doc["p2_alpha"]), L)


def load_sandwich(path) -> dict:
    """The CLI `sandwich` report: bounds plus two simulated policies."""
    doc = _load_json(path)
    for field in ("lower", "upper", "greedy", "genie"):
        if field not in doc:
            raise MalformedJSON(f"missing field '{field}'")
    for side in ("greedy", "genie"):
        for field in ("eta_hat", "std_err"):
            if field not in doc[side]:
                raise MalformedJSON(f"missing field '{side}.{field}'")
    return doc
