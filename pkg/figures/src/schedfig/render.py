"""Deterministic PNG rendering of curve sheets and bound comparisons.

Output is fixed at 1200x800 pixels with hard-coded styling and no embedded
metadata, so reruns on the same inputs are pixel-identical and image
regressions can be caught by hashing raw pixel data.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .io import load_curve_sheet, load_refs, load_sandwich

_FIGSIZE = (12.0, 8.0)  # x 100 dpi = 1200x800 px
_DPI = 100
# Strip the software/date text chunks matplotlib would otherwise embed.
_NO_METADATA = {"Software": None}

_CURVE_STYLE = {
    "r3": dict(color="#1f77b4", marker="o", label="after seeing the best state"),
    "r2": dict(color="#2ca02c", marker="s", label="after seeing the middle state"),
    "r1": dict(color="#d62728", marker="^", label="after seeing the worst state"),
}


def _save(fig, out_path):
    fig.savefig(out_path, dpi=_DPI, metadata=_NO_METADATA)
    plt.close(fig)


def render_curves(curves_csv, refs_json, out_png) -> dict:
    """Plot the three expected-reward decay curves with reference lines.

    Returns a summary of the rendered geometry: the two reference levels and
    whether the middle-state line sits above the steady-state line.
    """
    sheet = load_curve_sheet(curves_csv)
    refs = load_refs(refs_json)

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for name in ("r3", "r2", "r1"):
        ax.plot(sheet.k, getattr(sheet, name), markersize=3, linewidth=1.2,
                **_CURVE_STYLE[name])
    ax.axhline(refs.pss_alpha, color="#555555", linestyle="--", linewidth=1.0,
               label="steady-state reward")
    ax.axhline(refs.p2_alpha, color="#2ca02c", linestyle=":", linewidth=1.0,
               label="fresh middle-state reward")
    if refs.threshold_L is not None and math.isfinite(refs.threshold_L):
        ax.axvline(refs.threshold_L, color="#9467bd", linestyle="-.",
                   linewidth=1.0,
                   label=f"retain/switch threshold ({int(refs.threshold_L)})")
    ax.set_xlabel("lag since last feedback")
    ax.set_ylabel("expected reward")
    ax.set_title("Expected reward vs feedback lag")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    _save(fig, out_png)
    return {
        "pss_alpha": refs.pss_alpha,
        "p2_alpha": refs.p2_alpha,
        "p2_line_above_steady": refs.p2_alpha >= refs.pss_alpha,
        "threshold_marked": (refs.threshold_L is not None
                             and math.isfinite(refs.threshold_L)),
    }


def render_comparison(sandwich_json, out_png) -> dict:
    """Plot lower bound, two simulated policies (+/- 3 standard errors), and
    upper bound as ordered markers.

    Returns the plotted values keyed by label, in nondecreasing order.
    """
    doc = load_sandwich(sandwich_json)
    entries = [
        ("lower bound", float(doc["lower"]), 0.0),
        ("greedy (simulated)", float(doc["greedy"]["eta_hat"]),
         3.0 * float(doc["greedy"]["std_err"])),
        ("genie (simulated)", float(doc["genie"]["eta_hat"]),
         3.0 * float(doc["genie"]["std_err"])),
        ("upper bound", float(doc["upper"]), 0.0),
    ]
    entries.sort(key=lambda e: e[1])

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    xs = range(len(entries))
    ax.errorbar(xs, [e[1] for e in entries], yerr=[e[2] for e in entries],
                fmt="D", color="#1f77b4", ecolor="#d62728", capsize=6,
                markersize=8)
    ax.set_xticks(list(xs))
    ax.set_xticklabels([e[0] for e in entries], rotation=15)
    ax.set_ylabel("per-slot sum reward")
    ax.set_title("Closed-form bounds vs simulated policies")
    ax.grid(True, axis="y", alpha=0.3)
    _save(fig, out_png)
    return {e[0]: e[1] for e in entries}
