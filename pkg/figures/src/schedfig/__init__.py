"""Chart rendering for scheduler CLI outputs.

This package performs no numerical modeling: every plotted number comes from
a CSV or JSON file produced by the `arqsched` command line tool.
"""

from .io import (CurveSheet, MalformedCSV, MalformedJSON, RefLines,
                 load_curve_sheet, load_refs, load_sandwich)
from .render import render_comparison, render_curves

__all__ = [
    "CurveSheet", "MalformedCSV", "MalformedJSON", "RefLines",
    "load_curve_sheet", "load_refs", "load_sandwich",
    "render_comparison", "render_curves",
]
