"""Script entry point.

    schedfig curves CURVES_CSV REFS_JSON OUT_PNG
    schedfig comparison SANDWICH_JSON OUT_PNG

Exit codes: 0 success, 2 malformed input, 4 usage error.
"""

import argparse
import json
import sys

from .io import MalformedCSV, MalformedJSON
from .render import render_comparison, render_curves


def build_parser():
    parser = argparse.ArgumentParser(prog="schedfig", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    p_curves = sub.add_parser("curves")
    p_curves.add_argument("curves_csv")
    p_curves.add_argument("refs_json")
    p_curves.add_argument("out_png")
    p_cmp = sub.add_parser("comparison")
    p_cmp.add_argument("sandwich_json")
    p_cmp.add_argument("out_png")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 4
    if args.command == "curves":
        fn = lambda: render_curves(args.curves_csv, args.refs_json,
                                   args.out_png)
    elif args.command == "comparison":
        fn = lambda: render_comparison(args.sandwich_json, args.out_png)
    else:
        print(json.dumps({"error": "UnknownCommand"}))
        return 4
    try:
        summary = fn()
    except (MalformedCSV, MalformedJSON) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    print(json.dumps({"out": args.out_png, "summary": summary}, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
