"""CLI: pxp-figures render --fig <id> --in <csv...> --out <path>."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pxp-figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure from CSV inputs")
    p.add_argument("--fig", required=True, choices=FIGURE_IDS)
    p.add_argument("--in", dest="inputs", required=True, nargs="+", metavar="CSV")
    p.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    path = render(args.fig, args.inputs, args.out)
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
