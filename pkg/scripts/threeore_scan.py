#!/usr/bin/env python3
"""Bounded scan for triples violating the global-common-multiple condition
(pairwise common multiples but no common multiple of all three)."""

import argparse
import json

from multired.harness import three_ore_scan
from multired.monoid import MonoidContext, Side
from multired.presentation import preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="A2tilde")
    ap.add_argument("--maxlen", type=int, default=2)
    ap.add_argument("--side", choices=("left", "right"), default="right")
    args = ap.parse_args()
    ctx = MonoidContext(preset(args.preset))
    report = three_ore_scan(ctx, args.maxlen, Side(args.side))
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
