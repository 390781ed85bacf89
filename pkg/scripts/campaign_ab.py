#!/usr/bin/env python3
"""Seeded campaigns for the two unital-multifraction conjectures.

Example:
    python3 scripts/campaign_ab.py --preset A2tilde --depth 4 --length 20 \
        --trials 1000 --seed 1
"""

import argparse
import json
import sys

from multired.harness import CampaignConfig, dump_counterexample, run_campaign
from multired.monoid import MonoidContext
from multired.presentation import preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="A2tilde")
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--length", type=int, default=20)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    ctx = MonoidContext(preset(args.preset))
    for conjecture in ("A", "B"):
        config = CampaignConfig(
            preset=args.preset,
            conjecture=conjecture,
            depth=args.depth,
            length=args.length,
            trials=args.trials,
            seed=args.seed,
            jobs=args.jobs,
        )
        report = run_campaign(ctx, config)
        summary = report.to_json()
        del summary["records"]
        print(json.dumps({"conjecture": conjecture, **summary}, sort_keys=True))
        if report.counterexample is not None:
            paths = dump_counterexample(ctx, report.counterexample, "counterexamples")
            print(f"counterexample! dumped to {paths}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
