#!/usr/bin/env python3
"""Uniform cross-confluence probes on random multifractions.

Prints one JSON record per trial with the witness set and whether the two
natural witness candidates (the tame reduct and the latest common ancestor
of the irreducible left reducts) happen to work.
"""

import argparse
import json

from multired.harness import gen_multifraction, test_conjecture_C_uniform
from multired.harness import derive_seed
from multired.monoid import MonoidContext
from multired.multifraction import format_multifraction
from multired.presentation import preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="A2tilde")
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--length", type=int, default=9)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ctx = MonoidContext(preset(args.preset))
    bad = 0
    for i in range(args.trials):
        a = gen_multifraction(
            ctx, args.depth, max(1, args.length // args.depth), derive_seed(args.seed, i)
        )
        verdict = test_conjecture_C_uniform(ctx, a)
        record = {
            "trial": i,
            "input": format_multifraction(ctx, a),
            "status": verdict.status,
            "witnesses": verdict.evidence.get("witnesses"),
            "red_tame_is_witness": verdict.evidence.get("red_tame_is_witness"),
            "lca_is_witness": verdict.evidence.get("lca_is_witness"),
        }
        print(json.dumps(record, sort_keys=True))
        bad += verdict.status != "confirmed"
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
