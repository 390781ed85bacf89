"""Command-line front end.

Exit codes: 0 success, 1 counterexample found, 2 inconclusive, 3 usage or
input error.  All output is deterministic for a fixed argv and seed;
reports are JSON with --format json, graphs are DOT.  The MULTIRED_CAPS
environment variable overrides caps, e.g.
MULTIRED_CAPS="class_cap=500000,reversing_cap=20000".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .monoid import Caps, MonoidContext, MultiredError, Side
from .multifraction import SignedWord, format_multifraction, parse_multifraction
from .presentation import (
    PresentationError,
    format_presentation,
    parse_presentation,
    preset,
    preset_names,
)
from . import reduction as red
from . import harness
from .vankampen import VanKampenFailure, van_kampen

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _caps_from_env() -> Caps:
    text = os.environ.get("MULTIRED_CAPS", "")
    kwargs = {}
    for piece in text.split(","):
        if not piece.strip():
            continue
        key, _, value = piece.partition("=")
        kwargs[key.strip()] = int(value)
    return Caps(**kwargs)


def _context(args) -> MonoidContext:
    if args.presentation_file:
        with open(args.presentation_file) as fh:
            pres = parse_presentation(fh.read(), name=args.presentation_file)
    else:
        pres = preset(args.preset)
    return MonoidContext(pres, _caps_from_env())


def parse_signed_word(ctx: MonoidContext, text: str) -> SignedWord:
    """Inverse letters are uppercase single-letter atom names or name^-1."""
    by_name = {a.name: a.index for a in ctx.pres.atoms}
    out = []
    for token in text.split():
        for piece in token.split(".") if "." in token else [token]:
            if piece.endswith("^-1"):
                out.append((by_name[piece[:-3]], -1))
            elif piece in by_name:
                out.append((by_name[piece], 1))
            else:
                for ch in piece:
                    if ch in by_name:
                        out.append((by_name[ch], 1))
                    elif ch.lower() in by_name:
                        out.append((by_name[ch.lower()], -1))
                    else:
                        raise MultiredError(f"unknown letter {ch!r}")
    return tuple(out)


def _emit(args, payload: dict, text_lines=None):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines if text_lines is not None else [json.dumps(payload, sort_keys=True)]:
            print(line)


def _add_common(p):
    p.add_argument("--preset", default="A2tilde")
    p.add_argument("--presentation-file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=red.STRATEGIES, default="low_lex")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> _Parser:
    parser = _Parser(prog="multired", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preset", help="list or show presets")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    _add_common(p)

    for name, help_ in (
        ("reduce", "exhaust atomic left reductions"),
        ("rreduce", "exhaust atomic right reductions"),
        ("derdiv", "maximal divisions, top level down"),
        ("redtame", "greatest tame reductions along the universal sequence"),
        ("irr", "irreducible left reducts"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("multifraction")
        _add_common(p)

    p = sub.add_parser("graph", help="atomic reduct graph")
    p.add_argument("multifraction")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--dot", action="store_true")
    _add_common(p)

    p = sub.add_parser("wordproblem", help="decide whether a signed word is the group unit")
    p.add_argument("word")
    _add_common(p)

    p = sub.add_parser("conjecture", help="seeded conjecture campaign")
    p.add_argument("which", choices=("A", "B", "C", "Cunif", "depth4"))
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--length", type=int, default=20)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--log")
    p.add_argument("--dump-dir", default="counterexamples")
    _add_common(p)

    p = sub.add_parser("vankampen", help="universal-shape diagram for a unital multifraction")
    p.add_argument("multifraction")
    _add_common(p)

    p = sub.add_parser("basics", help="basic elements and complement table size")
    p.add_argument("--side", choices=("left", "right"), default="right")
    _add_common(p)

    p = sub.add_parser("threeore", help="bounded scan for 3-Ore violations")
    p.add_argument("--maxlen", type=int, default=1)
    p.add_argument("--side", choices=("left", "right"), default="right")
    _add_common(p)

    p = sub.add_parser("cycleprobe", help="replay the alternating non-terminating cycle")
    p.add_argument("--iterations", type=int, default=3)
    _add_common(p)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "preset":
        if args.action == "list":
            _emit(args, {"presets": preset_names()}, preset_names())
            return EXIT_OK
        pres = preset(args.name or args.preset)
        text = format_presentation(pres)
        _emit(args, {"name": pres.name, "text": text}, [text.rstrip()])
        return EXIT_OK

    ctx = _context(args)
    fmt = lambda a: format_multifraction(ctx, a)

    if args.command in ("reduce", "rreduce"):
        a = parse_multifraction(ctx, args.multifraction)
        fn = red.reduce_left if args.command == "reduce" else red.reduce_right
        tr = fn(ctx, a, args.strategy)
        payload = {
            "input": fmt(a),
            "strategy": args.strategy,
            "moves": [
                {"kind": m.kind, "level": m.level, "x": ctx.word_str(m.x)}
                for m in tr.moves
            ],
            "steps": len(tr.moves),
            "end": fmt(tr.end),
        }
        _emit(args, payload, [m.label(ctx) for m in tr.moves] + ["-> " + fmt(tr.end)])
        return EXIT_OK

    if args.command == "derdiv":
        a = parse_multifraction(ctx, args.multifraction)
        _emit(args, {"input": fmt(a), "derdiv": fmt(red.derdiv(ctx, a))},
              [fmt(red.derdiv(ctx, a))])
        return EXIT_OK

    if args.command == "redtame":
        a = parse_multifraction(ctx, args.multifraction)
        out = red.red_tame(ctx, a)
        _emit(args, {"input": fmt(a), "red_tame": fmt(out)}, [fmt(out)])
        return EXIT_OK

    if args.command == "irr":
        a = parse_multifraction(ctx, args.multifraction)
        irr = sorted(fmt(x) for x in red.irreducible_reducts(ctx, a))
        _emit(args, {"input": fmt(a), "irreducible": irr}, irr)
        return EXIT_OK

    if args.command == "graph":
        a = parse_multifraction(ctx, args.multifraction)
        g = red.reduct_graph(ctx, a, Side(args.side))
        if args.dot or args.format == "text":
            print(g.to_dot(ctx))
        else:
            _emit(args, g.to_json(ctx))
        return EXIT_OK

    if args.command == "wordproblem":
        w = parse_signed_word(ctx, args.word)
        result = harness.word_problem(ctx, w)
        verdict = result["verdict"]
        line = verdict
        if verdict == "nontrivial":
            line += " (unconditional)" if result["unconditional"] else " (conditional on semi-convergence)"
        _emit(args, result, [line])
        return EXIT_INCONCLUSIVE if verdict == "inconclusive" else EXIT_OK

    if args.command == "conjecture":
        config = harness.CampaignConfig(
            preset=ctx.pres.name,
            conjecture=args.which,
            depth=args.depth,
            length=args.length,
            trials=args.trials,
            seed=args.seed,
            jobs=args.jobs,
        )
        log_stream = open(args.log, "w") if args.log else None
        try:
            report = harness.run_campaign(ctx, config, log_stream=log_stream)
        finally:
            if log_stream:
                log_stream.close()
        payload = report.to_json(include_timing=False)
        summary = {k: v for k, v in payload.items() if k != "records"}
        if args.format != "json":
            payload = summary
        _emit(args, payload, [json.dumps(summary, sort_keys=True)])
        if report.counterexample is not None:
            paths = harness.dump_counterexample(ctx, report.counterexample, args.dump_dir)
            print(f"counterexample dumped: {paths}", file=sys.stderr)
            return EXIT_COUNTEREXAMPLE
        if report.counts.get("inconclusive"):
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    if args.command == "vankampen":
        a = parse_multifraction(ctx, args.multifraction)
        diagram = van_kampen(ctx, a)
        _emit(
            args,
            diagram.to_json(ctx),
            [
                f"vertices: {len(diagram.vertices)}",
                f"triangles: {len(diagram.triangles)}",
                "boundary ok",
            ],
        )
        return EXIT_OK

    if args.command == "basics":
        table = ctx.basic_table(Side(args.side))
        names = [ctx.word_str(b) for b in table.basics]
        _emit(
            args,
            {
                "side": args.side,
                "count": len(names),
                "C": table.C,
                "basics": names,
                "complement_pairs": len(table.complement),
                "no_multiple_pairs": len(table.no_multiple),
            },
            names,
        )
        return EXIT_OK

    if args.command == "threeore":
        report = harness.three_ore_scan(ctx, args.maxlen, Side(args.side))
        _emit(args, report, [f"violations: {report['violations']}"])
        return EXIT_INCONCLUSIVE if report["inconclusive"] else EXIT_OK

    if args.command == "cycleprobe":
        report = harness.mixed_cycle_probe(ctx, args.iterations)
        _emit(args, report, [r["value"] for r in report["iterations"]])
        return EXIT_OK

    raise AssertionError(args.command)


def main(argv=None) -> int:
    try:
        return dispatch(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (MultiredError, PresentationError, VanKampenFailure, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
