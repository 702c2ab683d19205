"""``orlicz-lambda <command> --config file.json [--seed S] [--out dir] [--threads k]``.

Exit codes: 0 success, 2 success with hypothesis warnings (or failed
acceptance criteria), 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import COMMANDS, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orlicz-lambda", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="JSON config file (optional for accept)")
    ap.add_argument("--seed", type=int, help="overrides the config seed")
    ap.add_argument("--out", default="out", help="report directory (default: ./out)")
    ap.add_argument("--threads", type=int, help="worker threads (default: $ORLICZ_THREADS or 1)")
    ap.add_argument("--suite", help="acceptance suite (accept only): fast or full")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            with open(args.config) as fh:
                cfg = json.load(fh)
        elif args.command == "accept":
            cfg = {}
        else:
            raise ValueError("--config is required")
        cfg.setdefault("command", args.command)
        if cfg["command"] != args.command:
            raise ValueError(f"config command {cfg['command']!r} does not match {args.command!r}")
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.suite is not None:
            cfg["suite"] = args.suite
        if args.command == "accept":
            from .acceptance import SUITES, format_table, CriterionResult

            if cfg.get("suite", "fast") not in SUITES:
                print(f"orlicz-lambda: unknown suite {cfg['suite']!r}; expected one of {sorted(SUITES)}", file=sys.stderr)
                return 1
        rep = run(cfg, out_dir=args.out, threads=args.threads)
    except Exception as exc:  # surfaced with context, exit 1
        print(f"orlicz-lambda {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.command == "accept":
        results = [
            CriterionResult(r["params"]["criterion"], r["values"]["name"], r["values"]["passed"]) for r in rep.rows
        ]
        print(format_table(results, seconds=False))
        return 0 if all(r.passed for r in results) else 2
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"wrote {args.out}/report.json ({len(rep.rows)} rows), sha256 {rep.determinism_hash()[:16]}")
    return 2 if rep.warnings else 0


if __name__ == "__main__":
    sys.exit(main())
