"""Command-line entry point: ber / esr / bound / sweep."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import config_from_dict, parse_config_text
from .harness import RUNNERS, run_sweep, write_csv


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ciodsec",
        description="Monte Carlo link simulator for index-modulated "
        "coordinate-interleaved designs with artificial-noise secrecy.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind, text in (
        ("ber", "simulate Bob/Eve bit error rates over the SNR grid"),
        ("esr", "estimate ergodic rates and the secrecy rate"),
        ("bound", "compute the union-bound BER curve"),
        ("sweep", "cartesian product over list-valued config keys"),
    ):
        p = sub.add_parser(kind, help=text)
        p.add_argument("--config", required=True, help="flat key = value config file")
        p.add_argument(
            "--out",
            required=True,
            help="output CSV path (sweep: output directory)",
        )
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--workers", type=int, default=None, help="worker process count")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            raw = parse_config_text(fh.read())
        if args.kind == "sweep":
            written = run_sweep(raw, args.out, seed=args.seed, workers=args.workers)
            for path in written:
                print(path)
            return 0
        raw.pop("sweep_kinds", None)
        cfg = config_from_dict(raw)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        points = RUNNERS[args.kind](cfg, workers=args.workers)
        write_csv(args.out, cfg, points, args.kind)
        print(args.out)
        return 0
    except (ValueError, OSError, KeyError) as exc:
        print(f"ciodsec {args.kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
