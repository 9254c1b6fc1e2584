#!/usr/bin/env python3
"""Ergodic secrecy rate vs SNR for a family of power splits.

Writes one ESR CSV per alpha plus a plot spec for the frontend renderer:

    node frontend/dist/cli.js render --spec results/esr_alpha_spec.json
"""

import argparse
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ciodsec.config import SimConfig
from ciodsec.harness import run_esr, write_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--alphas", default="0.1,0.3,0.5,0.7,0.9")
    ap.add_argument("--draws", type=int, default=100)
    ap.add_argument("--noise-samples", type=int, default=100)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    grid = (0.0, 5.0, 10.0, 15.0, 20.0)
    series = []
    for alpha in (float(a) for a in args.alphas.split(",")):
        cfg = SimConfig(
            alpha=alpha, seed=args.seed, snr_db_grid=grid,
            channel_draws=args.draws, noise_samples=args.noise_samples,
        )
        print(f"== alpha = {alpha:g} ==")
        points = run_esr(cfg, workers=args.workers)
        for p in points:
            print(f"  snr={p.snr_db:5.1f}  r_b={p.r_b:.4f}  r_e={p.r_e:.4f}  r_s={p.r_s:.4f}")
        path = os.path.join(args.out_dir, f"esr_alpha{alpha:g}.csv")
        write_csv(path, cfg, points, "esr")
        series.append({"path": path, "label": f"alpha={alpha:g}"})
        print(f"  -> {path}")

    spec_path = os.path.join(args.out_dir, "esr_alpha_spec.json")
    with open(spec_path, "w") as fh:
        json.dump(
            {"kind": "esr", "series": series,
             "out": os.path.join(args.out_dir, "esr_alpha.svg"),
             "title": "secrecy rate vs SNR across power splits"},
            fh, indent=2,
        )
    print(f"plot spec -> {spec_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
