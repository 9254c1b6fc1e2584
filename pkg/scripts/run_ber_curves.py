#!/usr/bin/env python3
"""BER curves with union-bound overlays, desk-scale reproduction run.

Simulates Bob/Eve bit error rates for the 4-antenna QPSK setup (with
theoretical bound) and the 8-antenna QPSK setup, writing one CSV per case
into results/. Render afterwards with the frontend:

    node frontend/dist/cli.js ber results/ber_n4_qpsk.csv --out results/ber_n4.svg
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ciodsec.config import SimConfig
from ciodsec.harness import run_ber, run_bound, write_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--max-blocks", type=int, default=2_000_000)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    grid = tuple(float(s) for s in range(0, 26, 2))
    cases = [
        ("ber_n4_qpsk", SimConfig(n_antennas=4, m_ary=4, alpha=0.5, seed=args.seed,
                                  snr_db_grid=grid, max_blocks=args.max_blocks), True),
        ("ber_n8_qpsk", SimConfig(n_antennas=8, m_ary=4, alpha=0.5, seed=args.seed,
                                  snr_db_grid=grid, max_blocks=args.max_blocks), True),
    ]
    for name, cfg, with_bound in cases:
        print(f"== {name} ==")
        points = run_ber(cfg, workers=args.workers)
        if with_bound:
            bound = {p.snr_db: p.ber_bound for p in run_bound(cfg)}
            for p in points:
                p.ber_bound = bound[p.snr_db]
        for p in points:
            print(f"  snr={p.snr_db:5.1f}  bob={p.ber_bob:.3e}  eve={p.ber_eve:.3e}"
                  f"  bound={p.ber_bound if p.ber_bound is not None else float('nan'):.3e}"
                  f"  blocks={p.blocks}")
        path = os.path.join(args.out_dir, f"{name}.csv")
        write_csv(path, cfg, points, "ber")
        print(f"  -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
