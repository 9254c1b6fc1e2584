"""Configuration-driven Monte Carlo runs: BER sweeps, ESR sweeps, union bounds.

Work is partitioned into fixed-size chunks of blocks whose randomness is
keyed by (seed, purpose, snr index, chunk index), so results are identical
for any worker count; parallel chunks are consumed strictly in order and the
per-point tallies are integers, which keeps aggregation exact. A BER point
stops at the first chunk boundary where Bob's bit-error count reaches
`min_bit_errors`, or at `max_blocks`, whichever comes first; the CSV records
which condition fired.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from multiprocessing import Pool

import numpy as np

from . import receiver
from .analysis import ENUMERATION_CAP, enumerate_codewords, ergodic_secrecy_rate, union_bound
from .artificial_noise import an_batch, an_scale
from .channel import draw_channel_batch, transmit_batch
from .codec import bits_per_block, demap_batch, encode_batch
from .config import SimConfig, config_echo_lines, config_from_dict
from .streams import complex_normal, substream

CHUNK_BLOCKS = 4096

CSV_HEADER = (
    "snr_db,ber_bob,ber_bob_se,ber_eve,ber_eve_se,ber_bound,"
    "r_b,r_e,r_s,r_s_se,blocks,bit_errors_bob"
)


@dataclass
class CurvePoint:
    snr_db: float
    ber_bob: float | None = None
    ber_bob_se: float | None = None
    ber_eve: float | None = None
    ber_eve_se: float | None = None
    ber_bound: float | None = None
    r_b: float | None = None
    r_e: float | None = None
    r_s: float | None = None
    r_s_se: float | None = None
    blocks: int | None = None
    bit_errors_bob: int | None = None
    stop_reason: str | None = None  # CSV comment, not a column


def _ber_chunk(cfg: SimConfig, snr_idx: int, chunk_idx: int):
    """Simulate one chunk; returns integer tallies.

    (blocks, bob_errors, eve_errors, bob_errors_sq, eve_errors_sq)
    """
    n_blocks = min(CHUNK_BLOCKS, cfg.max_blocks - chunk_idx * CHUNK_BLOCKS)
    N, M = cfg.n_antennas, cfg.m_ary
    const = cfg.data_constellation()
    L = bits_per_block(N, M)
    n0 = cfg.n0_for(cfg.snr_db_grid[snr_idx])

    bits = substream(cfg.seed, "bits", snr_idx, chunk_idx).integers(
        0, 2, (n_blocks, L), dtype=np.uint8
    )
    codewords, combo, _ = encode_batch(bits, const, N)

    h_true, h_est, _ = draw_channel_batch(
        n_blocks, N, cfg.sigma_sq_bob, substream(cfg.seed, "channel_bob", snr_idx, chunk_idx)
    )
    g_true, g_est, _ = draw_channel_batch(
        n_blocks, N, cfg.sigma_sq_eve, substream(cfg.seed, "channel_eve", snr_idx, chunk_idx)
    )
    v = complex_normal(substream(cfg.seed, "an", snr_idx, chunk_idx), n_blocks)
    jam = an_scale(cfg.alpha, cfg.p_tot) * an_batch(
        h_est, combo, v, N, flip_signs=cfg.an_sign_flip
    )
    tx = codewords + jam

    y_b = transmit_batch(tx, h_true, n0, substream(cfg.seed, "noise_bob", snr_idx, chunk_idx))
    y_e = transmit_batch(tx, g_true, n0, substream(cfg.seed, "noise_eve", snr_idx, chunk_idx))

    errors = []
    for y, est, sigma_sq, var_fn in (
        (y_b, h_est, cfg.sigma_sq_bob, receiver.noise_variance_bob),
        (y_e, g_est, cfg.sigma_sq_eve, receiver.noise_variance_eve),
    ):
        hat_n = var_fn(sigma_sq, cfg.alpha, cfg.p_tot, n0)
        y_t = receiver.whiten(y, hat_n, n0)
        h_t = receiver.effective_channel(est, sigma_sq, hat_n, n0)
        combo_hat, sym_idx, _ = receiver.detect_batch(y_t, h_t, const, N)
        bits_hat = demap_batch(combo_hat, sym_idx, const, N)
        errors.append(np.sum(bits_hat != bits, axis=1).astype(np.int64))
    e_b, e_e = errors
    return (
        n_blocks,
        int(e_b.sum()),
        int(e_e.sum()),
        int((e_b**2).sum()),
        int((e_e**2).sum()),
    )


# worker-side state installed once per pool via the initializer, so per-task
# payloads stay tiny
_WORKER_FN = None


def _init_worker(fn):
    global _WORKER_FN
    _WORKER_FN = fn


def _run_worker(arg):
    return _WORKER_FN(arg)


class _ParallelMap:
    """Order-preserving map over a process pool; supports early break."""

    def __init__(self, workers: int):
        self.workers = workers

    def __call__(self, fn, iterable):
        if self.workers <= 1:
            yield from map(fn, iterable)
            return
        with Pool(self.workers, initializer=_init_worker, initargs=(fn,)) as pool:
            yield from pool.imap(_run_worker, iterable, chunksize=1)


class _BerChunkFn:
    def __init__(self, cfg: SimConfig, snr_idx: int):
        self.cfg = cfg
        self.snr_idx = snr_idx

    def __call__(self, chunk_idx: int):
        return _ber_chunk(self.cfg, self.snr_idx, chunk_idx)


def resolve_workers(cfg: SimConfig, workers: int | None) -> int:
    w = workers if workers is not None else cfg.workers
    return max(1, min(int(w), os.cpu_count() or 1))


def run_ber(cfg: SimConfig, workers: int | None = None) -> list[CurvePoint]:
    """Monte Carlo BER for Bob and Eve at every SNR grid point."""
    cfg.validate()
    if cfg.alpha == 0.0:
        raise ValueError("alpha=0 leaves no data power; BER run is undefined")
    workers = resolve_workers(cfg, workers)
    L = bits_per_block(cfg.n_antennas, cfg.m_ary)
    n_chunks = -(-cfg.max_blocks // CHUNK_BLOCKS)
    pmap = _ParallelMap(workers)
    points = []
    for snr_idx, snr_db in enumerate(cfg.snr_db_grid):
        blocks = err_b = err_e = sq_b = sq_e = 0
        stop_reason = "max_blocks"
        for nb, eb, ee, sb, se in pmap(_BerChunkFn(cfg, snr_idx), range(n_chunks)):
            blocks += nb
            err_b += eb
            err_e += ee
            sq_b += sb
            sq_e += se
            if err_b >= cfg.min_bit_errors:
                stop_reason = "min_bit_errors"
                break
            if blocks >= cfg.max_blocks:
                break
        nbits = blocks * L

        def _se(err: int, sq: int) -> float:
            mean = err / blocks
            var = max(sq / blocks - mean**2, 0.0)
            return float(np.sqrt(var / blocks) / L)

        points.append(
            CurvePoint(
                snr_db=snr_db,
                ber_bob=err_b / nbits,
                ber_bob_se=_se(err_b, sq_b),
                ber_eve=err_e / nbits,
                ber_eve_se=_se(err_e, sq_e),
                blocks=blocks,
                bit_errors_bob=err_b,
                stop_reason=stop_reason,
            )
        )
    return points


def run_esr(cfg: SimConfig, workers: int | None = None) -> list[CurvePoint]:
    """Ergodic rate triple per SNR point with standard errors."""
    cfg.validate()
    if cfg.alpha == 0.0:
        raise ValueError("alpha=0 leaves no data power; ESR run is undefined")
    workers = resolve_workers(cfg, workers)
    esr = ergodic_secrecy_rate(cfg, map_fn=_ParallelMap(workers))
    return [
        CurvePoint(snr_db=p.snr_db, r_b=p.r_b, r_e=p.r_e, r_s=p.r_s, r_s_se=p.r_s_se)
        for p in esr
    ]


def run_bound(cfg: SimConfig) -> list[CurvePoint]:
    """Union-bound BER per SNR point (unit-power codeword set convention)."""
    cfg.validate()
    if cfg.alpha == 0.0:
        raise ValueError("alpha=0 leaves no data power; bound run is undefined")
    cset = enumerate_codewords(
        cfg.n_antennas, cfg.m_ary, cfg.unit_power_constellation(), cap=ENUMERATION_CAP
    )
    points = []
    for snr_db in cfg.snr_db_grid:
        bound = union_bound(cset, cfg.alpha, cfg.p_tot, cfg.n0_for(snr_db), seed=cfg.seed)
        points.append(CurvePoint(snr_db=snr_db, ber_bound=bound.value))
    return points


RUNNERS = {"ber": run_ber, "esr": run_esr, "bound": lambda cfg, workers=None: run_bound(cfg)}


def run_sweep(raw: dict, out_dir, seed: int | None = None,
              workers: int | None = None) -> list[str]:
    """Cartesian product over list-valued config keys; one CSV per (kind, combo)."""
    from .config import expand_sweep

    kinds = [k.strip() for k in str(raw.get("sweep_kinds", "ber")).split(",") if k.strip()]
    unknown = [k for k in kinds if k not in RUNNERS]
    if unknown:
        raise ValueError(f"unknown sweep kinds {unknown}; valid: ber, esr, bound")
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for tag, cfg in expand_sweep(raw):
        if seed is not None:
            cfg = replace(cfg, seed=seed)
        for kind in kinds:
            points = RUNNERS[kind](cfg, workers=workers)
            name = f"{kind}__{tag}.csv" if tag else f"{kind}.csv"
            path = os.path.join(out_dir, name)
            write_csv(path, cfg, points, kind)
            written.append(path)
    return written


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".10g")


def write_csv(path, cfg: SimConfig, points: list[CurvePoint], kind: str) -> None:
    lines = [f"# kind = {kind}"]
    lines += [f"# {line}" for line in config_echo_lines(cfg)]
    for p in points:
        if p.stop_reason is not None:
            lines.append(f"# stop[snr_db={p.snr_db:g}] = {p.stop_reason}")
    lines.append(CSV_HEADER)
    for p in points:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    p.snr_db, p.ber_bob, p.ber_bob_se, p.ber_eve, p.ber_eve_se,
                    p.ber_bound, p.r_b, p.r_e, p.r_s, p.r_s_se, p.blocks,
                    p.bit_errors_bob,
                )
            )
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
