"""Experiment configuration: dataclass, flat key=value file parsing, sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

import numpy as np

from .constellation import BaseKind, build_constellation, optimal_rotation

DEFAULT_MAX_BLOCKS = 10**7
DEFAULT_MIN_BIT_ERRORS = 200


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SimConfig:
    """Full description of one experiment.

    SNR is E_s/N0 with per-symbol energy E_s = alpha*P_tot/8, so
    N0 = E_s / 10^(snr_db/10) at each grid point.
    """

    n_antennas: int = 4
    m_ary: int = 4
    base_kind: BaseKind = BaseKind.PSK
    rotation_deg: float | None = None  # None -> CPD-optimal angle for the kind
    alpha: float = 0.5
    p_tot: float = 1.0
    sigma_sq_bob: float = 0.0
    sigma_sq_eve: float = 0.0
    snr_db_grid: tuple[float, ...] = (0.0, 4.0, 8.0, 12.0, 16.0, 20.0)
    max_blocks: int = DEFAULT_MAX_BLOCKS
    min_bit_errors: int = DEFAULT_MIN_BIT_ERRORS
    channel_draws: int = 200
    noise_samples: int = 200
    seed: int = 0
    workers: int = 1
    an_sign_flip: bool = False

    def validate(self) -> "SimConfig":
        if self.n_antennas < 4 or not _is_pow2(self.n_antennas):
            raise ValueError(f"n_antennas must be a power of 2 >= 4, got {self.n_antennas}")
        if self.m_ary < 2 or not _is_pow2(self.m_ary):
            raise ValueError(f"m_ary must be a power of 2 >= 2, got {self.m_ary}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.p_tot <= 0:
            raise ValueError(f"p_tot must be positive, got {self.p_tot}")
        for name in ("sigma_sq_bob", "sigma_sq_eve"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")
        grid = self.snr_db_grid
        if len(grid) == 0:
            raise ValueError("snr_db_grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_db_grid must be strictly increasing")
        if self.max_blocks < 1 or self.min_bit_errors < 1:
            raise ValueError("max_blocks and min_bit_errors must be >= 1")
        if self.channel_draws < 1 or self.noise_samples < 1:
            raise ValueError("channel_draws and noise_samples must be >= 1")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit an unsigned 64-bit integer")
        self.resolved_rotation_deg()  # rejects kinds without a known angle
        return self

    def resolved_rotation_deg(self) -> float:
        if self.rotation_deg is not None:
            return self.rotation_deg
        return optimal_rotation(self.base_kind, self.m_ary)

    @property
    def symbol_energy(self) -> float:
        return self.alpha * self.p_tot / 8.0

    def n0_for(self, snr_db: float) -> float:
        if self.alpha == 0.0:
            raise ValueError("alpha=0 leaves no data power; SNR = E_s/N0 is undefined")
        return self.symbol_energy / 10.0 ** (snr_db / 10.0)

    def data_constellation(self):
        """Physical constellation at symbol energy alpha*P_tot/8."""
        return build_constellation(
            self.base_kind, self.m_ary, self.resolved_rotation_deg(), self.symbol_energy
        )

    def unit_power_constellation(self):
        """Unit-matrix-power convention (E||X||_F^2 = 1) used by PEP/union bound."""
        return build_constellation(
            self.base_kind, self.m_ary, self.resolved_rotation_deg(), 1.0 / 8.0
        )


_BOOL = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def _parse_scalar(key: str, text: str):
    text = text.strip()
    if key == "base_kind":
        return BaseKind(text.lower())
    if key == "an_sign_flip":
        return _BOOL[text.lower()]
    if key in ("n_antennas", "m_ary", "max_blocks", "min_bit_errors",
               "channel_draws", "noise_samples", "seed", "workers"):
        return int(text)
    if key == "sweep_kinds":
        return text
    return float(text)


def parse_config_text(text: str) -> dict:
    """Parse flat `key = value` lines; comma-separated values become lists."""
    raw: dict = {}
    known = {f.name for f in fields(SimConfig)} | {"sweep_kinds"}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        items = [v for v in value.split(",") if v.strip()]
        if not items:
            raise ValueError(f"line {lineno}: empty value for {key!r}")
        parsed = [_parse_scalar(key, v) for v in items]
        raw[key] = parsed if (len(parsed) > 1 or key == "snr_db_grid") else parsed[0]
    return raw


def load_config(path) -> SimConfig:
    """Load a config file that must resolve to a single experiment."""
    with open(path) as fh:
        raw = parse_config_text(fh.read())
    raw.pop("sweep_kinds", None)
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> SimConfig:
    clean = dict(raw)
    if "snr_db_grid" in clean:
        grid = clean["snr_db_grid"]
        clean["snr_db_grid"] = (
            tuple(grid) if isinstance(grid, (list, tuple)) else (float(grid),)
        )
    for key, value in clean.items():
        if isinstance(value, list):
            raise ValueError(
                f"config key {key!r} holds a list; lists are only valid under `sweep`"
            )
    return SimConfig(**clean).validate()


def expand_sweep(raw: dict) -> list[tuple[str, SimConfig]]:
    """Cartesian product over list-valued keys -> (tag, config) pairs.

    Keys expand in sorted order; tags are `key=value` fragments joined by
    double underscores, stable across runs.
    """
    raw = dict(raw)
    raw.pop("sweep_kinds", None)
    sweep_keys = sorted(
        k for k, v in raw.items() if isinstance(v, list) and k != "snr_db_grid"
    )
    combos: list[tuple[str, dict]] = [("", raw)]
    for key in sweep_keys:
        nxt = []
        for tag, d in combos:
            for value in d[key]:
                label = value.value if isinstance(value, BaseKind) else value
                frag = f"{key}={label:g}" if isinstance(label, float) else f"{key}={label}"
                nxt.append((f"{tag}__{frag}" if tag else frag, {**d, key: value}))
        combos = nxt
    return [(tag, config_from_dict(d)) for tag, d in combos]


def config_echo_lines(cfg: SimConfig) -> list[str]:
    """Canonical `key = value` lines for CSV header comments."""
    lines = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if f.name == "base_kind":
            v = v.value
        elif f.name == "rotation_deg":
            v = f"{cfg.resolved_rotation_deg():.6g}"
        elif f.name == "snr_db_grid":
            v = ", ".join(f"{x:g}" for x in v)
        elif isinstance(v, bool):
            v = str(v).lower()
        lines.append(f"{f.name} = {v}")
    return lines
