"""Rotated M-ary constellations with nonzero coordinate product distance.

Coordinate-interleaved designs only reach full diversity when the coordinate
product distance (CPD) of the symbol set is nonzero, so square-lattice and
QPSK sets are rotated away from their axis-aligned positions. Known
CPD-maximizing angles: 13.2885 deg for QPSK, 31.7175 deg for square lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

QPSK_ROTATION_DEG = 13.2885
SQUARE_QAM_ROTATION_DEG = 31.7175


class BaseKind(Enum):
    PSK = "psk"
    SQUARE_QAM = "square_qam"


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _gray(n: np.ndarray | int):
    return n ^ (n >> 1)


@dataclass(frozen=True)
class Constellation:
    """Ordered symbol set with Gray bit labels.

    `labels[k]` is the integer bit pattern (MSB first, `bits_per_symbol` wide)
    carried by `points[k]`. Instances are immutable and safe to share across
    trial workers.
    """

    points: np.ndarray
    M: int
    rotation_deg: float
    base_kind: BaseKind
    labels: np.ndarray

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.M))

    @cached_property
    def index_by_label(self) -> np.ndarray:
        """Inverse of `labels`: bit pattern -> symbol index."""
        inv = np.empty(self.M, dtype=np.int64)
        inv[self.labels] = np.arange(self.M)
        return inv

    @property
    def energy(self) -> float:
        return float(np.mean(np.abs(self.points) ** 2))


def build_constellation(
    base_kind: BaseKind, M: int, rotation_deg: float, target_energy: float
) -> Constellation:
    """Build a Gray-labelled base set, scale it to `target_energy`, then rotate.

    Scaling precedes rotation; rotation is unitary so the order is immaterial,
    this one is fixed for reproducibility.
    """
    if target_energy <= 0:
        raise ValueError(f"target_energy must be positive, got {target_energy}")
    if base_kind is BaseKind.PSK:
        if not _is_pow2(M) or M < 2:
            raise ValueError(f"PSK requires a power-of-2 size >= 2, got M={M}")
        k = np.arange(M)
        points = np.exp(1j * (2 * np.pi * k / M + np.pi / M))
        labels = _gray(k)
    elif base_kind is BaseKind.SQUARE_QAM:
        m = int(round(np.sqrt(M)))
        if m * m != M or not _is_pow2(m) or M < 4:
            raise ValueError(f"square QAM requires M = 4^k, got M={M}")
        a, b = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        a, b = a.ravel(), b.ravel()
        points = (2 * a - m + 1) + 1j * (2 * b - m + 1)
        # per-axis Gray labels, I bits first
        labels = (_gray(a) << int(np.log2(m))) | _gray(b)
    else:
        raise ValueError(f"unsupported base kind {base_kind!r}")

    points = points.astype(complex)
    points *= np.sqrt(target_energy / np.mean(np.abs(points) ** 2))
    points *= np.exp(1j * np.deg2rad(rotation_deg))
    return Constellation(
        points=points,
        M=M,
        rotation_deg=float(rotation_deg),
        base_kind=base_kind,
        labels=labels.astype(np.uint32),
    )


def cpd(c: Constellation) -> float:
    """Coordinate product distance: min over distinct pairs of |dI|*|dQ|."""
    d = c.points[:, None] - c.points[None, :]
    prod = np.abs(d.real) * np.abs(d.imag)
    mask = ~np.eye(c.M, dtype=bool)
    return float(prod[mask].min())


def optimal_rotation(base_kind: BaseKind, M: int) -> float:
    """CPD-maximizing rotation angle in degrees (QPSK and square lattices only)."""
    if base_kind is BaseKind.PSK and M == 4:
        return QPSK_ROTATION_DEG
    if base_kind is BaseKind.SQUARE_QAM:
        m = int(round(np.sqrt(M)))
        if m * m == M and _is_pow2(m) and M >= 4:
            return SQUARE_QAM_ROTATION_DEG
    raise ValueError(f"no known optimal rotation for {base_kind.value} with M={M}")
