"""Imperfect-CSI Rayleigh block-fading channel and the 4-slot link equation.

The realized channel composes an estimate and an independent error,
h = sqrt(1-sigma2) h_est + sqrt(sigma2) h_err, both with i.i.d. zero-mean
unit-variance complex Gaussian entries, so each realized entry stays
unit-variance for every sigma2 in [0, 1). The block is static over the 4
slots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .streams import complex_normal


@dataclass(frozen=True)
class ChannelState:
    h_true: np.ndarray
    h_est: np.ndarray
    h_err: np.ndarray
    sigma_sq: float


def _validate_sigma(sigma_sq: float) -> None:
    if not 0.0 <= sigma_sq < 1.0:
        raise ValueError(f"estimation error power must lie in [0, 1), got {sigma_sq}")


def draw_channel_batch(B: int, N: int, sigma_sq: float, rng: np.random.Generator):
    """(h_true, h_est, h_err) arrays of shape (B, N)."""
    _validate_sigma(sigma_sq)
    h_est = complex_normal(rng, (B, N))
    h_err = complex_normal(rng, (B, N))
    h_true = np.sqrt(1.0 - sigma_sq) * h_est + np.sqrt(sigma_sq) * h_err
    return h_true, h_est, h_err


def draw_channel(N: int, sigma_sq: float, rng: np.random.Generator) -> ChannelState:
    h_true, h_est, h_err = draw_channel_batch(1, N, sigma_sq, rng)
    return ChannelState(h_true=h_true[0], h_est=h_est[0], h_err=h_err[0], sigma_sq=float(sigma_sq))


def transmit_batch(tx: np.ndarray, h_true: np.ndarray, n0: float,
                   rng: np.random.Generator) -> np.ndarray:
    """Received rows y = h (S + Z^N) + n for a batch of (B, N, 4) signals."""
    if n0 <= 0:
        raise ValueError(f"noise variance must be positive, got {n0}")
    if tx.shape[-2] != h_true.shape[-1]:
        raise ValueError(f"antenna mismatch: signal {tx.shape}, channel {h_true.shape}")
    y = np.einsum("bn,bnt->bt", h_true, tx)
    return y + complex_normal(rng, y.shape, n0)


def transmit(codeword: np.ndarray, an_normalized: np.ndarray, ch: ChannelState,
             n0: float, rng: np.random.Generator) -> np.ndarray:
    """One received 1x4 row for a codeword plus normalized jam."""
    if codeword.shape != an_normalized.shape:
        raise ValueError(
            f"codeword {codeword.shape} and jam {an_normalized.shape} shapes differ"
        )
    tx = (codeword + an_normalized)[None, ...]
    return transmit_batch(tx, ch.h_true[None, :], n0, rng)[0]
