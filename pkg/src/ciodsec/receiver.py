"""Colored-noise variances, scalar whitening, and the two-stage detector.

After subtracting the useful term sqrt(1-sigma2) h_est S from the received
row, the residual lumps the estimation-error leakage of the data, the
estimation-error leakage of the jam, and thermal noise. Its average per-slot
variance has a closed form (validated against the empirical E[n n^H]/4
oracle in the test suite):

    bob:  sigma2*alpha*P/4 + sigma2*(1-alpha)*P/4 + N0
    eve:  adds the undamped jam term (1-sigma2)*(1-alpha)*P/4

Whitening rescales the row (and the effective channel) by sqrt(N0/var) so
the standard minimum-distance metrics apply. Detection is symbol-by-symbol:
for every antenna combination each symbol picks its best candidate
independently, the combination with the smallest summed per-symbol metric
wins, and the winning combination's per-symbol choices are the symbol
decisions. Ties resolve to the lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import _dispersion_cached, demap_batch
from .constellation import Constellation


@dataclass(frozen=True)
class DetectionResult:
    combo_hat: int
    symbols_hat: np.ndarray
    bits_hat: np.ndarray
    metric: float


def noise_variance_bob(sigma_sq: float, alpha: float, p_tot: float, n0: float) -> float:
    """Average per-slot variance of Bob's residual noise."""
    return sigma_sq * alpha * p_tot / 4.0 + sigma_sq * (1.0 - alpha) * p_tot / 4.0 + n0


def noise_variance_eve(sigma_sq: float, alpha: float, p_tot: float, n0: float) -> float:
    """Average per-slot variance of Eve's residual; the jam never cancels for her."""
    return (
        (1.0 - sigma_sq) * (1.0 - alpha) * p_tot / 4.0
        + sigma_sq * alpha * p_tot / 4.0
        + sigma_sq * (1.0 - alpha) * p_tot / 4.0
        + n0
    )


def whiten(y: np.ndarray, hat_n: float, n0: float) -> np.ndarray:
    """Scale the received row so its noise variance is back at N0."""
    if hat_n <= 0:
        raise ValueError(f"noise variance must be positive, got {hat_n}")
    return np.sqrt(n0 / hat_n) * np.asarray(y)


def effective_channel(h_est: np.ndarray, sigma_sq: float, hat_n: float, n0: float) -> np.ndarray:
    """Whitened effective channel sqrt(N0/hat_n) * sqrt(1-sigma2) * h_est."""
    if hat_n <= 0:
        raise ValueError(f"noise variance must be positive, got {hat_n}")
    return np.sqrt(n0 / hat_n) * np.sqrt(1.0 - sigma_sq) * np.asarray(h_est)


def detect_batch(y_tilde: np.ndarray, h_tilde: np.ndarray,
                 constellation: Constellation, N: int):
    """Two-stage detection over a batch.

    y_tilde: (B, 4), h_tilde: (B, N). Returns (combo_hat (B,), sym_idx (B, 4),
    metric (B,)).
    """
    y = np.atleast_2d(y_tilde)
    h = np.atleast_2d(h_tilde)
    B = y.shape[0]
    n_combo = N // 2
    xi = constellation.points.real  # (M,)
    xq = constellation.points.imag
    totals = np.empty((B, n_combo))
    picks = np.empty((B, n_combo, 4), dtype=np.int64)
    for i in range(n_combo):
        mats = _dispersion_cached(i, N)  # (8, N, 4)
        ha = np.einsum("bn,unt->but", h, mats)  # (B, 8, 4)
        total = np.zeros(B)
        for k in range(4):
            # candidate signal of symbol k alone: v1*Re + v2*Im
            cand = (
                ha[:, 2 * k, None, :] * xi[None, :, None]
                + ha[:, 2 * k + 1, None, :] * xq[None, :, None]
            )
            metric = np.sum(np.abs(y[:, None, :] - cand) ** 2, axis=2)  # (B, M)
            picks[:, i, k] = np.argmin(metric, axis=1)
            total += np.min(metric, axis=1)
        totals[:, i] = total
    combo_hat = np.argmin(totals, axis=1)
    ar = np.arange(B)
    sym_idx = picks[ar, combo_hat, :]
    return combo_hat, sym_idx, totals[ar, combo_hat]


def detect(y_tilde: np.ndarray, h_tilde: np.ndarray,
           constellation: Constellation, N: int) -> DetectionResult:
    """Detect one block; always returns a decision."""
    combo, sym_idx, metric = detect_batch(
        np.asarray(y_tilde)[None, :], np.asarray(h_tilde)[None, :], constellation, N
    )
    bits = demap_batch(combo, sym_idx, constellation, N)[0]
    return DetectionResult(
        combo_hat=int(combo[0]),
        symbols_hat=constellation.points[sym_idx[0]],
        bits_hat=bits,
        metric=float(metric[0]),
    )
