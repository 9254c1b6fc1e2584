"""Artificial-noise matrix that self-cancels at the legitimate receiver.

The jammer occupies exactly the rows of the active codeword and repeats its
column within each slot pair: rows (2i+1, 2i+2) carry Q(z11, z21) in slots
1-2 and rows (N-2i-1, N-2i) carry Q(z12, z22) in slots 3-4, with
Q(a, b) = [[a, a], [b, b]] and z_lt = beta_lt * v for a single complex
Gaussian v per block. The coefficients are built from the estimated main
channel so that [h_est_a1, h_est_a2] . [beta_11, beta_21] = 0 exactly; with
perfect CSI the jam vanishes at Bob while remaining full-strength at any
independently faded eavesdropper.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import _rows, antenna_pairs

# expected Frobenius power of the unnormalized jam matrix: 2 slots per half
# times E|v|^2 * sum E|beta_lt|^2 = 2 * 4
AN_MATRIX_POWER = 8.0


@dataclass(frozen=True)
class AnBlock:
    an_matrix: np.ndarray  # (N, 4) complex, unnormalized
    coefficients: tuple[complex, complex, complex, complex]  # beta_11, beta_21, beta_12, beta_22
    jam_scalar: complex  # v
    combo_index: int


def an_coefficients(h_est: np.ndarray, i: int, N: int, flip_signs: bool = False):
    """Nulling coefficients from the estimated main channel (first sign option).

    `flip_signs` selects the equivalent alternative with all signs swapped.
    """
    antenna_pairs(i, N)
    h_est = np.asarray(h_est).reshape(-1)
    if h_est.shape[0] != N:
        raise ValueError(f"channel estimate has length {h_est.shape[0]}, expected {N}")
    a1, a2, b1, b2 = _rows(i, N)
    s = -1.0 if flip_signs else 1.0
    return (
        -s * h_est[a2],
        s * h_est[a1],
        -s * h_est[b2],
        s * h_est[b1],
    )


def build_an(coefficients, v: complex, i: int, N: int) -> AnBlock:
    """Assemble the N x 4 jam matrix for one block."""
    antenna_pairs(i, N)
    b11, b21, b12, b22 = coefficients
    a1, a2, b1, b2 = _rows(i, N)
    Z = np.zeros((N, 4), dtype=complex)
    Z[a1, 0] = Z[a1, 1] = b11 * v
    Z[a2, 0] = Z[a2, 1] = b21 * v
    Z[b1, 2] = Z[b1, 3] = b12 * v
    Z[b2, 2] = Z[b2, 3] = b22 * v
    return AnBlock(an_matrix=Z, coefficients=(b11, b21, b12, b22), jam_scalar=v, combo_index=i)


def an_scale(alpha: float, p_tot: float) -> float:
    """Statistical power normalization: scales E||Z||_F^2 = 8 to (1-alpha)*P_tot."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if p_tot <= 0:
        raise ValueError(f"total power must be positive, got {p_tot}")
    return float(np.sqrt((1.0 - alpha) * p_tot / AN_MATRIX_POWER))


def normalize_an(an: AnBlock, alpha: float, p_tot: float) -> np.ndarray:
    """Power-normalized jam matrix Z^N."""
    return an_scale(alpha, p_tot) * an.an_matrix


def an_batch(h_est: np.ndarray, combo: np.ndarray, v: np.ndarray, N: int,
             flip_signs: bool = False) -> np.ndarray:
    """Unnormalized jam matrices for a batch: (B,N) estimates, (B,) combos and draws."""
    h_est = np.atleast_2d(h_est)
    combo = np.atleast_1d(combo)
    v = np.atleast_1d(v)
    B = h_est.shape[0]
    a1, a2, b1, b2 = _rows(combo, N)
    ar = np.arange(B)
    s = -1.0 if flip_signs else 1.0
    Z = np.zeros((B, N, 4), dtype=complex)
    Z[ar, a1, 0] = Z[ar, a1, 1] = -s * h_est[ar, a2] * v
    Z[ar, a2, 0] = Z[ar, a2, 1] = s * h_est[ar, a1] * v
    Z[ar, b1, 2] = Z[ar, b1, 3] = -s * h_est[ar, b2] * v
    Z[ar, b2, 2] = Z[ar, b2, 3] = s * h_est[ar, b1] * v
    return Z
