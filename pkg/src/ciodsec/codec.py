"""Bit mapping onto index-modulated N x 4 coordinate-interleaved codewords.

A block carries 4*log2(M) + log2(N) - 1 bits: the leading log2(N)-1 bits pick
one of N/2 antenna combinations (natural binary), the rest pick four symbols
(Gray labels). The four symbols are coordinate-interleaved and placed as two
Alamouti 2x2 blocks on disjoint antenna pairs / slot pairs. Codewords are
antennas x slots (N x 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constellation import Constellation

# quadrature donor of symbol k (0-indexed): imag parts swap between the halves
INTERLEAVE_PERM = (2, 3, 0, 1)


def _validate_n(N: int) -> None:
    if N < 4 or (N & (N - 1)) != 0:
        raise ValueError(f"antenna count must be a power of 2 >= 4, got N={N}")


def combo_bit_count(N: int) -> int:
    _validate_n(N)
    return int(np.log2(N)) - 1


def bits_per_block(N: int, M: int) -> int:
    return 4 * int(np.log2(M)) + combo_bit_count(N)


def spectral_efficiency(N: int, M: int) -> float:
    """Bits per channel use over the 4-slot block."""
    _validate_n(N)
    if M < 2 or (M & (M - 1)) != 0:
        raise ValueError(f"constellation size must be a power of 2 >= 2, got M={M}")
    return bits_per_block(N, M) / 4.0


def antenna_pairs(i: int, N: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Active antenna pairs (1-based) for combination index i.

    First pair (2i+1, 2i+2) transmits in slots 1-2, mirrored pair
    (N-2i-1, N-2i) in slots 3-4. The pairs never overlap for power-of-2 N.
    """
    _validate_n(N)
    if not 0 <= i < N // 2:
        raise ValueError(f"combination index {i} out of range for N={N}")
    return (2 * i + 1, 2 * i + 2), (N - 2 * i - 1, N - 2 * i)


def _rows(i, N):
    """0-based scatter rows (a1, a2, b1, b2); vectorized over i."""
    i = np.asarray(i)
    return 2 * i, 2 * i + 1, N - 2 * i - 2, N - 2 * i - 1


def interleave(x1: complex, x2: complex, x3: complex, x4: complex):
    """Swap quadrature components between the symbol halves."""
    x = np.array([x1, x2, x3, x4], dtype=complex)
    xt = x.real + 1j * x.imag[list(INTERLEAVE_PERM)]
    return tuple(xt)


@dataclass(frozen=True)
class TxBlock:
    codeword: np.ndarray  # (N, 4) complex
    combo_index: int
    symbols: np.ndarray  # the 4 constellation points, pre-interleave
    bits: np.ndarray


@dataclass(frozen=True)
class DispersionSet:
    """Real-coordinate weight matrices: codeword = sum_u matrices[u] * r_u
    with r = (Re x1, Im x1, ..., Re x4, Im x4)."""

    matrices: np.ndarray  # (8, N, 4) complex
    combo_index: int


def codewords_from_symbols(symbols: np.ndarray, combo: np.ndarray, N: int) -> np.ndarray:
    """Place interleaved Alamouti blocks for a batch of symbol 4-tuples.

    symbols: (B, 4) complex, combo: (B,) ints -> (B, N, 4) codewords.
    """
    symbols = np.atleast_2d(np.asarray(symbols, dtype=complex))
    combo = np.atleast_1d(np.asarray(combo))
    B = symbols.shape[0]
    xt = symbols.real + 1j * symbols.imag[:, list(INTERLEAVE_PERM)]
    a1, a2, b1, b2 = _rows(combo, N)
    ar = np.arange(B)
    cw = np.zeros((B, N, 4), dtype=complex)
    cw[ar, a1, 0] = xt[:, 0]
    cw[ar, a2, 0] = xt[:, 1]
    cw[ar, a1, 1] = -np.conj(xt[:, 1])
    cw[ar, a2, 1] = np.conj(xt[:, 0])
    cw[ar, b1, 2] = xt[:, 2]
    cw[ar, b2, 2] = xt[:, 3]
    cw[ar, b1, 3] = -np.conj(xt[:, 3])
    cw[ar, b2, 3] = np.conj(xt[:, 2])
    return cw


def _bits_to_int(bits: np.ndarray) -> np.ndarray:
    """MSB-first bit columns -> integers, vectorized over rows."""
    weights = 1 << np.arange(bits.shape[-1] - 1, -1, -1)
    return bits @ weights


def _int_to_bits(values: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1)
    return ((np.asarray(values)[..., None] >> shifts) & 1).astype(np.uint8)


def encode_batch(bits: np.ndarray, constellation: Constellation, N: int):
    """Map rows of `bits` to codewords; returns (codewords, combos, symbols)."""
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
    nc = combo_bit_count(N)
    bps = constellation.bits_per_symbol
    expected = bits_per_block(N, constellation.M)
    if bits.shape[1] != expected:
        raise ValueError(f"expected {expected} bits per block, got {bits.shape[1]}")
    combo = _bits_to_int(bits[:, :nc]) if nc else np.zeros(bits.shape[0], dtype=np.int64)
    sym_idx = np.empty((bits.shape[0], 4), dtype=np.int64)
    for k in range(4):
        label = _bits_to_int(bits[:, nc + k * bps : nc + (k + 1) * bps])
        sym_idx[:, k] = constellation.index_by_label[label]
    symbols = constellation.points[sym_idx]
    return codewords_from_symbols(symbols, combo, N), combo, symbols


def encode(bits, constellation: Constellation, N: int) -> TxBlock:
    """Encode one block of source bits into a TxBlock."""
    bits = np.asarray(bits, dtype=np.uint8)
    cw, combo, symbols = encode_batch(bits[None, :], constellation, N)
    return TxBlock(codeword=cw[0], combo_index=int(combo[0]), symbols=symbols[0], bits=bits)


def demap_batch(combo: np.ndarray, sym_idx: np.ndarray, constellation: Constellation, N: int) -> np.ndarray:
    """Inverse of the bit mapping: (combos, symbol indices) -> bit rows."""
    nc = combo_bit_count(N)
    bps = constellation.bits_per_symbol
    parts = []
    if nc:
        parts.append(_int_to_bits(combo, nc))
    labels = constellation.labels[np.asarray(sym_idx)]
    for k in range(4):
        parts.append(_int_to_bits(labels[:, k], bps))
    return np.concatenate(parts, axis=1)


@lru_cache(maxsize=None)
def _dispersion_cached(i: int, N: int) -> np.ndarray:
    # the symbol->codeword map is R-linear in the coordinates, so the weight
    # matrices are its images of the coordinate basis vectors
    mats = np.empty((8, N, 4), dtype=complex)
    for u in range(8):
        r = np.zeros(8)
        r[u] = 1.0
        symbols = r[0::2] + 1j * r[1::2]
        mats[u] = codewords_from_symbols(symbols[None, :], np.array([i]), N)[0]
    mats.flags.writeable = False
    return mats


def dispersion_matrices(i: int, N: int) -> DispersionSet:
    """The 8 weight matrices reproducing encode() linearly in (Re x_k, Im x_k)."""
    antenna_pairs(i, N)  # range validation
    return DispersionSet(matrices=_dispersion_cached(i, N), combo_index=i)
