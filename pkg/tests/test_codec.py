import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ciodsec.codec import (
    antenna_pairs,
    bits_per_block,
    codewords_from_symbols,
    demap_batch,
    dispersion_matrices,
    encode,
    encode_batch,
    interleave,
    spectral_efficiency,
)
from ciodsec.constellation import BaseKind, build_constellation

QPSK = build_constellation(BaseKind.PSK, 4, 13.2885, 1.0)


def random_bits(rng, N, M, n=1):
    return rng.integers(0, 2, (n, bits_per_block(N, M)), dtype=np.uint8)


def test_antenna_pairs_examples():
    assert antenna_pairs(1, 8) == ((3, 4), (5, 6))
    assert antenna_pairs(0, 4) == ((1, 2), (3, 4))
    assert antenna_pairs(1, 4) == ((3, 4), (1, 2))


def test_antenna_pairs_errors():
    with pytest.raises(ValueError):
        antenna_pairs(2, 4)
    with pytest.raises(ValueError):
        antenna_pairs(-1, 4)
    with pytest.raises(ValueError):
        antenna_pairs(0, 6)
    with pytest.raises(ValueError):
        antenna_pairs(0, 2)


def test_antenna_pairs_disjoint_and_cover():
    for N in (4, 8, 16, 32):
        seen = set()
        for i in range(N // 2):
            (a1, a2), (b1, b2) = antenna_pairs(i, N)
            assert a2 == a1 + 1 and b2 == b1 + 1
            assert {a1, a2}.isdisjoint({b1, b2})
            seen.add((a1, b1))
        assert len(seen) == N // 2  # combination map is injective


def test_interleave_rules():
    assert interleave(1.0, 2.0, 3.0, 4.0) == (1.0, 2.0, 3.0, 4.0)
    a, b, c, d = 1.5, -0.5, 2.0, 0.25
    out = interleave(a + 1j * b, 0, c + 1j * d, 0)
    assert out == (a + 1j * d, 0, c + 1j * b, 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=8, max_size=8))
def test_interleave_preserves_total_energy(vals):
    x = [vals[2 * k] + 1j * vals[2 * k + 1] for k in range(4)]
    xt = interleave(*x)
    assert np.isclose(sum(abs(v) ** 2 for v in xt), sum(abs(v) ** 2 for v in x))


def test_encode_block_layout_n4():
    # combination 0 with N=4: classic 4x4 two-block layout
    rng = np.random.default_rng(1)
    bits = np.concatenate([[0], rng.integers(0, 2, 8)]).astype(np.uint8)
    blk = encode(bits, QPSK, 4)
    x = blk.symbols
    xt = np.array(interleave(*x))
    S = blk.codeword
    assert blk.combo_index == 0
    assert np.allclose(S[:2, :2], [[xt[0], -np.conj(xt[1])], [xt[1], np.conj(xt[0])]])
    assert np.allclose(S[2:, 2:], [[xt[2], -np.conj(xt[3])], [xt[3], np.conj(xt[2])]])
    assert np.allclose(S[:2, 2:], 0) and np.allclose(S[2:, :2], 0)


def test_encode_block_layout_n8_combo_bits_01():
    # index bits [0 1] -> i=1 -> rows 3-4 carry slots 1-2, rows 5-6 slots 3-4
    rng = np.random.default_rng(2)
    bits = np.concatenate([[0, 1], rng.integers(0, 2, 8)]).astype(np.uint8)
    blk = encode(bits, QPSK, 8)
    assert blk.combo_index == 1
    S = blk.codeword
    nonzero_rows = np.where(np.any(S != 0, axis=1))[0] + 1
    assert list(nonzero_rows) == [3, 4, 5, 6]
    assert np.allclose(S[2:4, 2:], 0) and np.allclose(S[4:6, :2], 0)
    xt = np.array(interleave(*blk.symbols))
    assert np.allclose(S[2:4, :2], [[xt[0], -np.conj(xt[1])], [xt[1], np.conj(xt[0])]])
    assert np.allclose(S[4:6, 2:], [[xt[2], -np.conj(xt[3])], [xt[3], np.conj(xt[2])]])


def test_encode_rejects_wrong_length():
    with pytest.raises(ValueError):
        encode(np.zeros(8, dtype=np.uint8), QPSK, 4)
    with pytest.raises(ValueError):
        encode(np.zeros(10, dtype=np.uint8), QPSK, 4)


def test_encode_demap_round_trip():
    rng = np.random.default_rng(3)
    for N in (4, 8, 16):
        bits = random_bits(rng, N, 4, 256)
        _, combo, symbols = encode_batch(bits, QPSK, N)
        sym_idx = np.argmin(
            np.abs(symbols[:, :, None] - QPSK.points[None, None, :]), axis=2
        )
        assert np.array_equal(demap_batch(combo, sym_idx, QPSK, N), bits)


def test_two_active_antennas_per_slot():
    rng = np.random.default_rng(4)
    for N in (4, 8, 32):
        bits = random_bits(rng, N, 4, 64)
        cw, _, _ = encode_batch(bits, QPSK, N)
        active = np.sum(np.abs(cw) > 0, axis=1)
        assert np.all(active == 2), "each slot must use exactly two RF chains"


def test_codeword_energy_matches_power_budget():
    # E||S||_F^2 = 2 * 4 * E_s = alpha*P_tot with E_s = alpha*P_tot/8
    alpha, p_tot = 0.7, 1.0
    const = build_constellation(BaseKind.PSK, 4, 13.2885, alpha * p_tot / 8)
    rng = np.random.default_rng(5)
    bits = random_bits(rng, 4, 4, 20000)
    cw, _, _ = encode_batch(bits, const, 4)
    mean_power = np.mean(np.sum(np.abs(cw) ** 2, axis=(1, 2)))
    assert mean_power == pytest.approx(alpha * p_tot, rel=0.01)


def test_dispersion_first_matrix_n4():
    mats = dispersion_matrices(0, 4).matrices
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = 1.0
    expected[1, 1] = 1.0
    assert np.array_equal(mats[0], expected)


def test_dispersion_reconstructs_encode():
    rng = np.random.default_rng(6)
    for N in (4, 8):
        for _ in range(60):
            i = int(rng.integers(0, N // 2))
            mats = dispersion_matrices(i, N).matrices
            symbols = rng.normal(size=4) + 1j * rng.normal(size=4)
            direct = codewords_from_symbols(symbols[None, :], np.array([i]), N)[0]
            coords = np.empty(8)
            coords[0::2] = symbols.real
            coords[1::2] = symbols.imag
            rebuilt = np.tensordot(coords, mats, axes=1)
            assert np.max(np.abs(rebuilt - direct)) < 1e-14


def test_dispersion_zero_symbols_give_zero_codeword():
    out = codewords_from_symbols(np.zeros((1, 4), dtype=complex), np.array([1]), 8)
    assert not np.any(out)


def test_combo_bit_map_bijective():
    rng = np.random.default_rng(7)
    for N in (4, 8, 16):
        nc = int(np.log2(N)) - 1
        seen = set()
        for val in range(N // 2):
            combo_bits = [(val >> (nc - 1 - b)) & 1 for b in range(nc)]
            bits = np.concatenate([combo_bits, rng.integers(0, 2, 8)]).astype(np.uint8)
            seen.add(encode(bits, QPSK, N).combo_index)
        assert seen == set(range(N // 2))


def test_spectral_efficiency_values():
    assert spectral_efficiency(4, 4) == 2.25
    assert spectral_efficiency(32, 16) == 5.0
    assert spectral_efficiency(4, 2) == 1.25
    with pytest.raises(ValueError):
        spectral_efficiency(6, 4)
    with pytest.raises(ValueError):
        spectral_efficiency(4, 3)
