import numpy as np
import pytest

from ciodsec.artificial_noise import (
    AN_MATRIX_POWER,
    an_batch,
    an_coefficients,
    an_scale,
    build_an,
    normalize_an,
)
from ciodsec.codec import codewords_from_symbols
from ciodsec.streams import complex_normal, substream


def test_coefficients_n4_combo0():
    h = np.array([1 + 2j, 3 - 1j, 0.5j, -2.0])
    b11, b21, b12, b22 = an_coefficients(h, 0, 4)
    assert b11 == -h[1] and b21 == h[0]
    assert b12 == -h[3] and b22 == h[2]


def test_coefficients_n8_combo1():
    h = np.arange(1, 9).astype(complex)
    # 1-based channel entries: (-h4, h3, -h6, h5)
    assert an_coefficients(h, 1, 8) == (-4, 3, -6, 5)


def test_coefficients_null_identity():
    rng = np.random.default_rng(0)
    for N in (4, 8, 16):
        h = complex_normal(rng, N)
        for i in range(N // 2):
            b11, b21, b12, b22 = an_coefficients(h, i, N)
            a1, a2 = 2 * i, 2 * i + 1
            assert h[a1] * b11 + h[a2] * b21 == 0


def test_coefficients_flip_option():
    h = np.arange(1, 5).astype(complex)
    plain = an_coefficients(h, 0, 4)
    flipped = an_coefficients(h, 0, 4, flip_signs=True)
    assert flipped == tuple(-np.array(plain))


def test_coefficients_errors():
    with pytest.raises(ValueError):
        an_coefficients(np.ones(4, dtype=complex), 2, 4)
    with pytest.raises(ValueError):
        an_coefficients(np.ones(3, dtype=complex), 0, 4)


def test_build_an_zero_scalar():
    an = build_an((1.0, 2.0, 3.0, 4.0), 0.0, 0, 4)
    assert not np.any(an.an_matrix)


def test_build_an_layout_matches_codeword_rows():
    rng = np.random.default_rng(1)
    for N in (4, 8):
        for i in range(N // 2):
            h = complex_normal(rng, N)
            an = build_an(an_coefficients(h, i, N), 1 + 0.5j, i, N)
            Z = an.an_matrix
            # repeated columns within each half
            assert np.array_equal(Z[:, 0], Z[:, 1])
            assert np.array_equal(Z[:, 2], Z[:, 3])
            # occupies exactly the rows of the matching codeword
            cw = codewords_from_symbols(
                np.ones((1, 4), dtype=complex), np.array([i]), N
            )[0]
            assert np.array_equal(np.any(Z != 0, axis=1), np.any(cw != 0, axis=1))


def test_an_matrix_power_is_eight():
    rng = substream(11, "an", 0)
    B, N = 120_000, 4
    h_est = complex_normal(rng, (B, N))
    combo = rng.integers(0, N // 2, B)
    v = complex_normal(rng, B)
    Z = an_batch(h_est, combo, v, N)
    power = np.mean(np.sum(np.abs(Z) ** 2, axis=(1, 2)))
    assert power == pytest.approx(AN_MATRIX_POWER, rel=0.02)


def test_normalize_scaling():
    an = build_an((1.0, 1.0, 1.0, 1.0), 1.0, 0, 4)
    assert not np.any(normalize_an(an, 1.0, 1.0))
    assert an_scale(0.5, 1.0) == pytest.approx(0.25)  # sqrt(0.5/8)
    assert np.allclose(normalize_an(an, 0.5, 1.0), 0.25 * an.an_matrix)
    with pytest.raises(ValueError):
        an_scale(1.5, 1.0)
    with pytest.raises(ValueError):
        an_scale(-0.1, 1.0)


def test_normalized_power_budget():
    rng = substream(12, "an", 1)
    B, N, alpha, p_tot = 100_000, 8, 0.3, 2.0
    h_est = complex_normal(rng, (B, N))
    combo = rng.integers(0, N // 2, B)
    v = complex_normal(rng, B)
    Zn = an_scale(alpha, p_tot) * an_batch(h_est, combo, v, N)
    power = np.mean(np.sum(np.abs(Zn) ** 2, axis=(1, 2)))
    assert power == pytest.approx((1 - alpha) * p_tot, rel=0.02)


def test_perfect_csi_nulls_at_bob():
    rng = substream(13, "an", 2)
    for N in (4, 8, 16, 32):
        B = 2000
        h = complex_normal(rng, (B, N))
        combo = rng.integers(0, N // 2, B)
        v = complex_normal(rng, B)
        Z = an_batch(h, combo, v, N)
        resid = np.abs(np.einsum("bn,bnt->bt", h, Z))
        assert resid.max() < 1e-10


def test_residual_interference_scales_linearly_with_sigma():
    rng = substream(14, "an", 3)
    B, N = 200_000, 4
    sig_grid = np.array([0.01, 0.03, 0.1])
    powers = []
    for s2 in sig_grid:
        h_est = complex_normal(rng, (B, N))
        h_err = complex_normal(rng, (B, N))
        h = np.sqrt(1 - s2) * h_est + np.sqrt(s2) * h_err
        combo = rng.integers(0, N // 2, B)
        v = complex_normal(rng, B)
        Z = an_batch(h_est, combo, v, N)
        powers.append(np.mean(np.abs(np.einsum("bn,bnt->bt", h, Z)) ** 2))
    powers = np.array(powers)
    slope = np.polyfit(sig_grid, powers, 1)
    ratio = powers / sig_grid
    assert np.all(np.abs(ratio / ratio.mean() - 1) < 0.05), "power not linear in sigma^2"
    assert slope[0] > 0


def test_eve_interference_nonzero():
    rng = substream(15, "an", 4)
    B, N = 5000, 4
    h_est = complex_normal(rng, (B, N))
    g = complex_normal(rng, (B, N))
    combo = rng.integers(0, N // 2, B)
    v = complex_normal(rng, B)
    Z = an_batch(h_est, combo, v, N)
    jam = np.abs(np.einsum("bn,bnt->bt", g, Z))
    assert np.all(jam.max(axis=1) > 0)
