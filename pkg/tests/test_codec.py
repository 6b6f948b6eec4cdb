import itertools

import numpy as np
import pytest

from fouriercode.block import design_dc, design_lcd, design_mds
from fouriercode.codec import DecodingFailure, berlekamp_massey, decode, encode, syndromes
from fouriercode.field import build_field
from fouriercode.fourier import build_fourier


def ctx_of(p, s, n):
    return build_fourier(build_field(p, s), n)


CODE_10_6 = design_mds(ctx_of(11, 1, 10), 0, 1, 6)
CODE_7_4 = design_dc(ctx_of(2, 3, 7), 4)
CODE_LCD_15 = design_lcd(ctx_of(2, 4, 15), 4)
CODE_STEP3 = design_mds(ctx_of(11, 1, 10), 3, 3, 5)


def test_encode_zero_and_units():
    assert not encode(CODE_7_4, np.zeros(4, dtype=np.int64)).any()
    for i in range(4):
        msg = np.zeros(4, dtype=np.int64)
        msg[i] = 1
        assert np.array_equal(encode(CODE_7_4, msg), CODE_7_4.generator[i])


def test_encode_all_ones_is_row_sum():
    F = CODE_10_6.field
    msg = np.ones(6, dtype=np.int64)
    want = np.zeros(10, dtype=np.int64)
    for row in CODE_10_6.generator:
        want = F.add(want, row)
    assert np.array_equal(encode(CODE_10_6, msg), want)


def test_syndromes_zero_on_codewords():
    rng = np.random.default_rng(0)
    for _ in range(50):
        msg = rng.integers(0, 11, size=6)
        assert not syndromes(CODE_10_6, encode(CODE_10_6, msg)).any()


def test_clean_roundtrip_many():
    rng = np.random.default_rng(1)
    for code, q in [(CODE_10_6, 11), (CODE_7_4, 8), (CODE_LCD_15, 16), (CODE_STEP3, 11)]:
        for _ in range(250):
            msg = rng.integers(0, q, size=code.r)
            assert np.array_equal(decode(code, encode(code, msg)), msg)


def test_single_error_exhaustive_7_4():
    rng = np.random.default_rng(2)
    F = CODE_7_4.field
    for _ in range(20):
        msg = rng.integers(0, 8, size=4)
        word = encode(CODE_7_4, msg)
        for pos in range(7):
            for val in range(1, 8):
                bad = word.copy()
                bad[pos] = F.add(int(bad[pos]), val)
                assert np.array_equal(decode(CODE_7_4, bad), msg)


def test_two_errors_exhaustive_positions_10_6():
    rng = np.random.default_rng(3)
    F = CODE_10_6.field
    msg = rng.integers(0, 11, size=6)
    word = encode(CODE_10_6, msg)
    for p1, p2 in itertools.combinations(range(10), 2):
        bad = word.copy()
        bad[p1] = F.add(int(bad[p1]), 3)
        bad[p2] = F.add(int(bad[p2]), 7)
        assert np.array_equal(decode(CODE_10_6, bad), msg)


def test_three_errors_lcd_15():
    rng = np.random.default_rng(4)
    F = CODE_LCD_15.field
    for _ in range(100):
        msg = rng.integers(0, 16, size=9)
        word = encode(CODE_LCD_15, msg)
        pos = rng.choice(15, size=3, replace=False)
        bad = word.copy()
        for p in pos:
            bad[p] = F.add(int(bad[p]), int(rng.integers(1, 16)))
        assert np.array_equal(decode(CODE_LCD_15, bad), msg)


def test_stepped_selection_errors():
    rng = np.random.default_rng(5)
    F = CODE_STEP3.field
    for _ in range(100):
        msg = rng.integers(0, 11, size=5)
        word = encode(CODE_STEP3, msg)
        pos = rng.choice(10, size=2, replace=False)
        bad = word.copy()
        for p in pos:
            bad[p] = F.add(int(bad[p]), int(rng.integers(1, 11)))
        assert np.array_equal(decode(CODE_STEP3, bad), msg)


def test_beyond_radius_fails_or_misdecodes_explicitly():
    # with more than t errors the decoder must not crash: it either
    # raises DecodingFailure or returns some message (detection beyond
    # the design distance is not guaranteed)
    rng = np.random.default_rng(6)
    F = CODE_10_6.field
    failures = 0
    for _ in range(50):
        msg = rng.integers(0, 11, size=6)
        bad = encode(CODE_10_6, msg)
        pos = rng.choice(10, size=4, replace=False)
        for p in pos:
            bad[p] = F.add(int(bad[p]), int(rng.integers(1, 11)))
        try:
            decode(CODE_10_6, bad)
        except DecodingFailure:
            failures += 1
    assert failures > 0


def test_berlekamp_massey_recovers_recurrence():
    F = build_field(11)
    # sequence s_t = 3*2^t + 5*8^t satisfies a degree-2 recurrence with
    # connection polynomial (1 - 2x)(1 - 8x)
    seq = [F.add(F.mul(3, F.pow(2, t)), F.mul(5, F.pow(8, t))) for t in range(8)]
    loc = berlekamp_massey(F, seq)
    assert len(loc) == 3
    for root_inv in (2, 8):
        x = F.inv(root_inv)
        acc = 0
        power = 1
        for c in loc:
            acc = F.add(acc, F.mul(c, power))
            power = F.mul(power, x)
        assert acc == 0


def test_length_validation():
    with pytest.raises(ValueError):
        encode(CODE_7_4, np.zeros(3, dtype=np.int64))
    with pytest.raises(ValueError):
        decode(CODE_7_4, np.zeros(6, dtype=np.int64))
