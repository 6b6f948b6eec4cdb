import numpy as np
import pytest

from fouriercode import linalg
from fouriercode.field import build_field, FieldError
from fouriercode.fourier import build_fourier


def test_gf8_n7_delta_identities():
    ctx = build_fourier(build_field(2, 3), 7)
    F = ctx.field
    # characteristic 2, n = 7: n equals 1 in the field, so the plain
    # Kronecker delta holds for all 49 pairs
    for i in range(7):
        for j in range(7):
            dot = 0
            for u in range(7):
                dot = F.add(dot, F.mul(int(ctx.rows[i, u]), int(ctx.inv_col(j)[u])))
            assert dot == (1 if i == j else 0)


def test_scaled_delta_over_gf11():
    ctx = build_fourier(build_field(11), 10)
    F = ctx.field
    prod = linalg.mat_mul(F, ctx.rows, ctx.inv_cols)
    assert np.array_equal(prod, F.mul(linalg.eye(10), ctx.n_in_field))


@pytest.mark.parametrize("p,s,n", [(2, 3, 7), (11, 1, 10), (3, 4, 10), (2, 5, 31)])
def test_full_inverse_check(p, s, n):
    ctx = build_fourier(build_field(p, s), n)
    assert ctx.verify_inverse()
    # independent oracle: invert the matrix by Gaussian elimination and
    # compare n times the result against the stored columns
    inv = linalg.inverse(ctx.field, ctx.rows)
    assert np.array_equal(ctx.field.mul(inv, ctx.n_in_field), ctx.inv_cols)


def test_transpose_law():
    ctx = build_fourier(build_field(11), 10)
    for i in range(10):
        assert np.array_equal(ctx.inv_col(i), ctx.row((10 - i) % 10))
        assert np.array_equal(ctx.row(i), ctx.inv_cols[:, (10 - i) % 10])


def test_index_wraparound():
    ctx = build_fourier(build_field(2, 3), 7)
    assert np.array_equal(ctx.row(7), ctx.row(0))
    assert np.array_equal(ctx.row(10), ctx.row(3))
    assert np.array_equal(ctx.inv_col(-1), ctx.inv_col(6))


def test_wrapped_arithmetic_selection_exists():
    # row selections like {8, 9, 0, 1} are just wrapped index accesses
    ctx = build_fourier(build_field(11), 10)
    sel = [8, 9, 10, 11]
    got = np.stack([ctx.row(i) for i in sel])
    want = ctx.rows[[8, 9, 0, 1]]
    assert np.array_equal(got, want)


def test_gf8_row3_exponents():
    ctx = build_fourier(build_field(2, 3), 7)
    w = ctx.omega
    F = ctx.field
    # row 3 entries are w^(3j mod 7) for j = 0..6
    want = [F.pow(w, (3 * j) % 7) for j in range(7)]
    assert np.array_equal(ctx.row(3), np.array(want))
    assert [(3 * j) % 7 for j in range(7)] == [0, 3, 6, 2, 5, 1, 4]


def test_conjugation_fixes_rows_when_l_is_1_mod_n():
    # over GF(2^6) with n = 7, l = 2^3 = 8 = 1 mod 7, so the entrywise
    # Frobenius power fixes every row
    f = build_field(2, 6)
    ctx = build_fourier(f, 7)
    for i in range(7):
        assert np.array_equal(f.frobenius(ctx.row(i), 3), ctx.row(i))


def test_conjugation_permutes_rows_by_l():
    # over GF(3^4) with n = 10, l = 3^2 = 9, and e_i^l = e_(i*l mod n)
    f = build_field(3, 4)
    ctx = build_fourier(f, 10)
    for i in range(10):
        assert np.array_equal(f.frobenius(ctx.row(i), 2), ctx.row((9 * i) % 10))


def test_trivial_size_one():
    ctx = build_fourier(build_field(11), 1)
    assert ctx.rows.shape == (1, 1)
    assert ctx.rows[0, 0] == 1
    assert ctx.inv_col(0)[0] == 1


def test_rejects_missing_order():
    f = build_field(2, 3)
    with pytest.raises(FieldError, match="does not divide"):
        build_fourier(f, 5)
