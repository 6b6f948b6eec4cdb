import numpy as np
import pytest
from fractions import Fraction

from fouriercode import linalg
from fouriercode.block import (
    Cert,
    DesignError,
    DesignRequest,
    QeccParams,
    css_from_dc,
    design_dc,
    design_dc_hermitian,
    design_lcd,
    design_mds,
    design_to_spec,
    smallest_host_field,
)
from fouriercode.field import build_field
from fouriercode.fourier import build_fourier


def ctx_of(p, s, n):
    return build_fourier(build_field(p, s), n)


def assert_annihilation(code):
    prod = linalg.mat_mul(code.field, code.generator, code.check_cols)
    assert not prod.any()


def test_design_mds_gf81_10_6_5():
    code = design_mds(ctx_of(3, 4, 10), 0, 1, 6)
    assert code.params() == (10, 6, 5)
    assert code.flags.mds is Cert.CLAIMED
    assert_annihilation(code)


def test_design_mds_full_matrix():
    code = design_mds(ctx_of(2, 3, 7), 0, 1, 7)
    assert code.params() == (7, 7, 1)
    assert code.check_cols.shape == (7, 0)
    assert_annihilation(code)


def test_design_mds_step3_selection():
    code = design_mds(ctx_of(11, 1, 10), 3, 3, 5)
    assert code.selection == (3, 6, 9, 2, 5)
    assert code.params() == (10, 5, 6)
    assert_annihilation(code)


def test_design_mds_rejects_bad_step():
    with pytest.raises(DesignError, match="shares a factor"):
        design_mds(ctx_of(11, 1, 10), 0, 2, 5)
    with pytest.raises(DesignError, match="out of range"):
        design_mds(ctx_of(11, 1, 10), 0, 1, 11)


@pytest.mark.parametrize(
    "p,s,n,r",
    [(2, 3, 7, 4), (2, 5, 31, 17), (401, 1, 400, 350)],
)
def test_design_dc_fixtures(p, s, n, r):
    code = design_dc(ctx_of(p, s, n), r)
    assert code.params() == (n, r, n - r + 1)
    assert code.selection == tuple(range(r))
    assert code.flags.dc_euclidean is Cert.CLAIMED
    assert_annihilation(code)
    # dual generator rows are e_{n-r}..e_1, matching the construction
    dual = code.dual_generator_rows()
    want = code.ctx.rows[[(n - j) % n for j in range(r, n)]]
    assert np.array_equal(dual, want)


def test_design_dc_rejects_low_rate():
    with pytest.raises(DesignError, match="rate above one half"):
        design_dc(ctx_of(2, 3, 7), 3)


@pytest.mark.parametrize(
    "p,s,n,r",
    [(2, 6, 7, 4), (3, 8, 10, 6), (11, 2, 10, 6)],
)
def test_design_dc_hermitian_fixtures(p, s, n, r):
    code = design_dc_hermitian(build_field(p, s), n, r)
    assert code.params() == (n, r, n - r + 1)
    assert code.flags.dc_hermitian is Cert.CLAIMED
    assert_annihilation(code)
    # conjugation by l = p^(s/2) fixes every selected row
    f = code.field
    for row in code.generator:
        assert np.array_equal(f.frobenius(row, s // 2), row)


def test_design_dc_hermitian_rejects_misaligned():
    # over GF(3^4), l = 9 is not 1 mod 10
    with pytest.raises(DesignError, match="self-alignment"):
        design_dc_hermitian(build_field(3, 4), 10, 6)


@pytest.mark.parametrize(
    "p,s,n,pairs,params",
    [
        (2, 3, 7, 2, (7, 5, 3)),
        (2, 4, 15, 4, (15, 9, 7)),
        (2, 9, 511, 224, (511, 449, 63)),
    ],
)
def test_design_lcd_fixtures(p, s, n, pairs, params):
    code = design_lcd(ctx_of(p, s, n), pairs)
    assert code.params() == params
    assert code.flags.lcd is Cert.CLAIMED
    assert_annihilation(code)
    want = [0]
    for i in range(1, pairs + 1):
        want += [i, n - i]
    assert code.selection == tuple(want)


def test_design_lcd_selection_is_wrapped_progression():
    code = design_lcd(ctx_of(2, 3, 7), 2)
    # rows {0, 1, 6, 2, 5} form the wrapped consecutive run {5, 6, 0, 1, 2}
    assert sorted(code.selection) == [0, 1, 2, 5, 6]
    start, step = code.progression
    run = {(start + i * step) % 7 for i in range(code.r)}
    assert run == set(code.selection)


def test_design_lcd_dual_order_odd_n():
    code = design_lcd(ctx_of(2, 3, 7), 2)
    assert code.check_col_indices == (3, 4)
    code = design_lcd(ctx_of(2, 4, 15), 4)
    assert code.check_col_indices == (5, 10, 6, 9, 7, 8)


def test_design_lcd_dual_order_even_n():
    # even n: trailing middle column f_{n/2} comes last
    code = design_lcd(ctx_of(11, 1, 10), 3)
    assert code.params() == (10, 7, 4)
    assert code.check_col_indices == (4, 6, 5)
    assert_annihilation(code)


def test_design_lcd_rejects_large_pair_count():
    with pytest.raises(DesignError, match="pair count"):
        design_lcd(ctx_of(2, 3, 7), 4)


def test_smallest_host_field():
    assert smallest_host_field(400) == (401, 1)
    assert smallest_host_field(10) == (11, 1)
    assert smallest_host_field(7) == (2, 3)
    assert smallest_host_field(1) == (2, 1)


def test_design_to_spec_dc_unconstrained():
    req = DesignRequest(Fraction(7, 8), 25, "dc")
    code, field = design_to_spec(req)
    assert code.params() == (400, 350, 51)
    assert (field.p, field.s) == (401, 1)
    assert Fraction(code.r, code.n) >= req.rate
    assert code.design_distance >= 2 * req.t + 1


def test_design_to_spec_dc_char2():
    req = DesignRequest(Fraction(7, 8), 25, "dc", characteristic=2)
    code, field = design_to_spec(req)
    assert code.params() == (511, 449, 63)
    assert (field.p, field.s) == (2, 9)


def test_design_to_spec_lcd_raises_length():
    # at n = 400 the LCD distance cannot reach 51; the search moves on to 401
    req = DesignRequest(Fraction(7, 8), 25, "lcd")
    code, field = design_to_spec(req)
    assert code.params() == (401, 351, 51)


def test_design_to_spec_degenerate():
    req = DesignRequest(Fraction(1, 2), 0, "plain")
    code, field = design_to_spec(req)
    assert code.params() == (1, 1, 1)


def test_design_to_spec_prime_field():
    req = DesignRequest(Fraction(7, 8), 25, "dc", prime_field=True)
    code, field = design_to_spec(req)
    assert field.s == 1
    assert code.params() == (400, 350, 51)
    assert (field.p, field.s) == (401, 1)


def test_design_request_validation():
    with pytest.raises(DesignError, match="rate above one half"):
        DesignRequest(Fraction(1, 2), 3, "dc")
    with pytest.raises(DesignError):
        DesignRequest(Fraction(9, 8), 3)
    with pytest.raises(DesignError):
        DesignRequest(Fraction(3, 4), 3, "weird")


def test_css_from_dc():
    code = design_dc(ctx_of(401, 1, 400), 350)
    with pytest.raises(DesignError, match="not certified"):
        css_from_dc(code)
    code.flags.dc_euclidean = Cert.CERTIFIED
    q = css_from_dc(code)
    assert (q.n, q.k, q.d) == (400, 300, 51)
    assert not q.hermitian
    assert str(q) == "[[400,300,51]]"


def test_css_from_dc_hermitian_and_trivial():
    code = design_dc(ctx_of(2, 3, 7), 7)
    code.flags.dc_euclidean = Cert.CERTIFIED
    q = css_from_dc(code)
    assert (q.n, q.k, q.d) == (7, 7, 1)
    herm = design_dc_hermitian(build_field(11, 2), 10, 6)
    herm.flags.dc_hermitian = Cert.CERTIFIED
    q = css_from_dc(herm)
    assert (q.n, q.k, q.d, q.hermitian) == (10, 2, 5, True)


def test_qecc_params_reject_negative_k():
    with pytest.raises(DesignError):
        QeccParams(10, -2, 5)
