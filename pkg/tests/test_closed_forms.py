from math import comb

import pytest

from qrdet import closed_forms as cf
from qrdet.closed_forms import HypothesisError
from qrdet.fp_arith import binomial_mod, double_factorial_mod, factorial_mod, least_nonresidue, legendre, primes_between
from qrdet.qr_determinants import sm

from conftest import brute_legendre, brute_sm


def test_am_examples():
    assert comb(4, 0) + comb(4, 1) == 5
    assert cf.theorem22_am(7, 1, 4).value == 5
    expected = 1
    for k in range(3):
        expected *= comb(11, k) + comb(11, 5 - k)
    assert cf.theorem22_am(13, 1, 11).value == expected % 13


def test_am_second_product_empty():
    # n - 1 - floor(m/2) <= 0 leaves only the first product
    p, d, m = 13, 2, 11
    e = legendre(d, p)
    n = 6
    first = 1
    for k in range((m - n - 1) // 2 + 1):
        first *= comb(m, k) + e * comb(m, m - n - k)
    assert n - 1 - m // 2 <= 0
    assert cf.theorem22_am(p, d, m).value == first % p


def test_am_second_product_present():
    # p = 23, n = 11, m = 12: second product has n-1-6 = 4 factors
    p, d, m, n = 23, 5, 12, 11
    e = legendre(d, p)
    expected = 1
    for k in range((m - n - 1) // 2 + 1):
        expected *= comb(m, k) + e * comb(m, m - n - k)
    for k in range(n - 1 - m // 2):
        expected *= comb(m, m - n + 1 + k)
    assert cf.theorem22_am(p, d, m).value == expected % p


def test_bm_examples():
    assert cf.theorem22_bm(7, 1, 4).value == (-6) % 7 == 1
    assert cf.theorem22_bm(13, 1, 11).value == 1
    for p in (7, 11, 19, 23):
        for d in range(1, p):
            if legendre(d, p) == -1:
                for m in range((p + 1) // 2, p - 1):
                    if m % 2:
                        assert cf.theorem22_bm(p, d, m).value == 0


def test_bm_case_even_even():
    # p = 13: n = 6 even; m = 8 even
    p, d, m, n = 13, 4, 8, 6
    e = legendre(d, p)
    expected = (-d) ** (n // 2) * (1 + e) * comb(m, (m - n) // 2) * comb(m, m // 2)
    assert cf.theorem22_bm(p, d, m).value == expected % p


def test_decompose_examples():
    r = cf.theorem22_decompose(7, 1, 4)
    assert (r.a.value, r.b.value, r.product.value) == (5, 1, 4)
    assert 25 % 7 == 4 == sm(7, 1, 4).value
    with pytest.raises(HypothesisError):
        cf.theorem22_decompose(5, 2, 3)
    assert cf.theorem22_decompose(13, 2, 9).product.value == brute_sm(13, 2, 9)


@pytest.mark.parametrize("bad", [(7, 1, 3), (7, 1, 6), (7, 7, 4), (9, 1, 5)])
def test_decompose_rejects(bad):
    with pytest.raises(ValueError):
        cf.theorem22_decompose(*bad)


@pytest.mark.parametrize("p", primes_between(7, 37))
def test_decomposition_matches_determinant(p):
    n = (p - 1) // 2
    for d in range(1, p):
        for m in range(n + 1, p - 1):
            assert cf.theorem22_decompose(p, d, m).product == sm(p, d, m)


def test_decomposition_against_sympy():
    for p, d, m in ((11, 2, 7), (17, 3, 12), (23, 5, 19)):
        assert cf.theorem22_decompose(p, d, m).product.value == brute_sm(p, d, m)


def test_tc_examples():
    assert (15 * 15) % 13 == 4
    assert cf.tC_sp2_closed_form(13, 1).value == 4
    assert brute_sm(13, 1, 11) == 4
    assert legendre(-3, 7) == 1
    assert cf.tC_sp2_closed_form(7, 3).value == 0
    assert brute_sm(7, 3, 5) == 0
    assert legendre(3, 13) == 1 and pow(3, 3, 13) == 1
    assert cf.tC_sp2_closed_form(13, 3).value == 4 == brute_sm(13, 3, 11)
    with pytest.raises(HypothesisError):
        cf.tC_sp2_closed_form(13, 2)


@pytest.mark.parametrize("p", primes_between(5, 61))
def test_tc_matches_determinant(p):
    for d in range(1, p):
        if legendre(-d, p) == 1:
            assert cf.tC_sp2_closed_form(p, d) == sm(p, d, p - 2)


def test_tc_uses_half_double_factorial():
    # at p = 13 the factor is 5!! = 15, not 10!!
    assert double_factorial_mod(5, 13).value == 2
    assert cf.tC_sp2_closed_form(13, 1).value == pow(15, 2, 13)


def test_sun_prior_examples():
    assert cf.sun_prior_sp2(5, 2).value == 2 == sm(5, 2, 3).value
    assert legendre(-1, 7) == -1
    assert cf.sun_prior_sp2(7, 1).value == 1 == sm(7, 1, 5).value
    quarter = pow(4, -1, 13)
    assert quarter == 10
    expected = quarter
    for r in range(1, 4):
        expected = expected * (r + quarter) ** 2 % 13
    assert cf.sun_prior_sp3(13, 2).value == expected == brute_sm(13, 2, 10)
    with pytest.raises(HypothesisError):
        cf.sun_prior_sp2(13, 1)
    with pytest.raises(HypothesisError):
        cf.sun_prior_sp3(7, 3)


@pytest.mark.parametrize("p", primes_between(5, 61))
def test_sun_prior_matches_determinant(p):
    for d in range(1, p):
        if legendre(-d, p) == -1:
            assert cf.sun_prior_sp2(p, d) == sm(p, d, p - 2)
            assert cf.sun_prior_sp3(p, d) == sm(p, d, p - 3)


def test_td_examples():
    reports = cf.tD_sp3_symbol_check(17, 1)
    assert [r.claim for r in reports] == ["six-s-not-nonresidue", "s-symbol"]
    assert reports[1].predicted == -1
    assert reports[1].observed == brute_legendre(brute_sm(17, 1, 14), 17) == -1
    assert all(r.passed for r in reports)

    (only,) = cf.tD_sp3_symbol_check(13, 2)
    assert only.observed == brute_legendre(6 * brute_sm(13, 2, 10), 13) in (0, 1)
    assert only.passed

    reports = cf.tD_sp3_symbol_check(29, 4)
    assert reports[1].predicted == 1 and reports[1].passed
    with pytest.raises(HypothesisError):
        cf.tD_sp3_symbol_check(7, 1)


def test_te_examples():
    r = cf.tE_sp4_symbol_check(7, 1)
    assert (r.predicted, r.observed, r.relation, r.status) == (-1, -1, "eq", "pass")
    assert r.reason and "boundary" in r.reason
    r = cf.tE_sp4_symbol_check(13, 1)
    assert r.relation == "ne" and r.passed
    assert legendre(2, 23) == 1
    r = cf.tE_sp4_symbol_check(23, 2)
    assert r.relation == "eq" and r.observed == brute_legendre(brute_sm(23, 2, 19), 23) == -1
    with pytest.raises(HypothesisError):
        cf.tE_sp4_symbol_check(7, 3)


def brute_two_squares(p):
    half_fact = factorial_mod((p - 1) // 2, p).value
    found = [
        (x, y)
        for x in range(-p, p + 1)
        for y in range(-p, p + 1)
        if x * x + y * y == p and x % 4 == 1 and (y - half_fact * x) % p == 0
    ]
    assert len(found) == 1
    return found[0]


def test_two_squares_examples():
    ts = cf.two_squares(13)
    assert (ts.x, ts.y) == (-3, -2)
    ts = cf.two_squares(5)
    assert (ts.x, ts.y) == (1, 2)
    assert (2 * -3) % 13 == binomial_mod(6, 3, 13).value == 7
    with pytest.raises(HypothesisError):
        cf.two_squares(7)


@pytest.mark.parametrize("p", [p for p in primes_between(5, 400) if p % 4 == 1])
def test_two_squares_brute_force(p):
    ts = cf.two_squares(p)
    assert (ts.x, ts.y) == brute_two_squares(p)


def test_two_squares_large():
    for p in (1000033, 999961):
        assert p % 4 == 1
        ts = cf.two_squares(p)
        assert ts.x**2 + ts.y**2 == p and ts.x % 4 == 1


def test_delta_examples():
    assert pow(2, 3, 13) == 8 and factorial_mod(6, 13).value == 5
    assert cf.remark_delta(2, 13) == -1
    assert cf.remark_delta(2, 5) == 1
    for p in (13, 17, 29, 37):
        for s in range(1, p):
            if legendre(s, p) == -1:
                assert cf.remark_delta(s, p) in (-1, 1)
    with pytest.raises(HypothesisError):
        cf.remark_delta(3, 13)


def test_character_sum_example():
    values = [k * (k * k + 2) % 13 for k in range(1, 7)]
    assert values == [3, 12, 7, 7, 5, 7]
    assert [brute_legendre(v, 13) for v in values] == [1, 1, -1, -1, -1, -1]
    assert cf.character_sum(13, 2) == -2
    sp2, charsum = cf.remark_character_sum_check(13, 2, 1)
    assert charsum.predicted == 4 == (-2 * -2) % 13
    assert sp2.passed and charsum.passed
    assert cf.tC_sp2_closed_form(13, 1).value == 4


def test_character_sum_p5():
    sp2, charsum = cf.remark_character_sum_check(5, 2, 1)
    assert sp2.predicted == (-4) % 5 == 1 == sm(5, 1, 3).value
    assert sp2.passed and charsum.passed


@pytest.mark.parametrize("p", [p for p in primes_between(5, 101) if p % 4 == 1])
def test_character_sum_every_nonresidue(p):
    ts = cf.two_squares(p)
    for s in range(1, p):
        if legendre(s, p) == -1:
            assert (2 * cf.remark_delta(s, p) * cf.character_sum(p, s) + 2 * ts.y) % p == 0
