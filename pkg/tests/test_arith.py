import math

import pytest
from hypothesis import given, strategies as st

from nilgenus.arith import (
    NilgenusError,
    binom_int,
    egcd,
    factorize,
    gcd_all,
    invmod,
    is_prime,
    p_valuation,
    prime_divisors,
    unit_lift,
    vp_cap,
)


@pytest.mark.parametrize(
    "n,p,expected",
    [(12, 2, 2), (0, 5, math.inf), (18, 3, 2), (1, 7, 0), (-24, 2, 3)],
)
def test_p_valuation_examples(n, p, expected):
    assert p_valuation(n, p) == expected


def test_p_valuation_rejects_composite_base():
    with pytest.raises(NilgenusError):
        p_valuation(10, 4)


@given(
    st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(lambda n: n != 0),
    st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(lambda n: n != 0),
    st.sampled_from([2, 3, 5, 7, 11]),
)
def test_p_valuation_multiplicative(a, b, p):
    assert p_valuation(a * b, p) == p_valuation(a, p) + p_valuation(b, p)


def test_gcd_conventions():
    assert gcd_all(0, 0) == 0
    assert gcd_all(6, 0) == 6
    assert gcd_all(0, -4) == 4
    assert gcd_all(12, 18, 30) == 6


@given(st.integers(-10 ** 9, 10 ** 9), st.integers(-10 ** 9, 10 ** 9))
def test_egcd_identity(a, b):
    g, x, y = egcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


@pytest.mark.parametrize("a,m", [(3, 7), (5, 8), (122, 81), (1, 1)])
def test_invmod(a, m):
    x = invmod(a, m)
    assert (a * x - 1) % m == 0 or m == 1


def test_invmod_noninvertible():
    with pytest.raises(NilgenusError):
        invmod(4, 8)


def test_factorize():
    assert factorize(2 ** 5 * 3 * 49) == {2: 5, 3: 1, 7: 2}
    assert factorize(1) == {}
    assert prime_divisors(60) == (2, 3, 5)
    big = 10 ** 9 + 7
    assert factorize(big * 4) == {2: 2, big: 1}


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(2, 50):
        assert is_prime(n) == (n in primes)


def test_binom_int_negative_upper_index():
    assert binom_int(-1, 3) == -1
    assert binom_int(-2, 2) == 3
    assert binom_int(5, 2) == 10
    assert binom_int(0, 0) == 1


def test_vp_cap():
    assert vp_cap(8, 2, 2) == 2
    assert vp_cap(8, 2, 5) == 3
    assert vp_cap(0, 3, 4) == 4


@pytest.mark.parametrize("u,p,k", [(2, 5, 2), (3, 2, 3), (1, 3, 1), (4, 7, 0)])
def test_unit_lift(u, p, k):
    lifted = unit_lift(u, p, k)
    assert lifted % 2 == 1 and lifted % 3 != 0
    assert (lifted - u) % p ** k == 0
