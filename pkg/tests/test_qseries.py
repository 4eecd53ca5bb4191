from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectacle.exact_arith import bernoulli_number, divisor_power_sum
from spectacle.qseries import (
    QExpansion,
    TruncationError,
    cohen_eisenstein,
    eisenstein_level1,
)


def test_eisenstein_values():
    e4 = eisenstein_level1(4, 30)
    assert e4.coefficient(0) == 1
    assert e4.coefficient(1) == 240
    assert e4.coefficient(2) == 2160
    e8 = eisenstein_level1(8, 5)
    assert e8.coefficient(1) == 480


@pytest.mark.parametrize("m", [4, 6, 8, 10, 14])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_eisenstein_prime_coefficients(m, p):
    series = eisenstein_level1(m, p)
    want = -(2 * m / bernoulli_number(m)) * (1 + p ** (m - 1))
    assert series.coefficient(p) == want


def test_eisenstein_rejects_bad_weight():
    with pytest.raises(ValueError):
        eisenstein_level1(5, 10)
    with pytest.raises(ValueError):
        eisenstein_level1(2, 10)


def test_cohen_values():
    h1 = cohen_eisenstein(1, 20)
    # Hurwitz class numbers
    assert h1.coefficient(0) == Fraction(-1, 12)
    assert h1.coefficient(3) == Fraction(1, 3)
    assert h1.coefficient(4) == Fraction(1, 2)
    assert h1.coefficient(7) == 1
    assert h1.coefficient(8) == 1
    assert h1.coefficient(11) == 1
    assert h1.coefficient(12) == Fraction(4, 3)
    assert h1.coefficient(15) == 2
    assert h1.coefficient(16) == Fraction(3, 2)
    assert h1.coefficient(19) == 1
    assert h1.coefficient(20) == 2
    h2 = cohen_eisenstein(2, 20)
    assert h2.coefficient(0) == Fraction(1, 120)
    assert h2.coefficient(1) == Fraction(-1, 12)
    assert h2.coefficient(4) == Fraction(-7, 12)
    assert h2.coefficient(5) == Fraction(-2, 5)
    assert h2.coefficient(8) == -1
    assert h2.coefficient(9) == Fraction(-25, 12)
    h4 = cohen_eisenstein(4, 5)
    assert h4.coefficient(0) == Fraction(1, 240)  # zeta(-7)
    assert h4.coefficient(1) == Fraction(1, 120)
    assert h4.coefficient(4) == Fraction(121, 120)


def hurwitz_by_form_counting(N):
    """Weighted count of reduced positive definite forms of discriminant -N.

    (a, b, c) with b^2 - 4ac = -N, -a < b <= a <= c, b >= 0 when a == c;
    multiples of x^2 + y^2 weigh 1/2 and of x^2 + xy + y^2 weigh 1/3.
    """
    if N == 0:
        return Fraction(-1, 12)
    total = Fraction(0)
    a = 1
    while 3 * a * a <= N:
        for b in range(-a + 1, a + 1):
            rem = b * b + N
            if rem % (4 * a):
                continue
            c = rem // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if b == 0 and a == c:
                total += Fraction(1, 2)
            elif a == b == c:
                total += Fraction(1, 3)
            else:
                total += 1
        a += 1
    return total


def test_cohen_r1_matches_form_counting():
    series = cohen_eisenstein(1, 80)
    for N in range(81):
        if (-N) % 4 in (0, 1):
            assert series.coefficient(N) == hurwitz_by_form_counting(N), N


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_cohen_support(r):
    series = cohen_eisenstein(r, 50)
    for n in range(51):
        if ((-1) ** r * n) % 4 in (2, 3):
            assert series.coefficient(n) == 0


def test_truncation_stability():
    small = cohen_eisenstein(3, 25)
    large = cohen_eisenstein(3, 60)
    for n in range(26):
        assert small.coefficient(n) == large.coefficient(n)
    e_small = eisenstein_level1(6, 10)
    e_large = eisenstein_level1(6, 40)
    for n in range(11):
        assert e_small.coefficient(n) == e_large.coefficient(n)


def test_add_scale_identities():
    f = eisenstein_level1(4, 15)
    zero = 0 * f
    assert (f + zero).equals_to(f)
    assert all(c == 0 for c in zero.coeffs.values())


def test_exp_den_unification():
    a = QExpansion(1, 8, {0: 1, 2: Fraction(1, 3)})
    b = QExpansion(4, 20, {1: Fraction(1, 2), 8: 5})
    c = a + b
    assert c.exp_den == 4
    assert c.coefficient(Fraction(1, 4)) == Fraction(1, 2)
    assert c.coefficient(2) == Fraction(1, 3) + 5
    assert c.exponent_bound == Fraction(5)


def test_equality_beyond_truncation_is_error():
    a = QExpansion(1, 8, {0: 1})
    b = QExpansion(1, 5, {0: 1})
    assert a.equals_to(b)  # common range
    with pytest.raises(TruncationError):
        a.equals_to(b, up_to=6)
    with pytest.raises(TruncationError):
        a.coefficient(9)


def test_nonholo_kept_separate():
    a = QExpansion(1, 5, {1: 2}, {0: Fraction(1, 4)})
    b = QExpansion(1, 5, {1: 2}, {})
    assert a.first_mismatch(b) == (Fraction(0), Fraction(1, 4), Fraction(0), "nonholo")
    c = QExpansion(1, 5, {1: 2}, None)
    # absent and identically-zero non-holomorphic parts compare equal
    assert b.equals_to(c)


def test_dilate():
    b = QExpansion(4, 20, {1: Fraction(1, 2), 8: 5}, {0: 1})
    d = b.dilate(4)
    assert d.exp_den == 1
    assert d.coefficient(1) == Fraction(1, 2)
    assert d.coefficient(8) == 5
    assert d.nonholo_coefficient(0) == 1


def test_json_round_trip():
    b = QExpansion(4, 20, {1: Fraction(1, 2), 8: 5}, {0: Fraction(-3, 7)})
    assert QExpansion.from_json_dict(b.to_json_dict()) == b


@settings(max_examples=40)
@given(
    n=st.integers(min_value=1, max_value=60),
    k=st.integers(min_value=0, max_value=6),
)
def test_divisor_sum_consistency(n, k):
    # sanity anchor for the Eisenstein generator
    assert divisor_power_sum(n, k) == sum(d**k for d in range(1, n + 1) if n % d == 0)
