from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from dehntetra.exact import (
    MultiQuadNumber,
    QuadFieldElem,
    SqrtQuantity,
    is_square,
    multiquad_equal,
    quad_norm,
    rational_sqrt,
    squarefree_decompose,
    sqrt_quantity_cmp,
    sqrt_quantity_mul,
)
from dehntetra.factor import factor, is_probable_prime, valuation


def _naive_factor(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (26542080, [(2, 16), (3, 4), (5, 1)]), (147, [(3, 1), (7, 2)]), (2, [(2, 1)])],
)
def test_factor_examples(n, expected):
    assert factor(n) == expected


def test_factor_matches_naive_oracle():
    for n in range(1, 5000):
        assert factor(n) == _naive_factor(n)


def test_factor_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factor(p * q) == [(q, 1), (p, 1)]
    assert factor(p**2 * 12) == [(2, 2), (3, 1), (p, 2)]


@given(st.integers(2, 10**12))
def test_factor_reconstructs(n):
    fs = factor(n)
    assert math.prod(p**e for p, e in fs) == n
    assert all(is_probable_prime(p) for p, _ in fs)
    assert [p for p, _ in fs] == sorted(p for p, _ in fs)


def test_valuation():
    assert valuation(147, 7) == 2
    assert valuation(147, 3) == 1
    assert valuation(5, 3) == 0


# --- squarefree --------------------------------------------------------

@pytest.mark.parametrize("n, expected", [(1, (1, 1)), (26542080, (2304, 5)), (12, (2, 3))])
def test_squarefree_examples(n, expected):
    assert squarefree_decompose(n) == expected


def test_squarefree_against_factorization():
    for n in range(1, 10**5, 7):
        s, r = squarefree_decompose(n)
        assert s * s * r == n
        assert all(e == 1 for _, e in factor(r))


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert is_square(49) and not is_square(50)


# --- SqrtQuantity --------------------------------------------------------

def test_sqrt_quantity_examples():
    three = SqrtQuantity(Fraction(1), 3)
    assert sqrt_quantity_mul(three, three) == SqrtQuantity(Fraction(3), 1)
    x = SqrtQuantity(Fraction(1, 7), 21)
    assert sqrt_quantity_mul(x, x) == SqrtQuantity(Fraction(3, 7), 1)
    zero = SqrtQuantity(Fraction(0), 1)
    assert sqrt_quantity_mul(zero, SqrtQuantity(Fraction(5, 3), 2)) == zero


def test_sqrt_quantity_rejects_negative():
    with pytest.raises(ValueError):
        SqrtQuantity.sqrt(-1)


sq = st.builds(
    SqrtQuantity.make,
    st.fractions(min_value=-50, max_value=50, max_denominator=30),
    st.integers(0, 400),
)


@given(sq, sq)
def test_sqrt_quantity_mul_commutes_and_squares(x, y):
    assert x * y == y * x
    assert (x * y).square() == x.square() * y.square()


@given(sq, sq)
def test_sqrt_quantity_cmp_matches_float(x, y):
    c = sqrt_quantity_cmp(x, y)
    fx, fy = float(x.to_mpf()), float(y.to_mpf())
    if abs(fx - fy) > 1e-9:
        assert c == (1 if fx > fy else -1)
    if x == y:
        assert c == 0


@given(st.lists(st.fractions(min_value=0, max_value=10**4, max_denominator=100), min_size=1, max_size=4))
def test_sqrt_product_squares_back(parts):
    r = SqrtQuantity.sqrt_product(parts)
    prod = Fraction(1)
    for p in parts:
        prod *= p
    assert r.square() == prod and r.sign() >= 0


# --- QuadFieldElem --------------------------------------------------------

@pytest.mark.parametrize(
    "elem",
    [QuadFieldElem.make(1, 0, 1, -5), QuadFieldElem.make(-142, 17, 147, -5), QuadFieldElem.make(-7, 4, 9, -2)],
)
def test_norm_one_examples(elem):
    assert quad_norm(elem) == 1


def test_norm_arithmetic_check():
    assert 142**2 + 5 * 17**2 == 147**2
    assert 49 + 2 * 16 == 81


ms = st.sampled_from([-1, -2, -3, -5, -6, -7, -10, -15, -30])
elems = st.builds(
    lambda x, y: (x, y),
    st.fractions(min_value=-20, max_value=20, max_denominator=12),
    st.fractions(min_value=-20, max_value=20, max_denominator=12),
)


@given(ms, elems, elems, elems)
def test_quad_field_ring_laws(m, a, b, c):
    x, y, z = (QuadFieldElem.from_rationals(u, v, m) for u, v in (a, b, c))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)


@given(ms, elems, st.integers(-6, 6))
def test_quad_field_powers_and_inverse(m, a, k):
    x = QuadFieldElem.from_rationals(*a, m)
    if x.a == 0 and x.b == 0:
        return
    assert x * x.inverse() == QuadFieldElem.one(m)
    expected = QuadFieldElem.one(m)
    base = x if k >= 0 else x.inverse()
    for _ in range(abs(k)):
        expected = expected * base
    assert x**k == expected


def test_quad_field_normalization_gcd():
    x = QuadFieldElem.make(6, 4, 2, -5)
    assert (x.a, x.b, x.c) == (3, 2, 1)
    y = QuadFieldElem.make(1, 1, -2, -3)
    assert y.c > 0 and (y.a, y.b) == (-1, -1)


# --- MultiQuadNumber --------------------------------------------------------

def test_multiquad_examples():
    assert multiquad_equal(MultiQuadNumber({1: Fraction(1, 2)}), MultiQuadNumber({1: Fraction(1, 2)}))
    assert multiquad_equal(MultiQuadNumber({2: 1}), MultiQuadNumber({2: 1, 3: 0}))
    assert not multiquad_equal(MultiQuadNumber({2: 1}), MultiQuadNumber({3: 1}))


mq = st.dictionaries(
    st.sampled_from([1, 2, 3, 5, 6, 7, 10]),
    st.fractions(min_value=-9, max_value=9, max_denominator=9),
    max_size=4,
).map(MultiQuadNumber)


@given(mq, mq, mq)
def test_multiquad_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()


@given(mq)
def test_multiquad_sign_matches_float(x):
    v = float(x.to_mpf())
    s = x.sign()
    if x.is_zero():
        assert s == 0
    elif abs(v) > 1e-9:
        assert s == (1 if v > 0 else -1)


def test_multiquad_sign_of_tiny_difference():
    # sqrt2 + sqrt3 vs sqrt(5 + 2 sqrt 6): equal, so the square of the difference is exactly zero
    x = MultiQuadNumber({2: 1, 3: 1})
    assert (x * x - MultiQuadNumber({1: 5, 6: 2})).is_zero()
    # 99 sqrt2 - 140 ~ 0.0071 (99^2 * 2 = 19602 > 140^2); close to zero, still decided exactly
    assert MultiQuadNumber({2: 99, 1: -140}).sign() == 1
    assert MultiQuadNumber({2: -99, 1: 140}).sign() == -1
    # 665857 sqrt2 - 941664 ~ 7.5e-7
    assert MultiQuadNumber({2: 665857, 1: -941664}).sign() == 1
