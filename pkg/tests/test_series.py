import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbichi.errors import SpecError, ValidationError
from orbichi.series import (RationalSeries, TruncationWarning, bounded_product_tuples, first_difference, mul,
                            one_minus_t_power, pow_int, pow_rational, tamanoi_product)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series(N=5, constant=None):
    head = st.just(Fraction(constant)) if constant is not None else fractions
    return st.tuples(head, st.lists(fractions, min_size=N, max_size=N)).map(
        lambda p: RationalSeries((p[0],) + tuple(p[1])))


def partition_numbers(N):
    """Euler's pentagonal recurrence."""
    p = [1] + [0] * N
    for n in range(1, N + 1):
        k, total = 1, 0
        while True:
            for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
                if g > n:
                    break
                total += (-1) ** (k + 1) * p[n - g]
            if k * (3 * k - 1) // 2 > n:
                break
            k += 1
        p[n] = total
    return p


def test_construction_and_accessors():
    s = RationalSeries.of([1, Fraction(1, 2)], 3)
    assert list(s) == [1, Fraction(1, 2), 0, 0] and s.N == 3
    assert RationalSeries.monomial(3, 2, 3)[2] == 3
    assert RationalSeries.monomial(3, 5, 3) == RationalSeries.of([0], 3)
    with pytest.raises(TypeError):
        RationalSeries.of([0.5])
    with pytest.raises(ValueError):
        RationalSeries(())


def test_mixed_truncation_warns_and_truncates():
    a, b = RationalSeries.of([1, 1, 1]), RationalSeries.of([1, 2])
    with pytest.warns(TruncationWarning):
        c = a + b
    assert c == RationalSeries.of([2, 3])
    with pytest.warns(TruncationWarning):
        assert (a * b).N == 1


def test_geometric_series_inverse():
    one_minus_t = RationalSeries.of([1, -1], 6)
    assert list(one_minus_t.inverse()) == [1] * 7
    with pytest.raises(ZeroDivisionError):
        RationalSeries.of([0, 1]).inverse()


def test_euler_product_gives_partitions():
    N = 12
    prod = RationalSeries.one(N)
    for r in range(1, N + 1):
        prod = mul(prod, one_minus_t_power(r, -1, N))
    assert list(prod) == partition_numbers(N)
    assert list(pow_rational(tamanoi_product(1, N), -1)) == partition_numbers(N)


def test_square_root():
    s = pow_rational(RationalSeries.of([1, 1], 4), Fraction(1, 2))
    assert list(s) == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16), Fraction(-5, 128)]
    assert mul(s, s) == RationalSeries.of([1, 1], 4)
    with pytest.raises(ValidationError):
        pow_rational(RationalSeries.of([2, 1]), Fraction(1, 2))


@settings(max_examples=50, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert a - a == RationalSeries.of([0], a.N)


@settings(max_examples=50, deadline=None)
@given(series(constant=1), st.integers(-4, 4), st.integers(-4, 4))
def test_integer_powers(a, e, f):
    assert pow_int(a, e + f) == mul(pow_int(a, e), pow_int(a, f))
    assert pow_rational(a, e) == pow_int(a, e)
    repeated = RationalSeries.one(a.N)
    for _ in range(abs(e)):
        repeated = mul(repeated, a if e > 0 else a.inverse())
    assert pow_int(a, e) == repeated


@settings(max_examples=40, deadline=None)
@given(series(N=4, constant=1), fractions, fractions)
def test_rational_powers_add(a, e, f):
    assert pow_rational(a, e + f) == mul(pow_rational(a, e), pow_rational(a, f))


@settings(max_examples=30, deadline=None)
@given(series(N=4))
def test_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert RationalSeries.from_json(data) == a
    assert data["N"] == a.N
    for text in data["coefficients"]:
        f = Fraction(text)
        assert str(f) == text             # lowest terms, canonical form


def test_from_json_errors():
    with pytest.raises(SpecError):
        RationalSeries.from_json({"N": 1, "coefficients": ["1", "x"]})
    with pytest.raises(SpecError):
        RationalSeries.from_json({"N": 2, "coefficients": ["1", "1/2"]})
    with pytest.raises(SpecError):
        RationalSeries.from_json(["1", "1/0"])


def test_bounded_product_tuples():
    assert list(bounded_product_tuples(0, 3)) == [()]
    assert list(bounded_product_tuples(0, 0)) == []
    assert sorted(bounded_product_tuples(2, 4)) == sorted(
        (a, b) for a in range(1, 5) for b in range(1, 5) if a * b <= 4)


def tamanoi_by_hand(k, N):
    """Product over every tuple in a box, truncated; exponents r_2 r_3^2 ... r_k^(k-1)."""
    import itertools
    out = RationalSeries.one(N)
    for rs in itertools.product(range(1, N + 1), repeat=k):
        p, e = 1, 1
        for i, r in enumerate(rs):
            p *= r
            e *= r ** i
        if p <= N:
            out = mul(out, pow_int(RationalSeries.one(N) - RationalSeries.monomial(1, p, N), e))
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tamanoi_product_by_hand(k):
    assert tamanoi_product(k, 6) == tamanoi_by_hand(k, 6)


def test_tamanoi_product_small_cases():
    assert tamanoi_product(0, 4) == RationalSeries.of([1, -1], 4)
    # k = 2: exponent sum over r1 r2 = n of r2 is sigma(n)
    t2 = tamanoi_product(2, 3)
    assert t2 == mul(mul(one_minus_t_power(1, 1, 3), one_minus_t_power(2, 3, 3)),
                     one_minus_t_power(3, 4, 3))
    with pytest.raises(ValidationError):
        tamanoi_product(5, 3)
    assert tamanoi_product(5, 2, max_k=5)[0] == 1


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_tamanoi_product_has_integer_coefficients(k):
    s = tamanoi_product(k, 8)
    assert s[0] == 1 and all(c.denominator == 1 for c in s)


def test_first_difference():
    assert first_difference([1, 2, 3], [1, 2, 3]) is None
    assert first_difference([1, 2, 3], [1, 5, 3]) == 1
