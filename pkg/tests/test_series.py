import random
from fractions import Fraction

import pytest

from heckeq.errors import OrderTooLarge, ZeroSeries
from heckeq.services.series import (
    EQUAL,
    FirstDiscrepancy,
    FracSeries,
    QArg,
    add,
    ensure_order,
    equal_to_order,
    fmt_exponent,
    invert,
    mul,
    parity_sign,
    power,
    sublevel_range,
)
from heckeq.services.theta import JKind, big_j
from tests.oracles import euler_product, partition_counts, pentagonal

F = Fraction


def test_partition_numbers_from_inverse_euler_product():
    series = invert(big_j(JKind.PROD, 0, 1, 8))
    assert series.order == 8
    assert [series.coefficient(n) for n in range(9)] == partition_counts(8)
    assert partition_counts(8) == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_euler_product_is_pentagonal():
    j1 = big_j(JKind.PROD, 0, 1, 15)
    assert dict(j1.terms) == pentagonal(15)
    assert dict(j1.terms) == {F(0): 1, F(1): -1, F(2): -1, F(5): 1, F(7): 1, F(12): -1, F(15): -1}
    assert euler_product(15).truncate(15) == j1


def test_constructor_drops_zeros_and_terms_above_order():
    s = FracSeries({0: 1, 1: 0, 3: 2, 7: 5}, order=5)
    assert dict(s.terms) == {F(0): 1, F(3): 2}
    assert s.order == 5
    assert not s.is_exact


def test_coefficient_beyond_order_raises():
    s = FracSeries({0: 1}, order=3)
    assert s.coefficient(2) == 0
    with pytest.raises(OrderTooLarge):
        s.coefficient(4)


def test_add_keeps_smaller_order():
    a = FracSeries({0: 1, 4: 1}, order=6)
    b = FracSeries({0: -1, 5: 1}, order=4)
    total = add(a, b)
    assert total.order == 4
    assert dict(total.terms) == {F(4): 1}


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (FracSeries({0: 1, 1: 1}, 5), FracSeries({2: 1}), 7),
        (FracSeries({0: 1}, 5), FracSeries({1: 1}, 4), 4),
        (FracSeries({0: 1}), FracSeries({F(1, 2): 3}), None),
        (FracSeries.zero(3), FracSeries({1: 1}, 10), 4),
    ],
)
def test_product_order(a, b, expected):
    assert mul(a, b).order == expected


def test_fractional_exponents_multiply():
    a = QArg.power("1/2").as_series()
    b = QArg.power("1/3", sign=-1).as_series()
    assert mul(a, b) == FracSeries({F(5, 6): -1})


def test_invert_geometric_series():
    inv = invert(FracSeries({0: 1, 1: -1}), cap=5)
    assert inv == FracSeries({k: 1 for k in range(6)}, order=5)


def test_invert_shifts_by_valuation():
    inv = invert(FracSeries({2: 1, 3: 1}, order=10))
    # known to 10 - 2*2
    assert inv.order == 6
    assert dict(inv.terms) == {F(k - 2): (-1) ** k for k in range(9)}


def test_invert_monomial_is_exact():
    inv = invert(FracSeries.monomial(F(1, 2), 2))
    assert inv == FracSeries({F(-1, 2): F(1, 2)})
    assert inv.is_exact


def test_invert_exact_polynomial_needs_cap():
    with pytest.raises(OrderTooLarge):
        invert(FracSeries({0: 1, 1: 1}))


def test_invert_zero_raises():
    with pytest.raises(ZeroSeries):
        invert(FracSeries.zero(10))


def test_negative_power():
    j1 = big_j(JKind.PROD, 0, 1, 6)
    assert mul(power(j1, -2), power(j1, 2)).truncate(6) == FracSeries.one().truncate(6)


def test_equal_to_order_reports_first_discrepancy():
    a = FracSeries({0: 1, 2: 1, 5: 1}, order=8)
    b = FracSeries({0: 1, 5: 2}, order=8)
    assert equal_to_order(a, b, 1) == EQUAL
    assert equal_to_order(a, b, 8) == FirstDiscrepancy(F(2), F(1), F(0))


def test_equal_to_order_rejects_insufficient_precision():
    with pytest.raises(OrderTooLarge):
        equal_to_order(FracSeries({0: 1}, 3), FracSeries.one(), 4)


def test_ensure_order_raises_working_order():
    calls = []

    def build(working):
        calls.append(working)
        return FracSeries({0: 1}, working - 1)

    result = ensure_order(build, 10)
    assert result.order == 10
    assert len(calls) == 2


def test_ensure_order_returns_exact_results_unchanged():
    assert ensure_order(lambda working: FracSeries.one(), 10) == FracSeries.one()


def test_ensure_order_gives_up(monkeypatch):
    monkeypatch.setenv("HECKEQ_MAX_PRECISION_ROUNDS", "3")
    calls = []

    def build(working):
        calls.append(working)
        return FracSeries.zero(5)

    with pytest.raises(OrderTooLarge):
        ensure_order(build, 10)
    assert len(calls) == 3


def test_sublevel_range_examples():
    assert sublevel_range(1, 0, 0, 4) == range(-2, 3)
    assert sublevel_range(1, 0, 0, 4, lo=0) == range(0, 3)
    assert len(sublevel_range(1, 0, 0, -1)) == 0
    assert len(sublevel_range(1, 0, 0, 4, lo=3, hi=1)) == 0


@pytest.mark.parametrize(
    "qa, qb, qc, limit",
    [
        (F(1, 2), F(-1, 2), 0, 20),
        (F(3, 2), F(1, 3), F(-7, 4), F(41, 3)),
        (5, -17, 3, 0),
        (F(1, 24), 1, 0, 2),
    ],
)
def test_sublevel_range_matches_brute_force(qa, qb, qc, limit):
    expected = [n for n in range(-500, 501) if qa * n * n + qb * n + qc <= limit]
    assert list(sublevel_range(qa, qb, qc, limit)) == expected


def test_parity_sign_is_integral_for_negative_exponents():
    assert [parity_sign(n) for n in (-3, -2, 0, 1)] == [-1, 1, 1, -1]
    assert all(isinstance(parity_sign(n), int) for n in range(-4, 4))


def test_formatting():
    assert fmt_exponent(F(3)) == "3"
    assert fmt_exponent(F(-1, 24)) == "(-1/24)"
    assert str(FracSeries({0: 1, 1: -2, F(1, 2): 1}, 2)) == "1 + q^(1/2) - 2*q + O(q^2)"


def test_sublevel_range_needs_a_convex_quadratic():
    with pytest.raises(ValueError):
        sublevel_range(-1, 0, 0, 4)
    with pytest.raises(ValueError):
        sublevel_range(0, 1, 0, 4)


def _random_series(rng: random.Random) -> FracSeries:
    den = rng.choice([1, 2, 3])
    val = Fraction(rng.randint(-4, 4), den)
    span = rng.randint(3, 8)
    terms = {val: rng.choice([-3, -2, -1, 1, 2, 3])}
    for k in range(1, span * den + 1):
        if rng.random() < 0.6:
            terms[val + Fraction(k, den)] = rng.randint(-5, 5)
    return FracSeries(terms, val + span)


def _agree(a: FracSeries, b: FracSeries) -> bool:
    return equal_to_order(a, b, min(a.order, b.order)) == EQUAL


def test_ring_laws_hold_to_the_common_order():
    rng = random.Random(1729)
    for _ in range(60):
        a, b, c = (_random_series(rng) for _ in range(3))
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert _agree(add(add(a, b), c), add(a, add(b, c)))
        assert _agree(mul(mul(a, b), c), mul(a, mul(b, c)))
        assert _agree(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))


def test_invert_is_a_two_sided_inverse():
    rng = random.Random(4104)
    one = FracSeries.one()
    for _ in range(100):
        a = _random_series(rng)
        inverse = invert(a)
        assert inverse.valuation() == -a.valuation()
        for product in (mul(a, inverse), mul(inverse, a)):
            assert product.order == a.order - a.valuation()
            assert equal_to_order(product, one, product.order) == EQUAL
