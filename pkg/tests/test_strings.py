from fractions import Fraction

import pytest

from heckeq.errors import InvalidIndex
from heckeq.services.series import EQUAL, equal_to_order
from heckeq.services.strings import (
    Corollary,
    StringIndex,
    StringMethod,
    corollary_rhs,
    multiplicities,
    prop51_sides,
    s_exponent,
    split_rhs,
    string_C_triple,
    string_function,
    string_KP_lattice,
    string_S_hecke,
)
from tests.oracles import partition_counts

F = Fraction
ORDER = 8


@pytest.mark.parametrize("level, m, l", [(0, 0, 0), (2, 0, 3), (2, 1, 0), (3, 0, -1)])
def test_invalid_indices(level, m, l):  # noqa: E741
    with pytest.raises(InvalidIndex):
        StringIndex(level, m, l)


@pytest.mark.parametrize(
    "m, expected",
    [(2, 2), (-2, 2), (6, 2), (10, 2), (4, 4), (0, 0), (8, 0)],
)
def test_canonical_reduces_m(m, expected):
    assert StringIndex(4, m, 0).canonical() == StringIndex(4, expected, 0)


def test_in_range_keeps_m_up_to_twice_the_level():
    assert StringIndex(4, 6, 0).in_range() == StringIndex(4, 6, 0)
    assert StringIndex(4, -2, 0).in_range() == StringIndex(4, 2, 0)


def test_s_exponent():
    assert s_exponent(StringIndex(1, 0, 0)) == F(-1, 24)
    assert StringIndex(4, 2, 0).s_exponent() == F(-1, 8) + F(1, 24) - F(1, 4)


@pytest.mark.parametrize("m, l", [(0, 0), (1, 1)])
def test_level_one_multiplicities_are_partition_numbers(m, l):  # noqa: E741
    assert multiplicities(StringIndex(1, m, l), ORDER) == partition_counts(ORDER)


@pytest.mark.parametrize("idx", [StringIndex(4, 2, 0), StringIndex(3, 1, 1), StringIndex(6, 5, 1)], ids=str)
def test_multiplicities_are_nonnegative_integers(idx):
    counts = multiplicities(idx, ORDER)
    assert len(counts) == ORDER + 1
    assert all(c >= 0 for c in counts)


@pytest.mark.parametrize("N, m, l", [(1, 0, 0), (2, 1, 1), (4, 2, 0), (4, 2, 2), (6, 5, 1)])
def test_three_evaluations_agree(N, m, l):  # noqa: E741
    idx = StringIndex(N, m, l)
    triple = string_C_triple(idx, ORDER)
    assert equal_to_order(triple, string_S_hecke(idx, ORDER), ORDER) == EQUAL
    assert equal_to_order(triple, string_KP_lattice(idx, ORDER), ORDER) == EQUAL


@pytest.mark.parametrize("N, m, l", [(2, 1, 1), (4, 2, 0), (6, 5, 1)])
def test_symmetries_of_hecke_form(N, m, l):  # noqa: E741
    base = string_S_hecke(StringIndex(N, m, l), ORDER)
    for image in (StringIndex(N, -m, l), StringIndex(N, 2 * N - m, l), StringIndex(N, N - m, N - l)):
        other = string_S_hecke(image, ORDER, reduce=False)
        assert equal_to_order(base, other, ORDER) == EQUAL


def test_string_function_dispatch():
    idx = StringIndex(2, 1, 1)
    assert string_function(idx, StringMethod.TRIPLE, ORDER) == string_C_triple(idx, ORDER)
    assert string_function(idx, "lattice", ORDER) == string_KP_lattice(idx, ORDER)


@pytest.mark.parametrize("K, m, l", [(1, 1, 1), (2, 0, 0), (2, 2, 0)])
@pytest.mark.parametrize("sign", [1, -1])
def test_even_level_split(K, m, l, sign):  # noqa: E741
    N = 2 * K
    lhs = string_C_triple(StringIndex(N, m, l), ORDER)
    other = string_C_triple(StringIndex(N, N - m, l), ORDER)
    lhs = lhs + other if sign == 1 else lhs - other
    assert equal_to_order(lhs, split_rhs(K, m, l, sign, ORDER), ORDER) == EQUAL


def test_split_rejects_bad_sign():
    with pytest.raises(ValueError):
        split_rhs(1, 1, 1, 0, ORDER)


@pytest.mark.parametrize("K, value", [(1, 1), (2, 0), (2, 2), (3, 1)])
def test_corollary_cor2(K, value):
    lhs = string_C_triple(StringIndex(2 * K, value, K), ORDER)
    assert equal_to_order(lhs, corollary_rhs(Corollary.COR2, K, value, ORDER), ORDER) == EQUAL


def test_corollary_parity_check():
    with pytest.raises(InvalidIndex):
        corollary_rhs(Corollary.COR3, 2, 1, ORDER)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("K, d, e", [(1, 1, 1), (5, 3, 2), (8, 1, 6)])
def test_double_sum_conversion(K, d, e, sign):
    lhs, rhs = prop51_sides(K, d, e, sign, ORDER)
    assert equal_to_order(lhs, rhs, ORDER) == EQUAL
