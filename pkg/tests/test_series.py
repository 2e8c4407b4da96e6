import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmc.series import (FactoredRational, TruncatedSeries, expand, poincare, reconstruct_numerator,
                        render_polynomial, render_rational)

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=25)


@given(coeff_lists, st.integers(1, 9))
def test_divide_inverts_multiply(cs, d):
    s = TruncatedSeries(cs)
    assert s.times_one_minus(d).divide_one_minus(d) == s
    assert s.divide_one_minus(d).times_one_minus(d) == s


@given(coeff_lists, coeff_lists)
def test_product_commutes_and_truncates(a, b):
    n = min(len(a), len(b)) - 1
    x, y = TruncatedSeries(a).truncate(n), TruncatedSeries(b).truncate(n)
    assert x * y == y * x
    assert len(x * y) == n + 1
    assert (x * y)[0] == a[0] * b[0]


@given(coeff_lists, st.integers(0, 6))
def test_shift_moves_coefficients(cs, k):
    s = TruncatedSeries(cs)
    t = s.shift(k)
    assert list(t) == ([0] * k + cs)[: len(cs)]


@given(st.lists(st.integers(1, 8), min_size=1, max_size=4),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_reconstruction_round_trip(dens, num):
    fr = FactoredRational(tuple(num), tuple(dens))
    N = len(num) + sum(dens) + 2
    assert reconstruct_numerator(expand(fr, N), dens) == fr.numerator


def test_reconstruction_refuses_short_windows():
    s = poincare(2, 4, 12, N=10)
    assert reconstruct_numerator(s, (2, 4, 12)) is None


def test_poincare_known_values():
    assert list(poincare(2, 2, 2, N=8)) == [1, 0, 3, 0, 6, 0, 10, 0, 15]
    assert list(poincare(4, N=8)) == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert list(poincare(2, N=4, numerator=(1, 1))) == [1, 1, 1, 1, 1]


def test_parity_parts_and_first_difference():
    s = TruncatedSeries([1, 2, 3, 4])
    assert list(s.odd_part()) == [0, 2, 0, 4]
    assert list(s.even_part()) == [1, 0, 3, 0]
    assert s.first_difference(TruncatedSeries([1, 2, 0, 4])) == 2
    assert s.first_difference(s) is None


def test_rendering():
    assert render_polynomial([1, 0, -2, 1]) == "1 - 2t^2 + t^3"
    assert render_polynomial([0, 0]) == "0"
    assert render_rational(FactoredRational((1,), (2, 4))) == "1/((1-t^2)(1-t^4))"
    assert render_rational(FactoredRational((1, 0, 1), (4,))) == "(1 + t^2)/(1-t^4)"


def test_bad_denominators_rejected():
    with pytest.raises(ValueError):
        FactoredRational((1,), (0,))
