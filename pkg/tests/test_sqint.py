from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from whittakerpw.sqint import (
    ExponentData,
    casselman_check,
    expansion_exponents,
    first_violation,
    principal_series_exponents,
)


def test_truth_table():
    assert casselman_check(ExponentData((-1,)))
    assert not casselman_check(ExponentData((0,)))
    assert not casselman_check(ExponentData((-1, 1)))
    assert casselman_check(ExponentData(()))


def test_principal_series():
    assert principal_series_exponents(0).real_parts == (0, 0)
    assert not casselman_check(principal_series_exponents(0))
    e = principal_series_exponents(Fraction(1, 2))
    assert e.real_parts == (Fraction(1, 2), Fraction(-1, 2))
    assert first_violation(e) == Fraction(1, 2)


def test_expansion_exponents():
    assert casselman_check(expansion_exponents(True, False, -1))
    assert not casselman_check(expansion_exponents(True, True, -1))


def test_parse():
    assert ExponentData.parse("-1,-1/2").real_parts == (-1, Fraction(-1, 2))
    assert ExponentData.parse("  ") == ExponentData(())


fr = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(st.lists(fr), st.lists(fr))
def test_monotone(xs, ys):
    e, extra = ExponentData(tuple(xs)), ExponentData(tuple(ys))
    if not casselman_check(e):
        assert not casselman_check(e + extra)
