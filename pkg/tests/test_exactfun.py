import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from whittakerpw.errors import DivisionByZero, IrrationalPole, NoSolution, PoleOnContour, Underdetermined
from whittakerpw.exactfun import (
    LaurentPolynomial,
    RationalFunction,
    Z,
    arith,
    circle_mean,
    partial_fractions,
    residue_at,
    solve_linear,
    star,
    trapezoid_circle_mean,
)

F = Fraction
ONE = RationalFunction(1)


def lin(root):
    """z - root"""
    return Z - root


small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def laurents(draw, lo=-3, hi=3):
    exps = draw(st.lists(st.integers(lo, hi), max_size=4))
    return LaurentPolynomial({e: draw(small) for e in exps})


@st.composite
def rationals(draw):
    num = draw(laurents())
    roots = draw(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(lambda r: r != 0), max_size=3))
    den = LaurentPolynomial.constant(draw(st.fractions(min_value=1, max_value=3, max_denominator=3)))
    for r in roots:
        den = den * lin(r)
    return RationalFunction(num, den)


def to_sympy(x: RationalFunction):
    s = sympy.Symbol("z")
    num = sum(sympy.Rational(c.numerator, c.denominator) * s**k for k, c in x.num.terms.items())
    den = sum(sympy.Rational(c.numerator, c.denominator) * s**k for k, c in x.den.terms.items())
    return num / den, s


# --- arith ------------------------------------------------------------------

def test_monomial_product():
    assert arith(Z, Z, "mul") == Z**2


def test_self_quotient():
    assert arith(1 - Z, 1 - Z, "div") == 1


def test_quotient_canonical_form():
    x = arith(1 - F(1, 2) * Z**-1, 1 - Z**-1, "div")
    # canonical: denominator constant term 1
    assert x.den == 1 - Z
    assert x.num == F(1, 2) - Z
    assert x == RationalFunction(Z - F(1, 2), Z - 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        arith(Z, 0, "div")


@settings(max_examples=200, deadline=None)
@given(rationals(), rationals(), rationals())
def test_field_axioms(x, y, w):
    assert (x + y) + w == x + (y + w)
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x + y == y + x
    if not y.is_zero():
        assert (x / y) * y == x


def test_quotient_matches_gcd_oracle():
    rng = random.Random(5)
    for _ in range(20):
        a = LaurentPolynomial.from_dense([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])
        b = LaurentPolynomial.from_dense([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])
        if b.is_zero():
            continue
        expr, s = to_sympy(RationalFunction(a, b))
        direct = to_sympy(RationalFunction(a))[0] / to_sympy(RationalFunction(b))[0]
        assert sympy.simplify(expr - direct) == 0


# --- invert_var / star ---------------------------------------------------------

def test_invert_monomial():
    assert RationalFunction(Z**4).invert_var() == Z**-4


def test_invert_termwise():
    assert (1 - F(1, 2) * Z**-1).invert_var() == 1 - F(1, 2) * Z


def test_invert_rational_by_evaluation():
    x = RationalFunction(1 - F(1, 2) * Z**-1, 1 - Z**-1)
    inv = x.invert_var()
    assert inv == RationalFunction(1 - F(1, 2) * Z, 1 - Z)
    assert inv(3) == x(F(1, 3)) == F(1, 4)


def test_star_constant_fixed():
    assert RationalFunction(F(5, 3)).star() == F(5, 3)


def test_star_laurent_definition():
    p = LaurentPolynomial({-2: 3, 1: F(1, 7), 4: -1})
    assert p.star() == LaurentPolynomial({2: 3, -1: F(1, 7), -4: -1})


@settings(max_examples=40, deadline=None)
@given(rationals(), rationals())
def test_star_involution_and_multiplicative(x, y):
    assert star(star(x)) == x
    assert x.invert_var().invert_var() == x
    assert star(x * y) == star(x) * star(y)


@settings(max_examples=30, deadline=None)
@given(rationals(), st.floats(min_value=0.2, max_value=2.0))
def test_star_is_conjugate_on_circle(x, theta):
    z = complex(math.cos(theta), math.sin(theta))
    try:
        lhs = star(x).evaluate(z)
        rhs = x.evaluate(z).conjugate()
    except ZeroDivisionError:
        return
    assert abs(lhs - rhs) < 1e-9 * max(1, abs(rhs))


# --- partial fractions ------------------------------------------------------------

def test_partial_fractions_two_poles():
    x = RationalFunction(1, (1 - Z) * (1 - F(1, 2) * Z))
    pf = partial_fractions(x)
    # 2/(1-z) - 1/(1-z/2) = -2/(z-1) + 2/(z-2)
    assert pf.polynomial_part.is_zero()
    assert {(t.location, t.coefficients) for t in pf.poles} == {(F(1), (F(-2),)), (F(2), (F(2),))}
    assert pf.recompose() == x


def test_partial_fractions_polynomial_input():
    p = 3 * Z**2 - Z**-1
    pf = partial_fractions(p)
    assert pf.poles == ()
    assert pf.polynomial_part == p


def test_irrational_pole():
    with pytest.raises(IrrationalPole):
        partial_fractions(RationalFunction(1, 1 + Z + Z**2))


@settings(max_examples=60, deadline=None)
@given(rationals())
def test_recompose_identity(x):
    assert partial_fractions(x).recompose() == x


def test_partial_fractions_against_sympy_apart():
    rng = random.Random(11)
    for _ in range(15):
        roots = [F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3])) for _ in range(rng.randint(1, 3))]
        den = LaurentPolynomial.constant(1)
        for r in roots:
            den = den * lin(r)
        num = LaurentPolynomial({k: rng.randint(-3, 3) for k in range(-1, 3)})
        x = RationalFunction(num, den)
        expr, s = to_sympy(x)
        ours, _ = to_sympy(partial_fractions(x).recompose())
        assert sympy.simplify(sympy.apart(expr, s) - ours) == 0
        for t in partial_fractions(x).poles:
            assert sympy.residue(expr, s, sympy.Rational(t.location.numerator, t.location.denominator)) == sympy.Rational(
                t.coefficients[0].numerator, t.coefficients[0].denominator
            )


def test_repeated_pole():
    x = RationalFunction(Z, (Z - 2) ** 3)
    pf = partial_fractions(x)
    # z/(z-2)^3 = 1/(z-2)^2 + 2/(z-2)^3
    (t,) = pf.poles
    assert t.location == 2 and t.coefficients == (0, 1, 2)


# --- residues -------------------------------------------------------------------------

def test_residue_simple():
    c = F(3, 5)
    assert residue_at(RationalFunction(1, lin(c)), c) == 1


def test_residue_at_zero():
    c = F(3)
    x = RationalFunction(Z**-1, lin(c))
    assert residue_at(x, 0) == -1 / c


def test_residue_non_pole():
    assert residue_at(RationalFunction(1, lin(2)), 5) == 0


# --- circle mean ---------------------------------------------------------------------

@pytest.mark.parametrize("k", range(-4, 5))
def test_circle_mean_monomials(k):
    assert circle_mean(Z**k, 1) == (1 if k == 0 else 0)


def test_circle_mean_enclosed_pole_cancels():
    c = F(1, 3)
    x = RationalFunction(1, lin(c))
    assert circle_mean(x, 1) == 0
    assert abs(trapezoid_circle_mean(x, 1.0) - 0) < 1e-9


def test_circle_mean_outside_pole():
    c = F(3)
    x = RationalFunction(1, lin(c))
    assert circle_mean(x, 1) == -1 / c
    assert abs(trapezoid_circle_mean(x, 1.0) - float(-1 / c)) < 1e-9


def test_pole_on_contour():
    with pytest.raises(PoleOnContour):
        circle_mean(RationalFunction(1, lin(-2)), 2)


def test_circle_mean_radius_invariance():
    x = RationalFunction(Z**2 + 1, lin(F(1, 2)) * lin(3))
    assert circle_mean(x, F(3, 4)) == circle_mean(x, 2)
    assert circle_mean(x, F(1, 4)) == circle_mean(x, F(1, 3))


# --- solve_linear -----------------------------------------------------------------------

def test_identity_system():
    b = [F(1, 2), F(-3), F(7, 9)]
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    assert solve_linear(eye, b) == b


def test_small_system():
    assert solve_linear([[1, 1], [1, -1]], [2, 0]) == [1, 1]


def test_underdetermined():
    with pytest.raises(Underdetermined) as info:
        solve_linear([[1, 1], [2, 2]], [1, 2])
    assert info.value.nullity == 1


def test_inconsistent():
    with pytest.raises(NoSolution):
        solve_linear([[1, 1], [2, 2]], [1, 3])


def test_solve_against_sympy():
    rng = random.Random(3)
    for _ in range(20):
        m = [[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)] for _ in range(4)]
        b = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
        M = sympy.Matrix(m)
        if M.det() == 0:
            continue
        ref = M.LUsolve(sympy.Matrix(b))
        assert [sympy.Rational(x.numerator, x.denominator) for x in solve_linear(m, b)] == list(ref)


# --- serialization / text --------------------------------------------------------------

def test_canonical_string():
    assert str(1 - F(1, 2) * Z**-1) == "1 - 1/2*z^-1"


@settings(max_examples=50, deadline=None)
@given(rationals())
def test_json_roundtrip(x):
    assert RationalFunction.from_json(x.to_json()) == x
    assert LaurentPolynomial.from_json(x.num.to_json()) == x.num
