"""Exact univariate rational functions in ``z`` over the rationals.

Two value types are provided. :class:`LaurentPolynomial` is a finite sum
``sum c_k z^k`` with ``k`` any integer. :class:`RationalFunction` is a quotient
``N / D`` with ``N`` a Laurent polynomial and ``D`` an ordinary polynomial with
``D(0) = 1``; pure powers of ``z`` always live in ``N``. With that canonical
form two rational functions are equal iff their stored data are equal.

Scalars are :class:`fractions.Fraction`. Everything is immutable.

Poles are restricted to rational points. Partial fractions, residues and
circle means raise :class:`~whittakerpw.errors.IrrationalPole` as soon as a
denominator has an irreducible factor of degree > 1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import sympy

from .errors import (
    DivisionByZero,
    IrrationalPole,
    NoSolution,
    PoleOnContour,
    Underdetermined,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# dense polynomial helpers: ascending coefficient lists of Fractions, no
# trailing zeros, [] is the zero polynomial

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p, r):
    out = [ZERO] * max(len(p), len(r))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(r):
        out[i] += c
    return _trim(out)


def _pscale(p, c):
    if c == 0:
        return []
    return [c * x for x in p]


def _pmul(p, r):
    if not p or not r:
        return []
    out = [ZERO] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(r):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, d):
    if not d:
        raise DivisionByZero("polynomial division by zero")
    p = list(p)
    if len(p) < len(d):
        return [], p
    lead = d[-1]
    quot = [ZERO] * (len(p) - len(d) + 1)
    for shift in range(len(p) - len(d), -1, -1):
        c = p[shift + len(d) - 1] / lead
        quot[shift] = c
        if c:
            for i, dc in enumerate(d):
                p[shift + i] -= c * dc
    return _trim(quot), _trim(p[: len(d) - 1])


def _pmonic(p):
    return [c / p[-1] for c in p] if p else []


def _pgcd(p, r):
    p, r = list(p), list(r)
    while r:
        _, rem = _pdivmod(p, r)
        p, r = r, rem
    return _pmonic(p)


def _peval(p, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _taylor_shift(p, a):
    """Coefficients of ``p(a + h)`` in ``h``."""
    out = list(p)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return _trim(out)


def _series_div(num, den, order):
    """First ``order`` power-series coefficients of num/den (den[0] != 0)."""
    out = []
    rem = list(num) + [ZERO] * max(0, order - len(num))
    for k in range(order):
        c = rem[k] / den[0]
        out.append(c)
        if c:
            for i, dc in enumerate(den):
                if k + i < len(rem):
                    rem[k + i] -= c * dc
    return out


def _rational_roots(poly):
    """Rational roots with multiplicity, plus the cofactor left over."""
    p = _trim(list(poly))
    roots: dict[Fraction, int] = {}
    while len(p) > 1 and p[0] == 0:
        roots[ZERO] = roots.get(ZERO, 0) + 1
        p = p[1:]
    while len(p) > 1:
        lcm = math.lcm(*(c.denominator for c in p))
        ints = [int(c * lcm) for c in p]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        found = None
        for s in sympy.divisors(abs(ints[-1])):
            for r in sympy.divisors(abs(ints[0])):
                for cand in (Fraction(r, s), Fraction(-r, s)):
                    if _peval(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        p, _ = _pdivmod(p, [-found, ONE])
    return roots, p


# ---------------------------------------------------------------------------

class LaurentPolynomial:
    """Finite Laurent series ``sum c_k z^k`` with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                clean[int(k)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPolynomial":
        return cls({k: c})

    @classmethod
    def constant(cls, c) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def from_dense(cls, coeffs: Sequence, shift: int = 0) -> "LaurentPolynomial":
        return cls({shift + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def span(self) -> int:
        """Number of coefficient slots from lowest to highest exponent."""
        return 0 if self.is_zero() else self.max_exp - self.min_exp + 1

    def coefficient(self, k: int) -> Fraction:
        return self._terms.get(k, ZERO)

    def to_dense(self) -> tuple[int, list]:
        """``(shift, coeffs)`` with ``self == z^shift * sum coeffs[i] z^i``."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exp, self.max_exp
        return lo, [self._terms.get(k, ZERO) for k in range(lo, hi + 1)]

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def invert_var(self) -> "LaurentPolynomial":
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def star(self) -> "LaurentPolynomial":
        # conjugation on |z| = 1; coefficients are real so only z -> 1/z remains
        return LaurentPolynomial({-e: c.conjugate() for e, c in self._terms.items()})

    def evaluate(self, z):
        if isinstance(z, (int, Fraction)):
            z = as_fraction(z)
            if z == 0 and self._terms and self.min_exp < 0:
                raise DivisionByZero("negative power evaluated at 0")
            return sum((c * z**k for k, c in self._terms.items()), ZERO)
        return sum(complex(c) * z**k for k, c in self._terms.items())

    __call__ = evaluate

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                out[i + j] = out.get(i + j, ZERO) + a * b
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1:
                (k, c), = self._terms.items()
                return LaurentPolynomial({k * n: c**n})
            raise ValueError("negative power of a non-monomial")
        out = LaurentPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        return RationalFunction(other) / RationalFunction(self)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # serialization --------------------------------------------------------
    def to_json(self) -> list:
        return [[k, str(c)] for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPolynomial":
        if not isinstance(data, list):
            raise TypeError("Laurent polynomial JSON must be a list of [exponent, rational]")
        terms: dict[int, Fraction] = {}
        for item in data:
            if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], int):
                raise TypeError(f"bad Laurent term {item!r}")
            k = item[0]
            terms[k] = terms.get(k, ZERO) + as_fraction(item[1])
        return cls(terms)


Z = LaurentPolynomial.monomial(1)


def _split_laurent(p: LaurentPolynomial) -> tuple[int, list]:
    """``p = z^e * poly`` with ``poly(0) != 0``."""
    return p.to_dense()


class RationalFunction:
    """``num / den`` in canonical form.

    ``num`` is a Laurent polynomial, ``den`` a polynomial whose constant term
    is 1 and which is coprime to ``num``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _to_laurent(num)
        den = _to_laurent(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = LaurentPolynomial.constant(1)
            self._hash = None
            return
        e_n, n = _split_laurent(num)
        e_d, d = _split_laurent(den)
        g = _pgcd(n, d)
        if len(g) > 1:
            n, _ = _pdivmod(n, g)
            d, _ = _pdivmod(d, g)
        c = d[0]
        self.num = LaurentPolynomial.from_dense([x / c for x in n], e_n - e_d)
        self.den = LaurentPolynomial.from_dense([x / c for x in d])
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.max_exp == 0

    def as_laurent(self) -> LaurentPolynomial:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_constant(self) -> bool:
        return self.is_laurent() and (self.num.is_zero() or (self.num.min_exp == self.num.max_exp == 0))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coefficient(0)

    def invert_var(self) -> "RationalFunction":
        return RationalFunction(self.num.invert_var(), self.den.invert_var())

    def star(self) -> "RationalFunction":
        # conjugate-coefficient hook; rational coefficients make this invert_var
        return RationalFunction(self.num.star(), self.den.star())

    def evaluate(self, z):
        d = self.den.evaluate(z)
        if d == 0:
            raise DivisionByZero(f"pole at z = {z}")
        return self.num.evaluate(z) / d

    __call__ = evaluate

    def poles(self) -> dict[Fraction, int]:
        """Nonzero poles with multiplicity (a pole at 0 lives in ``num``)."""
        roots, rest = _rational_roots(self.den.to_dense()[1])
        if len(rest) > 1:
            raise IrrationalPole(f"denominator factor without rational roots in {self}")
        return roots

    def pole_order_at_zero(self) -> int:
        return 0 if self.num.is_zero() else max(0, -self.num.min_exp)

    # arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPolynomial) or (
            isinstance(other, (int, Fraction, str)) and not isinstance(other, bool)
        ):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(1) / (self ** (-n))
        out = RationalFunction(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        if not isinstance(data, dict) or set(data) != {"num", "den"}:
            raise TypeError("rational function JSON must be {num: ..., den: ...}")
        return cls(LaurentPolynomial.from_json(data["num"]), LaurentPolynomial.from_json(data["den"]))


def _to_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, RationalFunction):
        return x.as_laurent()
    return LaurentPolynomial.constant(as_fraction(x))


def as_rational_function(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


def arith(x, y, op: str) -> RationalFunction:
    x, y = as_rational_function(x), as_rational_function(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def invert_var(x):
    return x.invert_var()


def star(x):
    return x.star()


# ---------------------------------------------------------------------------
# partial fractions and residues

@dataclass(frozen=True)
class PoleTerm:
    """``sum_j coefficients[j-1] / (z - location)^j`` for j = 1..order."""

    location: Fraction
    order: int
    coefficients: tuple[Fraction, ...]

    def as_rational_function(self) -> RationalFunction:
        lin = LaurentPolynomial({0: -self.location, 1: 1})
        out = RationalFunction(0)
        for j, c in enumerate(self.coefficients, start=1):
            if c:
                out = out + RationalFunction(LaurentPolynomial.constant(c), lin**j)
        return out


@dataclass(frozen=True)
class PartialFractions:
    polynomial_part: LaurentPolynomial
    poles: tuple[PoleTerm, ...]

    def recompose(self) -> RationalFunction:
        out = RationalFunction(self.polynomial_part)
        for term in self.poles:
            out = out + term.as_rational_function()
        return out


def partial_fractions(x) -> PartialFractions:
    """Decompose into a Laurent part plus principal parts at nonzero poles.

    A pole at ``z = 0`` is absorbed by the negative exponents of the Laurent
    part.
    """
    x = as_rational_function(x)
    if x.is_laurent():
        return PartialFractions(x.num, ())
    roots = x.poles()
    e, n = _split_laurent(x.num)
    _, d = _split_laurent(x.den)
    lead = d[-1]
    terms = []
    for p, m in sorted(roots.items()):
        # local factor G = num / (den / (z - p)^m), expanded at p to order m
        cof = [lead]
        for r, k in roots.items():
            if r != p:
                for _ in range(k):
                    cof = _pmul(cof, [-r, ONE])
        top, bottom = list(n), cof
        if e >= 0:
            top = _pmul(top, [ZERO] * e + [ONE])
        else:
            bottom = _pmul(bottom, [ZERO] * (-e) + [ONE])
        series = _series_div(_taylor_shift(top, p), _taylor_shift(bottom, p), m)
        coeffs = tuple(series[m - j] for j in range(1, m + 1))
        terms.append(PoleTerm(p, m, coeffs))
    rest = x
    for t in terms:
        rest = rest - t.as_rational_function()
    if not rest.is_laurent():
        raise AssertionError(f"partial fraction remainder is not Laurent: {rest}")
    return PartialFractions(rest.num, tuple(terms))


def residue_at(x, p) -> Fraction:
    """Coefficient of ``(z - p)^-1`` in the local expansion of ``x``."""
    p = as_fraction(p)
    pf = partial_fractions(x)
    if p == 0:
        return pf.polynomial_part.coefficient(-1)
    for t in pf.poles:
        if t.location == p:
            return t.coefficients[0]
    return ZERO


def circle_mean(x, r) -> Fraction:
    """``(2 pi i)^-1`` times the integral of ``x(z) dz / z`` over ``|z| = r``."""
    r = as_fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    y = as_rational_function(x) * LaurentPolynomial.monomial(-1)
    pf = partial_fractions(y)
    total = pf.polynomial_part.coefficient(-1)
    for t in pf.poles:
        if abs(t.location) == r:
            raise PoleOnContour(f"pole {t.location} lies on |z| = {r}")
        if abs(t.location) < r:
            total += t.coefficients[0]
    return total


def trapezoid_circle_mean(x, r: float, points: int = 4096) -> complex:
    """Floating-point quadrature of the same integral; used as a cross-check."""
    x = as_rational_function(x)
    acc = 0j
    for k in range(points):
        acc += x.evaluate(r * cmath.exp(2j * math.pi * k / points))
    return acc / points


# ---------------------------------------------------------------------------
# exact linear algebra

def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly.

    Rows are scaled to integers and reduced with Bareiss' fraction-free
    elimination; the echelon form is then back-substituted. Raises
    :class:`NoSolution` for inconsistent systems and :class:`Underdetermined`
    (carrying a particular solution) when free variables remain.
    """
    rows = len(matrix)
    if rows != len(rhs):
        raise ValueError("matrix and right-hand side have different lengths")
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        raise ValueError("ragged matrix")
    aug = []
    for row, b in zip(matrix, rhs):
        vals = [as_fraction(v) for v in row] + [as_fraction(b)]
        lcm = math.lcm(*(v.denominator for v in vals))
        aug.append([int(v * lcm) for v in vals])

    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols + 1):
                aug[i][j] = (aug[r][c] * aug[i][j] - aug[i][c] * aug[r][j]) // prev
            aug[i][c] = 0
        prev = aug[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            raise NoSolution("inconsistent linear system")

    x = [ZERO] * cols
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(aug[i][cols])
        for j in range(c + 1, cols):
            acc -= aug[i][j] * x[j]
        x[c] = acc / aug[i][c]

    for row, b in zip(matrix, rhs):
        if sum((as_fraction(a) * v for a, v in zip(row, x)), ZERO) != as_fraction(b):
            raise AssertionError("substitution check failed")
    nullity = cols - len(pivots)
    if nullity:
        raise Underdetermined(x, nullity)
    return x


def laurent_coefficient_system(
    columns: Iterable[LaurentPolynomial], target: LaurentPolynomial
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Turn ``sum_k c_k columns[k] == target`` into a linear system, one row per exponent."""
    columns = list(columns)
    exps = set(target.terms)
    for col in columns:
        exps |= set(col.terms)
    order = sorted(exps)
    matrix = [[col.coefficient(e) for col in columns] for e in order]
    rhs = [target.coefficient(e) for e in order]
    return matrix, rhs
