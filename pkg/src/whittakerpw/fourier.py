"""Fourier-Whittaker transform of K-invariant functions and its image.

A right-K-invariant Whittaker function is determined by its values on the
torus lattice, so :class:`WhittakerFn` is just a finite map ``n -> f(a_n)``.
Its transform is the Laurent polynomial

    F(z) = w * sum_n q^(2n) f(n) conj(E_z(a_n)),

where ``q^(2n) = delta_{P_0}(a_n)^-1`` is the volume weight of ``U_0 a_n K``
and conjugation on the unit circle is ``z -> 1/z``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DivisionByZero, NoSolutionUpToDegree, Underdetermined, NoSolution
from .exactfun import (
    LaurentPolynomial,
    RationalFunction,
    as_fraction,
    laurent_coefficient_system,
    solve_linear,
)
from .jacquet import CFunctions, JacquetContext, c_functions, whittaker_value
from .padic import PadicConfig, modulus_delta


@dataclass(frozen=True)
class WhittakerFn:
    """Finitely supported function on the torus lattice (zeros are dropped)."""

    config: PadicConfig
    values: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(n): as_fraction(v) for n, v in dict(self.values).items()}
        object.__setattr__(self, "values", {n: v for n, v in sorted(clean.items()) if v != 0})

    @property
    def support(self) -> tuple[int, int] | None:
        if not self.values:
            return None
        keys = list(self.values)
        return keys[0], keys[-1]

    def __getitem__(self, n: int) -> Fraction:
        return self.values.get(n, Fraction(0))

    def __add__(self, other: "WhittakerFn") -> "WhittakerFn":
        out = dict(self.values)
        for n, v in other.values.items():
            out[n] = out.get(n, Fraction(0)) + v
        return WhittakerFn(self.config, out)

    def scale(self, c) -> "WhittakerFn":
        c = as_fraction(c)
        return WhittakerFn(self.config, {n: c * v for n, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, WhittakerFn):
            return NotImplemented
        return self.config.q == other.config.q and self.values == other.values

    def __hash__(self):
        return hash((self.config.q, tuple(self.values.items())))

    def to_json(self) -> dict:
        return {"q": str(self.config.q), "values": [[n, str(v)] for n, v in self.values.items()]}

    @classmethod
    def from_json(cls, data, config: PadicConfig | None = None) -> "WhittakerFn":
        if not isinstance(data, dict) or "values" not in data:
            raise TypeError("WhittakerFn JSON needs a 'values' list")
        if config is None:
            config = PadicConfig(q=as_fraction(data["q"]))
        values: dict[int, Fraction] = {}
        for item in data["values"]:
            if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], int):
                raise TypeError(f"bad value entry {item!r}")
            values[item[0]] = values.get(item[0], Fraction(0)) + as_fraction(item[1])
        return cls(config, values)

    @classmethod
    def delta(cls, config: PadicConfig, n: int, value=1) -> "WhittakerFn":
        return cls(config, {n: value})


@dataclass(frozen=True)
class PWReport:
    is_laurent_polynomial: bool
    functional_eq_residual: RationalFunction

    @property
    def passes(self) -> bool:
        return self.is_laurent_polynomial and self.functional_eq_residual.is_zero()

    def to_json(self) -> dict:
        return {
            "passes": self.passes,
            "is_laurent_polynomial": self.is_laurent_polynomial,
            "residual": self.functional_eq_residual.to_json(),
            "residual_text": str(self.functional_eq_residual),
        }


def transform(f: WhittakerFn, ctx: JacquetContext, weight=1) -> LaurentPolynomial:
    if f.config.q != ctx.q:
        raise ValueError(f"function has q = {f.config.q}, context has q = {ctx.q}")
    out = LaurentPolynomial()
    for n, v in f.values.items():
        lattice_weight = 1 / modulus_delta(ctx.config, n, "standard")
        out = out + whittaker_value(ctx, n).star() * (lattice_weight * v)
    return out * as_fraction(weight)


def pw_gate(F, cf: CFunctions) -> PWReport:
    """Check polynomiality and ``a(z) F(z) = b(z) F(1/z)``."""
    F = F if isinstance(F, RationalFunction) else RationalFunction(F)
    residual = cf.a * F - cf.b * F.invert_var()
    return PWReport(F.is_laurent(), residual)


def _zeta_system(cf: CFunctions, degree: int):
    a = cf.a
    a_inv = a.invert_var()
    # clear denominators: a(1/z) zeta(z) + a(z) zeta(1/z) = 1 times den(a) den(a(1/z))
    common = a.den * a_inv.den
    left = a_inv.num * a.den
    right = a.num * a_inv.den
    columns = [left.shift(k) + right.shift(-k) for k in range(degree + 1)]
    return laurent_coefficient_system(columns, common)


def solve_zeta(cf: CFunctions, max_degree: int = 16) -> RationalFunction:
    """Lowest-degree polynomial ``zeta`` with ``a(1/z) zeta(z) + a(z) zeta(1/z) = 1``."""
    if cf.a.is_zero():
        raise DivisionByZero("a vanishes identically")
    for degree in range(max_degree + 1):
        matrix, rhs = _zeta_system(cf, degree)
        try:
            coeffs = solve_linear(matrix, rhs)
        except NoSolution:
            continue
        except Underdetermined as exc:
            coeffs = exc.particular
        zeta = RationalFunction(LaurentPolynomial.from_dense(coeffs))
        if zeta_residual(cf.a, zeta).is_zero():
            return zeta
        raise AssertionError("zeta failed its substitution check")
    raise NoSolutionUpToDegree(max_degree)


def zeta_residual(a: RationalFunction, zeta: RationalFunction) -> RationalFunction:
    return a.invert_var() * zeta + a * zeta.invert_var() - 1


def build_cfunctions(ctx: JacquetContext, zeta_max_degree: int = 16) -> CFunctions:
    cf = c_functions(ctx)
    return cf.with_zeta(solve_zeta(cf, zeta_max_degree))
