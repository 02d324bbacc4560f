"""Square-integrability test for Whittaker functionals by constant-term exponents.

An exponent is stored by its real part, measured so that the open negative
cone is ``x < 0``. A functional is square integrable iff every exponent of
every proper constant term lies strictly inside that cone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactfun import as_fraction


@dataclass(frozen=True)
class ExponentData:
    real_parts: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "real_parts", tuple(as_fraction(x) for x in self.real_parts))

    def __add__(self, other: "ExponentData") -> "ExponentData":
        return ExponentData(self.real_parts + other.real_parts)

    @classmethod
    def parse(cls, text: str) -> "ExponentData":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(as_fraction(t) for t in text.split(",")))


def first_violation(e: ExponentData) -> Fraction | None:
    return next((x for x in e.real_parts if x >= 0), None)


def casselman_check(e: ExponentData) -> bool:
    return first_violation(e) is None


def principal_series_exponents(z_modulus_log) -> ExponentData:
    """Exponents ``[t, -t]`` of the spherical constant term at ``|z| = q^t``.

    Both Weyl conjugates occur because the expansion has a ``z^n`` and a
    ``z^-n`` term.
    """
    t = as_fraction(z_modulus_log)
    return ExponentData((t, -t))


def expansion_exponents(beta_nonzero: bool, alpha_nonzero: bool, t) -> ExponentData:
    """Exponents carried by the nonzero terms of a two-term constant term."""
    t = as_fraction(t)
    parts: Sequence[Fraction] = [x for x, keep in ((t, beta_nonzero), (-t, alpha_nonzero)) if keep]
    return ExponentData(tuple(parts))
