"""Desk model of SL(2, F) for a non-archimedean local field F.

Only the residue-field cardinality ``q`` enters. Conventions:

* ``a_n = diag(w^n, w^-n)`` for a uniformizer ``w``; the torus lattice is Z.
* The simple root is ``alpha(a_n) = w^(2n)``, so ``|alpha(a_n)| = q^(-2n)``.
* The standard Borel is upper triangular; the opposite one lower triangular.
* The additive character is trivial on the integers O and nontrivial on
  ``w^-1 O``; additive Haar measure gives O volume 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exactfun import as_fraction


@dataclass(frozen=True)
class PadicConfig:
    q: Fraction = Fraction(2)
    max_shell_guard: int = 64

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        if self.q <= 1:
            raise ValueError("q must exceed 1")
        if int(self.max_shell_guard) != self.max_shell_guard or self.max_shell_guard < 8:
            raise ValueError("max_shell_guard must be an integer >= 8")

    def to_json(self) -> dict:
        return {"q": str(self.q), "max_shell_guard": self.max_shell_guard}

    @classmethod
    def from_json(cls, data: dict) -> "PadicConfig":
        return cls(q=as_fraction(data["q"]), max_shell_guard=int(data.get("max_shell_guard", 64)))


@dataclass(frozen=True, order=True)
class TorusPoint:
    """The element ``a_n``; the group law is addition of ``n``."""

    n: int

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.n + other.n)

    def inverse(self) -> "TorusPoint":
        return TorusPoint(-self.n)


@dataclass(frozen=True)
class IwasawaParts:
    """Borel-times-K factorization of a unipotent element.

    ``torus_valuation`` is the ``n`` with Borel factor in ``N' a_n`` where
    ``N'`` is the unipotent radical of the Borel opposite to the one the
    element lives in; it is 0 when the element already lies in K.
    """

    in_maximal_compact: bool
    torus_valuation: int


Side = Literal["upper", "lower"]
Borel = Literal["standard", "opposite"]


def modulus_delta(cfg: PadicConfig, n: int, borel: Borel = "standard") -> Fraction:
    """Modulus character of the upper (standard) or lower (opposite) Borel at ``a_n``."""
    if borel == "standard":
        return cfg.q ** (-2 * n)
    if borel == "opposite":
        return cfg.q ** (2 * n)
    raise ValueError(f"unknown Borel {borel!r}")


def modulus_delta_sqrt(cfg: PadicConfig, n: int, borel: Borel = "standard") -> Fraction:
    """Square root of :func:`modulus_delta`; exact since the modulus is an even power."""
    return cfg.q ** (-n) if borel == "standard" else cfg.q**n


def shell_volume(cfg: PadicConfig, k: int) -> Fraction:
    """Haar volume of ``{x : val(x) = k}``."""
    q = cfg.q
    return q ** (-k) * (1 - 1 / q)


def psi_shell_integral(cfg: PadicConfig, k: int) -> Fraction:
    """Integral of the additive character over ``{x : val(x) = k}``.

    The character sums to zero over every coset of O inside ``w^-1 O`` except
    O itself, so the shell ``k = -1`` integrates to ``0 - 1`` and deeper
    negative shells to ``0 - 0``.
    """
    if k >= 0:
        return shell_volume(cfg, k)
    if k == -1:
        return Fraction(-1)
    return Fraction(0)


def iwasawa_unipotent(val_x: int, side: Side) -> IwasawaParts:
    """Factor ``u(x)`` (upper) or its transpose (lower) as Borel times K.

    For ``|x| > 1``::

        [[1, x], [0, 1]] = [[x, 0], [1, 1/x]] . [[1/x, 1], [-1, 0]]
                         = (lower unipotent) . diag(x, 1/x) . k
        [[1, 0], [x, 1]] = [[1, 1/x], [0, 1]] . diag(1/x, x) . [[0, -1], [1, 1/x]]

    so the torus part is ``a_{val x}`` on the upper side and ``a_{-val x}``
    on the lower side.
    """
    if val_x >= 0:
        return IwasawaParts(True, 0)
    if side == "upper":
        return IwasawaParts(False, val_x)
    if side == "lower":
        return IwasawaParts(False, -val_x)
    raise ValueError(f"unknown side {side!r}")


def uminus_measure_constant(cfg: PadicConfig) -> Fraction:
    """Scale ``c`` making ``c dx`` integrate the modulus of the Iwasawa torus part to 1.

    ``int max(1, |x|)^-2 dx = 1 + q^-1``.
    """
    return 1 / (1 + 1 / cfg.q)


def uminus_measure_series(cfg: PadicConfig, depth: int) -> Fraction:
    """Truncated shell series for ``int delta(m(u(x))) dx`` using ``depth`` shells.

    The shells are O itself and ``val x = -1, ..., -(depth - 1)``; the omitted
    tail is exactly ``q^-depth``.
    """
    total = Fraction(1)
    for k in range(1, depth):
        t = iwasawa_unipotent(-k, "upper").torus_valuation
        total += modulus_delta(cfg, t, "opposite") * shell_volume(cfg, -k)
    return total
