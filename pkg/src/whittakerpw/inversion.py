"""Wave packets and the inverse transform.

Given ``F`` in the image of the transform, put ``Phi = zeta F / a``. The wave
packet ``f(n)``, the mean of ``Phi(z) E_z(a_n)`` over a circle ``|z| = r``,
recovers the function whose transform is ``F``. Every contour integral is
evaluated exactly by residues (:func:`whittakerpw.exactfun.circle_mean`).

Compact support of a packet is proved, not sampled. For ``n`` at or above
the expansion threshold, ``E_z(a_n) = q^-n (beta z^n + alpha z^-n)``. Once
``Phi beta`` has no nonzero poles inside the contour and ``Phi alpha`` none
outside, both contour integrals vanish beyond an explicit bound read off the
Laurent parts. Three extra lattice points on each side are evaluated as
well, and they must come out zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    InconsistentCalibration,
    NotCompactlySupported,
    NotProportional,
    NotVeryRegular,
    PoleOnContour,
    SupportNotCertified,
)
from .exactfun import (
    RationalFunction,
    as_fraction,
    as_rational_function,
    circle_mean,
    partial_fractions,
)
from .fourier import CFunctions, WhittakerFn, pw_gate, transform
from .jacquet import AsymptoticExpansion, JacquetContext, asymptotic_coefficients, whittaker_value

MARGIN = 3


@dataclass(frozen=True)
class Contour:
    """The circle ``|z| = radius``; poles of smaller modulus are enclosed."""

    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("contour radius must be positive")


@dataclass(frozen=True)
class RoundtripReport:
    input: WhittakerFn
    recovered: WhittakerFn
    calibration: Fraction
    radii: tuple[Fraction, ...]
    pw_passes: bool
    discrepancy: dict[int, tuple[Fraction, Fraction]] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.input == self.recovered

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "pw_passes": self.pw_passes,
            "calibration": str(self.calibration),
            "radii": [str(r) for r in self.radii],
            "input": self.input.to_json(),
            "recovered": self.recovered.to_json(),
            "discrepancy": [[n, str(a), str(b)] for n, (a, b) in sorted(self.discrepancy.items())],
        }


def build_phi(F, cf: CFunctions) -> RationalFunction:
    if cf.a.is_zero():
        raise DivisionByZero("a vanishes identically")
    if cf.zeta is None:
        raise ValueError("zeta has not been solved for these c-functions")
    return cf.zeta * as_rational_function(F) / cf.a


def _nonzero_pole_moduli(x: RationalFunction) -> list[Fraction]:
    return sorted({abs(p) for p in x.poles()})


def default_radius(Phi) -> Fraction:
    """Half the smallest nonzero pole modulus of ``Phi``; 1 if there is none."""
    moduli = _nonzero_pole_moduli(as_rational_function(Phi))
    return moduli[0] / 2 if moduli else Fraction(1)


def support_bound(Phi, expansion: AsymptoticExpansion, radius: Fraction) -> int:
    """Index beyond which the packet of ``Phi`` on ``|z| = radius`` vanishes."""
    up = partial_fractions(as_rational_function(Phi) * expansion.beta)
    down = partial_fractions(as_rational_function(Phi) * expansion.alpha)
    for t in up.poles + down.poles:
        if abs(t.location) == radius:
            raise PoleOnContour(f"pole {t.location} on |z| = {radius}")
    inside = [t.location for t in up.poles if abs(t.location) < radius]
    outside = [t.location for t in down.poles if abs(t.location) > radius]
    if inside or outside:
        raise NotCompactlySupported(
            f"packet has exponentially decaying tail from poles {sorted(set(inside + outside))}"
        )
    bound = max(expansion.threshold, 0)
    if not up.polynomial_part.is_zero():
        bound = max(bound, -up.polynomial_part.min_exp)
    if not down.polynomial_part.is_zero():
        bound = max(bound, down.polynomial_part.max_exp)
    return bound


def packet_value(Phi, ctx: JacquetContext, n: int, radius) -> Fraction:
    return circle_mean(as_rational_function(Phi) * whittaker_value(ctx, n), radius)


def wave_packet(
    Phi,
    ctx: JacquetContext,
    contour: Contour | None = None,
    n_range: Iterable[int] | None = None,
) -> WhittakerFn:
    """Lattice values of the wave packet of ``Phi``.

    Without ``n_range`` the support is derived by :func:`support_bound` and
    certified by :data:`MARGIN` extra zero evaluations on each side. With
    ``n_range`` the listed points are evaluated as-is and nothing is
    certified; this is the only way to sample packets that are not
    compactly supported.
    """
    Phi = as_rational_function(Phi)
    radius = (contour or Contour(default_radius(Phi))).radius
    if Phi.is_zero():
        return WhittakerFn(ctx.config, {})
    if n_range is not None:
        return WhittakerFn(ctx.config, {n: packet_value(Phi, ctx, n, radius) for n in n_range})
    bound = support_bound(Phi, asymptotic_coefficients(ctx), radius)
    values = {n: packet_value(Phi, ctx, n, radius) for n in range(-MARGIN, bound + MARGIN + 1)}
    for n in list(range(-MARGIN, 0)) + list(range(bound + 1, bound + MARGIN + 1)):
        if values[n] != 0:
            raise SupportNotCertified(f"packet is {values[n]} at n = {n}, outside [0, {bound}]")
    return WhittakerFn(ctx.config, values)


def _recover(f: WhittakerFn, cf: CFunctions, ctx: JacquetContext, weight, radius) -> WhittakerFn:
    F = transform(f, ctx, weight)
    Phi = build_phi(F, cf)
    return wave_packet(Phi, ctx, Contour(radius) if radius is not None else None)


def calibrate(ctx: JacquetContext, cf: CFunctions, radii: Sequence | None = None) -> Fraction:
    """The transform weight ``w`` making the inversion pipeline the identity.

    Fixed on ``delta_0``; then required to reproduce ``delta_1`` exactly and
    to be the same for every radius in ``radii``.
    """
    probe = WhittakerFn.delta(ctx.config, 0)
    found = []
    for r in list(radii) if radii else [None]:
        got = _recover(probe, cf, ctx, 1, r)
        if set(got.values) != {0}:
            raise NotProportional(f"delta_0 came back as {got.values}")
        found.append(1 / got[0])
    w = found[0]
    if any(x != w for x in found):
        raise InconsistentCalibration(f"weights differ across radii: {found}")
    check = WhittakerFn.delta(ctx.config, 1)
    for r in list(radii) if radii else [None]:
        if _recover(check, cf, ctx, w, r) != check:
            raise InconsistentCalibration("weight fixed on delta_0 does not invert delta_1")
    return w


def roundtrip_check(
    f: WhittakerFn,
    cf: CFunctions,
    ctx: JacquetContext,
    weight,
    radii: Sequence | None = None,
) -> RoundtripReport:
    """Transform, gate, invert at each radius; report the first mismatch if any."""
    weight = as_fraction(weight)
    F = transform(f, ctx, weight)
    gate = pw_gate(F, cf)
    Phi = build_phi(F, cf)
    if radii is None:
        radii = [default_radius(Phi), Fraction(1)]
    radii = tuple(as_fraction(r) for r in radii)
    recovered = None
    for r in radii:
        got = wave_packet(Phi, ctx, Contour(r))
        if recovered is None:
            recovered = got
        elif got != recovered:
            recovered = got
            break
    discrepancy = {}
    for n in set(f.values) | set(recovered.values):
        if f[n] != recovered[n]:
            discrepancy[n] = (f[n], recovered[n])
    return RoundtripReport(f, recovered, weight, radii, gate.passes, discrepancy)


def theorem5_rhs(Phi, cf: CFunctions) -> RationalFunction:
    """``a(z) a(1/z) Phi(z) + a(1/z) b(z) Phi(1/z)``."""
    Phi = as_rational_function(Phi)
    a_inv = cf.a.invert_var()
    return cf.a * a_inv * Phi + a_inv * cf.b * Phi.invert_var()


def is_very_regular(Phi, expansion: AsymptoticExpansion) -> bool:
    Phi = as_rational_function(Phi)
    return (Phi * expansion.beta).is_laurent() and (Phi * expansion.alpha).is_laurent()


def theorem5_check(
    Phi, cf: CFunctions, ctx: JacquetContext, weight, radius=1
) -> RationalFunction:
    """Residual between the transform of the packet of ``Phi`` and the closed formula.

    ``Phi`` must be a Laurent polynomial whose products with both
    constant-term coefficients are Laurent polynomials; otherwise the packet
    is not compactly supported and :class:`NotVeryRegular` is raised.
    """
    Phi = as_rational_function(Phi)
    if not Phi.is_laurent():
        raise NotVeryRegular(f"{Phi} is not a Laurent polynomial")
    if not is_very_regular(Phi, asymptotic_coefficients(ctx)):
        raise NotVeryRegular(f"{Phi} does not cancel the constant-term poles")
    packet = wave_packet(Phi, ctx, Contour(radius))
    return RationalFunction(transform(packet, ctx, weight)) - theorem5_rhs(Phi, cf)


@dataclass(frozen=True)
class CompositionReport:
    """Symbolic replay of ``F' = F`` from the closed formula.

    ``expanded`` is the formula with ``Phi = zeta F / a`` substituted,
    ``after_functional_eq`` uses ``b F(1/z) = a F`` and ``after_zeta`` the
    identity for ``zeta``.
    """

    expanded: RationalFunction
    after_functional_eq: RationalFunction
    after_zeta: RationalFunction
    F: RationalFunction

    @property
    def holds(self) -> bool:
        return self.expanded == self.after_functional_eq == self.after_zeta == self.F


def composition_identity(F, cf: CFunctions) -> CompositionReport:
    F = as_rational_function(F)
    a, zeta = cf.a, cf.zeta
    a_inv, zeta_inv = a.invert_var(), zeta.invert_var()
    expanded = theorem5_rhs(build_phi(F, cf), cf)
    # second term b zeta(1/z) F(1/z) becomes a zeta(1/z) F(z)
    after_fe = a_inv * zeta * F + a * zeta_inv * F
    after_zeta = F * (a_inv * zeta + a * zeta_inv)
    return CompositionReport(expanded, after_fe, after_zeta, F)
