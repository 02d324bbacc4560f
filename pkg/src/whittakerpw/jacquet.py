"""Shell-by-shell evaluation of Jacquet and intertwining integrals.

Everything here is computed from the desk model in :mod:`whittakerpw.padic`
without quoting closed forms. The representation is ``pi_z``, induced from
the lower Borel ``P`` by the unramified character ``a_n -> z^n``, with the
K-fixed vector ``v`` normalized by ``v(1) = 1``. Integrals over a unipotent
group are split into valuation shells. Shells where the additive character
is nontrivial are summed one at a time. Beyond them the integrand is a
geometric sequence, summed in closed form inside its region of convergence
and then continued as a rational function.

Measures are additive Haar with ``vol(O) = 1``. The normalizing constant of
``padic.uminus_measure_constant`` is deliberately *not* folded in; the single
calibration scalar of :mod:`whittakerpw.inversion` absorbs all such constants.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .errors import GuardExceeded, InconsistentRatio, NoExpansion, ProbeVanishes
from .exactfun import LaurentPolynomial, RationalFunction, as_rational_function
from .padic import (
    PadicConfig,
    iwasawa_unipotent,
    modulus_delta_sqrt,
    psi_shell_integral,
    shell_volume,
)

_GEOMETRIC_PROBE = 4


class WhittakerTable:
    """Thread-safe cache ``n -> E_z(a_n)``; entries are inserted fully built."""

    def __init__(self):
        self._values: dict[int, LaurentPolynomial] = {}
        self._lock = threading.Lock()

    def get(self, n: int) -> LaurentPolynomial | None:
        with self._lock:
            return self._values.get(n)

    def put(self, n: int, value: LaurentPolynomial) -> LaurentPolynomial:
        with self._lock:
            return self._values.setdefault(n, value)

    def __len__(self):
        with self._lock:
            return len(self._values)


@dataclass(frozen=True)
class JacquetContext:
    config: PadicConfig = field(default_factory=PadicConfig)
    window: int = 10
    table: WhittakerTable = field(default_factory=WhittakerTable, compare=False, repr=False)

    @property
    def q(self) -> Fraction:
        return self.config.q

    @classmethod
    def for_q(cls, q, **kw) -> "JacquetContext":
        guard = kw.pop("max_shell_guard", 64)
        return cls(PadicConfig(q=q, max_shell_guard=guard), **kw)


@dataclass(frozen=True)
class CFunctions:
    """Spectral data of the unramified principal series.

    ``j_constant`` is the recorded scalar with ``j = j_constant * a(z) a(1/z)``.
    """

    q: Fraction
    a: RationalFunction
    b: RationalFunction
    j: RationalFunction
    j_constant: Fraction
    zeta: RationalFunction | None = None

    def with_zeta(self, zeta) -> "CFunctions":
        return replace(self, zeta=as_rational_function(zeta))

    def to_json(self) -> dict:
        out = {
            "q": str(self.q),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "j": self.j.to_json(),
            "j_over_a_a_inv": str(self.j_constant),
        }
        if self.zeta is not None:
            out["zeta"] = self.zeta.to_json()
        return out


# ---------------------------------------------------------------------------

def _char(q: Fraction, t: int, sign: int) -> LaurentPolynomial:
    """``delta_P^{1/2} chi^{sign}`` at ``a_t`` for the lower Borel ``P``."""
    return LaurentPolynomial.monomial(sign * t, q**t)


def _geometric_tail(term: Callable[[int], object], start: int) -> RationalFunction:
    """Sum ``term(k)`` over ``k >= start`` for a sequence that is geometric from ``start``.

    The ratio is read off the first terms and checked on a few more before
    the closed form ``first / (1 - ratio)`` is used.
    """
    ts = [as_rational_function(term(start + i)) for i in range(_GEOMETRIC_PROBE + 1)]
    if ts[0].is_zero():
        if any(not t.is_zero() for t in ts):
            raise AssertionError("tail is not geometric")
        return RationalFunction(0)
    ratio = ts[1] / ts[0]
    for prev, nxt in zip(ts[1:], ts[2:]):
        if nxt != ratio * prev:
            raise AssertionError("tail is not geometric")
    return ts[0] / (1 - ratio)


def _jacquet_integral(
    ctx: JacquetContext, n: int, section: Callable[[int], object], sign: int
) -> RationalFunction:
    """``int_{U_0} s(u(x) a_n) psi(x)^-1 dx`` for a right-K-invariant section ``s``.

    ``section(t)`` is the value of ``s`` at ``a_t``; ``s`` lies in the
    representation induced from ``z^sign``. Writing ``u(x) a_n = a_n u(y)``
    with ``y = w^(-2n) x`` gives ``dx = q^(-2n) dy`` and the character becomes
    ``psi(w^(2n) y)``, whose integral over ``val y = j`` is ``q^(2n)`` times
    the shell integral at ``j + 2n``.
    """
    q = ctx.q
    cfg = ctx.config
    jacobian = q ** (-2 * n)

    def shell(j: int):
        parts = iwasawa_unipotent(j, "upper")
        t = 0 if parts.in_maximal_compact else parts.torus_valuation
        return as_rational_function(section(t)) * (q ** (2 * n) * psi_shell_integral(cfg, j + 2 * n))

    # shells with j + 2n <= -2 integrate the character to zero
    j_lo = -2 * n - 1
    # from j_hi on, u(y) lies in K and psi is trivial: a geometric tail
    j_hi = max(0, -2 * n)
    if j_hi - j_lo > cfg.max_shell_guard:
        raise GuardExceeded(f"{j_hi - j_lo} explicit shells needed at n = {n}")
    total = RationalFunction(0)
    for j in range(j_lo, j_hi):
        total = total + shell(j)
    total = total + _geometric_tail(shell, j_hi)
    return total * _char(q, n, sign) * jacobian


def whittaker_value(ctx: JacquetContext, n: int) -> LaurentPolynomial:
    """``E_z(a_n)``, the Whittaker function of the spherical vector."""
    cached = ctx.table.get(n)
    if cached is not None:
        return cached
    q = ctx.q
    val = _jacquet_integral(ctx, n, lambda t: _char(q, t, 1), 1)
    if not val.is_laurent():
        raise AssertionError(f"Jacquet integral at n = {n} did not cancel its poles: {val}")
    return ctx.table.put(n, val.as_laurent())


def whittaker_value_inverse(ctx: JacquetContext, n: int) -> LaurentPolynomial:
    """``E_{1/z}(a_n)``."""
    return whittaker_value(ctx, n).invert_var()


def _unipotent_integral(ctx: JacquetContext) -> RationalFunction:
    """``int_{U_0} v(u(x)) dx``: the intertwining integral at the identity."""
    q = ctx.q
    cfg = ctx.config

    def shell(j: int):
        parts = iwasawa_unipotent(j, "upper")
        t = 0 if parts.in_maximal_compact else parts.torus_valuation
        return _char(q, t, 1) * shell_volume(cfg, j)

    integral_over_o = _geometric_tail(shell, 0)
    # val x = -k, k >= 1; geometric in z^-1, convergent for |z| > 1
    outside = _geometric_tail(lambda k: shell(-k), 1)
    return integral_over_o + outside


def intertwining_a(ctx: JacquetContext) -> RationalFunction:
    """``a(z)``: the intertwining operator to the upper Borel applied to ``v``, at 1."""
    return _unipotent_integral(ctx)


def _intertwined_section(ctx: JacquetContext) -> Callable[[int], RationalFunction]:
    """``t -> (A(w, z) v)(a_t)`` evaluated by its own unipotent integral.

    ``(A v)(a_t) = int v(u(x) w^-1 a_t) dx`` and ``w^-1 a_t = a_-t w^-1``;
    moving ``a_-t`` left rescales ``x`` by ``w^(2t)`` (Jacobian ``q^(2t)``).
    """
    q = ctx.q
    inner = _unipotent_integral(ctx)
    cache: dict[int, RationalFunction] = {}

    def value(t: int) -> RationalFunction:
        if t not in cache:
            cache[t] = inner * _char(q, -t, 1) * q ** (2 * t)
        return cache[t]

    return value


def whittaker_of_intertwined(ctx: JacquetContext, n: int) -> RationalFunction:
    """Whittaker functional for ``1/z`` applied to ``pi(a_n) A(w, z) v``.

    Outer shells follow the Jacquet integral; at each one the intertwined
    section is evaluated at the Iwasawa torus point through its own inner
    shell sum.
    """
    return _jacquet_integral(ctx, n, _intertwined_section(ctx), -1)


def derive_b(ctx: JacquetContext, probes=range(4)) -> RationalFunction:
    """``b(z)`` from the ratio of intertwined to plain Whittaker values.

    The ratio must agree at every probe where the plain value is nonzero.
    """
    ratios = []
    for n0 in probes:
        e = whittaker_value(ctx, n0)
        if e.is_zero():
            continue
        ratios.append((n0, whittaker_of_intertwined(ctx, n0) / e))
    if not ratios:
        raise ProbeVanishes(f"Whittaker values vanish at every probe {list(probes)}")
    n_ref, b = ratios[0]
    for n0, r in ratios[1:]:
        if r != b:
            raise InconsistentRatio(f"ratio at n = {n0} differs from n = {n_ref}")
    return b


def j_function(ctx: JacquetContext) -> RationalFunction:
    """Scalar by which ``A(P, P^-) A(P^-, P)`` acts on the spherical vector.

    The outer integral runs over the lower unipotent group; its integrand,
    ``A(P^-, P) v`` at the Iwasawa torus point, comes from the inner shell sum.
    """
    q = ctx.q
    cfg = ctx.config
    inner = _unipotent_integral(ctx)

    def upper_section(t: int) -> RationalFunction:
        # (A v)(a_t) = int v(a_t u(w^-2t x)) dx = chi delta^{1/2}(a_t) q^(-2t) * inner
        return inner * _char(q, t, 1) * q ** (-2 * t)

    def shell(j: int):
        parts = iwasawa_unipotent(j, "lower")
        t = 0 if parts.in_maximal_compact else parts.torus_valuation
        return upper_section(t) * shell_volume(cfg, j)

    # val x = -k: geometric in z, convergent for |z| < 1
    return _geometric_tail(shell, 0) + _geometric_tail(lambda k: shell(-k), 1)


def c_functions(ctx: JacquetContext) -> CFunctions:
    a = intertwining_a(ctx)
    b = derive_b(ctx)
    j = j_function(ctx)
    quotient = j / (a * a.invert_var())
    if not quotient.is_constant():
        raise AssertionError(f"j / (a a*) is not constant: {quotient}")
    return CFunctions(q=ctx.q, a=a, b=b, j=j, j_constant=quotient.constant_value())


# ---------------------------------------------------------------------------
# constant-term expansion

@dataclass(frozen=True)
class AsymptoticExpansion:
    """``E_z(a_n) = scale(n) * (beta z^n + alpha z^-n)`` for ``n >= threshold``.

    ``normalized`` records whether ``scale(n) = delta_{P_0}^{1/2}(a_n) = q^-n``
    (True) or 1 (False).
    """

    alpha: RationalFunction
    beta: RationalFunction
    threshold: int
    normalized: bool = True


def _solve_two_terms(ctx, n1, n2, normalized):
    def row(n):
        s = modulus_delta_sqrt(ctx.config, n, "standard") if normalized else Fraction(1)
        return (
            RationalFunction(LaurentPolynomial.monomial(n, s)),
            RationalFunction(LaurentPolynomial.monomial(-n, s)),
            RationalFunction(whittaker_value(ctx, n)),
        )

    (b1, a1, e1), (b2, a2, e2) = row(n1), row(n2)
    det = b1 * a2 - a1 * b2
    beta = (e1 * a2 - a1 * e2) / det
    alpha = (b1 * e2 - e1 * b2) / det
    return alpha, beta


def _expansion_holds(ctx, alpha, beta, n, normalized):
    s = modulus_delta_sqrt(ctx.config, n, "standard") if normalized else Fraction(1)
    pred = (beta * LaurentPolynomial.monomial(n) + alpha * LaurentPolynomial.monomial(-n)) * s
    return pred == whittaker_value(ctx, n)


def asymptotic_coefficients(
    ctx: JacquetContext, normalized: bool = True, max_threshold: int = 4
) -> AsymptoticExpansion:
    """Solve for ``(alpha, beta)`` on two lattice points and verify on the window.

    The threshold is the least ``T <= max_threshold`` for which one pair
    reproduces ``E_z(a_n)`` on all of ``[T, window]``.
    """
    for threshold in range(0, max_threshold + 1):
        n1 = max(threshold, 1)
        alpha, beta = _solve_two_terms(ctx, n1, n1 + 1, normalized)
        if all(_expansion_holds(ctx, alpha, beta, n, normalized) for n in range(threshold, ctx.window + 1)):
            return AsymptoticExpansion(alpha, beta, threshold, normalized)
    raise NoExpansion(
        f"no two-term expansion ({'q^-n' if normalized else 'unit'} scale) from any threshold <= {max_threshold}"
    )


def constant_term_relations(exp: AsymptoticExpansion, cf: CFunctions) -> dict[str, Fraction]:
    """Constant quotients between the expansion coefficients and ``a, b, a*, b*``."""
    candidates = {
        "a": cf.a,
        "b": cf.b,
        "a(1/z)": cf.a.invert_var(),
        "b(1/z)": cf.b.invert_var(),
    }
    found = {}
    for coef_name, coef in (("beta", exp.beta), ("alpha", exp.alpha)):
        for name, fn in candidates.items():
            ratio = coef / fn
            if ratio.is_constant():
                found[f"{coef_name}/{name}"] = ratio.constant_value()
    return found
