"""Exact Fourier-Whittaker transform, Paley-Wiener gate and inversion for SL(2) over a p-adic field."""

from .exactfun import LaurentPolynomial, RationalFunction, Z
from .fourier import WhittakerFn, build_cfunctions, pw_gate, solve_zeta, transform
from .inversion import build_phi, calibrate, roundtrip_check, theorem5_check, wave_packet
from .jacquet import JacquetContext, c_functions, whittaker_value
from .padic import PadicConfig

__all__ = [
    "JacquetContext",
    "LaurentPolynomial",
    "PadicConfig",
    "RationalFunction",
    "WhittakerFn",
    "Z",
    "build_cfunctions",
    "build_phi",
    "c_functions",
    "calibrate",
    "pw_gate",
    "roundtrip_check",
    "solve_zeta",
    "theorem5_check",
    "transform",
    "wave_packet",
    "whittaker_value",
]
