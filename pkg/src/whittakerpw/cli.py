"""Command line front end.

Exit status: 0 when the requested check passes, 1 when a mathematical gate or
report comes out false, 2 on bad input or any library error (its class name
is written to stderr).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from .errors import InputParse, WhittakerPWError
from .exactfun import LaurentPolynomial, as_fraction
from .fourier import WhittakerFn, build_cfunctions, pw_gate, solve_zeta, transform
from .inversion import Contour, build_phi, calibrate, roundtrip_check, theorem5_check, wave_packet
from .jacquet import JacquetContext, asymptotic_coefficients, c_functions, constant_term_relations, whittaker_value
from .padic import PadicConfig
from .sqint import ExponentData, casselman_check, first_violation

CONFIG_NAME = "whittakerpw.json"


@dataclass(frozen=True)
class SessionConfig:
    q: Fraction = Fraction(2)
    max_shell_guard: int = 64
    zeta_max_degree: int = 16
    radius: Fraction | None = None
    calibration: Fraction | None = None

    def __post_init__(self):
        if self.q <= 1:
            raise InputParse("q must exceed 1")
        if self.max_shell_guard <= 0 or self.zeta_max_degree <= 0:
            raise InputParse("integer settings must be positive")

    def to_json(self) -> dict:
        out = {"q": str(self.q), "max_shell_guard": self.max_shell_guard, "zeta_max_degree": self.zeta_max_degree}
        if self.radius is not None:
            out["radius"] = str(self.radius)
        if self.calibration is not None:
            out["calibration"] = str(self.calibration)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SessionConfig":
        try:
            return cls(
                q=as_fraction(data.get("q", "2")),
                max_shell_guard=int(data.get("max_shell_guard", 64)),
                zeta_max_degree=int(data.get("zeta_max_degree", 16)),
                radius=as_fraction(data["radius"]) if data.get("radius") is not None else None,
                calibration=as_fraction(data["calibration"]) if data.get("calibration") is not None else None,
            )
        except (TypeError, ValueError, KeyError, ZeroDivisionError) as exc:
            raise InputParse(f"bad config: {exc}") from exc

    @property
    def padic(self) -> PadicConfig:
        return PadicConfig(q=self.q, max_shell_guard=self.max_shell_guard)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputParse(f"cannot read {path}: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def load_session(args) -> SessionConfig:
    cfg = SessionConfig()
    path = Path(args.config)
    if path.exists():
        cfg = SessionConfig.from_json(_read_json(path))
    if args.q is not None and args.q != cfg.q:
        if cfg.calibration is not None and path.exists():
            raise InputParse(f"--q {args.q} conflicts with q = {cfg.q} persisted in {path}")
        cfg = replace(cfg, q=args.q, calibration=None)
    if args.guard is not None:
        cfg = replace(cfg, max_shell_guard=args.guard)
    if getattr(args, "radius", None) is not None:
        cfg = replace(cfg, radius=args.radius)
    return cfg


def _context(cfg: SessionConfig) -> JacquetContext:
    return JacquetContext(cfg.padic)


def _weight(cfg: SessionConfig, ctx, cf) -> Fraction:
    if cfg.calibration is not None:
        return cfg.calibration
    return calibrate(ctx, cf)


def _load_whittaker_fn(path, cfg: SessionConfig) -> WhittakerFn:
    data = _read_json(path)
    try:
        f = WhittakerFn.from_json(data, cfg.padic)
        if "q" in data and as_fraction(data["q"]) != cfg.q:
            raise InputParse(f"input has q = {data['q']} but the session uses q = {cfg.q}")
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputParse(str(exc)) from exc
    return f


def _load_laurent(path) -> LaurentPolynomial:
    try:
        return LaurentPolynomial.from_json(_read_json(path))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputParse(str(exc)) from exc


# ---------------------------------------------------------------------------

def cmd_cfun(args, cfg):
    ctx = _context(cfg)
    cf = c_functions(ctx)
    out = cf.to_json()
    try:
        cf = cf.with_zeta(solve_zeta(cf, cfg.zeta_max_degree))
        out = cf.to_json()
    except WhittakerPWError:
        pass
    exp = asymptotic_coefficients(ctx)
    out["constant_term"] = {
        "alpha": exp.alpha.to_json(),
        "beta": exp.beta.to_json(),
        "threshold": exp.threshold,
        "relations": {k: str(v) for k, v in constant_term_relations(exp, cf).items()},
    }
    out["text"] = {"a": str(cf.a), "b": str(cf.b), "j": str(cf.j)}
    if cf.zeta is not None:
        out["text"]["zeta"] = str(cf.zeta)
    _emit(_dump(out), args.out)
    return 0


def cmd_zeta(args, cfg):
    cf = c_functions(_context(cfg))
    zeta = solve_zeta(cf, args.max_degree or cfg.zeta_max_degree)
    _emit(_dump({"zeta": zeta.to_json(), "text": str(zeta)}), args.out)
    return 0


def cmd_whittaker_table(args, cfg):
    ctx = _context(cfg)
    rows = [(n, str(whittaker_value(ctx, n))) for n in range(args.n_min, args.n_max + 1)]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "laurent_polynomial"])
        writer.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return 0


def cmd_transform(args, cfg):
    f = _load_whittaker_fn(args.inp, cfg)
    ctx = _context(cfg)
    w = _weight(cfg, ctx, build_cfunctions(ctx, cfg.zeta_max_degree))
    _emit(_dump(transform(f, ctx, w).to_json()), args.out)
    return 0


def cmd_check_pw(args, cfg):
    F = _load_laurent(args.inp)
    report = pw_gate(F, c_functions(_context(cfg)))
    _emit(_dump(report.to_json()), args.out)
    return 0 if report.passes else 1


def cmd_invert(args, cfg):
    F = _load_laurent(args.inp)
    ctx = _context(cfg)
    cf = build_cfunctions(ctx, cfg.zeta_max_degree)
    contour = Contour(cfg.radius) if cfg.radius is not None else None
    f = wave_packet(build_phi(F, cf), ctx, contour)
    _emit(_dump(f.to_json()), args.out)
    return 0


def cmd_roundtrip(args, cfg):
    f = _load_whittaker_fn(args.inp, cfg)
    ctx = _context(cfg)
    cf = build_cfunctions(ctx, cfg.zeta_max_degree)
    radii = None if cfg.radius is None else [cfg.radius, Fraction(1)]
    report = roundtrip_check(f, cf, ctx, _weight(cfg, ctx, cf), radii)
    _emit(_dump(report.to_json()), args.out)
    return 0 if report.equal and report.pw_passes else 1


def cmd_theorem5(args, cfg):
    Phi = _load_laurent(args.phi)
    ctx = _context(cfg)
    cf = build_cfunctions(ctx, cfg.zeta_max_degree)
    residual = theorem5_check(Phi, cf, ctx, _weight(cfg, ctx, cf), cfg.radius or 1)
    _emit(_dump({"residual": residual.to_json(), "zero": residual.is_zero()}), args.out)
    return 0 if residual.is_zero() else 1


def cmd_calibrate(args, cfg):
    ctx = _context(cfg)
    cf = build_cfunctions(ctx, cfg.zeta_max_degree)
    radii = [cfg.radius] if cfg.radius is not None else None
    w = calibrate(ctx, cf, radii)
    cfg = replace(cfg, calibration=w)
    Path(args.config).write_text(_dump(cfg.to_json()))
    _emit(_dump({"calibration": str(w), "q": str(cfg.q)}), args.out)
    return 0


def cmd_sqint(args, cfg):
    try:
        e = ExponentData.parse(args.exponents)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParse(str(exc)) from exc
    ok = casselman_check(e)
    line = "true" if ok else f"false (exponent {first_violation(e)} is not strictly negative)"
    _emit(line + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="whittakerpw", description=__doc__.splitlines()[0])
    parser.add_argument("--config", default=CONFIG_NAME, help="session config file (default: %(default)s)")
    parser.add_argument("--q", type=_parse_rational, help="residue field cardinality")
    parser.add_argument("--guard", type=int, help="max explicit valuation shells")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inp=False, radius=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output here instead of stdout")
        if inp:
            p.add_argument("--in", dest="inp", required=True)
        if radius:
            p.add_argument("--radius", type=_parse_rational)
        return p

    add("cfun", cmd_cfun, "print a, b, j, zeta and constant-term data")
    add("zeta", cmd_zeta, "solve for zeta").add_argument("--max-degree", type=int)
    p = add("whittaker-table", cmd_whittaker_table, "CSV of E_z(a_n)")
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=10)
    add("transform", cmd_transform, "transform a Whittaker function", inp=True)
    add("check-pw", cmd_check_pw, "Paley-Wiener gate for a Laurent polynomial", inp=True)
    add("invert", cmd_invert, "wave-packet inverse of a Laurent polynomial", inp=True, radius=True)
    add("roundtrip", cmd_roundtrip, "transform then invert", inp=True, radius=True)
    add("theorem5", cmd_theorem5, "transform of a wave packet vs closed formula", radius=True).add_argument(
        "--phi", required=True, help="Laurent polynomial JSON"
    )
    add("calibrate", cmd_calibrate, "fix and persist the transform weight", radius=True)
    add("sqint", cmd_sqint, "square-integrability criterion").add_argument("--exponents", required=True)
    return parser


def _glue_negative_values(argv):
    # "--exponents -1,-1/2" would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--exponents":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--exponents={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_session(args)
        return args.func(args, cfg)
    except WhittakerPWError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
