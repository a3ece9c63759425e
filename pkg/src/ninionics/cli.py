"""Command-line interface: each subsystem exposed as a subcommand.

Every subcommand emits a header-bearing CSV table (default) or a single JSON
object with a schema_version field, to stdout or to --output. All quantities
are emitted as dimensionless combinations (beta^4 * densities, beta^3 *
entropy). Exit codes: 0 success, 1 computational error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from fractions import Fraction
from typing import Iterable

from . import fractal, identities, rotor, thermo
from .errors import DomainError
from .numerics import ordered_map
from .occupation import Family, NinionParams, occupation_number
from .rationals import StatAngle, thomae
from .thermo import GasSpec

SCHEMA_VERSION = "1"

_ANGLE_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d+)?)?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?\s*$",
    re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Angles as plain radians ('0.785') or pi expressions ('pi/4', '3pi/4', '-pi')."""
    m = _ANGLE_RE.match(text)
    if m is None:
        try:
            return float(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from exc
    sign = -1.0 if m.group("sign") == "-" else 1.0
    coef = float(m.group("coef")) if m.group("coef") else 1.0
    den = float(m.group("den")) if m.group("den") else 1.0
    if den == 0.0:
        raise argparse.ArgumentTypeError("angle denominator must be nonzero")
    return sign * coef * math.pi / den


def _positive_float(text: str) -> float:
    x = float(text)
    if not math.isfinite(x) or x <= 0.0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a positive finite number")
    return x


def _nonneg_float(text: str) -> float:
    x = float(text)
    if not math.isfinite(x) or x < 0.0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a nonnegative finite number")
    return x


def _finite_float(text: str) -> float:
    x = float(text)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"{text!r} must be finite")
    return x


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be a positive integer")
    return n


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse fraction {text!r}") from exc


def _window(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must be 'lo,hi'")
    lo, hi = (_fraction(p) for p in parts)
    if not (0 <= lo < hi <= 1):
        raise argparse.ArgumentTypeError("window must satisfy 0 <= lo < hi <= 1")
    return lo, hi


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse integer list {text!r}") from exc


def _angle_list(text: str) -> list[float]:
    return [parse_angle(p) for p in text.split(",") if p.strip()]


def _stat_angle(args: argparse.Namespace) -> StatAngle:
    return StatAngle.parse(args.chi, q_max=args.q_max)


def _emit(args: argparse.Namespace, fieldnames: list[str],
          rows: Iterable[dict], extras: dict | None = None) -> None:
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        if args.format == "csv":
            writer = csv.DictWriter(out, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        else:
            payload: dict = {"schema_version": SCHEMA_VERSION, "command": args.command}
            if extras:
                payload.update(extras)
            payload["rows"] = list(rows)
            json.dump(payload, out, indent=2)
            out.write("\n")
    finally:
        if args.output:
            out.close()


# ---------------------------------------------------------------- subcommands

def _cmd_thomae(args) -> tuple[list[str], list[dict], dict]:
    angle = _stat_angle(args)
    value = thomae(angle.turns)
    row = {
        "chi_num": angle.turns.numerator,
        "chi_den": angle.turns.denominator,
        "q": angle.turns.denominator,
        "thomae_num": value.numerator,
        "thomae_den": value.denominator,
        "thomae_value": float(value),
    }
    return list(row), [row], {}


def _cmd_identity(args) -> tuple[list[str], list[dict], dict]:
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise DomainError("--p and --q must be given together")
        pairs = [(args.p, args.q)]
    else:
        pairs = list(identities.coprime_fractions(args.q_max))
    check = (identities.check_boson_identity if args.family == "bose"
             else identities.check_fermion_identity)
    checks = ordered_map(lambda pq: check(pq[0], pq[1], args.gamma), pairs)
    rows = [{
        "family": args.family, "p": c.p, "q": c.q, "gamma": c.gamma,
        "lhs": c.lhs, "rhs": c.rhs, "residual": c.residual,
    } for c in checks]
    max_residual = max(c.residual for c in checks)
    print(f"max residual over {len(checks)} fractions: {max_residual:.3e}",
          file=sys.stderr)
    fields = ["family", "p", "q", "gamma", "lhs", "rhs", "residual"]
    return fields, rows, {"max_residual": max_residual}


def _thermo_row(family: Family, method: str, beta: float, turns: Fraction,
                q_eff: int, out_family: str, weight: float, f: float,
                massless: bool) -> dict:
    eff_beta = q_eff * beta
    derived: dict[str, float | None]
    if massless:
        derived = {
            "beta4_energy": -3.0 * f * beta ** 4,
            "beta4_pressure": -f * beta ** 4,
            "beta3_entropy": -4.0 * f * eff_beta * beta ** 3,
        }
    else:
        # no closed scaling law away from the massless case
        derived = {"beta4_energy": None, "beta4_pressure": None, "beta3_entropy": None}
    return {
        "family": family.value, "method": method,
        "chi_num": turns.numerator, "chi_den": turns.denominator,
        "q_effective": q_eff, "out_family": out_family, "weight": weight,
        "beta": beta, "effective_beta": eff_beta,
        "beta4_f": f * beta ** 4,
        **derived,
    }


_THERMO_FIELDS = ["family", "method", "chi_num", "chi_den", "q_effective",
                  "out_family", "weight", "beta", "effective_beta", "beta4_f",
                  "beta4_energy", "beta4_pressure", "beta3_entropy"]


def _cmd_thermo(args) -> tuple[list[str], list[dict], dict]:
    family = Family(args.family)
    angle = _stat_angle(args)
    beta = args.beta
    if args.method == "closed":
        if args.mass != 0.0 or args.mu != 0.0:
            raise DomainError("closed forms cover the massless gas at mu = 0; "
                              "use --method quadrature")
        if family is Family.BOSE:
            turns = angle.bosonic().turns
            q = turns.denominator
            f = thermo.blackbody_scalar(q * beta).f * args.degeneracy
            row = _thermo_row(family, "closed", beta, turns, q, "boson",
                              args.degeneracy, f, True)
        else:
            turns = angle.fermionic().turns
            mapped = thermo.fermion_equivalence(turns.numerator, turns.denominator, beta)
            sign = 1.0 if mapped.multiplicity > 0 else -1.0
            base = (thermo.blackbody_fermion if mapped.out_family.value == "fermion"
                    else thermo.blackbody_scalar)(mapped.effective_beta)
            weight = sign * args.degeneracy
            row = _thermo_row(family, "closed", beta, turns, turns.denominator,
                              mapped.out_family.value, weight, base.f * weight, True)
        return _THERMO_FIELDS, [row], {}

    spec = GasSpec(family, args.mass, args.mu, args.degeneracy)
    f = thermo.free_energy_extrapolated(spec, beta, angle, inner_tol=args.inner_tol)
    turns = angle.bosonic().turns if family is Family.BOSE else angle.fermionic().turns
    q = turns.denominator
    if family is Family.FERMI:
        mapped = thermo.fermion_equivalence(turns.numerator, q, beta)
        out_family = mapped.out_family.value
        weight = args.degeneracy * (1.0 if mapped.multiplicity > 0 else -1.0)
    else:
        out_family, weight = "boson", args.degeneracy
    row = _thermo_row(family, "quadrature", beta, turns, q, out_family, weight,
                      f, args.mass == 0.0)
    return _THERMO_FIELDS, [row], {}


def _cmd_walls(args) -> tuple[list[str], list[dict], dict]:
    result = thermo.crossed_walls_thermo(args.beta, args.rotating, args.inner_tol)
    tq, report = result.quantities, result.oracle
    b3, b4 = args.beta ** 3, args.beta ** 4
    row = {
        "rotating": args.rotating,
        "beta4_f": tq.f * b4,
        "beta4_energy": tq.energy * b4,
        "beta4_pressure": tq.pressure * b4,
        "beta3_entropy": tq.entropy * b3,
        "oracle_beta4_energy": report.oracle.energy * b4 if report else None,
        "oracle_beta3_entropy": report.oracle.entropy * b3 if report else None,
        "per_mode_quadrature": report.per_mode_quadrature if report else None,
        "per_mode_closed_form": report.per_mode_closed_form if report else None,
        "per_mode_rel_error": report.per_mode_relative_error if report else None,
        "count_factor": report.count_factor if report else None,
        "relative_deviation": report.relative_deviation if report else None,
    }
    return list(row), [row], {}


def _cmd_occupation(args) -> tuple[list[str], list[dict], dict]:
    family = Family(args.family)
    if args.omega_count < 2:
        raise DomainError("need at least two omega grid points")
    step = (args.omega_max - args.omega_min) / (args.omega_count - 1)
    rows = []
    for xi in args.xi:
        for i in range(args.omega_count):
            omega = args.omega_min + i * step
            n = occupation_number(NinionParams(family, xi, args.beta, omega, args.mu))
            rows.append({
                "family": family.value, "xi": xi, "omega": omega,
                "beta_omega": args.beta * omega, "occupation": n,
            })
    return ["family", "xi", "omega", "beta_omega", "occupation"], rows, {}


def _scan_rows(order: int, window) -> Iterable[dict]:
    for s in fractal.iter_fractal_scan(order, window):
        yield {
            "chi_numerator": s.chi_turns.numerator,
            "chi_denominator": s.chi_turns.denominator,
            "chi_real": float(s.chi_turns),
            "q": s.q,
            "energy_ratio": float(s.ratio_energy),
            "entropy_ratio": float(s.ratio_entropy),
        }


_SCAN_FIELDS = ["chi_numerator", "chi_denominator", "chi_real", "q",
                "energy_ratio", "entropy_ratio"]


def _cmd_scan(args) -> tuple[list[str], Iterable[dict], dict]:
    rows = _scan_rows(args.order, args.window)
    if args.order <= fractal.STREAM_THRESHOLD:
        rows = list(rows)  # materialize: output starts only after full success
    return _SCAN_FIELDS, rows, {"order": args.order}


def _cmd_nogo(args) -> tuple[list[str], list[dict], dict]:
    if args.mode == "near":
        probe = fractal.prime_ratio_sequence_near(
            args.target, args.count, args.min_denominator)
    else:
        mode = "fixed_denominator" if args.mode == "fixed" else "growing_denominator"
        if args.m_indices:
            m_indices = args.m_indices
        else:
            m_indices = list(range(args.prime_index + 1, args.prime_index + 1 + args.count))
        probe = fractal.prime_sequence_probe(args.prime_index, m_indices, mode)
    rows = []
    for turns, ratio in probe.points:
        p, q = turns.numerator, turns.denominator
        ghost = (p + q) % 2 == 0
        rows.append({
            "chi_num": p, "chi_den": q, "chi_real": float(turns), "q": q,
            "energy_ratio": float(ratio),
            "fermi_branch": "boson_ghost" if ghost else "fermion",
            "fermi_weight": -2.0 if ghost else 1.0,
            "distance_to_target": abs(float(turns) - probe.target),
        })
    extras = {"mode": args.mode, "target": probe.target,
              "limit_estimate": probe.limit_estimate, "notices": probe.notices}
    fields = ["chi_num", "chi_den", "chi_real", "q", "energy_ratio",
              "fermi_branch", "fermi_weight", "distance_to_target"]
    return fields, rows, extras


def _cmd_rotor(args) -> tuple[list[str], list[dict], dict]:
    spec = rotor.RotorSpec(args.inertia, args.m_cut)
    z0 = rotor.partition_rotwisted(spec, args.beta, 0.0, args.half_shift).real
    if args.table == "weights":
        weights = rotor.angular_distribution(spec, args.beta, half_shift=args.half_shift)
        rows = [{"m": m, "weight": w} for m, w in sorted(weights.items())]
        return ["m", "weight"], rows, {"Z_0": z0}
    n = args.chi_points
    rows = []
    for j in range(1, n + 1):
        chi = -math.pi + 2.0 * math.pi * j / n  # grid over (-pi, pi]
        z = rotor.partition_rotwisted(spec, args.beta, chi, args.half_shift)
        k = rotor.generating_function(spec, args.beta, chi, args.half_shift)
        rows.append({"chi": chi, "z_real": z.real, "z_imag": z.imag,
                     "k_real": k.real, "k_imag": k.imag})
    return ["chi", "z_real", "z_imag", "k_real", "k_imag"], rows, {"Z_0": z0}


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ninionics",
        description="Free-gas thermodynamics under imaginary rotation: "
                    "fractal scaling, transmutation, ninionic occupation numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="output path (default stdout)")

    def chi_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--chi", required=True,
                       help="statistical angle in turns: 'p/q' or a decimal")
        p.add_argument("--q-max", type=_positive_int, default=10 ** 6,
                       help="denominator cap when --chi is a decimal")

    p = sub.add_parser("thomae", help="Thomae value of a rational angle")
    p.add_argument("--fraction", dest="chi", required=True,
                   help="statistical angle in turns: 'p/q' or a decimal")
    p.add_argument("--q-max", type=_positive_int, default=10 ** 6,
                   help="denominator cap when --fraction is a decimal")
    p.set_defaults(handler=_cmd_thomae)
    common(p)

    p = sub.add_parser("identity", help="phase-sum identity residuals")
    p.add_argument("--family", choices=("bose", "fermi"), required=True)
    p.add_argument("--gamma", type=_positive_float, required=True)
    p.add_argument("--q-max", type=_positive_int, default=64)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=_positive_int, default=None)
    p.set_defaults(handler=_cmd_identity)
    common(p)

    p = sub.add_parser("thermo", help="gas thermodynamics at an imaginary rotation angle")
    p.add_argument("--family", choices=("bose", "fermi"), default="bose")
    p.add_argument("--beta", type=_positive_float, default=1.0)
    chi_flags(p)
    p.add_argument("--method", choices=("closed", "quadrature"), default="closed")
    p.add_argument("--mass", type=_nonneg_float, default=0.0)
    p.add_argument("--mu", type=_finite_float, default=0.0)
    p.add_argument("--degeneracy", type=_positive_float, default=1.0)
    p.add_argument("--inner-tol", type=_positive_float, default=thermo.DEFAULT_INNER_TOL)
    p.set_defaults(handler=_cmd_thermo)
    common(p)

    p = sub.add_parser("walls", help="crossed Dirichlet/Neumann walls thermodynamics")
    p.add_argument("--beta", type=_positive_float, default=1.0)
    p.add_argument("--rotating", action="store_true")
    p.add_argument("--inner-tol", type=_positive_float, default=thermo.DEFAULT_INNER_TOL)
    p.set_defaults(handler=_cmd_walls)
    common(p)

    p = sub.add_parser("occupation", help="ninionic occupation-number curves")
    p.add_argument("--family", choices=("bose", "fermi"), required=True)
    p.add_argument("--xi", type=_angle_list, required=True,
                   help="comma-separated angles: floats or pi expressions like pi/4")
    p.add_argument("--beta", type=_positive_float, default=1.0)
    p.add_argument("--mu", type=_finite_float, default=0.0)
    p.add_argument("--omega-min", type=_finite_float, default=0.05)
    p.add_argument("--omega-max", type=_finite_float, default=5.0)
    p.add_argument("--omega-count", type=_positive_int, default=100)
    p.set_defaults(handler=_cmd_occupation)
    common(p)

    p = sub.add_parser("scan", help="fractal Farey scan of scaling ratios")
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--window", type=_window, default=(Fraction(0), Fraction(1)))
    p.set_defaults(handler=_cmd_scan)
    common(p)

    p = sub.add_parser("nogo", help="prime-sequence probes of sequence-dependent limits")
    p.add_argument("--mode", choices=("fixed", "growing", "near"), default="fixed")
    p.add_argument("--prime-index", type=_positive_int, default=1,
                   help="1-based index of the fixed prime (fixed/growing modes)")
    p.add_argument("--m-indices", type=_int_list, default=None)
    p.add_argument("--count", type=_positive_int, default=8)
    p.add_argument("--target", type=_fraction, default=Fraction(1, 2),
                   help="accumulation point for --mode near")
    p.add_argument("--min-denominator", type=_positive_int, default=100_000)
    p.set_defaults(handler=_cmd_nogo)
    common(p)

    p = sub.add_parser("rotor", help="planar-rotor twisted ensemble tables")
    p.add_argument("--inertia", type=_positive_float, default=1.0)
    p.add_argument("--m-cut", type=_positive_int, default=50)
    p.add_argument("--beta", type=_positive_float, default=1.0)
    p.add_argument("--half-shift", action="store_true",
                   help="use half-integer phase offsets (fermionic convention)")
    p.add_argument("--table", choices=("zk", "weights"), default="zk")
    p.add_argument("--chi-points", type=_positive_int, default=64)
    p.set_defaults(handler=_cmd_rotor)
    common(p)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fieldnames, rows, extras = args.handler(args)
    except DomainError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1
    _emit(args, fieldnames, rows, extras)
    return 0


if __name__ == "__main__":
    sys.exit(main())
