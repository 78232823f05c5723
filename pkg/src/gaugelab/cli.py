"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 domain error (point or path in an
excluded set, field undefined on a surface), 3 numerical non-convergence.
Results go to stdout (or ``--out``); diagnostics go to stderr.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import abeffect, calculus, descriptors, gauge
from .errors import DomainError, GaugeLabError, NoConvergence
from .potentials import PotentialSpec, eval_potential

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

SIG_DIGITS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; that code is reserved for domain errors
    def error(self, message):
        raise UsageError(message)


def _round(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite number in result")
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, (np.floating,)):
        return _round(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_round(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(_round(obj)) + "\n"


def _point(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; expected x,y,z") from None
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; expected x,y,z")
    return np.array(vals)


def _quad(args):
    return calculus.QuadratureConfig(args.rel_tol, args.max_refinements, args.base_panels)


def cmd_eval(args):
    s = eval_potential(descriptors.potential_from_descriptor(args.potential), args.point)
    return {"value": s.value.tolist(), "location": list(s.location)}


def cmd_curl(args):
    s = calculus.numeric_curl(descriptors.potential_from_descriptor(args.potential), args.point, args.h)
    return {"value": s.value.tolist(), "location": list(s.location)}


def cmd_line_integral(args):
    spec = descriptors.potential_from_descriptor(args.potential)
    path = descriptors.path_from_descriptor(args.path)
    return calculus.line_integral_result(spec, path, _quad(args)).to_dict()


def cmd_flux(args):
    field = descriptors.field_from_descriptor(args.field)
    surf = descriptors.surface_from_descriptor(args.surface)
    return calculus.surface_flux_result(field, surf, _quad(args)).to_dict()


def cmd_stokes(args):
    spec = descriptors.potential_from_descriptor(args.potential)
    surf = descriptors.surface_from_descriptor(args.surface)
    return calculus.stokes_annular(spec, surf, _quad(args)).to_dict()


def cmd_quantize(args):
    if args.condition == "dirac":
        return gauge.dirac_condition(args.q, args.g).to_dict()
    out = gauge.kappa_condition(args.q, args.kappa).to_dict()
    if args.N is not None:
        out["factorized"] = gauge.factorized_kappa_condition(args.q, args.kappa, args.N).to_dict()
    return out


def cmd_spectrum(args):
    out = gauge.charge_spectrum(args.N, args.range).to_dict()
    out["kappas"] = gauge.kappa_spectrum(args.N, args.range)
    return out


def _setup(args):
    return abeffect.default_setup(n_points=args.points)


def cmd_ab_pattern(args):
    spec = PotentialSpec.ab_solenoid(args.B, args.R)
    if args.kappa:
        spec = PotentialSpec.superposition(spec, PotentialSpec.solenoid_kappa(args.kappa, args.R))
    pat = abeffect.interference_pattern(args.q, spec, _setup(args), _quad(args))
    if args.format == "json":
        return {"positions": pat.positions.tolist(), "intensities": pat.intensities.tolist()}
    return pat.to_csv()


def cmd_ab_invariance(args):
    rep = abeffect.kappa_invariance_experiment(
        args.q, abeffect.SolenoidConfig(args.B, args.R), _setup(args), args.kappa, _quad(args)
    )
    return rep.to_dict()


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=1e-10, help="quadrature relative tolerance (default 1e-10)")
    common.add_argument("--max-refinements", type=int, default=24, help="panel doublings before giving up (default 24)")
    common.add_argument("--base-panels", type=int, default=64, help="initial Gauss-Legendre panels (default 64)")
    common.add_argument("--out", default=None, help="write result here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format")

    p = _Parser(prog="gaugelab", description="Singular gauge potentials: integrals, holonomies, AB interference.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pot_help = "potential descriptor JSON (or @file); see docs/potentials.md"

    s = sub.add_parser("eval", parents=[common], help="evaluate a potential at a point")
    s.add_argument("--potential", required=True, help=pot_help)
    s.add_argument("--point", required=True, type=_point, help="x,y,z")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("curl", parents=[common], help="finite-difference curl of a potential")
    s.add_argument("--potential", required=True, help=pot_help)
    s.add_argument("--point", required=True, type=_point, help="x,y,z")
    s.add_argument("--h", type=float, default=None, help="step (default 1e-4*max(1,|p|))")
    s.set_defaults(func=cmd_curl)

    s = sub.add_parser("line-integral", parents=[common], help="circulation along a path")
    s.add_argument("--potential", required=True, help=pot_help)
    s.add_argument("--path", required=True, help="'unit-circle' or path descriptor JSON")
    s.set_defaults(func=cmd_line_integral)

    s = sub.add_parser("flux", parents=[common], help="flux of a field through a surface")
    s.add_argument("--field", required=True, help="field descriptor JSON (monopole|solenoid|zero|curl)")
    s.add_argument("--surface", required=True, help="'unit-disk', 'unit-sphere' or surface descriptor JSON")
    s.set_defaults(func=cmd_flux)

    s = sub.add_parser("stokes", parents=[common], help="annular Stokes check over a surface")
    s.add_argument("--potential", required=True, help=pot_help)
    s.add_argument("--surface", required=True, help="surface descriptor JSON")
    s.set_defaults(func=cmd_stokes)

    s = sub.add_parser("quantize", help="charge quantization conditions")
    qsub = s.add_subparsers(dest="condition", required=True, parser_class=_Parser)
    d = qsub.add_parser("dirac", parents=[common], help="2 q g integer")
    d.add_argument("--q", type=float, required=True)
    d.add_argument("--g", type=float, required=True)
    k = qsub.add_parser("kappa", parents=[common], help="q kappa integer")
    k.add_argument("--q", type=float, required=True)
    k.add_argument("--kappa", type=float, required=True)
    k.add_argument("--N", type=int, default=None, help="also check the factorized form with this N")
    s.set_defaults(func=cmd_quantize)

    s = sub.add_parser("spectrum", parents=[common], help="charge spectrum n_q/N")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--range", type=int, required=True)
    s.set_defaults(func=cmd_spectrum)

    for name, func, help_ in (
        ("ab-pattern", cmd_ab_pattern, "two-path interference pattern (CSV y,intensity)"),
        ("ab-invariance", cmd_ab_invariance, "pattern change from the exterior kappa addition"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--q", type=float, default=1.0, help="charge (default 1)")
        s.add_argument("--B", type=float, default=abeffect.DEFAULT_B, help="interior field (default 100)")
        s.add_argument("--R", type=float, default=abeffect.DEFAULT_R, help="solenoid radius (default 0.1)")
        s.add_argument("--kappa", type=float, default=0.0 if name == "ab-pattern" else None,
                       required=name == "ab-invariance", help="exterior gauge strength")
        s.add_argument("--points", type=int, default=601, help="screen points (default 601)")
        s.set_defaults(func=func)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        if isinstance(result, str):
            text = result
        elif getattr(args, "format", None) == "csv":
            raise ValueError(f"{args.command} has no CSV output")
        else:
            text = to_json(result)
        if args.out:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except NoConvergence as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError, TypeError, KeyError, GaugeLabError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
