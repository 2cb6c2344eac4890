"""Command-line entry point.

Subcommands cover instance generation, configuration analysis, certificate
construction and verification, the numerical estimators, the sharpness
example, and incidence enumeration. Every run is deterministic in its
flags; reports are versioned JSON written with --out, with a short human
summary on stdout.

Exit codes: 0 success, 2 precondition failure, 3 verification failure,
4 unsupported instance, 5 parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import serialize
from .config import m_sequence
from .construct import (construct_certificate_m3_9,
                        construct_certificate_m3_high, verify_certificate)
from .currents import (estimate_growth, estimate_pole_weight,
                       sharpness_example)
from .errors import (ParseError, PreconditionError, UnsupportedInstanceError,
                     VerificationError)
from .instances import INSTANCE_KINDS, generate
from .linsys import VanishingCondition, build_system

ENV_PREFIX = "LELONGPLANE_"

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3
EXIT_UNSUPPORTED = 4
EXIT_PARSE = 5


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise ParseError(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}")


def _write_report(args, obj) -> None:
    if getattr(args, "out", None):
        serialize.dump(obj, args.out)


def _parse_labels(raw: str):
    try:
        return [int(x) for x in raw.split(",") if x]
    except ValueError as exc:
        raise ParseError(f"bad label list: {raw!r}") from exc


def cmd_generate(args) -> int:
    inst = generate(args.kind, args.seed)
    _write_report(args, inst)
    print(f"generated {inst.kind} seed={inst.seed} "
          f"m_seq={inst.m_seq} points={len(inst.point_set)}")
    return EXIT_OK


def cmd_msequence(args) -> int:
    inst = serialize.load_instance(args.input)
    ms = m_sequence(inst.point_set)
    _write_report(args, ms)
    print(f"m_sequence {ms.as_tuple()} "
          f"witness_sizes={[len(w[0]) for w in ms.witnesses]}")
    return EXIT_OK


def cmd_linsys(args) -> int:
    inst = serialize.load_instance(args.input)
    doubles = set(_parse_labels(args.double)) if args.double else set()
    n = len(inst.point_set)
    if any(not 1 <= l <= n for l in doubles):
        raise PreconditionError("double label out of range")
    conds = [VanishingCondition(inst.point_set.point(l),
                                2 if l in doubles else 1)
             for l in range(1, n + 1)]
    system = build_system(args.degree, conds)
    _write_report(args, system)
    print(f"degree={system.degree} rank={system.matrix_rank} "
          f"dim={system.dim}")
    return EXIT_OK


def cmd_construct(args) -> int:
    inst = serialize.load_instance(args.input)
    ms = m_sequence(inst.point_set)
    if ms.m3 == 9:
        report = construct_certificate_m3_9(inst.point_set)
    else:
        report = construct_certificate_m3_high(inst.point_set,
                                               extra=inst.extra)
    _write_report(args, report)
    if report.outcome == "certificate":
        cert = report.certificate
        if args.cert:
            serialize.dump(cert, args.cert)
        print(f"certificate gamma={cert.gamma_u} "
              f"total_weight={cert.total_weight} "
              f"trace={'>'.join(report.branch_trace)}")
        return EXIT_OK
    if report.outcome == "contradiction":
        print(f"contradiction: {report.detail}")
        return EXIT_OK
    print(f"unsupported: {report.detail}")
    return EXIT_UNSUPPORTED


def cmd_certify(args) -> int:
    cert = serialize.load_certificate(args.input)
    report = verify_certificate(cert)
    _write_report(args, report)
    print(f"discrete={report.discrete} "
          f"points_ok={sum(c.ok for c in report.per_point)}"
          f"/{len(report.per_point)} verified={report.verified}")
    if not report.verified:
        raise VerificationError("certificate failed independent verification")
    return EXIT_OK


def cmd_lelong(args) -> int:
    cert = serialize.load_certificate(args.input)
    pole_radii = [Fraction(1, 2 ** k) for k in range(8, 17)]
    growth_radii = [Fraction(2 ** k) for k in range(8, 17)]
    estimates = []
    worst = 0.0
    for x, w in cert.points:
        est = estimate_pole_weight(cert, x, pole_radii, seed=args.seed)
        estimates.append(est)
        worst = max(worst, abs(est.extrapolated - float(w)))
        print(f"point {tuple(map(str, x.coords))} claimed={w} "
              f"slope={est.extrapolated:.4f}")
    growth = estimate_growth(cert, growth_radii, seed=args.seed)
    print(f"growth slope={growth.slope:.4f} claimed={growth.claimed}")
    _write_report(args, {"schema_version": serialize.SCHEMA_VERSION,
                         "type": "lelong_report",
                         "poles": [serialize.encode(e) for e in estimates],
                         "growth": serialize.encode(growth)})
    growth_err = abs(growth.slope - float(growth.claimed))
    if worst > args.tolerance or growth_err > 2 * args.tolerance:
        raise VerificationError(
            f"estimates off by {max(worst, growth_err):.4f}, "
            f"tolerance {args.tolerance}")
    return EXIT_OK


def cmd_sharpness(args) -> int:
    rep = sharpness_example(args.seed)
    _write_report(args, rep)
    print(f"lelong_one_third={rep.all_values_one_third} "
          f"rank_checks={rep.rank_checks} full={rep.all_ranks_full} "
          f"m_seq={rep.m_seq}")
    if not (rep.all_values_one_third and rep.all_ranks_full):
        raise VerificationError("sharpness example checks failed")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .config import enumerate_4lines
    rep = enumerate_4lines(args.n, args.cap)
    _write_report(args, rep)
    print(f"n={rep.n_points} cap={rep.per_point_cap} maximum={rep.maximum} "
          f"maximal_families={len(rep.maximal_families)}")
    return EXIT_OK


def _add_common(sp, seed=True, out=True):
    if seed:
        sp.add_argument("--seed", type=int,
                        default=_env_default("seed", int, 0))
    if out:
        sp.add_argument("--out", default=os.environ.get(ENV_PREFIX + "OUT"))
    sp.add_argument("--jobs", type=int,
                    default=_env_default("jobs", int, 1),
                    help="parallelism cap (evaluation is sequential; "
                         "accepted for interface stability)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lelongplane",
        description="exact certificates for Lelong-number level sets of "
                    "plane point configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("generate", help="emit a named instance")
    sp.add_argument("--kind", required=True,
                    choices=list(INSTANCE_KINDS) + ["conic6", "conic7"])
    _add_common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("msequence", help="exact m-sequence of an instance")
    sp.add_argument("--input", required=True)
    _add_common(sp, seed=False)
    sp.set_defaults(func=cmd_msequence)

    sp = sub.add_parser("linsys", help="linear system through the instance "
                                       "points")
    sp.add_argument("--input", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--double", default="",
                    help="comma-separated labels with order-2 conditions")
    _add_common(sp, seed=False)
    sp.set_defaults(func=cmd_linsys)

    sp = sub.add_parser("construct", help="build a potential certificate")
    sp.add_argument("--input", required=True)
    sp.add_argument("--cert", help="write the certificate here")
    _add_common(sp, seed=False)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("certify", help="independently verify a certificate")
    sp.add_argument("--input", required=True)
    _add_common(sp, seed=False)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("lelong", help="numerical pole and growth estimates")
    sp.add_argument("--input", required=True, help="certificate file")
    sp.add_argument("--tolerance", type=float,
                    default=_env_default("tolerance", float, 0.05))
    _add_common(sp)
    sp.set_defaults(func=cmd_lelong)

    sp = sub.add_parser("sharpness", help="six-line sharpness example")
    _add_common(sp)
    sp.set_defaults(func=cmd_sharpness)

    sp = sub.add_parser("enumerate", help="enumerate 4-point-line families")
    sp.add_argument("--n", type=int, default=12)
    sp.add_argument("--cap", type=int, default=2)
    _add_common(sp, seed=False)
    sp.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedInstanceError as exc:
        print(f"unsupported instance: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FileNotFoundError as exc:
        print(f"parse error: missing file {exc.filename}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
