"""Command-line front end: enumerate, lift, verify, report.

Exit codes: 0 success; 2 spec validation failure; 3 ramification bound
exceeded; 4 residual certificate failure.  Reports are deterministic
JSON ("format": 1) with exact rational scalars throughout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .bethe import bethe_report
from .infinite import enumerate_infinite_solutions
from .lifting import (RamificationBoundExceededError, lift_newton,
                      lift_ramified)
from .systems import ProblemSpec, SpecValidationError
from .tropical import prevariety

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RAMIFICATION = 3
EXIT_CERTIFICATE = 4

FORMAT_VERSION = 1


def _load_spec(path: str, require_nonzero_at_origin: bool) -> ProblemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    spec = ProblemSpec.from_json(obj)
    spec.validate(require_nonzero_at_origin=require_nonzero_at_origin)
    return spec


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_solve(args) -> int:
    started = time.time()
    try:
        spec = _load_spec(args.spec, require_nonzero_at_origin=True)
    except SpecValidationError as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": exc.code, "message": str(exc)}]},
              args.out)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": "bad_spec_file", "message": str(exc)}]},
              args.out)
        return EXIT_VALIDATION

    bases = enumerate_infinite_solutions(spec)
    report = {"format": FORMAT_VERSION, "version": __version__,
              "spec": spec.to_json(), "bases": [], "failures": []}
    exit_code = EXIT_OK
    gaudin_bound = Fraction(spec.K - 1)
    xxz_bound = Fraction(spec.K)
    for base in bases:
        entry = {"base": base.to_json(), "lifts": []}
        try:
            if base.tier == "generic":
                lifts = [lift_newton(base, spec)]
            else:
                lifts = lift_ramified(base, spec)
        except RamificationBoundExceededError as exc:
            report["failures"].append(
                {"reason": "ramification_bound_exceeded", "message": str(exc)})
            exit_code = max(exit_code, EXIT_RAMIFICATION)
            report["bases"].append(entry)
            continue
        entry["branch_count"] = len(lifts)
        for ls in lifts:
            item = ls.to_json()
            item["certified"] = ls.certified()
            if not ls.certified():
                report["failures"].append(
                    {"reason": "certificate_failure",
                     "message": f"residual valuation {ls.residual_valuation} "
                                f"< {(ls.order + 1)}/{ls.n_ram}"})
                exit_code = max(exit_code, EXIT_CERTIFICATE)
            rep = bethe_report(ls, spec)
            item["bethe"] = rep.to_json()
            bound = xxz_bound if spec.is_difference else gaudin_bound
            if rep.residual_valuations is not None:
                for v in rep.residual_valuations:
                    if v is not None and v < bound:
                        report["failures"].append(
                            {"reason": "bethe_valuation",
                             "message": f"Bethe residual valuation {v} < {bound}"})
                        exit_code = max(exit_code, EXIT_CERTIFICATE)
            entry["lifts"].append(item)
        report["bases"].append(entry)
    if spec.m + spec.n <= 4:
        try:
            trop = prevariety(spec, theorem_mode=False)
            report["tropical"] = trop.to_json()
        except Exception as exc:  # size cap, etc.: advisory only for solve
            report["tropical"] = {"skipped": str(exc)}
    else:
        report["tropical"] = {"skipped": "cell enumeration above m+n=4 is "
                                         "run via the tropical subcommand"}
    report["elapsed_seconds"] = round(time.time() - started, 3)
    _emit(report, args.out)
    return exit_code


def cmd_tropical(args) -> int:
    try:
        spec = _load_spec(args.spec, require_nonzero_at_origin=False)
        res = prevariety(spec, theorem_mode=not args.no_theorem_mode)
    except SpecValidationError as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": exc.code, "message": str(exc)}]},
              getattr(args, "out", None))
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": "bad_spec_file", "message": str(exc)}]},
              getattr(args, "out", None))
        return EXIT_VALIDATION
    report = {"format": FORMAT_VERSION, "version": __version__,
              "spec": spec.to_json(), "tropical": res.to_json()}
    _emit(report, getattr(args, "out", None))
    return EXIT_OK if res.is_origin_only else EXIT_CERTIFICATE


def cmd_enumerate(args) -> int:
    try:
        spec = _load_spec(args.spec, require_nonzero_at_origin=False)
    except SpecValidationError as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": exc.code, "message": str(exc)}]}, None)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _emit({"format": FORMAT_VERSION, "version": __version__,
               "failures": [{"reason": "bad_spec_file", "message": str(exc)}]},
              None)
        return EXIT_VALIDATION
    bases = enumerate_infinite_solutions(spec)
    report = {"format": FORMAT_VERSION, "version": __version__,
              "spec": spec.to_json(),
              "solutions": [b.to_json() for b in bases]}
    _emit(report, None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qqsystems",
        description="Exact solver and verifier for rank-one qq/QQ-systems")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="enumerate, lift, certify, verify")
    p_solve.add_argument("spec", help="path to a spec JSON file")
    p_solve.add_argument("--out", help="write the report to this file")
    p_solve.add_argument("--jobs", type=int, default=1,
                         help="worker count (lifting is per-base independent)")
    p_solve.set_defaults(func=cmd_solve)

    p_trop = sub.add_parser("tropical", help="compute the tropical prevariety")
    p_trop.add_argument("spec", help="path to a spec JSON file")
    p_trop.add_argument("--out", help="write the report to this file")
    p_trop.add_argument("--no-theorem-mode", action="store_true",
                        help="skip the all-d_k-nonzero hypothesis gate")
    p_trop.set_defaults(func=cmd_tropical)

    p_enum = sub.add_parser("enumerate", help="list infinite-system solutions")
    p_enum.add_argument("spec", help="path to a spec JSON file")
    p_enum.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
