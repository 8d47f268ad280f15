"""Command-line driver.

    laurent-duality dualize verify data/k_a_d1.mod
    laurent-duality crossed fsg data/z2_cross.alg
    laurent-duality zalg hom-center data/hecke_a1.alg --allow-undetermined
    laurent-duality suite --json-out report.json

Exit codes: 0 all assertions pass, 1 a verification failed (or was
undetermined without --allow-undetermined), 2 input could not be parsed,
3 internal error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from . import checks
from .formats import InputError, LoadedCrossed, LoadedZalg, digest, load_algebra, load_module
from .report import Report
from .scalars import Field, ParseError

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("laurent_duality")


def _field(text: Optional[str]) -> Optional[Field]:
    if text is None:
        return None
    try:
        return Field.from_string(text)
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", help="override the field declared in the input: Q or cyclotomic:N")
    p.add_argument("--bound", type=int, default=6, help="maximal projective resolution length (default 6)")
    p.add_argument("--box", type=int, default=2, help="exponent box for bounded searches (default 2)")
    p.add_argument("--json-out", type=Path, help="also write the report as JSON to this path")
    p.add_argument("--allow-undetermined", action="store_true",
                   help="treat undetermined assertions as passing for the exit code")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="laurent-duality", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ext", help="Ext^i_A(M, N) of finite-length modules")
    p.add_argument("m", type=Path)
    p.add_argument("n", type=Path, nargs="?", help="defaults to M")
    _common(p)

    p = sub.add_parser("dualize", help="homological and Grothendieck-Serre duals")
    p.add_argument("mode", choices=["homological", "gs", "verify"])
    p.add_argument("module", type=Path)
    p.add_argument("--method", choices=["groebner", "snf"], default="groebner",
                   help="cohomology engine (snf only for d = 1)")
    _common(p)

    p = sub.add_parser("crossed", help="crossed products A x_c Gamma")
    p.add_argument("action", choices=["build", "center", "fsg", "ext-r"])
    p.add_argument("algebra", type=Path)
    _common(p)

    p = sub.add_parser("zalg", help="algebras free of finite rank over their center")
    p.add_argument("action", choices=["resolve", "nakayama", "serre", "hom-center", "fsg-probe"])
    p.add_argument("algebra", type=Path)
    p.add_argument("--expect", choices=["certified-yes", "certified-no"],
                   help="for fsg-probe: fail unless the verdict matches")
    _common(p)

    p = sub.add_parser("suite", help="run the full acceptance corpus")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    _common(p)
    return ap


def _run(args) -> Report:
    field = _field(args.field)
    if args.bound < 1:
        raise InputError("--bound must be at least 1")
    if args.command == "ext":
        m = load_module(args.m, field)
        n = load_module(args.n, field) if args.n else m
        rep = checks.ext_report(m, n, f"ext:{args.m.stem}:{(args.n or args.m).stem}")
        rep.inputs = {str(args.m): digest(args.m)}
        if args.n:
            rep.inputs[str(args.n)] = digest(args.n)
        return rep
    if args.command == "dualize":
        m = load_module(args.module, field)
        rep = checks.dualize_report(m, args.mode, args.method, args.module.stem)
        rep.inputs = {str(args.module): digest(args.module)}
        return rep
    if args.command == "suite":
        from .suite import SuiteConfig, run_suite, summary_lines

        cfg = SuiteConfig.from_env(bound=args.bound, box=args.box)
        rep, per = run_suite(cfg, args.only)
        for line in summary_lines(per):
            print(line)
        return rep
    loaded = load_algebra(args.algebra, field)
    if args.command == "crossed":
        if not isinstance(loaded, LoadedCrossed):
            raise InputError(f"{args.algebra}: expected a crossed-product file")
        build = {
            "build": checks.crossed_build_report,
            "center": lambda lc: checks.crossed_center_report(lc, args.box),
            "fsg": lambda lc: checks.crossed_fsg_report(lc, args.box),
            "ext-r": checks.crossed_ext_report,
        }[args.action]
    else:
        if not isinstance(loaded, LoadedZalg):
            raise InputError(f"{args.algebra}: expected a 'zalg' file")
        build = {
            "resolve": lambda lz: checks.resolve_report(lz, args.bound),
            "nakayama": lambda lz: checks.nakayama_report(lz, args.bound),
            "serre": lambda lz: checks.serre_report(lz, args.bound),
            "hom-center": lambda lz: checks.hom_center_report(lz, args.box),
            "fsg-probe": lambda lz: checks.fsg_probe_report(lz, args.box, args.expect),
        }[args.action]
    rep = build(loaded)
    rep.inputs = {str(args.algebra): digest(args.algebra)}
    return rep


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        rep = _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - every other failure is an internal error
        log.debug("".join(traceback.format_exception(exc)))
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(rep.to_text())
    if args.json_out:
        args.json_out.write_text(rep.to_json())
    return EXIT_OK if rep.ok(args.allow_undetermined) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
