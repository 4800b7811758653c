"""Command-line front end.

    skewharmonic list
    skewharmonic verify [--id ID] [--tol T] [--json PATH] [--md PATH] [--no-timestamp]
    skewharmonic eval li2|li3 T
    skewharmonic eval const pi|ln2|zeta3|catalan
    skewharmonic eval identity ID --route ROUTE [--param P]

Exit status: 0 when every check passes, 1 when any fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import DomainError, UsageError
from .identities import Route, VerificationResult, evaluate, get_identity, registry, verify_all
from .polylog import li2, li3
from .realcore import constant
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().rstrip()}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewharmonic", description="Numerical verification of skew-harmonic "
                "number identities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list identity ids, descriptions and anchors")

    v = sub.add_parser("verify", help="run the verification sweep")
    v.add_argument("--id", action="append", dest="ids", metavar="ID",
                   help="restrict to one identity (repeatable)")
    v.add_argument("--tol", type=float, help="override every tolerance")
    v.add_argument("--json", type=Path, metavar="PATH", help="write a JSON report")
    v.add_argument("--md", type=Path, metavar="PATH", help="write a Markdown report")
    v.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp and zero timings for reproducible output")
    v.add_argument("-v", "--verbose", action="store_true", help="print every check")

    e = sub.add_parser("eval", help="evaluate a function, constant or identity")
    esub = e.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name in ("li2", "li3"):
        f = esub.add_parser(name, help=f"{name}(t) for t in [-1, 1]")
        f.add_argument("t", type=float)
    c = esub.add_parser("const", help="a named constant")
    c.add_argument("name", choices=["pi", "ln2", "zeta3", "catalan"], type=str.lower)
    i = esub.add_parser("identity", help="check one identity on one route")
    i.add_argument("id")
    i.add_argument("--route", required=True, choices=[r.value for r in Route], type=str.upper)
    i.add_argument("--param", type=float)
    i.add_argument("--tol", type=float)
    return p


def _result_line(r: VerificationResult) -> str:
    param = "" if r.param is None else f" [{r.param:g}]"
    status = "PASS" if r.passed else "FAIL"
    if r.error:
        return f"{status} {r.id} {r.route}{param}: {r.error}"
    return (f"{status} {r.id} {r.route}{param}: lhs={r.lhs.value:.17g} rhs={r.rhs.value:.17g} "
            f"residual={r.residual:.3e} tol={r.tolerance:.0e}")


def _cmd_list(out) -> int:
    for ident in registry():
        grid = ""
        if ident.parametric:
            grid = f" ({ident.param_name} in {', '.join(f'{p:g}' for p in ident.param_grid)})"
        routes = ", ".join(map(str, ident.routes))
        print(f"{ident.id}: {ident.description}{grid}", file=out)
        print(f"    routes: {routes}; tolerance {ident.tolerance:.0e}; anchor: {ident.paper_anchor}",
              file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    if args.ids:
        for i in args.ids:
            get_identity(i)
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    results = verify_all(args.tol, args.ids)
    report = Report.from_results(results, __version__, timestamp=not args.no_timestamp)
    for r in results:
        if args.verbose or not r.passed:
            print(_result_line(r), file=out)
    n_ids = len({r.id for r in results})
    s = report.summary
    print(f"{n_ids} identities, {s.total} checks: {s.passed} passed, {s.failed} failed "
          f"(max residual {s.max_residual:.3g})", file=out)
    if args.json:
        args.json.write_text(report.to_json())
    if args.md:
        args.md.write_text(report.to_markdown())
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _cmd_eval(args, out) -> int:
    if args.what in ("li2", "li3"):
        fn = li2 if args.what == "li2" else li3
        try:
            print(fn(args.t), file=out)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        return EXIT_OK
    if args.what == "const":
        print(constant(args.name), file=out)
        return EXIT_OK
    r = evaluate(args.id, args.route, args.param, args.tol)
    print(_result_line(r), file=out)
    return EXIT_OK if r.passed else EXIT_FAIL


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "list":
            return _cmd_list(out)
        if args.command == "verify":
            return _cmd_verify(args, out)
        return _cmd_eval(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
