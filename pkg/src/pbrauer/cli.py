"""Command-line front end.

Exit codes: 0 success, 1 bad input or usage, 2 internal inconsistency,
3 I/O error. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .catalog import abelian3_table, format_table, run_checks, select
from .classify import classify
from .descriptor import load_descriptor, load_json
from .dieudonne import DieudonneModuleFp, dmodule_hom
from .errors import InputError, InternalConsistencyError, InvalidArgument, PBrauerError, ResourceError
from .finite_field import FiniteField, gf
from .polygon import NewtonPolygon, hodge_newton_polygon, plot, polygon_from_slopes
from .raynaud import TruncatedDomino, cokernel_one_minus_F, kernel_one_minus_F
from .slopes import SlopeMultiset

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", metavar="p^m", help="finite field model, e.g. 3^2")
    common.add_argument("--truncation", metavar="N", type=int, help="truncation level for domino models")

    parser = _Parser(prog="pbrauer", description="p-primary Brauer groups from numerical invariants")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify a variety descriptor (JSON file)")
    p.add_argument("path")
    p = sub.add_parser("table", parents=[common], help="reproduce a built-in table")
    p.add_argument("name", choices=["abelian3"])
    p = sub.add_parser("polygon", parents=[common], help="Hodge-Newton polygon or text plot")
    p.add_argument("action", choices=["hn", "plot"])
    p.add_argument("path", help="JSON: list of [x, y] vertices, or {\"slopes\": [[num, den, mult], ...]}")
    p = sub.add_parser("hom", parents=[common], help="Hom between two mod-p Dieudonne modules")
    p.add_argument("path", help="JSON: {\"source\": module, \"target\": module}")
    p = sub.add_parser("domino", parents=[common], help="1 - F on a truncated domino U_t")
    p.add_argument("t", type=int)
    p = sub.add_parser("check", parents=[common], help="run the built-in self-check catalog")
    p.add_argument("name", nargs="?", default="all")
    sub.add_parser("version", parents=[common], help="print the version")
    return parser


def _load_polygon(path) -> NewtonPolygon:
    data = load_json(path)
    if isinstance(data, dict):
        if set(data) != {"slopes"}:
            raise InvalidArgument("polygon input is a vertex list or an object with a single 'slopes' key")
        return polygon_from_slopes(SlopeMultiset.from_json(data["slopes"]))
    if isinstance(data, list):
        return NewtonPolygon.from_json(data)
    raise InvalidArgument("polygon input is a vertex list or {\"slopes\": ...}")


def _field(args, default: FiniteField | None = None) -> FiniteField | None:
    return FiniteField.parse(args.field) if args.field else default


def cmd_classify(args) -> int:
    shape, report = classify(load_descriptor(args.path))
    print(_dump(report.to_json()) if args.json else report.text())
    return EXIT_OK


def cmd_table(args) -> int:
    rows = abelian3_table()
    print(_dump([r.to_json() for r in rows]) if args.json else format_table(rows))
    return EXIT_OK


def cmd_polygon(args) -> int:
    np = _load_polygon(args.path)
    hn = hodge_newton_polygon(np)
    if args.json:
        print(_dump({"newton": np.to_json(), "hodge_newton": hn.to_json()}))
    elif args.action == "hn":
        print(hn)
    else:
        print(plot([("N", np), ("H", hn)]))
    return EXIT_OK


def cmd_hom(args) -> int:
    data = load_json(args.path)
    if not isinstance(data, dict) or not {"source", "target"} <= set(data) or set(data) - {"source", "target", "field"}:
        raise InvalidArgument("hom input is {\"source\": module, \"target\": module} with an optional 'field'")
    field = _field(args, FiniteField.from_json(data["field"]) if "field" in data else None)
    src = DieudonneModuleFp.from_json(data["source"], field)
    tgt = DieudonneModuleFp.from_json(data["target"], field)
    shape = dmodule_hom(src, tgt)
    print(_dump({"hom": shape.to_json(), "text": str(shape)}) if args.json else str(shape))
    return EXIT_OK


def cmd_domino(args) -> int:
    field = _field(args, gf(2, 1))
    N = args.truncation if args.truncation is not None else args.t + 2
    dom = TruncatedDomino(field, args.t, N)
    out = {f"degree{part}": {"kernel": kernel_one_minus_F(dom, part), "cokernel": cokernel_one_minus_F(dom, part)}
           for part in (0, 1)}
    if args.json:
        print(_dump({"field": str(field), "t": args.t, "N": N, **out}))
    else:
        print(f"U_{args.t} over {field}, N = {N}")
        for key, val in out.items():
            print(f"  {key}: dim ker(1-F) = {val['kernel']}, dim coker(1-F) = {val['cokernel']}")
    return EXIT_OK


def cmd_check(args) -> int:
    checks = select(args.name)
    if not checks:
        raise InvalidArgument(f"no catalog entry named {args.name!r}")
    results = run_checks(checks)
    if args.json:
        print(_dump([{"name": n, "pass": ok, "detail": d} for n, ok, d in results]))
    else:
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}"))
        print(f"{sum(ok for _, ok, _ in results)}/{len(results)} passed")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_INPUT


def cmd_version(args) -> int:
    print(_dump({"version": __version__}) if args.json else __version__)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "table": cmd_table,
    "polygon": cmd_polygon,
    "hom": cmd_hom,
    "domino": cmd_domino,
    "check": cmd_check,
    "version": cmd_version,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"pbrauer: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InternalConsistencyError as exc:
        print(f"pbrauer: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ResourceError) as exc:
        print(f"pbrauer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PBrauerError as exc:
        print(f"pbrauer: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
