"""Command line front end.

Every subcommand writes JSON (one object per line) unless ``--pretty`` is
given.  Exit status: 0 on success, 1 on usage, validation or I/O errors,
2 when a bound or conformance check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .diagram import to_gauss_code, to_pd_code, writhe
from .errors import ParseError, PetalError
from .expansion import CONVENTIONS, FROZEN_CONVENTION, expand
from .front import enumerate_closures, front_verdict, rainbow_closure
from .invariants import BRACKET_CAP, candidate_names, determinant, jones
from .petal_core import (
    LagrangianPetalDiagram,
    canonical_twists,
    rotation_number,
    thurston_bennequin,
    validate_permutation,
)
from .render import SvgOptions, render_svg
from .search import (
    exhaustive_scan,
    lambda_audit,
    oracle_conformance,
    square_property_scan,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2

SEARCH_MODES = {
    "bound": "bound_check",
    "histogram": "histogram",
    "max": "maximizers",
    "conformance": None,
    "lambda-audit": None,
    "squares": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _diagram(args) -> LagrangianPetalDiagram:
    perm = validate_permutation(_int_list(args.perm))
    if getattr(args, "twists", None):
        return LagrangianPetalDiagram(perm, _int_list(args.twists))
    return canonical_twists(perm)


# --- output ---------------------------------------------------------------------


def _emit(records: list[dict], pretty: bool, out=None) -> None:
    out = out or sys.stdout
    if not pretty:
        for r in records:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
        return
    if len(records) == 1:
        width = max(len(k) for k in records[0])
        for k, v in records[0].items():
            out.write(f"{k:<{width}}  {_cell(v)}\n")
        return
    cols = list(dict.fromkeys(k for r in records for k in r))
    table = [[_cell(r.get(c, "")) for c in cols] for r in records]
    widths = [max(len(c), *(len(row[i]) for row in table)) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    for row in table:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


# --- subcommands ----------------------------------------------------------------


def cmd_tb(args) -> int:
    d = _diagram(args)
    r = thurston_bennequin(d)
    rec = {"n": d.n, "k": r.k}
    if d.n > 1:
        rec["sigma_sum"] = r.sigma_sum
    rec["tb"] = r.tb
    rec["rot"] = rotation_number(d)
    _emit([rec], args.pretty)
    return EXIT_OK


cmd_rot = cmd_tb


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_expand(args) -> int:
    e = expand(_diagram(args), args.convention)
    code = to_pd_code(e) if args.format == "pd" else to_gauss_code(e)
    _write(code + "\n", args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    svg = render_svg(_diagram(args), SvgOptions(labels=args.labels))
    _write(svg, args.output)
    return EXIT_OK


def cmd_search(args) -> int:
    mode = args.mode
    timing = args.timing
    if mode == "conformance":
        rep = oracle_conformance(args.n)
        _emit([rep.to_dict(timing)], args.pretty)
        return EXIT_OK if rep.all_agree else EXIT_CHECK
    if mode == "lambda-audit":
        rows = lambda_audit(args.n)
        _emit(rows, args.pretty)
        return EXIT_OK if all(r["k_ok"] and r["writhe_agrees"] for r in rows) else EXIT_CHECK
    if mode == "squares":
        rep = square_property_scan(args.n, samples=args.samples, seed=args.seed)
        d = rep.to_dict()
        _emit([d], args.pretty)
        return EXIT_OK if d["violations"] == 0 and rep.count_ok else EXIT_CHECK
    rep = exhaustive_scan(args.n, SEARCH_MODES[mode])
    _emit([rep.to_dict(timing)], args.pretty)
    return EXIT_OK if rep.bound_satisfied else EXIT_CHECK


def cmd_front(args) -> int:
    pats = [rainbow_closure(args.n)] if args.closures == "rainbow" else enumerate_closures(args.n)
    recs = [front_verdict(args.n, p, args.convention).as_dict() for p in pats]
    _emit(recs, args.pretty)
    return EXIT_OK if all(r["consistent"] for r in recs) else EXIT_CHECK


def cmd_identify(args) -> int:
    d = _diagram(args)
    e = expand(d, args.convention)
    det = determinant(e)
    rec = {"perm": ",".join(map(str, d.perm.heights)), "crossings": len(e.crossings), "writhe": writhe(e), "determinant": det}
    if len(e.crossings) <= BRACKET_CAP:
        v = jones(e)
        rec["jones"] = str(v)
        rec["capped"] = False
    else:
        v = None
        rec["jones"] = None
        rec["capped"] = True
    rec["candidate_names"] = candidate_names(det, v)
    _emit([rec], args.pretty)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--convention", choices=CONVENTIONS, default=FROZEN_CONVENTION)
    common.add_argument("--pretty", action="store_true", help="human-readable tables")

    parser = _Parser(prog="petalknots", description="Petal projections of Legendrian knots.", parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def perm_command(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("perm", help="heights in traversal order, e.g. 1,3,2")
        p.add_argument("--twists", help="half-twists per petal (default: one per ascent)")
        p.set_defaults(func=fn)
        return p

    perm_command("tb", cmd_tb, "Thurston-Bennequin number")
    perm_command("rot", cmd_rot, "rotation number")
    p = perm_command("expand", cmd_expand, "classical diagram code")
    p.add_argument("--format", choices=("pd", "gauss"), default="pd")
    p.add_argument("-o", "--output")
    p = perm_command("render", cmd_render, "SVG drawing")
    p.add_argument("-o", "--output")
    p.add_argument("--labels", action="store_true")
    perm_command("identify", cmd_identify, "determinant, Jones polynomial and a name")

    p = sub.add_parser("search", parents=[common], help="scans over permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=tuple(SEARCH_MODES), default="bound")
    p.add_argument("--timing", action="store_true", help="include wall-clock runtime")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("front", parents=[common], help="half-twist closures")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--closures", choices=("all", "rainbow"), default="all")
    p.set_defaults(func=cmd_front)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except PetalError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
