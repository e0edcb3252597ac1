"""Command-line interface: ``subatomic <command> ...``.

Exit codes: 0 success, 1 invalid derivation or non-tautology, 2 usage or
parse error, 3 semantic error (unbound atom, order mismatch, bad input to
a construction).
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import constructions as cons
from . import formula as fm
from .derivation import (
    DerivationError,
    check,
    metrics,
    parse_derivation,
    print_derivation,
    print_derivation_pretty,
)
from .formula import AND, OR, Context, FormulaError, ParseError, UnboundAtomError
from .projection import eliminate_cuts, project_derivation
from .sdt import NotTautology, apply_rodt, parse_order, prove_tautology, to_sdt
from .statman import STATS_HEADER, stats_csv_row, statman_formula, statman_proof, statman_stats

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str, strict: bool = False):
    return parse_derivation(_read_text(path), strict=strict)


def _emit(d, args) -> None:
    text = print_derivation_pretty(d) if getattr(args, "pretty", False) else print_derivation(d)
    print(text)


def _conn(word: str) -> str:
    table = {"and": AND, "or": OR, "&": AND, "|": OR}
    if word in table:
        return table[word]
    fm.check_atom_name(word)
    return word


def _parse_assignment(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep or value.strip() not in ("0", "1"):
            raise UsageError(f"bad assignment {part!r}; expected name=0 or name=1")
        out[fm.check_atom_name(name.strip())] = int(value)
    return out


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    report = check(_load(args.file, strict=args.strict))
    print(report.to_text().rstrip("\n"))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_eval(args) -> int:
    f = fm.parse_formula(args.formula)
    print(fm.evaluate(f, _parse_assignment(args.assign or "")))
    return EXIT_OK


def _require_valid(d) -> None:
    report = check(d)
    if not report.valid:
        print(report.to_text().rstrip("\n"), file=sys.stderr)
        raise DerivationError("input derivation is not valid")


def cmd_elim_cuts(args) -> int:
    d = _load(args.file)
    _require_valid(d)
    order = parse_order(args.atom_order) if args.atom_order else None
    _emit(eliminate_cuts(d, order), args)
    return EXIT_OK


def cmd_project(args) -> int:
    d = _load(args.file)
    _require_valid(d)
    _emit(project_derivation(d, fm.check_atom_name(args.atom), args.side), args)
    return EXIT_OK


# name -> (argument kinds, builder); kinds: f formula, k context, a atom
CONSTRUCTIONS = {
    "weakening": ("f", lambda A, o: cons.weakening(A)),
    "coweakening": ("f", lambda A, o: cons.coweakening(A)),
    "attach-unit": ("fa", lambda A, a, o: cons.attach_unit(A, a, o.side or cons.RIGHT1)),
    "unnest": ("ffa", lambda B, C, a, o: cons.unnest(B, C, a)),
    "renest": ("ffa", lambda B, C, a, o: cons.renest(B, C, a)),
    "flatten": ("f", lambda A, o: cons.flatten_to_prop(A)[2 if o.side == "up" else 1]),
    "contraction": ("f", lambda A, o: cons.contraction(A, _conn(o.conn or "or"))),
    "cocontraction": ("f", lambda A, o: cons.cocontraction(A, _conn(o.conn or "and"))),
    "merge-in": ("kff", lambda K, A, B, o: cons.merge_in(K, A, B)),
    "merge-out": ("kff", lambda K, A, B, o: cons.merge_out(K, A, B)),
    "dt-weakening": ("kfffa", lambda K, A, B, C, a, o: cons.dt_weakening(K, A, B, C, a, o.side or cons.LEFT)),
    "reorder-up": ("fa", lambda A, a, o: cons.reorder_up(A, a)),
    "reorder-down": ("fa", lambda A, a, o: cons.reorder_down(A, a)),
    "ac": ("ff", lambda A, B, o: cons.ac_derivation(A, B)),
}


def cmd_construct(args) -> int:
    kinds, build = CONSTRUCTIONS[args.name]
    if len(args.args) != len(kinds):
        raise UsageError(f"construct {args.name} takes {len(kinds)} arguments ({kinds}), got {len(args.args)}")
    values = []
    for kind, text in zip(kinds, args.args):
        if kind == "f":
            values.append(fm.parse_formula(text))
        elif kind == "k":
            values.append(fm.parse_context(text))
        else:
            values.append(fm.check_atom_name(text))
    _emit(build(*values, args), args)
    return EXIT_OK


def cmd_statman(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.emit == "formula":
        print(fm.print_formula(statman_formula(args.n).formula))
    elif args.emit == "stats":
        print(STATS_HEADER)
        print(stats_csv_row(statman_stats(args.n)))
    else:
        _emit(statman_proof(args.n), args)
    return EXIT_OK


def cmd_to_sdt(args) -> int:
    f = fm.parse_formula(args.formula)
    order = parse_order(args.order) if args.order else None
    B, up_d, down_d = to_sdt(f, order, with_down=args.emit == "down")
    if args.emit == "tree":
        print(fm.print_formula(B))
    else:
        _emit(up_d if args.emit == "up" else down_d, args)
    return EXIT_OK


def cmd_apply(args) -> int:
    A, B = fm.parse_formula(args.f1), fm.parse_formula(args.f2)
    order = parse_order(args.order) if args.order else None
    C, cert = apply_rodt(A, B, _conn(args.conn), order)
    if args.emit == "result":
        print(fm.print_formula(C))
    else:
        _emit(cert, args)
    return EXIT_OK


def cmd_prove(args) -> int:
    f = fm.parse_formula(args.formula)
    order = parse_order(args.order) if args.order else None
    result = prove_tautology(f, order)
    if isinstance(result, NotTautology):
        print(result)
        return EXIT_INVALID
    _emit(result, args)
    return EXIT_OK


def cmd_stats(args) -> int:
    d = _load(args.file)
    m = metrics(d)
    report = check(d)
    if not args.no_header:
        print("width,height,size,cuts")
    print(f"{m.width},{m.height},{m.size},{report.cut_count}")
    return EXIT_OK if report.valid else EXIT_INVALID


# -- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subatomic", description="Decision-tree deep-inference proof toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_pretty(sp):
        sp.add_argument("--pretty", action="store_true", help="indented derivation output")
        return sp

    sp = sub.add_parser("check", help="check a derivation file")
    sp.add_argument("file")
    sp.add_argument("--strict", action="store_true", help="report the offset of bad rule names")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("eval", help="evaluate a formula")
    sp.add_argument("formula")
    sp.add_argument("--assign", default="", help="e.g. a=0,b=1")
    sp.set_defaults(func=cmd_eval)

    sp = with_pretty(sub.add_parser("elim-cuts", help="eliminate all cuts from a proof"))
    sp.add_argument("file")
    sp.add_argument("--atom-order", default=None, help="comma-separated cut atom order")
    sp.set_defaults(func=cmd_elim_cuts)

    sp = with_pretty(sub.add_parser("project", help="project a derivation on an atom"))
    sp.add_argument("file")
    sp.add_argument("--atom", required=True)
    sp.add_argument("--side", choices=[cons.LEFT, cons.RIGHT], required=True)
    sp.set_defaults(func=cmd_project)

    sp = with_pretty(sub.add_parser("construct", help="build a derivation from a construction"))
    sp.add_argument("name", choices=sorted(CONSTRUCTIONS))
    sp.add_argument("args", nargs="*")
    sp.add_argument("--conn", default=None, help="connective for (co)contraction: and, or or an atom")
    sp.add_argument("--side", default=None, help="side for attach-unit, dt-weakening, flatten (up/down)")
    sp.set_defaults(func=cmd_construct)

    sp = with_pretty(sub.add_parser("statman", help="Statman tautologies and their proofs"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--emit", choices=["proof", "formula", "stats"], default="proof")
    sp.set_defaults(func=cmd_statman)

    sp = with_pretty(sub.add_parser("to-sdt", help="translate to an ordered decision tree"))
    sp.add_argument("formula")
    sp.add_argument("--order", default=None)
    sp.add_argument("--emit", choices=["tree", "up", "down"], default="tree")
    sp.set_defaults(func=cmd_to_sdt)

    sp = with_pretty(sub.add_parser("apply", help="combine two reduced ordered decision trees"))
    sp.add_argument("f1")
    sp.add_argument("f2")
    sp.add_argument("--conn", choices=["and", "or"], required=True)
    sp.add_argument("--order", default=None)
    sp.add_argument("--emit", choices=["result", "cert"], default="result")
    sp.set_defaults(func=cmd_apply)

    sp = with_pretty(sub.add_parser("prove", help="prove a tautology cut-free"))
    sp.add_argument("formula")
    sp.add_argument("--order", default=None)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("stats", help="width,height,size,cuts of a derivation")
    sp.add_argument("file")
    sp.add_argument("--no-header", action="store_true")
    sp.set_defaults(func=cmd_stats)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DerivationError as exc:
        print(f"invalid derivation: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UnboundAtomError, FormulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
