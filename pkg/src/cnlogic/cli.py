"""Command line front end (``cnlogic``).

Usage errors exit with status 2, domain errors with status 1 and a single
``error: <code>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .cn_model import CnModel, validate
from .comparison import ComparisonModel, eval1, eval2, expressivity_separation
from .dynamics import announce_cut, announce_delete, eval_pc, eval_pcpm
from .errors import CnLogicError, SemanticsMismatchError
from .lab.builtins import builtin_comparison, builtin_ellsberg, builtin_lottery
from .lab.families import enumerate_families
from .lab.fuzz import SUITES, fuzz
from .lab.search import SEARCH_CAP, find_countermodel
from .semantics import holds
from .syntax import Language, desugar, language_of, parse, to_text, tr1, tr2
from .weight_model import WeightModel, eval_weight, induce_cn, validate_weight
from .worldset import iter_bits

SEMANTICS = ("cn", "weight", "pc", "pcpm", "cmp1", "cmp2")


class UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _infer_semantics(model, formula) -> str:
    lang = language_of(formula)
    if isinstance(model, ComparisonModel):
        return "cmp2" if lang is Language.QP else "cmp1"
    if lang is Language.PC:
        return "pc"
    if lang is Language.PCPM:
        return "pcpm"
    return "weight" if isinstance(model, WeightModel) else "cn"


def _evaluate(model, world: str, formula, semantics: str) -> bool:
    is_cmp = isinstance(model, ComparisonModel)
    if semantics in ("cmp1", "cmp2"):
        if not is_cmp:
            raise SemanticsMismatchError(f"{semantics} needs a comparison model")
        return (eval1 if semantics == "cmp1" else eval2)(model, world, formula)
    if is_cmp:
        raise SemanticsMismatchError(f"{semantics} does not apply to a comparison model")
    if semantics == "weight":
        if not isinstance(model, WeightModel):
            raise SemanticsMismatchError("weight semantics needs a weight model")
        return eval_weight(model, world, formula)
    if semantics == "cn" and not isinstance(model, CnModel):
        raise SemanticsMismatchError("cn semantics needs a neighbourhood model")
    if semantics == "pc":
        return eval_pc(model, world, formula)
    if semantics == "pcpm":
        return eval_pcpm(model, world, formula)
    return holds(model, world, formula)


# -- subcommands ---------------------------------------------------------------


def cmd_parse(args) -> int:
    f = parse(args.formula)
    if args.desugar:
        f = desugar(f, args.target)
    _out(to_text(f))
    return 0


def cmd_validate(args) -> int:
    m = io.load_model(args.model)
    if isinstance(m, CnModel):
        report = validate(m)
    elif isinstance(m, WeightModel):
        report = validate_weight(m)
    else:
        report = None
    doc = report.to_dict() if report is not None else {"ok": True, "violations": []}
    _out(io.dumps(doc))
    return 0 if doc["ok"] else 1


def cmd_check(args) -> int:
    m = io.load_model(args.model)
    f = parse(args.formula)
    semantics = args.semantics or _infer_semantics(m, f)
    _out("true" if _evaluate(m, args.world, f, semantics) else "false")
    return 0


def cmd_update(args) -> int:
    m = io.load_model(args.model)
    if isinstance(m, ComparisonModel):
        raise SemanticsMismatchError("comparison models have no updates")
    phi = parse(args.announce)
    new = announce_delete(m, phi) if args.mode == "delete" else announce_cut(m, phi)
    if args.out:
        io.save_model(new, args.out)
    else:
        _out(io.model_dumps(new))
    return 0


def cmd_translate(args) -> int:
    f = parse(args.formula)
    _out(to_text(tr1(f) if args.dir == "cn2qp" else tr2(f)))
    return 0


def cmd_fuzz(args) -> int:
    report = fuzz(args.suite, args.trials, args.seed, args.max_witnesses)
    _out(io.dumps(report.to_dict()))
    return 0 if report.ok else 1


def cmd_enumerate(args) -> int:
    fams = enumerate_families(args.size)
    listing = [[list(iter_bits(y)) for y in sorted(f.members, key=lambda y: (bin(y).count("1"), y))]
               for f in fams]
    _out(io.dumps({"size": args.size, "count": len(fams), "families": listing}))
    return 0


def cmd_countermodel(args) -> int:
    hit = find_countermodel(parse(args.formula), args.max_worlds)
    if hit is None:
        _out(f"valid up to bound {args.max_worlds}")
        return 0
    model, world = hit
    if args.out:
        io.save_model(model, args.out)
        _out(f"world: {world}")
    else:
        _out(io.dumps({"world": world, "model": io.model_to_dict(model)}))
    return 0


def cmd_example(args) -> int:
    if args.name == "comparison":
        n1, n2 = builtin_comparison()
        if args.out_dir:
            d = Path(args.out_dir)
            d.mkdir(parents=True, exist_ok=True)
            io.save_model(n1, d / "n1.json")
            io.save_model(n2, d / "n2.json")
        elif args.out:
            raise UsageError("the comparison example writes two models; use --out-dir")
        else:
            _out(io.dumps({"n1": io.model_to_dict(n1), "n2": io.model_to_dict(n2)}))
        return 0
    if args.name == "ellsberg":
        model = builtin_ellsberg()
    else:
        try:
            model = builtin_lottery(args.tickets, args.bought, args.heavy)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.explicit:
            model = induce_cn(model)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        io.save_model(model, d / f"{args.name}.json")
    elif args.out:
        io.save_model(model, args.out)
    else:
        _out(io.model_dumps(model))
    return 0


def cmd_separation(args) -> int:
    report = expressivity_separation(args.max_depth)
    _out(io.dumps(report.to_dict()))
    return 0 if report.separated else 1


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cnlogic", description="Conditional neighbourhood logic workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse and reprint a formula")
    s.add_argument("formula")
    s.add_argument("--desugar", action="store_true", help="expand defined operators")
    s.add_argument("--target", choices=("cn", "qp", "core"), default="cn")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("validate", help="check the conditions on a model file")
    s.add_argument("--model", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", help="evaluate a formula at a world")
    s.add_argument("--model", required=True)
    s.add_argument("--world", required=True)
    s.add_argument("--formula", required=True)
    s.add_argument("--semantics", choices=SEMANTICS)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("update", help="apply a public announcement")
    s.add_argument("--model", required=True)
    s.add_argument("--announce", required=True)
    s.add_argument("--mode", choices=("delete", "cut"), required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_update)

    s = sub.add_parser("translate", help="translate between belief and comparison formulas")
    s.add_argument("--dir", choices=("cn2qp", "qp2cn"), required=True)
    s.add_argument("--formula", required=True)
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("fuzz", help="run a seeded property suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-witnesses", type=int, default=3)
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("enumerate-families", help="list all valid families over a small ground set")
    s.add_argument("--size", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("find-countermodel", help="bounded search for a falsifying model")
    s.add_argument("--formula", required=True)
    s.add_argument("--max-worlds", type=int, default=SEARCH_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_countermodel)

    s = sub.add_parser("example", help="write a built-in model")
    s.add_argument("name", choices=("ellsberg", "lottery", "comparison"))
    s.add_argument("--tickets", type=int, default=4)
    s.add_argument("--bought", type=int, default=0)
    s.add_argument("--heavy", help="weight of the bought ticket, e.g. 5 or 9/2")
    s.add_argument("--explicit", action="store_true", help="lottery as its induced neighbourhood model")
    s.add_argument("--out")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("separation", help="compare the two comparison models")
    s.add_argument("--max-depth", type=int, default=2)
    s.set_defaults(func=cmd_separation)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: usage: {exc}\n")
        return 2
    except CnLogicError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
