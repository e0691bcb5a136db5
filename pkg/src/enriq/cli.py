"""Command-line front end.

Exit codes: 0 holds, 1 a checked property fails, 2 axiom violation,
3 parse error, 4 unsupported, 5 resource cap.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any

from . import analysis, laws, macneille
from . import serialize as ser
from .errors import (
    AxiomViolation,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedError,
    UsageError,
)
from .isbell import DEFAULT_CAP
from .qcategory import QCategory, is_skeletal

EXIT_OK, EXIT_FAILS, EXIT_AXIOM, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_CAP = range(6)


def _default_cap() -> int:
    raw = os.environ.get("ENRIQ_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError:
        raise UsageError(f"ENRIQ_CAP must be a positive integer, got {raw!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _category_section(doc: Any, key: str = "category") -> QCategory:
    """A bare category document, or one nested under ``key``."""
    if isinstance(doc, dict) and key in doc:
        return ser.parse_category(doc[key], key)
    return ser.parse_category(doc)


def _violation_json(v) -> dict:
    enc = ser.encode_any
    return {"axiom": v.axiom, "witness": [enc(w) for w in v.witness], "lhs": enc(v.lhs), "rhs": enc(v.rhs)}


# --- commands ---------------------------------------------------------------------


def cmd_validate(args) -> tuple[int, Any]:
    doc = ser.load_file(args.path)
    C = _category_section(doc)
    report = {"valid": True, "objects": len(C), "skeletal": is_skeletal(C)}
    if isinstance(doc, dict) and "pair" in doc:
        ser.parse_pair(C, doc["pair"])
    if isinstance(doc, dict) and "balls" in doc:
        ser.parse_balls(C, doc["balls"])
    return EXIT_OK, report


def cmd_check(args) -> tuple[int, Any]:
    C = _category_section(ser.load_file(args.path))
    q = C.quantale
    wanted = {k for k in ("skeletal", "complete", "injective", "convex") if getattr(args, k)}
    if not wanted:
        wanted = {"skeletal"}
        if q.is_finite:
            wanted |= {"complete", "injective"}
        if q.kind == "chain_trop" or (q.kind == "lawvere_rat" and args.grid_den):
            wanted.add("convex")
    if q.kind == "lawvere_rat" and "convex" in wanted and not args.grid_den:
        raise UsageError("--convex over lawvere_rat needs --grid-den")

    report: dict = {"witnesses": {}}
    holds = []
    if "skeletal" in wanted:
        report["skeletal"] = is_skeletal(C)
        holds.append(report["skeletal"])
    if "complete" in wanted:
        r = analysis.is_complete(C)
        report["complete"] = {
            "powered": r.powered,
            "copowered": r.copowered,
            "order_complete": r.order_complete,
            "complete": r.complete,
        }
        if r.power_witness is not None:
            c, x = r.power_witness
            report["witnesses"]["power"] = {"object": c, "by": q.encode(x)}
        if r.copower_witness is not None:
            c, x = r.copower_witness
            report["witnesses"]["copower"] = {"object": c, "by": q.encode(x)}
        if r.order_witness is not None:
            report["witnesses"]["order"] = {"no_join_of": list(r.order_witness)}
        holds.append(r.complete)
    if "injective" in wanted:
        mn = macneille.mn_construct(C, args.cap, args.jobs)
        inj = analysis.is_injective(C, args.cap, mn)
        report["injective"] = inj.injective
        report["essential_i"] = analysis.is_essential_embedding(mn.embedding_functor())
        if inj.retraction is not None:
            report["witnesses"]["retraction"] = inj.retraction
        holds += [inj.injective, report["essential_i"]]
    if "convex" in wanted:
        cv = analysis.is_isbell_convex(C, args.grid_den, args.cap)
        report["convex"] = cv.convex
        if cv.counterexample is not None:
            report["witnesses"]["convexity"] = ser.encode_pair(C, cv.counterexample)
        holds.append(cv.convex)
    return (EXIT_OK if all(holds) else EXIT_FAILS), report


def cmd_macneille(args) -> tuple[int, Any]:
    C = _category_section(ser.load_file(args.path))
    mn = macneille.mn_construct(C, args.cap, args.jobs)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(ser.dot_completion(mn))
    if args.format == "dot":
        return EXIT_OK, ser.dot_completion(mn)
    return EXIT_OK, ser.encode_completion(mn)


def cmd_closure(args) -> tuple[int, Any]:
    doc = ser.load_file(args.path)
    C = _category_section(doc)
    if isinstance(doc, dict) and "balls" in doc:
        balls = ser.parse_balls(C, doc["balls"])
        r = analysis.check_ball_system(C, balls)
        report = {
            "consistent": r.consistent,
            "witness": r.witness,
            "induced": ser.encode_pair(C, r.pair),
            "hull_point": None if r.hull_point is None else ser.encode_pair(C, r.hull_point),
        }
        return (EXIT_OK if r.consistent else EXIT_FAILS), report
    if not isinstance(doc, dict) or "pair" not in doc:
        raise ParseError("expected a 'pair' or 'balls' section", args.path)
    pair = ser.parse_pair(C, doc["pair"])
    if not macneille.in_U(C, pair):
        return EXIT_FAILS, {"in_U": False, "member": False, "closure": None}
    member = macneille.mn_member(C, pair)
    closure = macneille.mn_closure(C, pair)
    return EXIT_OK, {"in_U": True, "member": member, "closure": ser.encode_pair(C, closure)}


def cmd_extend(args) -> tuple[int, Any]:
    doc = ser.load_file(args.path)
    if not isinstance(doc, dict):
        raise ParseError("expected an object", args.path)
    for key in ("C", "D", "E", "f", "i"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", args.path)
    C = ser.parse_category(doc["C"], "C")
    D = ser.parse_category(doc["D"], "D")
    if isinstance(doc["E"], dict) and "macneille" in doc["E"]:
        base = ser.parse_category(doc["E"]["macneille"], "E.macneille")
        E = macneille.mn_construct(base, args.cap, args.jobs).category
    else:
        E = ser.parse_category(doc["E"], "E")
    f = ser.parse_functor(doc["f"], C, E, "f")
    i = ser.parse_functor(doc["i"], C, D, "i")
    lan, ran = analysis.kan_lan(f, i), analysis.kan_ran(f, i)
    solutions = analysis.solve_extension(f, i, args.cap)
    q = C.quantale
    witnesses = {}
    for name, ext in (("lan", lan), ("ran", ran)):
        if ext.witness is not None:
            w = dict(ext.witness)
            if "by" in w:
                w["by"] = q.encode(w["by"])
            witnesses[name] = w
    report = {
        "lan": lan.mapping,
        "ran": ran.mapping,
        "solutions": [g.mapping for g in solutions],
        "witnesses": witnesses,
    }
    return (EXIT_OK if solutions else EXIT_FAILS), report


def cmd_lawbook(args) -> tuple[int, Any]:
    text = args.quantale
    doc = ser.loads(text, "<argument>") if text.lstrip().startswith("{") else ser.load_file(text)
    if isinstance(doc, dict) and "quantale" in doc:
        doc = doc["quantale"]
    q = ser.parse_quantale(doc)
    reports = laws.lawbook(q, seed=args.seed, samples=args.samples, trials=args.trials)
    failures = [_violation_json(v) for r in reports for v in r.failures]
    checked: dict = {}
    for r in reports:
        checked.update(r.checked)
    ok = all(r.ok for r in reports)
    report = {"quantale": q.spec(), "ok": ok, "checked": checked, "failures": failures}
    return (EXIT_OK if ok else EXIT_FAILS), report


# --- plumbing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=None, help="enumeration cap (default: ENRIQ_CAP or 10^7)")
    common.add_argument("--grid-den", type=_positive, default=None, help="grid denominator for lawvere_rat convexity")
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for enumeration")

    parser = argparse.ArgumentParser(prog="enriq", description="Quantale-enriched categories and their MacNeille completion.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the category axioms")
    p.add_argument("path")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("check", parents=[common], help="decide skeletality, completeness, injectivity, convexity")
    p.add_argument("path")
    p.add_argument("--skeletal", action="store_true")
    p.add_argument("--complete", action="store_true")
    p.add_argument("--injective", action="store_true")
    p.add_argument("--convex", action="store_true")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("macneille", parents=[common], help="build the MacNeille completion")
    p.add_argument("path")
    p.add_argument("--dot", default=None, help="also write a DOT diagram here")
    p.set_defaults(run=cmd_macneille)

    p = sub.add_parser("closure", parents=[common], help="close a pair or a ball system to a completion point")
    p.add_argument("path")
    p.set_defaults(run=cmd_closure)

    p = sub.add_parser("extend", parents=[common], help="Kan extensions and all extensions along a functor")
    p.add_argument("path")
    p.set_defaults(run=cmd_extend)

    p = sub.add_parser("lawbook", parents=[common], help="run the quantale and matrix law suite")
    p.add_argument("quantale", help="quantale spec as inline JSON or a file path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive, default=10_000)
    p.add_argument("--trials", type=_positive, default=200)
    p.set_defaults(run=cmd_lawbook)
    return parser


def _render(result: Any, fmt: str) -> str:
    if isinstance(result, str):
        return result
    if fmt == "text":
        return ser.to_text(result)
    return ser.dumps(result)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cap is None:
            args.cap = _default_cap()
        if args.format == "dot" and args.command != "macneille":
            raise UsageError("--format dot is only available for macneille")
        code, result = args.run(args)
        _emit(_render(result, args.format), args.out)
        return code
    except AxiomViolation as e:
        print(f"enriq: axiom violation: {e}", file=sys.stderr)
        _emit(ser.dumps({"valid": False, "violation": _violation_json(e.violation)}), args.out)
        return EXIT_AXIOM
    except ParseError as e:
        print(f"enriq: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedError as e:
        print(f"enriq: unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceLimitError as e:
        print(f"enriq: resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as e:
        print(f"enriq: {e}", file=sys.stderr)
        return EXIT_FAILS
    except UsageError as e:
        print(f"enriq: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
