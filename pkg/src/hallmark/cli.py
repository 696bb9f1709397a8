"""Command line: ``hallmark <command> ...``.

Exit codes: 0 success, 1 crosscheck disagreement, 2 usage or parse error,
3 resource cap exceeded, 4 request outside the certified scope.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arith
from .arith import PrimeSet
from .catalog import construct, parse_factors, parse_group
from .classifier import RULES, classify, report_as_dict, simple_Ustar_iff
from .catalog.facts import hall_facts
from .errors import DomainError, FormatError, HallmarkError, ResourceLimitError, ScopeError
from .groupfile import format_group_file, read_group_file
from .oracle import HallOracle, corpus_entry, full_sweep, golden_from_report, golden_path, load_golden, run_examples

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_RESOURCE, EXIT_SCOPE = 0, 1, 2, 3, 4


class UsageError(HallmarkError):
    pass


def _parse_pi(text: str) -> PrimeSet:
    pi = PrimeSet.parse(text)
    if not pi:
        raise UsageError("pi must be a non-empty list of primes, e.g. --pi 2,3")
    return pi


# ---------------------------------------------------------------------------
# classify


def _text_report(d: dict) -> str:
    lines = [f"factors: {', '.join(d['factors'])}", f"pi: {{{','.join(map(str, d['pi']))}}}",
             f"reading: {d['reading']}",
             f"pi-separable: {d['pi_separable']}  pi-soluble: {d['pi_soluble']}  pi-selected: {d['pi_selected']}",
             ""]
    for c in d["classes"]:
        lines.append(f"{c['class']}: {c['verdict']}")
        for cit in c["citations"]:
            where = f" [{cit['factor']}]" if cit["factor"] else ""
            lines.append(f"    {cit['rule']}{where}: {cit['statement']}")
        extra = [f for f in c["flags"] if not f.startswith("reading=")]
        if extra:
            lines.append(f"    flags: {', '.join(extra)}")
    if d["corollaries"]:
        lines.append("")
        lines.append("sharpened conclusions:")
        for c in d["corollaries"]:
            v = c["verdict"] or "-"
            note = f" ({c['note']})" if c["note"] else ""
            lines.append(f"  {c['target']}: {v} by {c['rule']}{note}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    factors = parse_factors(args.factors)
    pi = _parse_pi(args.pi)
    report = classify(factors, pi, reading=args.reading, facts=hall_facts())
    d = report_as_dict(report)
    if args.format == "json":
        sys.stdout.write(json.dumps(d, indent=2) + "\n")
    else:
        sys.stdout.write(_text_report(d))
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle


def _load_group(args):
    if args.group_file:
        return read_group_file(args.group_file)
    try:
        return corpus_entry(args.builtin).build()
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def cmd_oracle(args) -> int:
    G = _load_group(args)
    pi = _parse_pi(args.pi)
    oracle = HallOracle(G)
    sigma = oracle.sigma(pi)
    checks = ("E", "C", "D") if args.check == "all" else (args.check,)
    if any(c in ("C", "D") for c in checks) and 2 < len(sigma) < len(oracle.spectrum):
        raise ScopeError(f"C and D need |pi ∩ pi(G)| <= 2; here pi ∩ pi(G) = {sigma}")
    props = oracle.properties(pi)
    if isinstance(props, str):
        raise ScopeError(props)
    name = G.name or "G"
    print(f"group {name} order {G.order()} degree {G.degree}; pi ∩ pi(G) = {sigma}")
    for c in checks:
        v = getattr(props, c)
        text = "unknown" if v is None else ("yes" if v else "no")
        extra = ""
        if c == "E" and props.witness is not None:
            extra = f" (witness order {props.witness.order})"
        if c == "C" and props.class_count is not None:
            extra = f" ({props.class_count} class{'es' if props.class_count != 1 else ''})"
        print(f"{c}{sigma}: {text}{extra}")
    if props.witness is not None and "E" in checks:
        for g in props.witness.subgroup.generators:
            print(f"  gen {g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# crosscheck and examples


def cmd_crosscheck(args) -> int:
    golden = None
    if not args.write_golden:
        path = args.golden or golden_path()
        try:
            golden = load_golden(path)
        except (ValueError, json.JSONDecodeError) as exc:
            print(f"unreadable golden file {path}: {exc}", file=sys.stderr)
            return EXIT_DISAGREE
        if golden is None and args.golden:
            raise UsageError(f"golden file {args.golden} not found")
    report = full_sweep(args.max_pi, include_stretch=args.stretch, require_stretch=args.require_stretch,
                        golden=golden)
    body = report.to_json() if args.format == "json" else report.to_text(timings=args.timings)
    if args.report:
        Path(args.report).write_text(body)
    else:
        sys.stdout.write(body)
    if args.write_golden:
        Path(args.write_golden).write_text(golden_from_report(report))
    if not report.ok:
        for r in report.disagreements:
            print(f"DISAGREE {r.key}: {r.note}", file=sys.stderr)
        for f in report.failures:
            print(f"FAIL {f}", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_examples(args) -> int:
    checks = run_examples(stretch=args.stretch, require_stretch=args.stretch)
    for e in checks:
        print(f"[{e.status}] {e.claim}" + (f"  ({e.detail})" if e.detail else ""))
    return EXIT_DISAGREE if any(e.status == "FAIL" for e in checks) else EXIT_OK


# ---------------------------------------------------------------------------
# arithmetic


def cmd_arith(args) -> int:
    if args.what == "order":
        print(arith.mult_order(args.q, args.r))
    elif args.what == "two-power":
        sols = arith.prime_powers_beside_two_power(args.sign, args.bound)
        op = "+" if arith._normalize_sign(args.sign) == "plus" else "-"
        for p, k, n in sols:
            print(f"{p}^{k} {op} 1 = 2^{n}")
        if arith.beside_two_power_is_expected(args.sign, sols):
            print("conforms: every solution has k = 1, apart from 3^2 - 1 = 2^3")
        else:
            print("DOES NOT CONFORM to the expected solution set")
            return EXIT_DISAGREE
    elif args.what == "three-power":
        sols = arith.solve_three_power_quadratic(args.sign, args.bound)
        mid = "+" if arith._normalize_sign(args.sign) == "plus" else "-"
        for k, n in sols:
            print(f"{k}^2 {mid} {k} + 1 = 3^{n}")
        if arith.three_power_quadratic_is_expected(args.sign, sols):
            print("conforms: the only solution is " + ("k = 1, n = 1" if mid == "+" else "k = 2, n = 1"))
        else:
            print("DOES NOT CONFORM to the expected solution set")
            return EXIT_DISAGREE
    elif args.what == "mersenne":
        f = arith.is_mersenne_prime(args.p)
        print(f"f={f}" if f is not None else "not a Mersenne prime")
    return EXIT_OK


# ---------------------------------------------------------------------------
# simple groups and export


def cmd_simple(args) -> int:
    S = parse_group(args.group)
    pi = _parse_pi(args.pi)
    try:
        v = simple_Ustar_iff(S, pi)
    except ScopeError as exc:
        raise ScopeError(f"{exc}; try: hallmark classify --factors '{S.label}' --pi {args.pi}") from exc
    print(f"Ustar({S.label}, {pi}): {v.value.value}")
    for c in v.justification:
        print(f"    {c.rule}: {RULES[c.rule]}")
    return EXIT_OK


def cmd_export(args) -> int:
    if args.builtin:
        try:
            entry = corpus_entry(args.builtin)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        G = entry.build()
        comment = f"{entry.name}, order {G.order()}"
    else:
        G = construct(args.group)
        comment = f"{args.group}, order {G.order()}"
    text = format_group_file(G, comment)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallmark", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="decide class membership from composition factors")
    c.add_argument("--factors", required=True, help="e.g. C2,PSL(2,7)")
    c.add_argument("--pi", required=True, help="comma-separated primes")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--reading", choices=("relative", "absolute"), default="relative",
                   help="how conditions such as pi' = {3} are read (default: relative to the factors' primes)")
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("oracle", help="brute-force E, C, D for a permutation group")
    src = o.add_mutually_exclusive_group(required=True)
    src.add_argument("--group-file")
    src.add_argument("--builtin", help="corpus label, e.g. PSL(2,7)")
    o.add_argument("--pi", required=True)
    o.add_argument("--check", choices=("E", "C", "D", "all"), default="all")
    o.set_defaults(func=cmd_oracle)

    x = sub.add_parser("crosscheck", help="sweep the corpus against facts, classifier and golden file")
    x.add_argument("--max-pi", type=int, default=2)
    x.add_argument("--stretch", action="store_true", help="include the stretch tier")
    x.add_argument("--require-stretch", action="store_true", help="include the stretch tier and fail on its errors")
    x.add_argument("--golden", help="golden file (default: the packaged one)")
    x.add_argument("--write-golden", metavar="PATH", help="write a fresh golden file instead of comparing")
    x.add_argument("--report", help="write the report here instead of stdout")
    x.add_argument("--format", choices=("text", "json"), default="text")
    x.add_argument("--timings", action="store_true", help="add per-row runtimes to the text report")
    x.set_defaults(func=cmd_crosscheck)

    e = sub.add_parser("examples", help="reproduce the worked examples")
    e.add_argument("--stretch", action="store_true")
    e.set_defaults(func=cmd_examples)

    a = sub.add_parser("arith", help="number-theoretic utilities")
    asub = a.add_subparsers(dest="what", required=True)
    ao = asub.add_parser("order", help="multiplicative order e(q, r)")
    ao.add_argument("--q", type=int, required=True)
    ao.add_argument("--r", type=int, required=True)
    for name, helptext in (("two-power", "prime powers p^k with p^k -+ 1 a power of 2"),
                           ("three-power", "k with k^2 +- k + 1 a power of 3")):
        s = asub.add_parser(name, help=helptext)
        s.add_argument("--sign", required=True, help="plus or minus")
        s.add_argument("--bound", type=int, required=True)
    am = asub.add_parser("mersenne", help="f with p = 2^f - 1 prime")
    am.add_argument("--p", type=int, required=True)
    a.set_defaults(func=cmd_arith)

    s = sub.add_parser("simple", help="U* membership for a simple group and pi inside pi(S) minus 2")
    s.add_argument("--group", required=True)
    s.add_argument("--pi", required=True)
    s.set_defaults(func=cmd_simple)

    x = sub.add_parser("export", help="write a group file")
    src = x.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin")
    src.add_argument("--group", help="catalog label or PGL(2,q)")
    x.add_argument("--output")
    x.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ScopeError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (UsageError, FormatError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
