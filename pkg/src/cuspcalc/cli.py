"""Command-line front end.

Exit status: 0 on success, 1 when a requested check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .chains import (adjoint, chain_from_inductance, discriminant, format_chain,
                     inductance, parse_chain, star)
from .classify import (DEFAULT_MAX_DEGREE, FamilyParams, assemble_global_graph, check_record,
                       family_data, match_family, parse_numerical_data, scan_candidates)
from .cusps import (char_from_mult, char_from_puiseux, format_mult, mult_from_char, parse_char,
                    parse_mult, parse_puiseux, puiseux_from_char, resolution_graph)
from .graphs import ContractionStuck

ENV_MAX_DEGREE = "CUSPCALC_MAX_DEGREE"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                     help="emit JSON")
    fmt.add_argument("--dot", action="store_true", default=argparse.SUPPRESS,
                     help="emit Graphviz DOT (resolve, verify)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print nothing; report through the exit status")

    parser = _Parser(prog="cuspcalc", parents=[common],
                     description="Chains, cusp resolutions and bicuspidal curve data.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("chain", parents=[common], help="linear chain arithmetic")
    p.add_argument("op", choices=["disc", "e", "adjoint", "star", "from-e"])
    p.add_argument("args", nargs="+")

    p = sub.add_parser("convert", parents=[common], help="convert between cusp encodings")
    p.add_argument("--from", dest="src", required=True, choices=["char", "mult", "puiseux"])
    p.add_argument("--to", dest="dst", required=True, choices=["char", "mult", "puiseux"])
    p.add_argument("value")

    p = sub.add_parser("resolve", parents=[common], help="resolution graph of a cusp")
    p.add_argument("char")

    p = sub.add_parser("classify", parents=[common], help="check one family instance")
    p.add_argument("--family", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="check numerical data")
    p.add_argument("data")

    p = sub.add_parser("scan", parents=[common], help="search small degrees")
    p.add_argument("--max-degree", type=int, required=True)
    return parser


def _scan_bound() -> int:
    raw = os.environ.get(ENV_MAX_DEGREE)
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENV_MAX_DEGREE} must be an integer, got {raw!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_chain(args):
    op, vals = args.op, args.args
    want = 2 if op == "star" else 1
    if len(vals) != want:
        raise InputError(f"chain {op} takes {want} argument(s), got {len(vals)}")
    if op == "from-e":
        try:
            q = Fraction(vals[0])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {vals[0]!r}") from None
        result = format_chain(chain_from_inductance(q))
    else:
        chains = [parse_chain(v) for v in vals]
        if op == "disc":
            result = str(discriminant(chains[0]))
        elif op == "e":
            result = str(inductance(chains[0]))
        elif op == "adjoint":
            result = format_chain(adjoint(chains[0]))
        else:
            result = format_chain(star(*chains))
    if args.json:
        return 0, _dump({"op": op, "args": vals, "result": result})
    return 0, result + "\n"


_READERS = {"char": parse_char, "mult": parse_mult, "puiseux": parse_puiseux}


def _cmd_convert(args):
    value = _READERS[args.src](args.value)
    ch = {"char": lambda v: v, "mult": char_from_mult, "puiseux": char_from_puiseux}[args.src](value)
    if args.dst == "char":
        out = ch
    elif args.dst == "mult":
        out = mult_from_char(ch)
    else:
        out = puiseux_from_char(ch)
    if args.json:
        record = {"from": args.src, "to": args.dst, "input": args.value, "result": str(out)}
        if args.dst == "mult":
            record["full"] = list(out.full)
        return 0, _dump(record)
    return 0, f"{out}\n"


def _cmd_resolve(args):
    res = resolution_graph(parse_char(args.char))
    if args.json:
        return 0, _dump(res.to_dict())
    if args.dot:
        return 0, res.assembled.to_dot("resolution")
    lines = [f"char {res.char}  mult {format_mult(mult_from_char(res.char).written)}",
             f"g = {res.g}, blow-ups = {res.vertex_count}"]
    for i, (A, B, o) in enumerate(zip(res.A, res.B, res.o), start=1):
        lines.append(f"A{i} = {format_chain(A)}  B{i} = {format_chain(B)}  o{i} = {o}")
    return 0, "\n".join(lines) + "\n"


def _report(nd, extra=None):
    """Run every check on ``nd``; returns (ok, record, graph or None)."""
    record = check_record(nd)
    record["contractible"] = False
    graph = None
    try:
        graph = assemble_global_graph(nd)
        record["contractible"] = True
    except ContractionStuck:
        pass
    record["family"] = [[p.family, p.a, p.b] for p in match_family(nd)]
    if extra:
        record.update(extra)
    ok = record["genus_ok"] and record["contractible"] and record["c_prime_sq"] <= 0
    return ok, record, graph


def _text_report(nd, record) -> str:
    genus = "ok" if record["genus_ok"] else "FAILED"
    trees = "ok" if record["contractible"] else "FAILED"
    fam = ", ".join(f"family {f} (a={a}, b={b})" for f, a, b in record["family"]) or "none"
    return (f"{nd}\n"
            f"genus: {genus}, (C')^2 = {record['c_prime_sq']}\n"
            f"exceptional trees contract: {trees}\n"
            f"table match: {fam}\n")


def _cmd_classify(args):
    p = FamilyParams(args.family, args.a, args.b)
    nd = family_data(p)
    ok, record, graph = _report(nd, {"params": [p.family, p.a, p.b]})
    ok = ok and record["c_prime_sq"] == -1
    if args.json:
        return int(not ok), _dump(record)
    return int(not ok), _text_report(nd, record)


def _cmd_verify(args):
    nd = parse_numerical_data(args.data)
    ok, record, graph = _report(nd)
    if args.json:
        return int(not ok), _dump(record)
    if args.dot and graph is not None:
        return int(not ok), graph.to_dot("curve")
    return int(not ok), _text_report(nd, record)


def _cmd_scan(args):
    found = scan_candidates(args.max_degree, bound=_scan_bound())
    records = []
    for nd in found:
        rec = check_record(nd)
        rec["family"] = [[p.family, p.a, p.b] for p in match_family(nd)]
        records.append(rec)
    if args.json:
        return 0, _dump(records)
    lines = [f"{'d':>3}  {'cusps':<32} family"]
    for nd, rec in zip(found, records):
        fam = ";".join(f"{f}(a={a},b={b})" for f, a, b in rec["family"]) or "-- not in table"
        cusps = "{" + ",".join(str(c) for c in nd.cusps) + "}"
        lines.append(f"{nd.degree:>3}  {cusps:<32} {fam}")
    return 0, "\n".join(lines) + "\n"


_COMMANDS = {
    "chain": _cmd_chain,
    "convert": _cmd_convert,
    "resolve": _cmd_resolve,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        for flag in ("json", "dot", "quiet"):
            setattr(args, flag, getattr(args, flag, False))
        if args.json and args.dot:
            raise InputError("--json and --dot are mutually exclusive")
        status, text = _COMMANDS[args.verb](args)
    except (InputError, ValueError) as exc:
        print(f"cuspcalc: error: {exc}", file=stderr)
        return 2
    if not args.quiet:
        stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
