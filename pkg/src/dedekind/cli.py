"""``dedekind`` command-line tool.

Exit codes: 0 success / agreement, 1 mathematical disagreement or failed
identity, 2 usage or input error.  JSON goes to stdout as one document;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import secrets
import statistics
import sys
import time
from fractions import Fraction
from math import gcd

from . import closed, core, fast
from .errors import DedekindError
from .exact import render, to_json
from .identities import IdentityId, parse_identities, sweep

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _integer(text: str) -> int:
    text = text.strip()
    if not text or not text.lstrip("+-").isdigit():
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(text)


def _fail(message: str) -> int:
    print(f"dedekind: {message}", file=sys.stderr)
    return EXIT_USAGE


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# -- eval ---------------------------------------------------------------------


def _evaluate(method: str, p: int, q: int, kind: str):
    if method == "naive":
        return core.naive_S(p, q) if kind == "S" else core.naive_s(p, q)
    if method == "fast":
        return fast.fast_S(p, q) if kind == "S" else fast.fast_s(p, q)
    value = closed.closed_form_S(p, q)
    if value is None or kind == "S":
        return value
    return value - Fraction(q - 1, 4)


def cmd_eval(args) -> int:
    p, q = args.p, args.q
    if p < 1 or q < 1:
        return _fail("p and q must be positive")
    if gcd(p, q) != 1:
        return _fail("p and q must be coprime")
    methods = ("naive", "fast", "closed") if args.method == "all" else (args.method,)
    values = {m: _evaluate(m, p, q, args.sum) for m in methods}
    if args.method == "closed" and values["closed"] is None:
        return _fail("no closed form applies")

    present = [v for v in values.values() if v is not None]
    agree = all(v == present[0] for v in present)
    rule = closed.closed_form_rule(p, q) if "closed" in values else None
    if args.format == "json":
        _emit_json(
            {
                "p": str(p),
                "q": str(q),
                "sum": args.sum,
                "values": {m: None if v is None else to_json(v) for m, v in values.items()},
                "rule": None if rule is None else rule[0].value,
                "agree": agree,
            }
        )
    elif len(methods) == 1:
        print(render(values[methods[0]]))
    else:
        for m, v in values.items():
            print(f"{m} {'n/a' if v is None else render(v)}")
        print(f"agree {'true' if agree else 'false'}")
    return EXIT_OK if agree else EXIT_MISMATCH


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        ids = parse_identities(args.identities)
    except ValueError as exc:
        names = ", ".join(i.value for i in IdentityId)
        return _fail(f"{exc}; valid identities: all, {names}")
    if args.q_max < 2:
        return _fail("--q-max must be at least 2")
    report = sweep(ids, args.q_max, fail_fast=args.fail_fast, keep_results=args.format == "csv")
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        _emit_json(report.to_json())
    for c in report.counterexamples:
        print(
            f"FAIL {c.identity.value} p={c.p} q={c.q} lhs={render(c.lhs)} rhs={render(c.rhs)}",
            file=sys.stderr,
        )
    return EXIT_OK if report.ok else EXIT_MISMATCH


# -- table ----------------------------------------------------------------------


TABLE_HEADER = ["p", "q", "b", "S_num", "S_den", "s_num", "s_den"]


def table_rows(q_max: int, residue=None):
    """Rows ``p, q, b, S, s`` for coprime ``p < q <= q_max`` in ``(q, p)`` order."""
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            b = q % p
            if residue is not None and b != residue:
                continue
            S = fast.fast_S(p, q)
            s = S - Fraction(q - 1, 4)
            yield [p, q, b, S.numerator, S.denominator, s.numerator, s.denominator]


def _parse_filter(text):
    if text is None:
        return None
    key, sep, value = text.partition("=")
    if key.strip() != "b" or not sep:
        raise ValueError(f"modulus filter must look like b=<k>, got {text!r}")
    return _integer(value)


def cmd_table(args) -> int:
    if args.q_max < 2:
        return _fail("--q-max must be at least 2")
    try:
        residue = _parse_filter(args.modulus_filter)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        return _fail(str(exc))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TABLE_HEADER)
        for row in table_rows(args.q_max, residue):
            writer.writerow([str(v) for v in row])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# -- bench ----------------------------------------------------------------------


def random_pair(rng: random.Random, bits: int) -> tuple[int, int]:
    """A coprime ``(p, q)`` with ``q`` of exactly ``bits`` bits and ``1 <= p < q``."""
    q = rng.getrandbits(bits - 1) | (1 << (bits - 1))
    while True:
        p = rng.randrange(1, q)
        if gcd(p, q) == 1:
            return p, q


def _time_ns(func, *args) -> tuple[int, object]:
    start = time.perf_counter_ns()
    value = func(*args)
    return time.perf_counter_ns() - start, value


def _summary(samples: list[int]) -> dict:
    ordered = sorted(samples)
    p95 = ordered[min(len(ordered) - 1, max(0, -(-95 * len(ordered) // 100) - 1))]
    return {"median_ns": int(statistics.median(ordered)), "p95_ns": p95}


NAIVE_BITS_LIMIT = 24


def run_bench(q_bits: int, trials: int, seed: int) -> dict:
    rng = random.Random(seed)
    pairs = [random_pair(rng, q_bits) for _ in range(trials)]
    fast_ns, naive_ns, agree = [], [], True
    for p, q in pairs:
        t, value = _time_ns(fast.fast_S, p, q)
        fast_ns.append(t)
        if q_bits <= NAIVE_BITS_LIMIT:
            t, expected = _time_ns(core.naive_S, p, q)
            naive_ns.append(t)
            agree = agree and value == expected
    report = {
        "seed": str(seed),
        "q_bits": q_bits,
        "trials": trials,
        "fast": _summary(fast_ns),
        "naive": _summary(naive_ns) if naive_ns else None,
        "speedup": None,
        "agree": agree if naive_ns else None,
    }
    if naive_ns:
        report["speedup"] = statistics.median(naive_ns) / max(1, statistics.median(fast_ns))
    return report


def cmd_bench(args) -> int:
    if not 8 <= args.q_bits <= 256:
        return _fail("--q-bits must be between 8 and 256")
    if args.trials < 1:
        return _fail("--trials must be at least 1")
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    if not 0 <= seed < 2**64:
        return _fail("--seed must fit in 64 unsigned bits")
    report = run_bench(args.q_bits, args.trials, seed)
    _emit_json(report)
    return EXIT_MISMATCH if report["agree"] is False else EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dedekind", description="Exact Dedekind sums S(p,q) and s(p,q).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate S(p,q) or s(p,q)")
    ev.add_argument("--p", type=_integer, required=True)
    ev.add_argument("--q", type=_integer, required=True)
    ev.add_argument("--method", choices=["naive", "fast", "closed", "all"], default="fast")
    ev.add_argument("--sum", choices=["S", "s"], default="S")
    ev.add_argument("--format", choices=["plain", "json"], default="plain")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="check identities exhaustively")
    ve.add_argument("--identities", required=True, help="comma-separated tags or 'all'")
    ve.add_argument("--q-max", type=_integer, required=True)
    ve.add_argument("--format", choices=["json", "csv"], default="json")
    ve.add_argument("--fail-fast", action="store_true")
    ve.set_defaults(func=cmd_verify)

    ta = sub.add_parser("table", help="CSV table of S and s")
    ta.add_argument("--q-max", type=_integer, required=True)
    ta.add_argument("--modulus-filter", default=None, metavar="b=<k>")
    ta.add_argument("--out", default=None)
    ta.set_defaults(func=cmd_table)

    be = sub.add_parser("bench", help="time fast_S against the brute-force sum")
    be.add_argument("--q-bits", type=_integer, required=True)
    be.add_argument("--trials", type=_integer, required=True)
    be.add_argument("--seed", type=_integer, default=None)
    be.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DedekindError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
