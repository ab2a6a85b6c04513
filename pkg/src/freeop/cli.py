"""Command-line frontend with stable, scriptable output.

Exit codes: 0 success, 1 mathematical failure (confluence FAIL),
2 usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import dims as dims_mod
from . import shuffle as sh
from . import spnet
from . import trees
from .dims import OperadError

ENUM_MAX = 7


class CliError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def resolve_operad(spec: str) -> dims_mod.OperadDims:
    """Resolve a builtin id, `builtin:<id>`, or `<config-file>:<name>`."""
    if spec.startswith("builtin:"):
        return dims_mod.builtin_operad(spec.split(":", 1)[1])
    if ":" in spec:
        path, name = spec.rsplit(":", 1)
        if not os.path.exists(path):
            raise CliError(f"operad config file not found: {path}")
        with open(path, encoding="utf-8") as fh:
            table = dims_mod.parse_operad_config(fh.read())
        if name not in table:
            raise CliError(f"operad {name!r} not defined in {path}")
        return table[name]
    return dims_mod.builtin_operad(spec)


def load_rules(path: str) -> list[sh.RewriteRule]:
    """Load a rule file; bare names fall back to the bundled fixtures."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return sh.parse_rules(fh.read())
    name = path if path.endswith(".rules") else path + ".rules"
    bundle = resources.files("freeop").joinpath("rules", name)
    if bundle.is_file():
        return sh.parse_rules(bundle.read_text(encoding="utf-8"))
    raise CliError(f"rule file not found: {path}")


def emit(payload: dict, text_lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_dims(args) -> int:
    if args.symbolic:
        table = dims_mod.symbolic_dims(args.n_max)
        polys = {}
        lines = []
        for n in range(2, args.n_max + 1):
            b, c = table[n]
            polys[f"d{n}_bullet"] = str(b)
            polys[f"d{n}_circ"] = str(c)
            lines.append(f"d{n}_bullet = {b}")
            lines.append(f"d{n}_circ = {c}")
        emit(
            {"command": "dims-symbolic", "n_max": args.n_max, "polynomials": polys},
            lines,
            args.format,
        )
        return 0
    if not args.left or not args.right:
        raise CliError("--left and --right are required (or use --symbolic)")
    x = resolve_operad(args.left)
    y = resolve_operad(args.right)
    table = dims_mod.free_product_dims(x, y, args.n_max)
    rows = [{"n": 1, "bullet": None, "circ": None, "total": 1}]
    lines = ["n\tbullet\tcirc\ttotal", "1\t-\t-\t1"]
    for n in range(2, args.n_max + 1):
        b, c = table.bullet[n], table.circ[n]
        rows.append({"n": n, "bullet": b, "circ": c, "total": b + c})
        lines.append(f"{n}\t{b}\t{c}\t{b + c}")
    emit(
        {
            "command": "dims",
            "left": x.name,
            "right": y.name,
            "n_max": args.n_max,
            "rows": rows,
        },
        lines,
        args.format,
    )
    return 0


def cmd_confluence(args) -> int:
    rules = load_rules(args.rules)
    report = sh.check_confluence(rules, args.max_arity)
    payload = {
        "command": "confluence",
        "max_arity": args.max_arity,
        "passed": report.passed,
        "overlap_count": report.overlap_count,
        "failures": [
            {"overlap": sh.print_monomial(m), "normal_form": str(nf)}
            for m, nf in report.failures
        ],
    }
    emit(payload, [str(report)], args.format)
    return 0 if report.passed else 1


def cmd_count_normal(args) -> int:
    rules = load_rules(args.rules)
    if args.alphabet:
        alphabet = [(s.strip(), 2) for s in args.alphabet.split(",") if s.strip()]
    else:
        alphabet = sh.rules_alphabet(rules)
    if args.n > ENUM_MAX:
        raise CliError(f"-n must be <= {ENUM_MAX}")
    count = sh.count_normal_monomials(alphabet, rules, args.n)
    emit(
        {
            "command": "count-normal",
            "n": args.n,
            "alphabet": [s for s, _ in alphabet],
            "count": count,
        },
        [str(count)],
        args.format,
    )
    return 0


def cmd_basis(args) -> int:
    if args.n > ENUM_MAX:
        raise CliError(f"-n must be <= {ENUM_MAX}")
    x = resolve_operad(args.left)
    y = resolve_operad(args.right)
    basis = list(trees.enumerate_basis(x, y, args.n, args.root))
    payload = {
        "command": "basis",
        "left": x.name,
        "right": y.name,
        "n": args.n,
        "root": args.root,
        "count": len(basis),
    }
    lines = [str(len(basis))]
    if args.list:
        serialized = [trees.format_tree(t) for t in basis]
        payload["trees"] = serialized
        lines = serialized
    emit(payload, lines, args.format)
    return 0


def cmd_sp(args) -> int:
    payload = {"command": "sp", "n": args.n, "count": spnet.macmahon(args.n)}
    lines = [str(payload["count"])]
    if args.list:
        nets = [spnet.format_network(net) for net in spnet.enumerate_networks(args.n)]
        payload["networks"] = nets
        lines = nets
    emit(payload, lines, args.format)
    return 0


def cmd_quotient(args) -> int:
    if args.n > ENUM_MAX:
        raise CliError(f"-n must be <= {ENUM_MAX}")
    if args.pattern not in trees.PATTERNS_BY_NAME:
        raise CliError(
            f"unknown pattern {args.pattern!r}; choose from {sorted(trees.PATTERNS_BY_NAME)}"
        )
    x = resolve_operad(args.left)
    y = resolve_operad(args.right)
    patterns = [trees.PATTERNS_BY_NAME[args.pattern]]
    total = sum(1 for _ in trees.enumerate_basis(x, y, args.n))
    avoiding = trees.count_avoiding(x, y, args.n, patterns)
    payload = {
        "command": "quotient",
        "left": x.name,
        "right": y.name,
        "pattern": args.pattern,
        "n": args.n,
        "total": total,
        "reduced": total - avoiding,
        "quotient": avoiding,
    }
    emit(payload, [str(avoiding)], args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeop",
        description="Dimensions, bases, and rewriting for free products of binary operads.",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for randomized property modes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension tables of a free product")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("-n", "--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("confluence", help="overlap check for a rewriting system")
    p.add_argument("--rules", required=True)
    p.add_argument("--max-arity", type=int, default=5)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_confluence)

    p = sub.add_parser("count-normal", help="count normal shuffle monomials")
    p.add_argument("--rules", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--alphabet", help="comma-separated binary generators")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_count_normal)

    p = sub.add_parser("basis", help="enumerate the colored-tree basis")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--root", choices=(trees.BULLET, trees.CIRC, "any"), default="any")
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("sp", help="series-parallel networks")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="default mode")
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_sp)

    p = sub.add_parser("quotient", help="pattern-avoidance quotient counts")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_quotient)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, OperadError, sh.ShuffleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
