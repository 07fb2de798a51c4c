"""Command-line front end.

Exit status: 0 on success, 1 when the input is unrealizable or a check
fails, 2 on usage, file or format errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cyclo
from .constructor import (
    DEFAULT_PRIME_CAP,
    ConstructionError,
    format_recipe,
    materialize,
    plan_modules,
    roundtrip,
    select_primes,
)
from .fplinear import FieldError, RepError, fixed_dims, format_rep
from .graph import GraphFormatError, complement, format_graph, parse_graph
from .groups import DEFAULT_CAP, CapExceeded, GroupFormatError, head_group, match_classes, parse_group, prime_graph
from .heads import DEFAULT_MODULUS, GROUP_OF, head_rep
from .patterns import classify, format_certificate


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_classify(args, out) -> int:
    verdict = classify(_graph(args.graph))
    if not verdict.realizable:
        out.write(f"Unrealizable: {verdict.violation}\n")
        return 1
    out.write(f"Realizable {verdict.category}\n")
    out.write(format_certificate(verdict.certificate))
    return 0


def cmd_construct(args, out) -> int:
    gamma = _graph(args.graph)
    verdict = classify(gamma)
    if not verdict.realizable:
        out.write(f"Unrealizable: {verdict.violation}\n")
        return 1
    recipe = select_primes(verdict.certificate, complement(gamma), args.fig3, args.prime_cap)
    recipe = plan_modules(verdict.certificate, recipe)
    out.write(format_recipe(recipe))
    if args.materialize:
        witness = materialize(recipe)
        out.write(witness.summary())
        if not witness.relabeled().same_as(gamma):
            out.write("witness prime graph differs from input\n")
            return 1
        out.write("witness prime graph equals input\n")
    return 0


def cmd_primegraph(args, out) -> int:
    try:
        group = parse_group(_read(args.group), args.cap)
    except (GroupFormatError, ValueError) as exc:
        raise UsageError(f"{args.group}: {exc}") from None
    out.write(format_graph(prime_graph(group)))
    return 0


def cmd_tables(args, out) -> int:
    mismatches = 0
    for group in cyclo.GROUPS:
        got = cyclo.fixed_point_table(group)
        out.write(cyclo.format_pattern_table(group, got))
        if args.check:
            table = cyclo.load_table(group)
            want = cyclo.expected_pattern(group)
            for name, g_row, w_row in zip(table.names, got, want):
                for c, g, w in zip(table.classes, g_row, w_row):
                    if g != w:
                        mismatches += 1
                        out.write(f"MISMATCH {group} {name} {c.name}: computed {g}, expected {w}\n")
        out.write("\n")
    if args.check:
        out.write(f"{mismatches} mismatches\n")
    return 1 if mismatches else 0


def cmd_roundtrip(args, out) -> int:
    report = roundtrip(_graph(args.graph), args.fig3)
    out.write(report.format())
    if not report.verdict.realizable:
        return 1
    return 0 if report.passed else 1


def cmd_verify_rep(args, out) -> int:
    if args.name not in GROUP_OF:
        raise UsageError(f"unknown rep {args.name!r}; choose from {', '.join(GROUP_OF)}")
    try:
        rep = head_rep(args.name, args.modulus)
    except (FieldError, RepError) as exc:
        out.write(f"cannot build {args.name} over F_{args.modulus}: {exc}\n")
        return 1
    group = head_group(GROUP_OF[args.name])
    table = cyclo.load_table(group.name)
    cols = match_classes(group, table)
    dims = fixed_dims(rep, group)
    if args.dump:
        out.write(format_rep(rep))
    out.write(f"{args.name} degree {rep.degree} over F_{args.modulus}\n")
    bad = 0
    for c in group.classes:
        col = table.classes[cols[c.index]]
        want = cyclo.fixed_space_dim(table, args.name, col.index)
        got = sorted({dims[m] for m in c.members})
        ok = got == [want]
        bad += not ok
        out.write(f"{col.name:>4} kernel {','.join(map(str, got))} table {want} {'ok' if ok else 'MISMATCH'}\n")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudosolvable", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a candidate prime graph")
    c.add_argument("graph")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", help="print a witness recipe")
    c.add_argument("graph")
    c.add_argument("--materialize", action="store_true", help="build and verify the witness")
    c.add_argument("--fig3", action="store_true", help="prefer the order-240 head when both are admissible")
    c.add_argument("--prime-cap", type=int, default=DEFAULT_PRIME_CAP)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("primegraph", help="prime graph of a group file")
    c.add_argument("group")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.set_defaults(func=cmd_primegraph)

    c = sub.add_parser("tables", help="fixed-point patterns of the head groups")
    c.add_argument("--check", action="store_true", help="diff against the expected patterns")
    c.set_defaults(func=cmd_tables)

    c = sub.add_parser("roundtrip", help="classify, construct, materialize and compare")
    c.add_argument("graph")
    c.add_argument("--fig3", action="store_true")
    c.set_defaults(func=cmd_roundtrip)

    c = sub.add_parser("verify-rep", help="compare a head rep's fixed spaces with its character")
    c.add_argument("name")
    c.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    c.add_argument("--dump", action="store_true", help="print the generator matrices first")
    c.set_defaults(func=cmd_verify_rep)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, CapExceeded) as exc:
        out.write(f"construction failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
