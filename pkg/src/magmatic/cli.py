"""Command-line interface.

Exit codes: 0 success or affirmative answer, 1 certified negative,
2 usage or input error, 3 unknown within the exploration caps.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra
from .errors import MagmaError
from .product import parse_component, parse_components
from .quotient import (
    ASSOCIATIVITY,
    COMMUTATIVITY,
    Equivalent,
    ExplorationCaps,
    NotEquivalentCertified,
    Witness,
    check_congruence,
    class_of,
    delta,
    equivalent,
    free_witness,
    magmatic_product,
    render_path,
    replacement_edges,
    witness_search,
)
from .term import (
    Symbol,
    catalan,
    enumerate_shapes,
    format_term,
    parse,
    shape_of,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

DEFAULTS = {
    "components": "Z2",
    "size_cap": 5,
    "node_cap": 2000,
    "format": "text",
    "seed": 0,
}


class UsageError(Exception):
    pass


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--components", default=argparse.SUPPRESS,
                        help="component magmas, e.g. Z2,Z3,const0:2,table:path.tbl")
    common.add_argument("--size-cap", type=int, default=argparse.SUPPRESS,
                        help="largest leaf count explored (default 5)")
    common.add_argument("--node-cap", type=int, default=argparse.SUPPRESS,
                        help="most distinct terms visited (default 2000)")
    common.add_argument("--format", choices=("text", "dot"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="random seed for sampling commands (default 0)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="magmatic", parents=[common],
        description="Free magmas, replacement rewriting and magmatic products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="canonicalize a term")
    p.add_argument("expr")

    p = sub.add_parser("shapes", parents=[common], help="list bracket shapes with n leaves")
    p.add_argument("n", type=int)

    p = sub.add_parser("catalan", parents=[common], help="print a Catalan number")
    p.add_argument("n", type=int)

    p = sub.add_parser("explore", parents=[common], help="explore the class of a term")
    p.add_argument("expr")

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence within caps")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("delta", parents=[common], help="product of two classes")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("morph", parents=[common], help="evaluate a term in a finite magma")
    p.add_argument("magma", help="Zn, const0:m, table:path or a table file path")
    p.add_argument("mapfile", help="generator map file: lines of 'atom element-name'")
    p.add_argument("expr")

    p = sub.add_parser("witness", parents=[common],
                       help="search for a certified failure of a law")
    p.add_argument("property", choices=(COMMUTATIVITY, ASSOCIATIVITY))
    p.add_argument("--free", action="store_true",
                   help="compare bracketings in the free magma, without the quotient")
    p.add_argument("--atoms", default=None,
                   help="space-separated atoms to try, e.g. '<1,1> <2,2>'")
    p.add_argument("--max-atoms", type=int, default=6)
    p.add_argument("--max-candidates", type=int, default=64)

    p = sub.add_parser("congruence", parents=[common],
                       help="sample the congruence property of the equivalence")
    p.add_argument("--trials", type=int, default=100)
    return parser


def _config(args):
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.size_cap < 1 or args.node_cap < 1:
        raise UsageError("caps must be positive")
    return args


def _context(args):
    space = parse_components(args.components)
    return magmatic_product(space, ExplorationCaps(args.size_cap, args.node_cap))


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cmd_parse(args, out):
    t = parse(args.expr)
    out.write(f"canonical: {format_term(t)}\n")
    out.write(f"leaves: {t.size}\n")
    out.write(f"shape: {format_term(shape_of(t))}\n")
    return EXIT_OK


def cmd_shapes(args, out):
    shapes = enumerate_shapes(args.n)
    for s in shapes:
        out.write(format_term(s) + "\n")
    out.write(f"count = C_{args.n - 1} = {catalan(args.n - 1)}\n")
    return EXIT_OK


def cmd_catalan(args, out):
    if args.n < 0:
        raise UsageError("catalan index must be nonnegative")
    out.write(f"{catalan(args.n)}\n")
    return EXIT_OK


def _class_line(h) -> str:
    return f"members={len(h)} exhausted={_bool(h.exhausted)} rep={h.representative}"


def _write_dot(h, ctx, out):
    out.write("digraph replacements {\n")
    for t in sorted(h.members, key=lambda m: (m.size, m.text)):
        out.write(f"  {_quote(t.text)};\n")
    for e in replacement_edges(h, ctx):
        out.write(f"  {_quote(e.source.text)} -> {_quote(e.target.text)} [label={_quote(e.step.render())}];\n")
    out.write("}\n")


def cmd_explore(args, out):
    ctx = _context(args)
    h = class_of(parse(args.expr), ctx)
    if args.format == "dot":
        _write_dot(h, ctx, out)
    else:
        out.write(_class_line(h) + "\n")
        if h.limit:
            out.write(f"limit: {h.limit}\n")
    return EXIT_OK


def cmd_equiv(args, out):
    ctx = _context(args)
    a, b = parse(args.expr1), parse(args.expr2)
    verdict = equivalent(a, b, ctx)
    if isinstance(verdict, Equivalent):
        out.write(f"EQUIVALENT (path length {len(verdict.path)})\n")
        out.write(render_path(verdict.path))
        return EXIT_OK
    if isinstance(verdict, NotEquivalentCertified):
        out.write(f"NOT-EQUIVALENT (certified: class of {a} "
                  f"exhausted with {verdict.explored} members)\n")
        return EXIT_NEGATIVE
    out.write(f"UNKNOWN (cap: {verdict.reason}, {verdict.explored} terms explored)\n")
    return EXIT_UNKNOWN


def cmd_delta(args, out):
    ctx = _context(args)
    a = class_of(parse(args.expr1), ctx)
    b = class_of(parse(args.expr2), ctx)
    h = delta(a, b, ctx)
    out.write(f"product: {h.origin}\n")
    out.write(_class_line(h) + "\n")
    return EXIT_OK


def cmd_morph(args, out):
    spec = args.magma
    if Path(spec).is_file():
        target = algebra.load_table(spec)
    else:
        target = parse_component(spec)
    try:
        f = algebra.load_generator_map(args.mapfile, target)
    except OSError as e:
        raise UsageError(f"cannot read {args.mapfile}: {e.strerror}") from None
    value = algebra.eval_universal(f, target, parse(args.expr))
    out.write(target.names[value] + "\n")
    return EXIT_OK


def _parse_atoms(text: str):
    atoms = []
    for word in text.replace(",<", " <").split():
        t = parse(word)
        atoms.append(t.atom)
    return atoms


def cmd_witness(args, out):
    if args.free:
        atoms = _parse_atoms(args.atoms) if args.atoms else [Symbol("x"), Symbol("y"), Symbol("z")]
        found = free_witness(args.property, atoms)
        if found:
            lhs, rhs = found
            out.write(f"WITNESS {args.property} (free magma): {lhs} != {rhs}\n")
            return EXIT_OK
        out.write(f"UNKNOWN {args.property} (free magma): no distinct candidates\n")
        return EXIT_UNKNOWN
    ctx = _context(args)
    atoms = _parse_atoms(args.atoms) if args.atoms else None
    result = witness_search(ctx, args.property, atoms=atoms, max_atoms=args.max_atoms,
                            max_candidates=args.max_candidates)
    if isinstance(result, Witness):
        out.write(f"WITNESS {args.property}: {result.details()}\n")
        return EXIT_OK
    for line in result.transcript:
        out.write(line + "\n")
    out.write(f"UNKNOWN {args.property}: checked={result.checked} "
              f"equivalent={result.equivalent} unknown={result.unknown}\n")
    return EXIT_UNKNOWN


def cmd_congruence(args, out):
    ctx = _context(args)
    report = check_congruence(ctx, args.trials, seed=args.seed)
    out.write(f"trials={report.trials} lifted_verified={report.lifted_verified} "
              f"trivial={report.trivial} found={report.searched_found} "
              f"unknown={report.searched_unknown} violations={len(report.violations)}\n")
    for v in report.violations:
        out.write(f"violation: {v}\n")
    return EXIT_NEGATIVE if report.violations else EXIT_OK


COMMANDS = {
    "parse": cmd_parse,
    "shapes": cmd_shapes,
    "catalan": cmd_catalan,
    "explore": cmd_explore,
    "equiv": cmd_equiv,
    "delta": cmd_delta,
    "morph": cmd_morph,
    "witness": cmd_witness,
    "congruence": cmd_congruence,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        _config(args)
        return COMMANDS[args.command](args, out)
    except (MagmaError, UsageError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
