"""``cosetnum`` command line.

Exit codes: 0 success, 1 arithmetic error (e.g. no inverse), 2 usage or
unknown name, 3 validation failure or malformed group file, 4 malformed
number/rational literal.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import algebra
from .algebra import (NoInverseError, NonAssociativeError, NumberParseError, NumberSystem,
                      format_number, format_rational, generator_matrices, parse_rational,
                      symbolic_rep_matrix)
from .doubling import DoublingSpec, double, verify_correspondence
from .enumeration import FILTERS, enumerate_assignments, orbit_partition, reproduce_table
from .formats import markdown, render_assignments, render_table, to_csv
from .group_core import GroupError, validate_group
from .registry import UnknownSystemError, builtin_group, label_for, pattern_for, resolve_group, system_entry
from .ruleset import (IncompleteAssignmentError, ParamAssignment, build_pattern, check_assignment,
                      derive_constraints, is_commutative_assignment)

EXIT_OK, EXIT_ARITH, EXIT_USAGE, EXIT_INVALID, EXIT_PARSE = 0, 1, 2, 3, 4
_VALUE_OPTS = {"--domain", "--alpha", "--base-alpha", "--outer-alpha"}
FORMATS = ("md", "csv", "json")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _group_args(p: argparse.ArgumentParser, required: bool = False):
    p.add_argument("--group", default=None,
                   help="builtin group: c2, c3, c4, klein4, or 'file' with --group-file")
    p.add_argument("--group-file", default=None, help="JSON Cayley table")


def _fmt(p, default="md"):
    p.add_argument("--format", choices=FORMATS, default=default)
    p.add_argument("--decimal", action="store_true", help="show decimal approximations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetnum", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list constraint-satisfying assignments")
    _group_args(p)
    p.add_argument("--domain", default="-1,0,1", help="comma-separated rationals")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--classes", action="store_true", help="one row per automorphism class")
    _fmt(p)

    p = sub.add_parser("tables", help="rebuild a classification table")
    p.add_argument("--which", required=True, choices=["1", "2", "3", "4", "5"])
    _fmt(p)

    p = sub.add_parser("constraints", help="associativity constraints of a group's pattern")
    _group_args(p)
    _fmt(p, "json")

    p = sub.add_parser("calc", help="evaluate an expression such as '(0,1,0,0)*(0,0,1,0)'")
    p.add_argument("--system", default=None, help="builtin system name")
    _group_args(p)
    p.add_argument("--assignment", default=None, help="JSON map slot -> rational (with --group)")
    p.add_argument("expression")
    p.add_argument("--decimal", action="store_true")

    p = sub.add_parser("matrices", help="generator or symbolic representation matrices")
    p.add_argument("--system", default=None)
    _group_args(p)
    p.add_argument("--symbolic", action="store_true", help="general matrix with slot names")
    _fmt(p)

    p = sub.add_parser("validate", help="check group axioms and optionally an assignment")
    _group_args(p)
    p.add_argument("--assignment", default=None, help="JSON map slot -> rational")

    p = sub.add_parser("double", help="4D Klein system from doubling a 2D base")
    p.add_argument("--alpha", required=True, help="parameter for both levels")
    p.add_argument("--base-alpha", default=None)
    p.add_argument("--outer-alpha", default=None)
    p.add_argument("--emit", choices=["assignment", "matrices", "system"], default="assignment")
    _fmt(p)
    return parser


def _normalize_argv(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except NumberParseError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _group(args):
    try:
        if args.group_file or (args.group or "").lower() == "file":
            if not args.group_file:
                raise CliError("--group file needs --group-file", EXIT_USAGE)
            group = resolve_group(path=args.group_file)
        else:
            group = builtin_group(args.group or "")
    except UnknownSystemError as exc:
        raise CliError(exc.args[0], EXIT_USAGE) from None
    except GroupError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    report = validate_group(group)
    if not report.passed:
        bad = report.failures()[0]
        raise CliError(f"group fails {bad.axiom}: witness {bad.witness} ({bad.detail})", EXIT_INVALID)
    return group


def _load_assignment(path: str, pattern) -> ParamAssignment:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read assignment {path}: {exc}", EXIT_PARSE) from None
    if not isinstance(data, dict):
        raise CliError("assignment file must hold a JSON object", EXIT_PARSE)
    values = {k: _rational(str(v)) for k, v in data.items()}
    try:
        return ParamAssignment.from_mapping(pattern, values)
    except IncompleteAssignmentError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None


def _system(args) -> NumberSystem:
    if args.system:
        try:
            group_name, assignment = system_entry(args.system)
        except UnknownSystemError as exc:
            raise CliError(exc.args[0], EXIT_USAGE) from None
        return NumberSystem(pattern_for(group_name), assignment, assignment.label)
    if args.group or args.group_file:
        if not getattr(args, "assignment", None):
            raise CliError("--group needs --assignment (or use --system)", EXIT_USAGE)
        pattern = build_pattern(_group(args))
        try:
            return NumberSystem(pattern, _load_assignment(args.assignment, pattern))
        except NonAssociativeError as exc:
            raise CliError(str(exc), EXIT_INVALID) from None
    raise CliError("choose a number system with --system", EXIT_USAGE)


def _matrix_text(name: str, m, fmt: str, decimal: bool) -> str:
    if fmt == "md":
        return f"{name}\n\n" + markdown([str(k) for k in range(len(m))], m, decimal=decimal, greek=False)
    return f"# {name}\n" + to_csv([str(k) for k in range(len(m))], m, decimal)


def cmd_enumerate(args) -> str:
    group = _group(args)
    pattern = build_pattern(group)
    cs = derive_constraints(pattern)
    domain = [_rational(x) for x in args.domain.split(",") if x.strip()]
    if not domain:
        raise CliError("empty --domain", EXIT_USAGE)
    found = enumerate_assignments(pattern, cs, domain, args.filter)
    gname = pattern.kind if pattern.kind != "klein" else "klein4"
    if args.classes:
        classes = orbit_partition(found, pattern)
        found = [c.representative for c in classes]
        extra = {"orbit_size": [len(c.orbit) for c in classes]}
    else:
        extra = {}
    found = [a.with_label(label_for(gname, a.values) if gname else "") for a in found]
    extra["commutative"] = ["yes" if is_commutative_assignment(pattern, a.values) else "no" for a in found]
    extra["label"] = [a.label for a in found]
    return render_assignments(found, pattern.names, args.format, extra, args.decimal)


def cmd_tables(args) -> str:
    return render_table(reproduce_table(args.which), args.format, args.decimal)


def cmd_constraints(args) -> str:
    pattern = build_pattern(_group(args))
    cs = derive_constraints(pattern)
    if args.format == "json":
        return json.dumps(cs.to_json(), indent=2) + "\n"
    rows = [[",".join(map(str, eq.triple)), cs.describe(eq)] for eq in cs]
    if args.format == "md":
        return markdown(["triple", "equation"], rows, greek=False)
    return to_csv(["triple", "equation"], rows)


def cmd_calc(args) -> str:
    system = _system(args)
    try:
        value = algebra.evaluate(args.expression, system)
    except NumberParseError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    except NoInverseError as exc:
        raise CliError(f"no inverse: {exc}", EXIT_ARITH) from None
    if isinstance(value, Fraction):
        return format_rational(value, args.decimal) + "\n"
    return format_number(value.coeffs, args.decimal) + "\n"


def cmd_matrices(args) -> str:
    if args.symbolic:
        if args.system:
            group_name, _ = system_entry(args.system)
            pattern = pattern_for(group_name)
        else:
            pattern = build_pattern(_group(args))
        m = symbolic_rep_matrix(pattern)
        if args.format == "json":
            return json.dumps({"names": list(pattern.names), "matrix": m}, indent=2) + "\n"
        return _matrix_text("z", m, args.format, False)
    system = _system(args)
    gens = generator_matrices(system)
    labels = system.labels
    if args.format == "json":
        return json.dumps({lab: [[format_rational(x) for x in row] for row in g]
                           for lab, g in zip(labels, gens)}, indent=2) + "\n"
    return "\n".join(_matrix_text(lab, g, args.format, args.decimal) for lab, g in zip(labels, gens))


def cmd_validate(args) -> str:
    try:
        group = resolve_group(args.group if not args.group_file else None,
                              args.group_file) if (args.group_file or args.group) else None
    except UnknownSystemError as exc:
        raise CliError(exc.args[0], EXIT_USAGE) from None
    except GroupError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    if group is None:
        raise CliError("validate needs --group or --group-file", EXIT_USAGE)
    report = validate_group(group)
    lines = [f"{r.axiom}: {'pass' if r.passed else 'FAIL'}"
             + ("" if r.passed else f" witness={r.witness} {r.detail}") for r in report.results]
    if not report.passed:
        bad = report.failures()[0]
        raise CliError("\n".join(lines) + f"\ngroup fails {bad.axiom}: witness {bad.witness}", EXIT_INVALID)
    if args.assignment:
        pattern = build_pattern(group)
        cs = derive_constraints(pattern)
        ok, violated = check_assignment(pattern, cs, _load_assignment(args.assignment, pattern))
        if not ok:
            raise CliError("assignment violates: " + "; ".join(cs.describe(e) for e in violated),
                           EXIT_INVALID)
        lines.append("assignment: pass")
    return "\n".join(lines) + "\n"


def cmd_double(args) -> str:
    alpha = _rational(args.alpha)
    base = _rational(args.base_alpha) if args.base_alpha else alpha
    outer = _rational(args.outer_alpha) if args.outer_alpha else alpha
    spec = DoublingSpec(base, outer)
    system = double(spec)
    if args.emit == "assignment":
        return render_assignments([system.assignment], system.pattern.names, args.format,
                                  {"label": [label_for("klein4", system.assignment.values)]},
                                  args.decimal)
    if args.emit == "matrices":
        gens = generator_matrices(system)
        if args.format == "json":
            return json.dumps({lab: [[format_rational(x) for x in row] for row in g]
                               for lab, g in zip(system.labels, gens)}, indent=2) + "\n"
        return "\n".join(_matrix_text(lab, g, args.format, args.decimal)
                         for lab, g in zip(system.labels, gens))
    info = {
        "name": system.name,
        "group": system.pattern.group.to_json(),
        "assignment": system.assignment.to_json(),
        "commutative": algebra.is_commutative(system),
        "correspondence": verify_correspondence(spec),
    }
    return json.dumps(info, indent=2) + "\n"


COMMANDS = {"enumerate": cmd_enumerate, "tables": cmd_tables, "constraints": cmd_constraints,
            "calc": cmd_calc, "matrices": cmd_matrices, "validate": cmd_validate,
            "double": cmd_double}


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv`` and dispatch; returns (exit code, emitted text)."""
    parser = build_parser()
    argv = _normalize_argv(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        text = COMMANDS[args.command](args)
    except CliError as exc:
        return exc.code, str(exc)
    except UnknownSystemError as exc:
        return EXIT_USAGE, exc.args[0]
    except GroupError as exc:
        return EXIT_INVALID, str(exc)
    except NumberParseError as exc:
        return EXIT_PARSE, str(exc)
    except NoInverseError as exc:
        return EXIT_ARITH, f"no inverse: {exc}"
    if args.output:
        Path(args.output).write_text(text)
        return EXIT_OK, ""
    return EXIT_OK, text


def main(argv=None) -> int:
    code, text = run(argv)
    if code == EXIT_OK:
        sys.stdout.write(text)
    else:
        lines = text.splitlines() or [""]
        for line in lines[:-1]:
            sys.stderr.write(line + "\n")
        sys.stderr.write(f"cosetnum: error: {lines[-1]}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
