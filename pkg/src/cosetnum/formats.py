"""Render tables and assignment lists as markdown, CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

from .algebra import format_rational
from .enumeration import Table
from .ruleset import ParamAssignment, pretty_name


def cell(value, decimal: bool = False) -> str:
    if isinstance(value, Fraction):
        return format_rational(value, decimal)
    return str(value)


def _header(col: str) -> str:
    return pretty_name(col) if col.rstrip("'") in ("alpha", "beta", "gamma", "delta", "epsilon", "phi", "rho") else col


def markdown(columns: Sequence[str], rows: Sequence[Sequence], block_starts=(), decimal=False,
             greek: bool = True) -> str:
    heads = [_header(c) if greek else c for c in columns]
    lines = ["| " + " | ".join(heads) + " |", "|" + "|".join("---:" for _ in heads) + "|"]
    blocks = set(block_starts) - {0}
    for k, row in enumerate(rows):
        if k in blocks:
            lines.append("| " + " | ".join("" for _ in heads) + " |")
        lines.append("| " + " | ".join(cell(v, decimal) for v in row) + " |")
    return "\n".join(lines) + "\n"


def to_csv(columns: Sequence[str], rows: Sequence[Sequence], decimal=False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([cell(v, decimal) for v in row])
    return buf.getvalue()


def table_json(table: Table) -> dict:
    return {
        "table": table.name,
        "title": table.title,
        "columns": table.columns,
        "rows": [[cell(v) for v in row] for row in table.rows],
        "block_starts": table.block_starts,
        "notes": table.notes,
    }


def render_table(table: Table, fmt: str, decimal: bool = False) -> str:
    if fmt == "md":
        out = f"**Table {table.name}.** {table.title}\n\n"
        out += markdown(table.columns, table.rows, table.block_starts, decimal)
        if table.notes:
            out += "\n" + "\n".join(f"- {n}" for n in table.notes) + "\n"
        return out
    if fmt == "csv":
        return to_csv(table.columns, table.rows, decimal)
    if fmt == "json":
        return json.dumps(table_json(table), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def assignments_json(assignments: Sequence[ParamAssignment]) -> list[dict]:
    return [{"label": a.label, "values": a.to_json()} for a in assignments]


def parse_assignments_json(data) -> list[dict[str, Fraction]]:
    from .algebra import parse_rational
    return [{k: parse_rational(v) for k, v in item["values"].items()} for item in data]


def render_assignments(assignments: Sequence[ParamAssignment], names: Sequence[str], fmt: str,
                       extra: dict[str, Sequence] | None = None, decimal: bool = False) -> str:
    extra = extra or {}
    columns = list(names) + list(extra)
    rows = [list(a.values) + [extra[c][k] for c in extra] for k, a in enumerate(assignments)]
    if fmt == "md":
        return markdown(columns, rows, decimal=decimal)
    if fmt == "csv":
        return to_csv(columns, rows, decimal)
    if fmt == "json":
        items = assignments_json(assignments)
        for k, item in enumerate(items):
            for c in extra:
                item[c] = cell(extra[c][k])
        return json.dumps(items, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
