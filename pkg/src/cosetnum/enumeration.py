"""Enumerate constraint-satisfying assignments and rebuild the classification tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .group_core import Automorphism, automorphisms
from .registry import label_for, pattern_for
from .ruleset import (ConstraintSet, ParamAssignment, RulePattern, check_assignment,
                      derive_constraints, is_commutative_assignment, signatures)

FILTERS = ("all", "nonzero", "zero")
DEFAULT_DOMAIN = (-1, 0, 1)


def _kernel_arrays(constraints: ConstraintSet):
    p = constraints.pattern.param_count
    width = max([len(eq.lhs) for eq in constraints] + [len(eq.rhs) for eq in constraints] + [1])
    lhs = _kernels.pad_monomials([eq.lhs for eq in constraints], width, p)
    rhs = _kernels.pad_monomials([eq.rhs for eq in constraints], width, p)
    return lhs, rhs


def enumerate_assignments(pattern: RulePattern, constraints: ConstraintSet,
                          domain: Iterable = DEFAULT_DOMAIN, filter: str = "all",
                          use_numba: bool | None = None) -> list[ParamAssignment]:
    """All points of ``domain**P`` satisfying every constraint, in lexicographic order.

    ``filter``: ``nonzero`` keeps assignments with no zero parameter, ``zero``
    keeps those with at least one. Integer domains run through the compiled
    sweep; anything else falls back to exact Fraction evaluation.
    """
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {FILTERS}")
    values = sorted({Fraction(v) for v in domain})
    if not values:
        raise ValueError("domain must be nonempty")
    if filter == "nonzero":
        values = [v for v in values if v != 0]
        if not values:
            return []
    p = pattern.param_count

    if all(v.denominator == 1 for v in values):
        lhs, rhs = _kernel_arrays(constraints)
        rows = _kernels.sweep(np.array([int(v) for v in values], dtype=np.int64), p, lhs, rhs,
                              use_numba=use_numba)
        solutions = [tuple(Fraction(int(x)) for x in row) for row in rows]
    else:
        solutions = [v for v in itertools.product(values, repeat=p)
                     if check_assignment(pattern, constraints, v)[0]]

    if filter == "zero":
        solutions = [v for v in solutions if 0 in v]
    return [ParamAssignment(pattern.names, v) for v in solutions]


def relabel_values(values: Sequence, pattern: RulePattern, auto: Automorphism) -> tuple:
    """Values after renaming basis element ``e_a`` to ``e_auto(a)``."""
    out = [None] * pattern.param_count
    for (i, j), slot in pattern.slots.items():
        out[pattern.slots[(auto(i), auto(j))].index] = values[slot.index]
    return tuple(out)


def rescale_values(values: Sequence, pattern: RulePattern, signs: Sequence) -> tuple:
    """Values after replacing each basis element ``e_a`` by ``signs[a] * e_a``."""
    out = [None] * pattern.param_count
    for (i, j), slot in pattern.slots.items():
        out[slot.index] = values[slot.index] * signs[i] * signs[j] / signs[slot.target]
    return tuple(out)


def rescaling_orbit(values: Sequence, pattern: RulePattern) -> set[tuple]:
    n = pattern.order
    out = set()
    for tail in itertools.product((1, -1), repeat=n - 1):
        out.add(rescale_values(values, pattern, (1,) + tail))
    return out


@dataclass
class AssignmentClass:
    representative: ParamAssignment
    orbit: list[ParamAssignment]
    labels: list[str] = field(default_factory=list)

    def __contains__(self, values) -> bool:
        values = tuple(values.values if isinstance(values, ParamAssignment) else values)
        return any(a.values == values for a in self.orbit)


def canonicalize(assignment: ParamAssignment, pattern: RulePattern,
                 autos: Sequence[Automorphism]) -> AssignmentClass:
    """Orbit of ``assignment`` under basis relabelings; lexicographic minimum represents it."""
    orbit_values = sorted({relabel_values(assignment.values, pattern, a) for a in autos})
    orbit = [ParamAssignment(pattern.names, v) for v in orbit_values]
    return AssignmentClass(orbit[0], orbit)


def orbit_partition(assignments: Sequence[ParamAssignment], pattern: RulePattern,
                    autos: Sequence[Automorphism] | None = None) -> list[AssignmentClass]:
    autos = automorphisms(pattern.group) if autos is None else autos
    seen: set[tuple] = set()
    classes = []
    for a in assignments:
        if a.values in seen:
            continue
        cls = canonicalize(a, pattern, autos)
        seen.update(m.values for m in cls.orbit)
        classes.append(cls)
    classes.sort(key=lambda c: c.representative.values)
    return classes


# -- tables --------------------------------------------------------------------

@dataclass
class Table:
    name: str
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    block_starts: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _desc(values):
    return tuple(-v for v in values)


def _table1() -> Table:
    from .algebra import NumberSystem, basis

    pattern = pattern_for("c3")
    cs = derive_constraints(pattern)
    raw = enumerate_assignments(pattern, cs)
    classes = orbit_partition(raw, pattern)
    # shown member per class: nonzero parameters moved toward beta, then positive beta
    shown = sorted((max(c.orbit, key=lambda a: (tuple(abs(v) for v in a.values), a.values))
                    for c in classes), key=lambda a: _desc(a.values))
    table = Table("1", "Scaling assignments for 3D extensions (C3), up to i <-> j",
                  ["alpha", "beta", "gamma", "i^3", "j^3"])
    prev_alpha = None
    for a in shown:
        system = NumberSystem(pattern, a)
        i, j = basis(system, 1), basis(system, 2)
        i3, j3 = i * i * i, j * j * j
        assert not any(i3.coeffs[1:]) and not any(j3.coeffs[1:])
        if a["alpha"] != prev_alpha:
            table.block_starts.append(len(table.rows))
            prev_alpha = a["alpha"]
        table.rows.append([a["alpha"], a["beta"], a["gamma"], i3.coeffs[0], j3.coeffs[0]])
    table.notes.append(f"{len(raw)} raw solutions over {{-1, 0, 1}}^{pattern.param_count}, "
                       f"{len(classes)} classes")
    return table


def _table2() -> Table:
    pattern = pattern_for("c4")
    cs = derive_constraints(pattern)
    nonzero = enumerate_assignments(pattern, cs, filter="nonzero")
    everything = enumerate_assignments(pattern, cs)
    cols = ["alpha", "beta", "gamma", "delta", "epsilon", "phi"]
    table = Table("2", "Scaling assignments for 4D cyclic extensions (C4)", cols + ["label"])
    ordered = sorted(nonzero, key=lambda a: _desc(a.values))
    upper = [a for a in ordered if a["alpha"] > 0]
    lower = [a for a in ordered if a["alpha"] < 0]

    def add(a):
        table.rows.append([a[c] for c in cols] + [label_for("c4", a.values)])

    table.block_starts.append(0)
    for a in upper:
        add(a)
    zero_alpha = [a for a in everything if a["alpha"] == 0]
    zero_comm = [a for a in zero_alpha if is_commutative_assignment(pattern, a.values)]
    table.block_starts.append(len(table.rows))
    table.rows.append([Fraction(0), "beta*delta = 0, gamma*epsilon = 0", "", "", "",
                       "beta*gamma", ""])
    table.block_starts.append(len(table.rows))
    for a in lower:
        add(a)
    table.notes.append(f"alpha = 0 family: {len(zero_alpha)} solutions over {{-1, 0, 1}}^9, "
                       f"{len(zero_comm)} of them commutative (kj = jk, ik = ki)")
    return table


def table3_layout(assignments: Sequence[ParamAssignment]) -> list[ParamAssignment]:
    """One Klein assignment per (multiset of alpha, beta, gamma; rho'').

    The rho'' > 0 block lists (alpha, beta, gamma) ascending and the
    rho'' < 0 block descending; H/S/B/Q/C land in their usual rows. Any
    arrangement of a multiset of three signs is a cyclic shift of the
    sorted one, so the chosen member is a relabeling by an even
    permutation of (i, j, k) of every other member in its group.
    """
    groups: dict[tuple, list[ParamAssignment]] = {}
    for a in assignments:
        key = (tuple(sorted(a.values[:3])), signatures(a).rho_pp)
        groups.setdefault(key, []).append(a)
    shown = []
    for (diag, rho_pp), members in groups.items():
        want = diag if rho_pp > 0 else tuple(reversed(diag))
        pick = [m for m in members if m.values[:3] == want]
        shown.append(pick[0])

    def order(a):
        s = signatures(a)
        return (-s.rho_pp, sum(1 for v in a.values[:3] if v < 0) * (1 if s.rho_pp > 0 else -1))

    return sorted(shown, key=order)


KLEIN_COLUMNS = ["alpha", "beta", "gamma", "rho", "alpha'", "beta'", "gamma'", "rho'",
                 "alpha''", "beta''", "gamma''", "rho''"]


def klein_row(a: ParamAssignment) -> list:
    s = signatures(a)
    v = a.values
    return [v[0], v[1], v[2], s.rho, v[3], v[4], v[5], s.rho_p, v[6], v[7], v[8], s.rho_pp]


def _table3() -> Table:
    pattern = pattern_for("klein4")
    cs = derive_constraints(pattern)
    raw = enumerate_assignments(pattern, cs, domain=(-1, 1), filter="nonzero")
    shown = table3_layout(raw)
    table = Table("3", "Nonzero scaling assignments for 4D Klein extensions",
                  KLEIN_COLUMNS + ["label"])
    for a in shown:
        table.rows.append(klein_row(a) + [label_for("klein4", a.values)])
    table.block_starts = [0, next(k for k, a in enumerate(shown) if signatures(a).rho_pp < 0)]
    n_comm = sum(is_commutative_assignment(pattern, a.values) for a in raw)
    table.notes.append(f"{len(raw)} raw assignments over {{-1, 1}}^9, {n_comm} commutative")
    return table


TABLE4_BLOCKS = ((1, 0, 0), (0, 0, 0), (-1, 0, 0))


def in_table4_position(values: Sequence) -> bool:
    """Diagonal equals a block key; an all-zero diagonal keeps only gamma', gamma'' nonzero."""
    diag = tuple(values[:3])
    if diag not in TABLE4_BLOCKS:
        return False
    return diag != (0, 0, 0) or all(values[k] == 0 for k in (3, 4, 6, 7))


def table4_position(values: Sequence, pattern: RulePattern, autos) -> tuple | None:
    """A relabeling of ``values`` that sits in a Table IV block, if any exists."""
    images = sorted({relabel_values(values, pattern, a) for a in autos})
    fits = [v for v in images if in_table4_position(v)]
    return fits[-1] if fits else None


def _table4() -> Table:
    pattern = pattern_for("klein4")
    cs = derive_constraints(pattern)
    autos = automorphisms(pattern.group)
    raw = enumerate_assignments(pattern, cs, filter="zero")
    for a in raw:
        if table4_position(a.values, pattern, autos) is None:
            raise AssertionError(f"zero-signature solution {a.values} fits no block")
    placed = [a.values for a in raw if in_table4_position(a.values)]
    table = Table("4", "Klein assignments with rho = rho' = rho'' = 0",
                  KLEIN_COLUMNS + ["label", "rescales to row"])
    for block in TABLE4_BLOCKS:
        table.block_starts.append(len(table.rows))
        rows = sorted((v for v in placed if tuple(v[:3]) == block), key=_desc)
        for v in rows:
            a = ParamAssignment(pattern.names, v)
            related = ""
            orbit = rescaling_orbit(v, pattern)
            for k, earlier in enumerate(table.rows):
                if tuple(earlier[c] for c in (0, 1, 2, 4, 5, 6, 8, 9, 10)) in orbit:
                    related = str(k + 1)
                    break
            table.rows.append(klein_row(a) + [label_for("klein4", v), related])
    table.notes.append(f"{len(raw)} raw solutions over {{-1, 0, 1}}^9 with a zero parameter, "
                       f"each a relabeling of one of the {len(placed)} rows shown")
    return table


def _table5() -> Table:
    from .doubling import table5_rows
    table = Table("5", "4D Klein assignments from doubling a 2D base",
                  KLEIN_COLUMNS + ["label"])
    table.block_starts = [0, 1]
    table.rows = table5_rows()
    return table


TABLES = {"1": _table1, "2": _table2, "3": _table3, "4": _table4, "5": _table5}


def reproduce_table(which) -> Table:
    key = str(which).lower().removeprefix("table")
    try:
        return TABLES[key]()
    except KeyError:
        raise ValueError(f"no table {which!r}; choose from {', '.join(TABLES)}") from None
