"""Multiplication skeletons, associativity constraints and Klein signatures.

Every product of two non-identity basis elements is a single scaled basis
element ``e_i e_j = s(i, j) e_{ij}``, so associativity on basis triples can
only ever equate two products of parameters. Constraints are therefore
stored as monomial equalities over slot indices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .group_core import GroupSpec, find_isomorphism, make_cyclic, make_klein, relabel


class IncompleteAssignmentError(ValueError):
    pass


class PatternMismatchError(ValueError):
    pass


class ZeroSignatureError(ValueError):
    pass


class InconsistentSignatureError(ValueError):
    """rho''**4 != (alpha*beta*gamma)**2: no associative assignment exists."""


def standard_c4() -> GroupSpec:
    """C4 with basis order (1, i, j, k) = (e, g, g^-1, g^2)."""
    return relabel(make_cyclic(4), [0, 1, 3, 2], name="C4")


# Reference groups and slot names, keyed by (row, col) in the reference basis.
# Listed in canonical slot order.
_KNOWN = {
    "c2": (lambda: make_cyclic(2), [((1, 1), "alpha")]),
    "c3": (lambda: make_cyclic(3), [
        ((1, 2), "alpha"), ((1, 1), "beta"), ((2, 2), "gamma"), ((2, 1), "alpha'"),
    ]),
    "c4": (standard_c4, [
        ((1, 2), "alpha"), ((2, 3), "beta"), ((3, 1), "gamma"),
        ((1, 1), "delta"), ((2, 2), "epsilon"), ((3, 3), "phi"),
        ((2, 1), "alpha'"), ((3, 2), "beta'"), ((1, 3), "gamma'"),
    ]),
    "klein": (make_klein, [
        ((1, 1), "alpha"), ((2, 2), "beta"), ((3, 3), "gamma"),
        ((2, 3), "alpha'"), ((3, 1), "beta'"), ((1, 2), "gamma'"),
        ((3, 2), "alpha''"), ((1, 3), "beta''"), ((2, 1), "gamma''"),
    ]),
}

KLEIN_SLOTS = tuple(name for _, name in _KNOWN["klein"][1])

_GREEK = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ",
          "epsilon": "ε", "phi": "φ", "rho": "ρ"}


def pretty_name(slot: str) -> str:
    base = slot.rstrip("'")
    return _GREEK.get(base, base) + "′" * (len(slot) - len(base))


@dataclass(frozen=True)
class Slot:
    target: int
    index: int


@dataclass(frozen=True)
class RulePattern:
    group: GroupSpec
    slots: Mapping[tuple[int, int], Slot]
    names: tuple[str, ...]
    kind: str | None = None
    # basis index of the group -> basis index of the reference group
    to_reference: tuple[int, ...] | None = None

    @property
    def param_count(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        return self.group.order

    def slot_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown slot {name!r}") from None

    def pair_of(self, index: int) -> tuple[int, int]:
        for pair, slot in self.slots.items():
            if slot.index == index:
                return pair
        raise KeyError(index)

    def structure(self, values: Sequence) -> list[list[tuple[int, object]]]:
        """Table of (target, coefficient) for every ordered basis pair."""
        n, e = self.order, self.group.identity
        one = Fraction(1)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                t = self.group.table[i][j]
                if i == e or j == e:
                    row.append((t, one))
                else:
                    row.append((t, values[self.slots[(i, j)].index]))
            out.append(row)
        return out


def _classify(group: GroupSpec) -> tuple[str | None, tuple[int, ...] | None]:
    for kind, (ref_factory, _) in _KNOWN.items():
        ref = ref_factory()
        if ref.order != group.order:
            continue
        iso = find_isomorphism(group, ref)
        if iso is not None:
            return kind, iso
    return None, None


def build_pattern(group: GroupSpec) -> RulePattern:
    """One parameter slot per ordered pair of non-identity elements."""
    e = group.identity
    others = [a for a in range(group.order) if a != e]
    kind, iso = _classify(group)
    if kind is not None:
        ref_names = dict(_KNOWN[kind][1])
        order = [name for _, name in _KNOWN[kind][1]]
        named = {(i, j): ref_names[(iso[i], iso[j])] for i in others for j in others}
        names = tuple(order)
    else:
        named = {(i, j): f"s{i}_{j}" for i in others for j in others}
        names = tuple(named[(i, j)] for i in others for j in others)
    slots = {pair: Slot(group.table[pair[0]][pair[1]], names.index(name))
             for pair, name in named.items()}
    return RulePattern(group, slots, names, kind, iso)


@dataclass(frozen=True)
class Equation:
    triple: tuple[int, int, int]
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    target: int


@dataclass(frozen=True)
class ConstraintSet:
    pattern: RulePattern
    equations: tuple[Equation, ...]

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def to_json(self) -> list[dict]:
        names = self.pattern.names
        return [{"triple": list(eq.triple),
                 "lhs": [names[s] for s in eq.lhs],
                 "rhs": [names[s] for s in eq.rhs]} for eq in self.equations]

    def describe(self, eq: Equation) -> str:
        def mono(m):
            return "*".join(self.pattern.names[s] for s in m) or "1"
        return f"{mono(eq.lhs)} = {mono(eq.rhs)}"


def _expand(pattern: RulePattern, i: int, j: int, k: int):
    t = pattern.group.table
    e = pattern.group.identity
    s = pattern.slots
    ij = t[i][j]
    left = [s[(i, j)].index]
    if ij != e:
        left.append(s[(ij, k)].index)
    jk = t[j][k]
    right = [s[(j, k)].index]
    if jk != e:
        right.append(s[(i, jk)].index)
    return tuple(sorted(left)), tuple(sorted(right)), t[ij][k], t[i][jk]


def derive_constraints(pattern: RulePattern) -> ConstraintSet:
    """Expand (e_i e_j) e_k and e_i (e_j e_k) over all non-identity triples."""
    e = pattern.group.identity
    others = [a for a in range(pattern.order) if a != e]
    seen = set()
    equations = []
    for i, j, k in itertools.product(others, repeat=3):
        lhs, rhs, t_left, t_right = _expand(pattern, i, j, k)
        assert t_left == t_right, f"group table not associative at {(i, j, k)}"
        if lhs == rhs:
            continue
        key = (lhs, rhs) if lhs <= rhs else (rhs, lhs)
        if key in seen:
            continue
        seen.add(key)
        equations.append(Equation((i, j, k), lhs, rhs, t_left))
    return ConstraintSet(pattern, tuple(equations))


@dataclass(frozen=True)
class ParamAssignment:
    names: tuple[str, ...]
    values: tuple[Fraction, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.names) != len(self.values):
            raise IncompleteAssignmentError("one value per slot required")

    def __getitem__(self, name: str) -> Fraction:
        return self.values[self.names.index(name)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.names, self.values))

    def to_json(self) -> dict[str, str]:
        return {n: str(v) for n, v in zip(self.names, self.values)}

    @classmethod
    def from_mapping(cls, pattern: RulePattern, values: Mapping, label: str = "") -> "ParamAssignment":
        missing = [n for n in pattern.names if n not in values]
        if missing:
            raise IncompleteAssignmentError(f"no value for slot(s) {', '.join(missing)}")
        extra = set(values) - set(pattern.names)
        if extra:
            raise IncompleteAssignmentError(f"unknown slot(s) {', '.join(sorted(extra))}")
        return cls(pattern.names, tuple(Fraction(values[n]) for n in pattern.names), label)

    def with_label(self, label: str) -> "ParamAssignment":
        return ParamAssignment(self.names, self.values, label)


def _values_for(pattern: RulePattern, assignment) -> tuple[Fraction, ...]:
    if isinstance(assignment, ParamAssignment):
        if assignment.names != pattern.names:
            if set(assignment.names) != set(pattern.names):
                raise IncompleteAssignmentError("assignment does not cover the pattern's slots")
            return tuple(assignment[n] for n in pattern.names)
        return assignment.values
    if isinstance(assignment, Mapping):
        return ParamAssignment.from_mapping(pattern, assignment).values
    values = tuple(Fraction(v) for v in assignment)
    if len(values) != pattern.param_count:
        raise IncompleteAssignmentError(
            f"expected {pattern.param_count} values, got {len(values)}")
    return values


def _prod(values, mono):
    out = Fraction(1)
    for s in mono:
        out *= values[s]
    return out


def check_assignment(pattern: RulePattern, constraints: ConstraintSet,
                     assignment) -> tuple[bool, list[Equation]]:
    """Evaluate every monomial equality exactly; return (ok, violated)."""
    values = _values_for(pattern, assignment)
    violated = [eq for eq in constraints
                if _prod(values, eq.lhs) != _prod(values, eq.rhs)]
    return not violated, violated


@dataclass(frozen=True)
class Signature:
    rho: Fraction
    rho_p: Fraction
    rho_pp: Fraction

    def as_tuple(self):
        return (self.rho, self.rho_p, self.rho_pp)


def _require_klein(pattern: RulePattern | None, names: Iterable[str]):
    if pattern is not None and pattern.kind != "klein":
        raise PatternMismatchError("signatures are only defined for the Klein pattern")
    if set(names) != set(KLEIN_SLOTS):
        raise PatternMismatchError("assignment is not over the Klein slots")


def signatures(assignment: ParamAssignment, pattern: RulePattern | None = None) -> Signature:
    _require_klein(pattern, assignment.names)
    a = assignment
    return Signature(a["alpha"] * a["beta"] * a["gamma"],
                     a["alpha'"] * a["beta'"] * a["gamma'"],
                     a["alpha''"] * a["beta''"] * a["gamma''"])


def assign_from_signature(alpha, beta, gamma, rho_pp, label: str = "") -> ParamAssignment:
    """Klein assignment from the diagonal squares and rho''.

    Primed values solve alpha*alpha' = beta*beta' = gamma*gamma' = rho'';
    double-primed values solve the same with rho' = alpha'*beta'*gamma'.
    The result is associative only when rho''**2 == |alpha*beta*gamma|,
    which always holds for +-1 inputs.
    """
    alpha, beta, gamma, rho_pp = (Fraction(v) for v in (alpha, beta, gamma, rho_pp))
    if 0 in (alpha, beta, gamma, rho_pp):
        raise ZeroSignatureError("assignment from signature needs nonzero inputs")
    if rho_pp ** 4 != (alpha * beta * gamma) ** 2:
        raise InconsistentSignatureError(
            f"rho''^4 = {rho_pp ** 4} differs from rho^2 = {(alpha * beta * gamma) ** 2}")
    primed = (rho_pp / alpha, rho_pp / beta, rho_pp / gamma)
    rho_p = primed[0] * primed[1] * primed[2]
    double = (rho_p / alpha, rho_p / beta, rho_p / gamma)
    return ParamAssignment(KLEIN_SLOTS, (alpha, beta, gamma) + primed + double, label)


def is_commutative_assignment(pattern: RulePattern, values: Sequence) -> bool:
    return all(values[s.index] == values[pattern.slots[(j, i)].index]
               for (i, j), s in pattern.slots.items())
