"""Exact arithmetic in an instantiated number system.

Convention: ``rep_matrix(x)[i][k]`` is the coefficient of ``e_k`` in
``e_i * x``, so a row vector ``v`` satisfies ``v @ rep_matrix(x) == v * x``
and ``rep_matrix(x) @ rep_matrix(y) == rep_matrix(x * y)``.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .ruleset import (ParamAssignment, RulePattern, check_assignment, derive_constraints,
                      is_commutative_assignment)


class NonAssociativeError(ValueError):
    pass


class SystemMismatchError(ValueError):
    pass


class NoInverseError(ArithmeticError):
    """The element has zero determinant."""


class NumberParseError(ValueError):
    pass


class NumberSystem:
    def __init__(self, pattern: RulePattern, assignment: ParamAssignment | Sequence, name: str = ""):
        if not isinstance(assignment, ParamAssignment):
            assignment = ParamAssignment(pattern.names, tuple(assignment))
        ok, violated = check_assignment(pattern, derive_constraints(pattern), assignment)
        if not ok:
            cs = derive_constraints(pattern)
            raise NonAssociativeError(
                "assignment breaks associativity: " + "; ".join(cs.describe(eq) for eq in violated))
        self.pattern = pattern
        self.assignment = ParamAssignment(pattern.names,
                                          tuple(assignment[n] for n in pattern.names),
                                          assignment.label)
        self.name = name or assignment.label
        self.structure = pattern.structure(self.assignment.values)

    @property
    def dim(self) -> int:
        return self.pattern.order

    @property
    def labels(self) -> tuple[str, ...]:
        return self.pattern.group.labels

    def __repr__(self):
        return f"NumberSystem({self.name or self.pattern.group.name}, {self.assignment.to_json()})"

    def __eq__(self, other):
        return (isinstance(other, NumberSystem) and self.pattern == other.pattern
                and self.assignment.values == other.assignment.values)

    def __hash__(self):
        return hash((self.pattern.group, self.assignment.values))

    def number(self, *coeffs) -> "GeneralNumber":
        if len(coeffs) == 1 and not isinstance(coeffs[0], (int, Fraction, str)):
            coeffs = tuple(coeffs[0])
        return GeneralNumber(self, coeffs)

    def one(self) -> "GeneralNumber":
        return basis(self, 0)

    def zero(self) -> "GeneralNumber":
        return GeneralNumber(self, (0,) * self.dim)

    @cached_property
    def int_structure(self) -> tuple[np.ndarray, np.ndarray] | None:
        """(target, coefficient) int64 arrays when every parameter is an integer."""
        if any(v.denominator != 1 for v in self.assignment.values):
            return None
        n = self.dim
        target = np.zeros((n, n), dtype=np.int64)
        coef = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                t, c = self.structure[i][j]
                target[i, j] = t
                coef[i, j] = int(c)
        return target, coef


@dataclass(frozen=True, eq=False)
class GeneralNumber:
    system: NumberSystem
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.system.dim:
            raise ValueError(f"expected {self.system.dim} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def _check(self, other):
        if not isinstance(other, GeneralNumber):
            return NotImplemented
        if other.system != self.system:
            raise SystemMismatchError("operands belong to different number systems")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.system.one() * other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return GeneralNumber(self.system, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GeneralNumber(self.system, tuple(c * other for c in self.coeffs))
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GeneralNumber(self.system, tuple(c / other for c in self.coeffs))
        return self * inverse(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inverse(self) ** -k
        out = self.system.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GeneralNumber):
            return self.system == other.system and self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == tuple(Fraction(c) for c in other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return format_number(self.coeffs)


def basis(system: NumberSystem, k: int) -> GeneralNumber:
    return GeneralNumber(system, tuple(int(i == k) for i in range(system.dim)))


def add(x: GeneralNumber, y: GeneralNumber) -> GeneralNumber:
    if y.system != x.system:
        raise SystemMismatchError("operands belong to different number systems")
    return GeneralNumber(x.system, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def mul(x: GeneralNumber, y: GeneralNumber) -> GeneralNumber:
    """Bilinear product through the structure constants."""
    if y.system != x.system:
        raise SystemMismatchError("operands belong to different number systems")
    st = x.system.structure
    out = [Fraction(0)] * x.system.dim
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if b:
                t, c = st[i][j]
                out[t] += c * a * b
    return GeneralNumber(x.system, tuple(out))


def rep_matrix(x: GeneralNumber) -> linalg.Matrix:
    st = x.system.structure
    n = x.system.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j, b in enumerate(x.coeffs):
            if b:
                t, c = st[i][j]
                m[i][t] += c * b
    return m


def generator_matrices(system: NumberSystem) -> list[linalg.Matrix]:
    """Representation matrices of the basis elements, identity first."""
    return [rep_matrix(basis(system, k)) for k in range(system.dim)]


def symbolic_rep_matrix(pattern: RulePattern, coeff_names: Sequence[str] = "abcdefgh") -> list[list[str]]:
    """Entries of the general representation matrix as strings like ``alpha*b``."""
    n = pattern.order
    e = pattern.group.identity
    m = [["0"] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            t = pattern.group.table[i][j]
            name = coeff_names[j]
            if i == e or j == e:
                m[i][t] = name
            else:
                m[i][t] = f"{pattern.names[pattern.slots[(i, j)].index]}*{name}"
    return m


def det(x: GeneralNumber) -> Fraction:
    return linalg.det(rep_matrix(x))


def inverse(x: GeneralNumber) -> GeneralNumber:
    """Identity row of the inverse representation matrix."""
    try:
        inv = linalg.inverse(rep_matrix(x))
    except linalg.SingularMatrixError:
        raise NoInverseError(f"{format_number(x.coeffs)} has zero determinant") from None
    return GeneralNumber(x.system, tuple(inv[x.system.pattern.group.identity]))


def is_commutative(system: NumberSystem) -> bool:
    return is_commutative_assignment(system.pattern, system.assignment.values)


# -- text form -------------------------------------------------------------------

def format_rational(q: Fraction, decimal: bool = False) -> str:
    q = Fraction(q)
    if decimal:
        return f"{float(q):.6g}"
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_number(coeffs: Sequence, decimal: bool = False) -> str:
    return "(" + ", ".join(format_rational(c, decimal) for c in coeffs) + ")"


_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    text = text.replace("−", "-")
    m = _RATIONAL.match(text)
    if not m:
        raise NumberParseError(f"malformed rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise NumberParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_number(text: str, system: NumberSystem) -> GeneralNumber:
    """Parse a coefficient tuple such as ``(1, -1/2, 0, 3)``."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise NumberParseError(f"number literal must be a parenthesised tuple: {text!r}")
    parts = [p for p in s[1:-1].split(",")]
    if parts and not parts[-1].strip():
        parts = parts[:-1]
    coeffs = tuple(parse_rational(p) for p in parts)
    if len(coeffs) != system.dim:
        raise NumberParseError(f"expected {system.dim} coefficients, got {len(coeffs)} in {text!r}")
    return GeneralNumber(system, coeffs)


def evaluate(expr: str, system: NumberSystem):
    """Evaluate an arithmetic expression over coefficient tuples.

    Supports ``+ - * /``, integer powers, rational scalars and the
    functions ``inv`` and ``det``.
    """
    try:
        tree = ast.parse(expr.replace("−", "-").replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise NumberParseError(f"cannot parse {expr!r}: {exc.msg}") from None
    return _eval(tree.body, system)


def _scalar(node) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _scalar(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        den = _scalar(node.right)
        if den == 0:
            raise NumberParseError("zero denominator")
        return _scalar(node.left) / den
    raise NumberParseError(f"malformed coefficient {ast.unparse(node)!r}")


def _eval(node, system):
    if isinstance(node, ast.Tuple):
        coeffs = tuple(_scalar(e) for e in node.elts)
        if len(coeffs) != system.dim:
            raise NumberParseError(f"expected {system.dim} coefficients, got {len(coeffs)}")
        return GeneralNumber(system, coeffs)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, system)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval(node.left, system)
        right = _eval(node.right, system)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, Fraction) and right == 0:
                raise NoInverseError("division by zero")
            if isinstance(left, Fraction) and isinstance(right, GeneralNumber):
                return inverse(right) * left
            return left / right
        if isinstance(node.op, ast.Pow):
            if not isinstance(right, Fraction) or right.denominator != 1:
                raise NumberParseError("exponent must be an integer")
            return left ** int(right)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1:
        arg = _eval(node.args[0], system)
        if isinstance(arg, GeneralNumber):
            if node.func.id == "inv":
                return inverse(arg)
            if node.func.id == "det":
                return det(arg)
    raise NumberParseError(f"unsupported expression {ast.unparse(node)!r}")
