"""4D Klein systems from a 2D base doubled with 2x2 block matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import NumberSystem, rep_matrix
from .registry import label_for, pattern_for
from .ruleset import ParamAssignment, RulePattern, check_assignment, derive_constraints


@dataclass(frozen=True)
class DoublingSpec:
    base_alpha: Fraction
    outer_alpha: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_alpha", Fraction(self.base_alpha))
        outer = self.base_alpha if self.outer_alpha is None else Fraction(self.outer_alpha)
        object.__setattr__(self, "outer_alpha", outer)


def base_block(a, b, alpha) -> linalg.Matrix:
    """2x2 matrix of ``a + b g`` with ``g**2 = alpha``."""
    return [[Fraction(a), Fraction(b)], [Fraction(alpha) * b, Fraction(a)]]


def block_matrix(spec: DoublingSpec, coeffs) -> linalg.Matrix:
    """``[[A, B], [outer*B, A]]`` with A = a + b g and B = c + d g over the base."""
    a, b, c, d = coeffs
    A = base_block(a, b, spec.base_alpha)
    B = base_block(c, d, spec.base_alpha)
    oB = linalg.scale(spec.outer_alpha, B)
    return [A[0] + B[0], A[1] + B[1], oB[0] + A[0], oB[1] + A[1]]


def assignment_from_generators(pattern: RulePattern, generators) -> ParamAssignment:
    """Read slot values off generator matrices (row-vector convention).

    Row ``i`` of the generator of ``e_j`` holds ``e_i e_j``, which must be a
    multiple of the single basis element the group table predicts.
    """
    values = [None] * pattern.param_count
    for (i, j), slot in pattern.slots.items():
        row = generators[j][i]
        for k, entry in enumerate(row):
            if k != slot.target and entry != 0:
                raise ValueError(f"generator {j} row {i} leaves the coset skeleton")
        values[slot.index] = Fraction(row[slot.target])
    return ParamAssignment(pattern.names, tuple(values))


def double(spec: DoublingSpec) -> NumberSystem:
    pattern = pattern_for("klein4")
    generators = [block_matrix(spec, tuple(int(m == k) for m in range(4))) for k in range(4)]
    assignment = assignment_from_generators(pattern, generators)
    name = f"doubled(base={spec.base_alpha}, outer={spec.outer_alpha})"
    return NumberSystem(pattern, assignment.with_label(name), name)


# rows of the correspondence table for alpha = -1, 0, 1
TABLE5_ROWS = {Fraction(-1): "B", Fraction(0): "D", Fraction(1): "H"}


def expected_row(alpha) -> tuple[Fraction, ...]:
    """Closed form (alpha, alpha, alpha^2 | alpha, alpha, 1 | alpha, alpha, 1)."""
    a = Fraction(alpha)
    return (a, a, a * a, a, a, Fraction(1), a, a, Fraction(1))


def verify_correspondence(spec: DoublingSpec) -> bool:
    system = double(spec)
    pattern = system.pattern
    ok, _ = check_assignment(pattern, derive_constraints(pattern), system.assignment)
    if not ok:
        return False
    if spec.base_alpha == spec.outer_alpha:
        if system.assignment.values != expected_row(spec.base_alpha):
            return False
        label = TABLE5_ROWS.get(spec.base_alpha)
        if label in ("B", "H") and label_for("klein4", system.assignment.values) != label:
            return False
    return True


def table5_rows() -> list[list]:
    from .enumeration import klein_row
    rows = [["alpha", "alpha", "alpha^2", "alpha^4", "alpha", "alpha", "1", "alpha^2",
             "alpha", "alpha", "1", "alpha^2", ""]]
    for alpha, label in TABLE5_ROWS.items():
        system = double(DoublingSpec(alpha))
        rows.append(klein_row(system.assignment) + [label])
    return rows


def check_block_product(spec: DoublingSpec, x, y) -> bool:
    """Doubled-system product agrees with the block-matrix product."""
    system = double(spec)
    prod = system.number(x) * system.number(y)
    return linalg.matmul(block_matrix(spec, x), block_matrix(spec, y)) == block_matrix(spec, prod.coeffs) \
        and rep_matrix(prod) == block_matrix(spec, prod.coeffs)
