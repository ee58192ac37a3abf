"""Coset-group extensions of the real numbers.

A finite group of cosets fixes which basis element every product lands
on; associativity then constrains the scaling parameters. This package
builds those skeletons, enumerates valid parameter choices and does exact
arithmetic in the resulting number systems.
"""
from .algebra import (GeneralNumber, NoInverseError, NonAssociativeError, NumberSystem, add, basis,
                      det, inverse, is_commutative, mul, rep_matrix)
from .doubling import DoublingSpec, double, verify_correspondence
from .enumeration import AssignmentClass, canonicalize, enumerate_assignments, reproduce_table
from .group_core import (Automorphism, GroupSpec, automorphisms, make_cyclic, make_klein,
                         validate_group)
from .registry import builtin_group, system_entry
from .ruleset import (ConstraintSet, ParamAssignment, RulePattern, Signature, assign_from_signature,
                      build_pattern, check_assignment, derive_constraints, signatures)


def system(name: str) -> NumberSystem:
    """Named builtin system, e.g. ``system("quaternion")``."""
    group, assignment = system_entry(name)
    from .registry import pattern_for
    return NumberSystem(pattern_for(group), assignment, assignment.label)


__all__ = [
    "Automorphism", "AssignmentClass", "ConstraintSet", "DoublingSpec", "GeneralNumber", "GroupSpec",
    "NoInverseError", "NonAssociativeError", "NumberSystem", "ParamAssignment", "RulePattern",
    "Signature", "add", "assign_from_signature", "automorphisms", "basis", "build_pattern",
    "builtin_group", "canonicalize", "check_assignment", "derive_constraints", "det", "double",
    "enumerate_assignments", "inverse", "is_commutative", "make_cyclic", "make_klein", "mul",
    "rep_matrix", "reproduce_table", "signatures", "system", "validate_group",
    "verify_correspondence",
]
