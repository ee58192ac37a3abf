"""Finite groups stored as Cayley tables.

Element 0 is always the identity. Tables are tuples of tuples so a
``GroupSpec`` can be hashed and shared freely.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence


class GroupError(ValueError):
    """Raised for malformed group input (bad order, bad table shape)."""


@dataclass(frozen=True)
class GroupSpec:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise GroupError(f"invalid group order {self.order}")
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        if len(table) != self.order or any(len(row) != self.order for row in table):
            raise GroupError(f"table must be {self.order}x{self.order}")
        object.__setattr__(self, "table", table)
        if not self.labels:
            object.__setattr__(self, "labels", default_labels(self.order))
        elif len(self.labels) != self.order:
            raise GroupError("one label per element required")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity:
                return b
        raise GroupError(f"element {a} has no inverse")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "identity": self.identity,
            "table": [list(row) for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        try:
            order = int(data["order"])
            table = data["table"]
            identity = int(data.get("identity", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise GroupError(f"malformed group json: {exc}") from exc
        if identity != 0:
            raise GroupError("identity must be element 0")
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise GroupError("table must be a list of lists")
        try:
            rows = tuple(tuple(int(x) for x in row) for row in table)
        except (TypeError, ValueError) as exc:
            raise GroupError(f"non-integer table entry: {exc}") from exc
        labels = tuple(data.get("labels", ()))
        return cls(order, rows, identity, str(data.get("name", "")), labels)


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 4:
        return ("1", "i", "j", "k")[:n]
    return ("1",) + tuple(f"e{i}" for i in range(1, n))


def load_group(path: str | Path) -> GroupSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupError(f"cannot read group file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise GroupError("group file must hold a json object")
    return GroupSpec.from_json(data)


def make_cyclic(n: int) -> GroupSpec:
    """Cyclic group C_n with element i standing for g**i."""
    if n < 1:
        raise GroupError(f"invalid group order {n}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return GroupSpec(n, table, 0, f"C{n}")


def make_klein() -> GroupSpec:
    """Klein four-group; element 3 is the product of elements 1 and 2."""
    table = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    return GroupSpec(4, table, 0, "V4")


def relabel(group: GroupSpec, order: Sequence[int], name: str | None = None,
            labels: Sequence[str] = ()) -> GroupSpec:
    """Isomorphic copy whose element ``k`` is the old element ``order[k]``.

    ``order[0]`` must be the old identity so the new identity stays at 0.
    """
    n = group.order
    if sorted(order) != list(range(n)) or order[0] != group.identity:
        raise GroupError("relabeling must be a permutation fixing the identity")
    new_of = {old: new for new, old in enumerate(order)}
    table = tuple(
        tuple(new_of[group.table[order[a]][order[b]]] for b in range(n))
        for a in range(n)
    )
    return GroupSpec(n, table, 0, name or group.name, tuple(labels))


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[AxiomResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]


def validate_group(spec: GroupSpec) -> ValidationReport:
    """Check closure, associativity, identity and inverses.

    Failures carry a witness: the offending pair/triple/element.
    """
    n, t, e = spec.order, spec.table, spec.identity
    results = []

    bad = next(((a, b) for a in range(n) for b in range(n)
                if not 0 <= t[a][b] < n), None)
    results.append(AxiomResult("closure", bad is None, bad,
                               "" if bad is None else f"{bad[0]}*{bad[1]} = {t[bad[0]][bad[1]]} out of range"))
    if bad is not None:
        # the remaining checks index the table with its own entries
        for name in ("associativity", "identity", "inverses"):
            results.append(AxiomResult(name, False, None, "skipped: closure failed"))
        return ValidationReport(tuple(results))

    witness = None
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            witness = (a, b, c)
            break
    results.append(AxiomResult(
        "associativity", witness is None, witness,
        "" if witness is None else
        f"({witness[0]}*{witness[1]})*{witness[2]} = {t[t[a][b]][c]} but "
        f"{witness[0]}*({witness[1]}*{witness[2]}) = {t[a][t[b][c]]}"))

    bad_id = next((a for a in range(n) if t[e][a] != a or t[a][e] != a), None)
    results.append(AxiomResult(
        "identity", bad_id is None, None if bad_id is None else (bad_id,),
        "" if bad_id is None else f"element {e} does not fix {bad_id}"))

    no_inv = next((a for a in range(n)
                   if not any(t[a][b] == e and t[b][a] == e for b in range(n))), None)
    results.append(AxiomResult(
        "inverses", no_inv is None, None if no_inv is None else (no_inv,),
        "" if no_inv is None else f"element {no_inv} has no two-sided inverse"))
    return ValidationReport(tuple(results))


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.perm[a]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(tuple(self.perm[other.perm[a]] for a in range(len(self.perm))))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for a, b in enumerate(self.perm):
            inv[b] = a
        return Automorphism(tuple(inv))


def is_homomorphic_perm(spec: GroupSpec, perm: Sequence[int], target: GroupSpec | None = None) -> bool:
    target = spec if target is None else target
    n = spec.order
    return all(perm[spec.table[a][b]] == target.table[perm[a]][perm[b]]
               for a in range(n) for b in range(n))


def automorphisms(spec: GroupSpec) -> list[Automorphism]:
    """All identity-fixing permutations preserving the table, identity first."""
    e = spec.identity
    others = [a for a in range(spec.order) if a != e]
    autos = []
    for images in itertools.permutations(others):
        perm = [0] * spec.order
        perm[e] = e
        for a, b in zip(others, images):
            perm[a] = b
        if is_homomorphic_perm(spec, perm):
            autos.append(Automorphism(tuple(perm)))
    return autos


def find_isomorphism(g: GroupSpec, h: GroupSpec) -> tuple[int, ...] | None:
    """Brute-force isomorphism search; fine for the tiny orders used here."""
    if g.order != h.order:
        return None
    others_g = [a for a in range(g.order) if a != g.identity]
    others_h = [a for a in range(h.order) if a != h.identity]
    for images in itertools.permutations(others_h):
        perm = [0] * g.order
        perm[g.identity] = h.identity
        for a, b in zip(others_g, images):
            perm[a] = b
        if is_homomorphic_perm(g, perm, h):
            return tuple(perm)
    return None
