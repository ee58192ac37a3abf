"""Builtin groups and named number systems.

The name -> assignment mapping lives in ``data/registry.json``.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .group_core import GroupSpec, load_group, make_cyclic, make_klein
from .ruleset import ParamAssignment, RulePattern, build_pattern, standard_c4


class UnknownSystemError(KeyError):
    pass


GROUPS = {
    "c2": lambda: make_cyclic(2),
    "c3": lambda: make_cyclic(3),
    "c4": standard_c4,
    "klein4": make_klein,
}


def builtin_group(name: str) -> GroupSpec:
    try:
        return GROUPS[name.lower()]()
    except KeyError:
        raise UnknownSystemError(f"unknown group {name!r}; choose from {', '.join(GROUPS)}") from None


def resolve_group(name: str | None = None, path: str | None = None) -> GroupSpec:
    if path is not None:
        return load_group(path)
    return builtin_group(name or "")


@lru_cache(maxsize=None)
def pattern_for(group_name: str) -> RulePattern:
    return build_pattern(builtin_group(group_name))


@lru_cache(maxsize=None)
def _data() -> dict:
    text = resources.files("cosetnum").joinpath("data/registry.json").read_text()
    return json.loads(text)


def system_names() -> list[str]:
    return list(_data()["systems"])


def canonical_name(name: str) -> str:
    data = _data()
    if name in data["systems"]:
        return name
    if name in data["aliases"]:
        return data["aliases"][name]
    lowered = name.lower()
    if lowered in data["systems"]:
        return lowered
    raise UnknownSystemError(f"unknown system {name!r}")


def table_label(name: str) -> str:
    return _data()["table_labels"].get(name, "")


def system_entry(name: str) -> tuple[str, ParamAssignment]:
    name = canonical_name(name)
    entry = _data()["systems"][name]
    pattern = pattern_for(entry["group"])
    return entry["group"], ParamAssignment(pattern.names, tuple(entry["values"]), name)


def named_assignments(group_name: str) -> dict[str, ParamAssignment]:
    out = {}
    for name in system_names():
        g, a = system_entry(name)
        if g == group_name:
            out[name] = a
    return out


def label_for(group_name: str, values) -> str:
    """Short table label of a registered assignment with these values, if any."""
    values = tuple(values)
    for name, a in named_assignments(group_name).items():
        if a.values == values:
            return table_label(name) or name
    return ""
