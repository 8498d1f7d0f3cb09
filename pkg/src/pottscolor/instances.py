"""Vendored benchmark instances plus user-supplied instance lookup.

The package ships the standard coloring benchmarks it can construct or
derive itself (queens, myciel, the les-miserables co-appearance graph).
Additional .col files can be dropped into a directory pointed at by
$POTTSCOLOR_INSTANCES; name lookup checks the vendored set first.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .errors import InputError
from .graphs import Graph, parse_dimacs

ENV_VAR = "POTTSCOLOR_INSTANCES"


def _vendored_dir():
    return resources.files("pottscolor") / "data" / "instances"


def _normalize(name: str) -> str:
    return name[:-len(".col")] if name.endswith(".col") else name


def list_instances() -> list[str]:
    """Vendored names plus anything in $POTTSCOLOR_INSTANCES."""
    names = {
        entry.name[:-len(".col")]
        for entry in _vendored_dir().iterdir()
        if entry.name.endswith(".col")
    }
    extra = os.environ.get(ENV_VAR)
    if extra and Path(extra).is_dir():
        names.update(p.stem for p in Path(extra).glob("*.col"))
    return sorted(names)


def find_instance(name: str):
    """Resource or path for a named instance, or None."""
    stem = _normalize(name)
    entry = _vendored_dir() / f"{stem}.col"
    if entry.is_file():
        return entry
    extra = os.environ.get(ENV_VAR)
    if extra:
        candidate = Path(extra) / f"{stem}.col"
        if candidate.is_file():
            return candidate
    return None


def load_instance(spec: str | Path) -> Graph:
    """A filesystem path to a DIMACS file, or a known instance name."""
    p = Path(spec)
    if p.is_file():
        return parse_dimacs(p.read_text())
    entry = find_instance(str(spec))
    if entry is None:
        raise InputError(
            f"unknown instance {spec!r}; vendored: {', '.join(list_instances())} "
            f"(or set ${ENV_VAR} to a directory of .col files)"
        )
    return parse_dimacs(entry.read_text())


def schedule_resource(name: str) -> str:
    """Text of a bundled scheduling CSV (e.g. 'meetings')."""
    entry = resources.files("pottscolor") / "data" / "schedules" / f"{name}.csv"
    if not entry.is_file():
        raise InputError(f"unknown bundled schedule {name!r}")
    return entry.read_text()
