"""Loaders for the embedded reference tables.

published_tables.json holds, per (p, n), the reference list of radii classes
and the nonzero three-point counts.  A record either lists every counted
triple explicitly ("counts"), or gives unpermuted generator triples whose
S_3 closure carries count 1 ("generators" + "closure_size") with "counts"
entries layered on top.  base_overrides.json holds the default base-table
override entries (rule 4).
"""

from __future__ import annotations

import itertools
import json
from importlib import resources

from .radii import RadiusClass, canonical

__all__ = [
    "published_pairs",
    "published_xi",
    "published_counts",
    "load_overrides",
    "default_overrides",
]

Triple = tuple[RadiusClass, RadiusClass, RadiusClass]


def _raw() -> dict:
    text = resources.files("dormantops.data").joinpath("published_tables.json").read_text()
    return json.loads(text)


def _records() -> dict[tuple[int, int], dict]:
    return {(r["p"], r["n"]): r for r in _raw()["tables"]}


def published_pairs() -> list[tuple[int, int]]:
    return sorted(_records())


def published_xi(p: int, n: int) -> tuple[RadiusClass, ...]:
    rec = _records()[(p, n)]
    return tuple(canonical(p, e) for e in rec["xi"])


def published_counts(p: int, n: int) -> dict[Triple, int]:
    """Reference map triple -> N, with zero entries omitted."""
    rec = _records()[(p, n)]
    out: dict[Triple, int] = {}
    for gen in rec.get("generators", ()):
        t = tuple(canonical(p, e) for e in gen)
        for perm in itertools.permutations(t):
            out[perm] = 1
    if "closure_size" in rec and len(out) != rec["closure_size"]:
        raise ValueError(
            f"generator closure for ({p},{n}) has {len(out)} triples,"
            f" expected {rec['closure_size']}"
        )
    for entry in rec.get("counts", ()):
        t = tuple(canonical(p, e) for e in entry["triple"])
        out[t] = entry["N"]
    return out


def load_overrides(entries) -> dict[tuple[int, int, Triple], tuple[int, str]]:
    """Normalize override records, closing each entry under S_3.

    Accepts parsed JSON entries {"p", "n", "triple", "N", "source"}.  A value
    conflict inside one orbit is an error.
    """
    out: dict[tuple[int, int, Triple], tuple[int, str]] = {}
    for e in entries:
        p, n, val = e["p"], e["n"], e["N"]
        if not isinstance(val, int) or val < 0:
            raise ValueError(f"override value must be a nonnegative integer, got {val!r}")
        source = e.get("source", "override")
        t = tuple(canonical(p, x) for x in e["triple"])
        if len(t) != 3 or any(c.n != n for c in t):
            raise ValueError(f"override triple {e['triple']} does not fit (p,n)=({p},{n})")
        for perm in itertools.permutations(t):
            key = (p, n, perm)
            if key in out and out[key][0] != val:
                raise ValueError(f"conflicting override values for {perm}")
            out[key] = (val, source)
    return out


def default_overrides() -> dict[tuple[int, int, Triple], tuple[int, str]]:
    text = resources.files("dormantops.data").joinpath("base_overrides.json").read_text()
    return load_overrides(json.loads(text))
