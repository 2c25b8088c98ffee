"""Named graph instances shipped with the package.

Each entry in ``manifest.json`` names a DIMACS file, its SHA-256, and the
invariants checked on load (vertex count, regular degree if any, chromatic
number).
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

from ..graph import Graph, GraphError, parse_dimacs


class CorpusError(GraphError):
    pass


@lru_cache(maxsize=None)
def manifest() -> dict:
    return json.loads(resources.files(__name__).joinpath("manifest.json").read_text())


def corpus_names() -> list[str]:
    return sorted(manifest())


def _entry(name: str) -> dict:
    try:
        return manifest()[name]
    except KeyError:
        raise CorpusError(f"unknown corpus graph {name!r}; known: {corpus_names()}") from None


def check_corpus_graph(name: str, g: Graph, with_chi: bool = True) -> list[str]:
    """Return the list of failed validations (empty when the instance is sound)."""
    entry = _entry(name)
    problems = []
    if g.n != entry["n"]:
        problems.append(f"n={g.n}, expected {entry['n']}")
    if entry.get("degree") is not None:
        bad = [v for v in g.vertices if g.degree(v) != entry["degree"]]
        if bad:
            problems.append(f"{len(bad)} vertices not of degree {entry['degree']}")
    if with_chi and entry.get("chi") is not None:
        from ..coloring import chromatic_number

        k, _ = chromatic_number(g)
        if k != entry["chi"]:
            problems.append(f"chi={k}, expected {entry['chi']}")
    return problems


@lru_cache(maxsize=None)
def load_corpus_graph(name: str, validate: bool = True) -> Graph:
    entry = _entry(name)
    raw = resources.files(__name__).joinpath(entry["file"]).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != entry["sha256"]:
        raise CorpusError(f"checksum mismatch for {name!r}: {digest}")
    g = parse_dimacs(raw.decode(), name)
    if validate:
        problems = check_corpus_graph(name, g)
        if problems:
            raise CorpusError(f"corpus graph {name!r} failed validation: {'; '.join(problems)}")
    return g
