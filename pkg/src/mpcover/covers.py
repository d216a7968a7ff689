"""Covers by monochromatic subgraphs, and their independent verification.

A subgraph is normalized to a (color, vertex set) pair and always means ALL
edges of that color inside the set: among color-c subgraphs on a fixed vertex
set this one has pointwise-minimal distances, so a cover certificate exists in
normal form iff one exists at all.  Singletons are valid subgraphs of
diameter 0, which also lets a cover use fewer than t useful parts.

Verification never trusts the producer: coverage, per-subgraph connectivity
and diameter are all recomputed from the coloring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCover
from .graphs import (COLOR_NAMES, INF, EdgeColoring, color_from_name,
                     diameter_in_mask, mask_of)

# Violation kinds, in no particular order of severity.
COVERAGE_GAP = "CoverageGap"
DISCONNECTED = "Disconnected"
DIAMETER_EXCEEDED = "DiameterExceeded"
TOO_MANY_SUBGRAPHS = "TooManySubgraphs"


@dataclass(frozen=True)
class MonoSubgraph:
    """A single-color subgraph given by its vertex set."""

    color: int
    vertices: frozenset

    def __post_init__(self):
        if not self.vertices:
            raise InvalidCover("subgraph with an empty vertex set")

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)


@dataclass(frozen=True)
class Cover:
    """An ordered collection of monochromatic subgraphs."""

    subgraphs: tuple

    def __len__(self):
        return len(self.subgraphs)

    def __iter__(self):
        return iter(self.subgraphs)


def make_cover(*parts) -> Cover:
    """Build a cover from (color, vertex-iterable) pairs, dropping empties."""
    subs = []
    for color, vs in parts:
        vs = frozenset(vs)
        if vs:
            subs.append(MonoSubgraph(color, vs))
    return Cover(tuple(subs))


@dataclass(frozen=True)
class Violation:
    """First verification failure, reproducible from (chi, cover, d, t) alone."""

    kind: str
    subgraph_index: int | None
    witness: tuple | None

    def describe(self) -> str:
        where = "" if self.subgraph_index is None else f" in subgraph {self.subgraph_index}"
        return f"{self.kind}{where}, witness {self.witness}"


def subgraph_diameter(chi: EdgeColoring, g: MonoSubgraph) -> int:
    """Diameter of the color-induced subgraph; INF iff disconnected."""
    return diameter_in_mask(chi, g.color, g.mask)


def verify_cover(chi: EdgeColoring, cover: Cover, d: int, t: int):
    """None if the cover certifies (t, d); otherwise the first Violation.

    Scan order is deterministic: subgraph count, then each subgraph's
    connectivity and diameter by index, then coverage by vertex id.
    """
    if len(cover) > t:
        return Violation(TOO_MANY_SUBGRAPHS, None, (len(cover), t))
    covered = 0
    for i, g in enumerate(cover):
        for v in g.vertices:
            chi.shape.check_vertex(v)
        diam = subgraph_diameter(chi, g)
        if diam >= INF:
            return Violation(DISCONNECTED, i, tuple(sorted(g.vertices))[:2])
        if diam > d:
            return Violation(DIAMETER_EXCEEDED, i, (diam, d))
        covered |= g.mask
    if covered != chi.shape.full_mask:
        missing = next(v for v in range(chi.n) if not (covered >> v) & 1)
        return Violation(COVERAGE_GAP, None, (missing,))
    return None


# ============================================================================
# FILE FORMAT
# ============================================================================

def cover_to_json(cover: Cover) -> dict:
    return {"subgraphs": [{"color": COLOR_NAMES[g.color],
                           "vertices": sorted(g.vertices)}
                          for g in cover]}


def cover_from_json(obj: dict) -> Cover:
    try:
        subs = obj["subgraphs"]
    except (KeyError, TypeError):
        raise InvalidCover("cover JSON needs a 'subgraphs' list")
    out = []
    for entry in subs:
        color = entry["color"]
        if isinstance(color, str):
            color = color_from_name(color)
        out.append(MonoSubgraph(color, frozenset(int(v) for v in entry["vertices"])))
    return Cover(tuple(out))
