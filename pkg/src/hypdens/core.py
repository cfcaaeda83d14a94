"""Finite hypergraphs on vertices ``1..n`` and their matchings.

Edges are stored as strictly increasing tuples of vertex ids.  The counting
code works on bitmasks (bit ``v - 1`` for vertex ``v``); the conversion
helpers live here so every module agrees on the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyEdge, OutOfRange

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph with vertex set ``{1, ..., n}``.

    ``edges`` keeps the caller's order; duplicates and nested edges are kept
    until :func:`normalize` is called.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise OutOfRange(f"vertex count must be non-negative, got {self.n}")
        clean = []
        for e in self.edges:
            t = tuple(sorted(set(int(v) for v in e)))
            if len(t) != len(tuple(e)):
                raise OutOfRange(f"edge {tuple(e)} repeats a vertex")
            if t and (t[0] < 1 or t[-1] > self.n):
                raise OutOfRange(f"edge {t} has a vertex outside 1..{self.n}")
            clean.append(t)
        object.__setattr__(self, "edges", tuple(clean))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Hypergraph":
        return cls(n, tuple(mask_to_edge(m) for m in masks))

    def masks(self) -> list[int]:
        return [edge_to_mask(e) for e in self.edges]

    @property
    def rank(self) -> int:
        """Largest edge cardinality (0 for an edgeless hypergraph)."""
        return max((len(e) for e in self.edges), default=0)

    def has_empty_edge(self) -> bool:
        return any(len(e) == 0 for e in self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def same_as(self, other: "Hypergraph") -> bool:
        """Equality up to edge order and multiplicity."""
        return self.n == other.n and self.edge_set() == other.edge_set()


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...] = ()

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


def edge_to_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m


def mask_to_edge(mask: int) -> Edge:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def normalize_masks(masks: Iterable[int]) -> list[int]:
    """Drop duplicates and every mask that contains another mask.

    The survivors keep the relative order in which they first appeared.
    """
    uniq = list(dict.fromkeys(masks))
    by_size = sorted(uniq, key=int.bit_count)
    kept: list[int] = []
    for m in by_size:
        if not any(k & m == k for k in kept):
            kept.append(m)
    keep = set(kept)
    return [m for m in uniq if m in keep]


def normalize(h: Hypergraph) -> Hypergraph:
    return Hypergraph.from_masks(h.n, normalize_masks(h.masks()))


def induced(h: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced by ``vertices``, relabelled ``1..|S|`` in order."""
    keep = sorted(set(vertices))
    for v in keep:
        if v < 1 or v > h.n:
            raise OutOfRange(f"vertex {v} outside 1..{h.n}")
    relabel = {v: i for i, v in enumerate(keep, start=1)}
    edges = [tuple(relabel[v] for v in e) for e in h.edges if all(v in relabel for v in e)]
    return Hypergraph(len(keep), tuple(edges))


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    shift = h1.n
    edges = h1.edges + tuple(tuple(v + shift for v in e) for e in h2.edges)
    return Hypergraph(h1.n + h2.n, edges)


def _check_no_empty(h: Hypergraph):
    if h.has_empty_edge():
        raise EmptyEdge("matchings are undefined in the presence of an empty edge")


def greedy_maximal_matching(h: Hypergraph) -> Matching:
    """Scan edges in stored order and keep each one disjoint from those kept."""
    _check_no_empty(h)
    used = 0
    taken = []
    for e in h.edges:
        m = edge_to_mask(e)
        if not m & used:
            used |= m
            taken.append(e)
    return Matching(tuple(taken))


def maximum_matching(h: Hypergraph) -> Matching:
    """A maximum-cardinality matching by exhaustive branch and bound."""
    _check_no_empty(h)
    # minimal edges suffice: any matching shrinks onto them edge by edge
    edges = [(m, mask_to_edge(m)) for m in normalize_masks(h.masks())]
    best: list[Edge] = list(greedy_maximal_matching(h).edges)

    def search(i: int, used: int, chosen: list[Edge]):
        nonlocal best
        remaining = [k for k in range(i, len(edges)) if not edges[k][0] & used]
        if len(chosen) + len(remaining) <= len(best):
            return
        if not remaining:
            best = list(chosen)
            return
        k = remaining[0]
        mask, e = edges[k]
        chosen.append(e)
        search(k + 1, used | mask, chosen)
        chosen.pop()
        search(k + 1, used, chosen)

    search(0, 0, [])
    return Matching(tuple(best))

