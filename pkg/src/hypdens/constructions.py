"""Concrete hypergraph families.

* the disjoint-edge hypergraph with one edge of every size (``hhat``),
* certified enclosures of its density ``S = prod_k (1 - 2**-k)``,
* the hypergraph ``H_(r)`` whose density is a prescribed ``r`` in [0, 1],
* small graphs and the lift of a graph to the hypergraph of its forbidden
  induced subgraphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import Hypergraph, edge_to_mask
from .density import Dyadic
from .errors import BadOrder, DisconnectedFamilyMember, NTooSmall, OutOfRange, TooLarge

# ---------------------------------------------------------------------------
# one edge of every size


def _triangular(k: int) -> int:
    return k * (k + 1) // 2


def hhat_prefix(n: int) -> Hypergraph:
    """Edges ``{1}, {2,3}, {4,5,6}, ...`` up to the edge of size ``n``."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    edges = tuple(tuple(range(_triangular(k - 1) + 1, _triangular(k) + 1)) for k in range(1, n + 1))
    return Hypergraph(_triangular(n), edges)


def hhat_vertex_prefix(order: int) -> Hypergraph:
    """The same hypergraph induced on its first ``order`` vertices."""
    if order < 0:
        raise OutOfRange(f"order must be non-negative, got {order}")
    edges = []
    k = 1
    while _triangular(k) <= order:
        edges.append(tuple(range(_triangular(k - 1) + 1, _triangular(k) + 1)))
        k += 1
    return Hypergraph(order, tuple(edges))


@dataclass(frozen=True)
class IntervalValue:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper

    def intersects(self, other: "IntervalValue") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper


def _pentagonal_exponent(k: int) -> int:
    return k * (3 * k + 1) // 2


def _tail_bracket_below_two(N: int) -> bool:
    """Check ``sum_{k>=0} 2**-((3k^2+6kN-k)/2) * (1 + 2**-(k+N)) < 2`` exactly.

    Consecutive terms shrink by a factor of at least ``2**-(3N+1)``, so the
    tail from ``k = K`` on is at most twice the ``K``-th term.
    """
    K = 6

    def term(k):
        e = (3 * k * k + 6 * k * N - k) // 2
        return Fraction(1, 1 << e) * (1 + Fraction(1, 1 << (k + N)))

    partial = sum(term(k) for k in range(K))
    return partial + 2 * term(K) < 2


def pentagonal_partial(N: int) -> tuple[Dyadic, Dyadic]:
    """Partial sum of the pentagonal series for ``S`` over ``|k| <= N-1``.

    Returns ``(value, tail_bound)`` with ``|S - value| <= tail_bound`` and
    ``tail_bound = 2**(1 - N(3N-1)/2)``.
    """
    if N < 3 or not _tail_bracket_below_two(N):
        raise NTooSmall(f"the tail bound is only certified for N >= 3, got {N}")
    value = Fraction(0)
    for k in range(-(N - 1), N):
        value += Fraction((-1) ** (k % 2), 1 << _pentagonal_exponent(k))
    tail = Fraction(2, 1 << (N * (3 * N - 1) // 2))
    return Dyadic(value), Dyadic(tail)


def _tail_sign_is_leading(N: int) -> bool:
    """Check that the pair ``k = +-N`` outweighs every later term of the series.

    Later terms have magnitude ``2**-(k(3k-1)/2)`` and ``2**-(k(3k+1)/2)`` for
    ``k > N``; their sum is below four times the ``k = N + 1`` term.
    """
    lead = Fraction(1, 1 << _pentagonal_exponent(-N)) + Fraction(1, 1 << _pentagonal_exponent(N))
    return 4 * Fraction(1, 1 << _pentagonal_exponent(-(N + 1))) < lead


def pentagonal_enclosure(N: int) -> IntervalValue:
    """One-sided enclosure of ``S``: the tail carries the sign ``(-1)**N``."""
    value, tail = pentagonal_partial(N)
    if not _tail_sign_is_leading(N):
        return IntervalValue(value - tail, value + tail)
    if N % 2 == 0:
        return IntervalValue(value, value + tail)
    return IntervalValue(value - tail, value)


def product_prefix_S(K: int) -> Dyadic:
    """``prod_{k=1}^{K} (1 - 2**-k)``, which equals ``id(hhat_prefix(K))``."""
    if K < 1:
        raise OutOfRange(f"K must be positive, got {K}")
    num = 1
    for k in range(1, K + 1):
        num *= (1 << k) - 1
    return Dyadic(num, 1 << _triangular(K))


def product_enclosure(K: int) -> IntervalValue:
    # the remaining factors multiply to at least 1 - 2**-K
    p = product_prefix_S(K)
    return IntervalValue(p - Fraction(1, 1 << K), p)


def terms_for_width(width) -> int:
    """Smallest ``N >= 3`` whose pentagonal enclosure is at most ``width`` wide."""
    width = Fraction(width)
    if width <= 0:
        raise OutOfRange("width must be positive")
    N = 3
    while pentagonal_enclosure(N).width > width:
        N += 1
    return N


# ---------------------------------------------------------------------------
# prescribed densities


@dataclass(frozen=True)
class BitStream:
    """Binary digits ``r_1 r_2 ...`` of a real in [0, 1]; indices start at 1."""

    generator: Callable[[int], int]
    provenance: str = "user"
    value: Fraction | None = field(default=None, compare=False)

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise IndexError("bit indices start at 1")
        return self.generator(i)

    def prefix(self, n: int) -> list[int]:
        return [self.generator(i) for i in range(1, n + 1)]


def bits_of_rational(p: int, q: int) -> BitStream:
    """Digits of ``p/q``; dyadic values use the expansion ending in ones.

    ``7/8`` becomes ``0.110111...`` rather than ``0.111000...``.
    """
    if q <= 0 or p < 0 or p > q:
        raise OutOfRange(f"need 0 <= p <= q and q > 0, got {p}/{q}")
    r = Fraction(p, q)
    p, q = r.numerator, r.denominator
    if r == 1:
        return BitStream(lambda i: 1, "1/1", r)
    if r == 0:
        return BitStream(lambda i: 0, "0/1", r)

    if q & (q - 1) == 0:
        last = q.bit_length() - 1

        def bit(i):
            if i < last:
                return ((p << i) // q) & 1
            return 0 if i == last else 1
    else:

        def bit(i):
            return ((p << i) // q) & 1

    return BitStream(bit, f"{p}/{q}", r)


def h_of_r_prefix(bits: BitStream, n: int) -> Hypergraph:
    """Vertices ``1..n``; for each zero digit ``r_i`` the edge ``{j < i : r_j = 1} + {i}``."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    ones: list[int] = []
    edges = []
    for i, b in enumerate(bits.prefix(n), start=1):
        if b:
            ones.append(i)
        else:
            edges.append(tuple(ones) + (i,))
    return Hypergraph(n, tuple(edges))


def truncated_value(bits: BitStream, n: int) -> Dyadic:
    """``0.r_1...r_n`` followed by ones, i.e. the first ``n`` digits plus ``2**-n``."""
    num = 0
    for b in bits.prefix(n):
        num = 2 * num + b
    return Dyadic(num + 1, 1 << n)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise OutOfRange(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise OutOfRange(f"edge ({u}, {v}) outside 1..{self.n}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    def neighbours(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return sorted(len(s) for s in self.neighbours().values())


def path(n: int) -> Graph:
    if n < 1:
        raise BadOrder(f"path needs n >= 1, got {n}")
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadOrder(f"cycle needs n >= 3, got {n}")
    return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def clique(n: int) -> Graph:
    if n < 1:
        raise BadOrder(f"clique needs n >= 1, got {n}")
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def edgeless(n: int) -> Graph:
    if n < 1:
        raise BadOrder(f"edgeless graph needs n >= 1, got {n}")
    return Graph(n)


def union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph(g1.n + g2.n, g1.edges | {(u + shift, v + shift) for u, v in g2.edges})


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    keep = sorted(set(vertices))
    relabel = {v: i for i, v in enumerate(keep, start=1)}
    return Graph(
        len(keep),
        frozenset((relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel),
    )


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    adj = g.neighbours()
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


ISOMORPHISM_LIMIT = 8


def graph_isomorphic(g1: Graph, g2: Graph) -> bool:
    if max(g1.n, g2.n) > ISOMORPHISM_LIMIT:
        raise TooLarge(f"isomorphism search is limited to order {ISOMORPHISM_LIMIT}")
    if g1.n != g2.n or len(g1.edges) != len(g2.edges) or g1.degrees() != g2.degrees():
        return False
    a1, a2 = g1.neighbours(), g2.neighbours()
    order = sorted(a1, key=lambda v: -len(a1[v]))
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in a2:
            if w in used or len(a2[w]) != len(a1[v]):
                continue
            if all((u in a1[v]) == (image[u] in a2[w]) for u in image):
                image[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del image[v]
                used.discard(w)
        return False

    return extend(0)


def graph_to_hypergraph(g: Graph) -> Hypergraph:
    return Hypergraph(g.n, tuple(sorted(g.edges)))


def ffree_lift(g: Graph, family: Sequence[Graph]) -> Hypergraph:
    """Hypergraph whose edges are the vertex sets of ``g`` inducing a family member.

    Its independent sets are exactly the family-free vertex subsets of ``g``.
    Sets that already contain a smaller edge are skipped, so the result is
    inclusion-minimal.
    """
    for f in family:
        if f.n < 1:
            raise BadOrder("family members need at least one vertex")
        if not is_connected(f):
            raise DisconnectedFamilyMember(f"family member on {f.n} vertices is disconnected")
    if not family:
        return Hypergraph(g.n)
    by_order: dict[int, list[Graph]] = {}
    for f in family:
        by_order.setdefault(f.n, []).append(f)

    edges = []
    masks = []
    for size in range(1, min(max(by_order), g.n) + 1):
        members = by_order.get(size)
        if not members:
            continue
        for s in itertools.combinations(range(1, g.n + 1), size):
            m = edge_to_mask(s)
            if any(k & m == k for k in masks):
                continue
            sub = induced_subgraph(g, s)
            if any(graph_isomorphic(sub, f) for f in members):
                edges.append(s)
                masks.append(m)
    return Hypergraph(g.n, tuple(edges))


def cycle_family(max_order: int) -> list[Graph]:
    """All cycles up to ``max_order``; forbidding them gives acyclic density."""
    return [cycle(k) for k in range(3, max_order + 1)]


def odd_cycle_family(max_order: int) -> list[Graph]:
    return [cycle(k) for k in range(3, max_order + 1, 2)]
