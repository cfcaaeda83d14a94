"""Independence densities of finite hypergraphs.

``id(H) = i(H) / 2**n`` is always a dyadic rational; :class:`Dyadic` is a
``Fraction`` that refuses any other denominator.  ``rho`` restricts the count
to sets containing ``include`` and avoiding ``exclude``; ``rho_recursive``
computes the same number by splitting on disjoint out-sets, so the two act as
cross-checks for one another.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable

import mpmath

from .core import Hypergraph, edge_to_mask, greedy_maximal_matching, maximum_matching, normalize_masks
from .count import count_constrained, count_independent
from .errors import EmptyEdge, OutOfRange, OverlappingConstraints


class Dyadic(Fraction):
    """An exact rational whose reduced denominator is a power of two."""

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        den = self.denominator
        if den & (den - 1):
            raise ValueError(f"{Fraction(self)} is not a dyadic rational")
        return self

    @classmethod
    def from_count(cls, count: int, n: int) -> "Dyadic":
        return cls(count, 1 << n)

    @property
    def exponent(self) -> int:
        return self.denominator.bit_length() - 1

    def as_power_form(self) -> str:
        """``"p/2^e"``; zero and integers print without a denominator."""
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.numerator}, {self.denominator})"


def id(h: Hypergraph) -> Dyadic:  # noqa: A001 - mirrors the usual notation
    """Independence density ``i(h) / 2**n``."""
    return Dyadic.from_count(count_independent(h), h.n)


independence_density = id


def _constraint_masks(h: Hypergraph, include: Iterable[int], exclude: Iterable[int]):
    a = set(include)
    b = set(exclude)
    if a & b:
        raise OverlappingConstraints(f"include and exclude share {sorted(a & b)}")
    for v in a | b:
        if v < 1 or v > h.n:
            raise OutOfRange(f"vertex {v} outside 1..{h.n}")
    return edge_to_mask(a), edge_to_mask(b)


def rho(h: Hypergraph, include: Iterable[int] = (), exclude: Iterable[int] = ()) -> Dyadic:
    """Density of independent sets containing ``include`` and missing ``exclude``."""
    include, exclude = tuple(include), tuple(exclude)
    _constraint_masks(h, include, exclude)
    return Dyadic.from_count(count_constrained(h, include, exclude), h.n)


def _submasks(w: int):
    c = w
    while True:
        yield c
        if c == 0:
            return
        c = (c - 1) & w


def _rho_outsets(masks: list[int], a: int, b: int, r: int) -> Fraction:
    outsets = [m & ~a for m in masks if not m & b]
    if 0 in outsets:
        # some edge lies inside the required set
        return Fraction(0)
    if not outsets:
        return Fraction(1, 1 << (a.bit_count() + b.bit_count()))
    if r <= 0 or max(o.bit_count() for o in outsets) > r:
        raise AssertionError("out-set size bound violated")

    w = 0
    for o in outsets:
        if not o & w:
            w |= o
    # every out-set meets w, so under any split of w the out-sets shrink
    total = Fraction(0)
    for c in _submasks(w):
        total += _rho_outsets(masks, a | c, b | (w & ~c), r - 1)
    return total


def rho_recursive(h: Hypergraph, include: Iterable[int] = (), exclude: Iterable[int] = ()) -> Dyadic:
    """``rho`` via the out-set recursion.

    The recursion fixes a maximal family of pairwise disjoint out-sets (edges
    missing ``exclude``, minus ``include``), chosen greedily in edge order, and
    sums over every way of splitting their union between the two constraint
    sets.  The largest out-set shrinks by at least one per level, so the depth
    is bounded by the rank of ``h``.
    """
    a, b = _constraint_masks(h, include, exclude)
    masks = normalize_masks(h.masks())
    r = max((m.bit_count() for m in masks), default=0)
    return Dyadic(_rho_outsets(masks, a, b, r))


def matching_bounds(h: Hypergraph, exact: bool = False) -> tuple[Dyadic, Dyadic]:
    """Lower and upper bounds on ``id(h)`` from a matching.

    With ``exact`` the matching is a maximum one; otherwise the greedy maximal
    matching is used, which keeps both bounds valid: the vertices it leaves
    uncovered are independent, and any matching size can stand in for the
    matching number in the upper bound.
    """
    if h.has_empty_edge():
        raise EmptyEdge("bounds need nonempty edges")
    k = h.rank
    if k == 0:
        return Dyadic(1), Dyadic(1)
    m = len(maximum_matching(h) if exact else greedy_maximal_matching(h))
    lower = Dyadic(1, 1 << (k * m))
    upper = Dyadic(((1 << k) - 1) ** m, 1 << (k * m))
    return lower, upper


NNN_DPS = 60
# mpmath's interval context is process-global
_IV_LOCK = threading.Lock()


def nnn_bound(n: int, beta: int, x) -> mpmath.mpf:
    """Upper bound ``(beta+1) (e n x / beta)**beta / 2**n`` rounded upward.

    It bounds ``i(H, x) / 2**n`` for any order-``n`` hypergraph with
    independence number at most ``beta < n/2`` and ``x >= 1``.  Evaluated
    in interval arithmetic; the upper endpoint is returned.
    """
    if not 1 <= beta <= n:
        raise OutOfRange(f"need 1 <= beta <= n, got beta={beta}, n={n}")
    x = Fraction(x)
    iv = mpmath.iv
    with _IV_LOCK:
        saved = iv.prec
        iv.dps = NNN_DPS
        try:
            xi = iv.mpf(x.numerator) / x.denominator
            val = (beta + 1) * (iv.e * n * xi / beta) ** beta / iv.mpf(2) ** n
            with mpmath.workprec(iv.prec):
                return mpmath.mpf(val._mpi_[1])
        finally:
            iv.prec = saved
