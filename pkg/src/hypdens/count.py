"""Exact counting of independent sets.

All counting routes share one branching engine that works on bitmask edges.
The engine is generic over the weight attached to a vertex that is left out
of the set (``exc``) or put into it (``inc``):

* plain counting uses integers with ``inc = exc = 1``;
* the independence polynomial uses coefficient tuples with ``inc = x``;
* evaluation at a rational ``x = p/q`` uses integers with ``inc = p`` and
  ``exc = q``, which yields ``q**n * i(H, p/q)`` without any fractions.

Connected components are solved separately and multiplied.  Each component is
relabelled onto bits ``0..k-1`` in vertex order and memoized on that key, so
repeated disjoint pieces are solved once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable

from .core import Hypergraph, edge_to_mask, normalize_masks
from .errors import NegativeX, TooLarge

BRUTEFORCE_LIMIT = 25


@dataclass(frozen=True)
class IndependencePolynomial:
    """Coefficients ``i_0, i_1, ..., i_beta``; ``i_k`` counts independent k-sets.

    A hypergraph with an empty edge has no independent sets and gets the zero
    polynomial, stored as an empty tuple.
    """

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def total(self) -> int:
        return sum(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coefficients) + "]"


# -- polynomial arithmetic on coefficient tuples --------------------------------

def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return tuple(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _ppow(a, e):
    out = (1,)
    for _ in range(e):
        out = _pmul(out, a)
    return out


class _Weights:
    """Ring operations plus the include/exclude weights for one engine run."""

    def __init__(self, tag, one, zero, inc, exc, add, mul, power):
        self.tag = tag
        self.one = one
        self.zero = zero
        self.inc = inc
        self.exc = exc
        self.add = add
        self.mul = mul
        self.power = power
        self.vertex = add(inc, exc)

    def __eq__(self, other):
        return isinstance(other, _Weights) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


_COUNT = _Weights("count", 1, 0, 1, 1, int.__add__, int.__mul__, pow)
_POLY = _Weights("poly", (1,), (), (0, 1), (1,), _padd, _pmul, _ppow)


def _eval_weights(p: int, q: int) -> _Weights:
    return _Weights(("eval", p, q), 1, 0, p, q, int.__add__, int.__mul__, pow)


# -- the engine -----------------------------------------------------------------

def _components(universe: int, masks: list[int]):
    """Split ``masks`` into connected pieces; also return the untouched vertices."""
    pending = list(masks)
    pieces = []
    touched = 0
    while pending:
        span = pending[0]
        group = [pending[0]]
        rest = pending[1:]
        grew = True
        while grew:
            grew = False
            keep = []
            for m in rest:
                if m & span:
                    span |= m
                    group.append(m)
                    grew = True
                else:
                    keep.append(m)
            rest = keep
        pending = rest
        pieces.append((span, group))
        touched |= span
    return pieces, universe & ~touched


def _compact(span: int, group: list[int]):
    """Relabel the set bits of ``span`` onto ``0..k-1`` preserving order."""
    pos = {}
    k = 0
    s = span
    while s:
        low = s & -s
        pos[low.bit_length() - 1] = k
        k += 1
        s ^= low
    out = []
    for m in group:
        c = 0
        while m:
            low = m & -m
            c |= 1 << pos[low.bit_length() - 1]
            m ^= low
        out.append(c)
    return k, tuple(sorted(out))


def _solve(w: _Weights, universe: int, masks: list[int]):
    if not masks:
        return w.power(w.vertex, universe.bit_count())
    if 0 in masks:
        return w.zero
    pieces, isolated = _components(universe, masks)
    result = w.power(w.vertex, isolated.bit_count())
    for span, group in pieces:
        k, key = _compact(span, group)
        result = w.mul(result, _solve_component(w, k, key))
        if result == w.zero:
            break
    return result


@lru_cache(maxsize=200_000)
def _solve_component(w: _Weights, k: int, key: tuple[int, ...]):
    return _solve_component_raw(w, k, key)


def _pick_vertex(masks: tuple[int, ...]) -> int:
    smallest = min(masks, key=lambda m: (m.bit_count(), m))
    best_bit, best_deg = 0, -1
    s = smallest
    while s:
        low = s & -s
        deg = sum(1 for m in masks if m & low)
        if deg > best_deg:
            best_bit, best_deg = low, deg
        s ^= low
    return best_bit


def _solve_component_raw(w: _Weights, k: int, masks: tuple[int, ...]):
    universe = (1 << k) - 1
    bit = _pick_vertex(masks)
    rest = universe & ~bit

    # leave the vertex out: edges through it can never be completed
    out_masks = normalize_masks(m for m in masks if not m & bit)
    total = w.mul(w.exc, _solve(w, rest, out_masks))

    # put it in: edges through it shrink, and an emptied edge kills the branch
    shrunk = [m & ~bit for m in masks]
    if 0 not in shrunk:
        total = w.add(total, w.mul(w.inc, _solve(w, rest, normalize_masks(shrunk))))
    return total


def _run(w: _Weights, h: Hypergraph):
    universe = (1 << h.n) - 1
    return _solve(w, universe, normalize_masks(h.masks()))


def clear_cache():
    _solve_component.cache_clear()


# -- public API -----------------------------------------------------------------

def count_independent(h: Hypergraph) -> int:
    """Number of vertex subsets of ``h`` (the empty set included) containing no edge."""
    return _run(_COUNT, h)


def count_independent_bruteforce(h: Hypergraph) -> int:
    if h.n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"brute force is limited to n <= {BRUTEFORCE_LIMIT}, got {h.n}")
    masks = h.masks()
    return sum(1 for s in range(1 << h.n) if not any(m & s == m for m in masks))


def independence_polynomial(h: Hypergraph) -> IndependencePolynomial:
    coeffs = list(_run(_POLY, h))
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return IndependencePolynomial(tuple(coeffs))


def independence_number(h: Hypergraph) -> int:
    """Size of a largest independent set; -1 when there is none (empty edge)."""
    return independence_polynomial(h).degree


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def eval_poly(p: IndependencePolynomial | Iterable[int], x) -> Fraction:
    """Evaluate ``sum i_k x**k`` exactly for rational ``x >= 0``."""
    x = _as_fraction(x)
    if x < 0:
        raise NegativeX(f"x must be non-negative, got {x}")
    coeffs = tuple(p)
    num, den = x.numerator, x.denominator
    # homogeneous Horner: sum c_k num^k den^(d-k), divided by den^d once
    acc = 0
    scale = 1
    for c in reversed(coeffs):
        acc = acc * num + c * scale
        scale *= den
    if not coeffs:
        return Fraction(0)
    return Fraction(acc, scale // den)


def evaluate_independence(h: Hypergraph, x) -> Fraction:
    """``i(h, x)`` for rational ``x >= 0``, without expanding coefficients."""
    x = _as_fraction(x)
    if x < 0:
        raise NegativeX(f"x must be non-negative, got {x}")
    p, q = x.numerator, x.denominator
    if q == 1 and p == 1:
        return Fraction(count_independent(h))
    return Fraction(_run(_eval_weights(p, q), h), q**h.n)


def count_constrained(h: Hypergraph, include: Iterable[int], exclude: Iterable[int]) -> int:
    """Independent sets that contain every vertex of ``include`` and none of ``exclude``."""
    a = edge_to_mask(include)
    b = edge_to_mask(exclude)
    masks = []
    for m in h.masks():
        if m & b:
            continue
        m &= ~a
        if m == 0:
            return 0
        masks.append(m)
    universe = ((1 << h.n) - 1) & ~a & ~b
    return _solve(_COUNT, universe, normalize_masks(masks))


def count_constrained_bruteforce(h: Hypergraph, include: Iterable[int], exclude: Iterable[int]) -> int:
    if h.n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"brute force is limited to n <= {BRUTEFORCE_LIMIT}, got {h.n}")
    a = edge_to_mask(include)
    b = edge_to_mask(exclude)
    masks = h.masks()
    return sum(
        1
        for s in range(1 << h.n)
        if s & a == a and not s & b and not any(m & s == m for m in masks)
    )
