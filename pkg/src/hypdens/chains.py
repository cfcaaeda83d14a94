"""Infinite hypergraphs presented as chains of finite prefixes.

A :class:`Chain` maps an index ``m >= 1`` to a finite hypergraph ``H_m``.
Chains built here label vertices so that ``H_m`` is the subhypergraph of
``H_{m+1}`` induced on ``1..n_m``.  Families with a known closed form for
``i(H_m, x)`` carry it, which lets long sequences run without materializing
huge hypergraphs; the closed forms are checked against the counting route in
the test suite.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .constructions import BitStream, bits_of_rational, h_of_r_prefix, hhat_prefix, hhat_vertex_prefix
from .core import Hypergraph, edge_to_mask, induced, normalize, normalize_masks
from .count import _as_fraction, evaluate_independence
from .errors import EmbeddingViolation, NegativeX, ROutOfRange, TooShort


@dataclass(frozen=True, eq=False)
class Chain:
    """A lazily generated chain ``H_1, H_2, ...``.

    ``closed_form(m, x)``, when present, must equal ``i(H_m, x) / 2**n_m``.
    ``shape(m)`` is a structural summary ``(kind, *params)`` used to decide
    embeddings between members of different chains of the same kind.
    """

    name: str
    generator: Callable[[int], Hypergraph]
    params: dict = field(default_factory=dict)
    order: Callable[[int], int] | None = None
    closed_form: Callable[[int, Fraction], Fraction] | None = None
    shape: Callable[[int], tuple] | None = None

    def __getitem__(self, m: int) -> Hypergraph:
        if m < 1:
            raise IndexError("chain indices start at 1")
        return self.generator(m)

    def order_at(self, m: int) -> int:
        if self.order is not None:
            return self.order(m)
        return self[m].n

    def density_at(self, m: int, x=1) -> Fraction:
        x = _as_fraction(x)
        if x < 0:
            raise NegativeX(f"x must be non-negative, got {x}")
        if self.closed_form is not None:
            return self.closed_form(m, x)
        h = self[m]
        return evaluate_independence(h, x) / (1 << h.n)


@dataclass(frozen=True)
class DensitySequence:
    values: tuple[Fraction, ...]
    x: Fraction
    chain: str = ""
    orders: tuple[int, ...] = ()

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def density_sequence(chain: Chain, steps: int, x=1, workers: int = 1) -> DensitySequence:
    """Exact ``i(H_m, x) / 2**n_m`` for ``m = 1..steps``."""
    if steps < 1:
        raise ValueError("steps must be positive")
    x = _as_fraction(x)
    if x < 0:
        raise NegativeX(f"x must be non-negative, got {x}")
    idx = range(1, steps + 1)
    if workers == 1:
        values = [chain.density_at(m, x) for m in idx]
    else:
        with ThreadPoolExecutor(max_workers=workers or None) as pool:
            values = list(pool.map(lambda m: chain.density_at(m, x), idx))
    orders = tuple(chain.order_at(m) for m in idx)
    return DensitySequence(tuple(values), x, chain.name, orders)


# ---------------------------------------------------------------------------
# limit classification

ZERO, FINITE_POSITIVE, INFINITE, UNDETERMINED = "Zero", "FinitePositive", "Infinite", "Undetermined"

SMALL = Fraction(1, 10**12)
LARGE = Fraction(10**12)
WINDOW = 20
SHRINK = Fraction(9, 10)
RELATIVE_WIDTH = Fraction(1, 1000)


@dataclass(frozen=True)
class LimitClass:
    tag: str
    value: Fraction | None = None
    width: Fraction | None = None

    def __str__(self):
        if self.tag == FINITE_POSITIVE:
            return f"{self.tag}(~{float(self.value):.12g} +/- {float(self.width):.3g})"
        return self.tag


def classify_limit(seq: DensitySequence | Iterable[Fraction]) -> LimitClass:
    """Guess the limit of a density sequence from its last ``WINDOW`` steps.

    * Zero: last value below 1e-12 after ``WINDOW`` strict decreases.
    * Infinite: last value above 1e12 after ``WINDOW`` strict increases, or
      ``WINDOW`` positive increments none smaller than the one before (at
      least linear growth).
    * FinitePositive: the last ``WINDOW`` differences shrink by a factor below
      0.9 each (or vanish), and the geometric extrapolation of the remaining
      change stays within 0.1% of the last value.
    * Undetermined otherwise.
    """
    values = list(seq.values if isinstance(seq, DensitySequence) else seq)
    if len(values) < 10:
        raise TooShort(f"need at least 10 values, got {len(values)}")
    if len(values) < WINDOW + 1:
        return LimitClass(UNDETERMINED)
    tail = values[-(WINDOW + 1):]
    deltas = [b - a for a, b in zip(tail, tail[1:])]
    last = tail[-1]

    if last < SMALL and all(d < 0 for d in deltas):
        return LimitClass(ZERO)
    if all(d > 0 for d in deltas):
        if last > LARGE or all(b >= a for a, b in zip(deltas, deltas[1:])):
            return LimitClass(INFINITE)
    if last > 0:
        if all(d == 0 for d in deltas):
            return LimitClass(FINITE_POSITIVE, last, Fraction(0))
        if all(d != 0 for d in deltas):
            ratios = [abs(b / a) for a, b in zip(deltas, deltas[1:])]
            ratio = max(ratios)
            if ratio < SHRINK:
                width = abs(deltas[-1]) * ratio / (1 - ratio)
                if width <= RELATIVE_WIDTH * last:
                    return LimitClass(FINITE_POSITIVE, last, width)
    return LimitClass(UNDETERMINED)


# ---------------------------------------------------------------------------
# closed forms


class _Surd:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and fixed non-square ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def __add__(self, o):
        return _Surd(self.a + o.a, self.b + o.b, self.d)

    def __sub__(self, o):
        return _Surd(self.a - o.a, self.b - o.b, self.d)

    def __mul__(self, o):
        return _Surd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    def __pow__(self, e: int):
        out = _Surd(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def path_closed_form(n: int, x) -> Fraction:
    """``i(P_n, x)`` from the solved path recurrence.

    With ``s = sqrt(1 + 4x)``::

        i(P_n, x) = (s + 1 + 2x) / (2s) * ((1 + s) / 2)**n
                  + (s - 1 - 2x) / (2s) * ((1 - s) / 2)**n

    Evaluated exactly in Q(s); the irrational parts cancel.
    """
    if n < 1:
        raise ValueError("n must be positive")
    x = _as_fraction(x)
    if x < 0:
        raise NegativeX(f"x must be non-negative, got {x}")
    d = 1 + 4 * x
    c = 1 + 2 * x
    s = _rational_sqrt(d)
    if s is not None:
        return (s + c) / (2 * s) * ((1 + s) / 2) ** n + (s - c) / (2 * s) * ((1 - s) / 2) ** n

    root = _Surd(0, 1, d)
    inv_2s = _Surd(0, 1 / (2 * d), d)
    const = _Surd(c, 0, d)
    half = _Surd(Fraction(1, 2), 0, d)
    one = _Surd(1, 0, d)
    up = (one + root) * half
    down = (one - root) * half
    total = (root + const) * inv_2s * up**n + (root - const) * inv_2s * down**n
    if total.b != 0:
        raise ArithmeticError("irrational part did not cancel")
    return total.a


def clique_union_density(a: int, b: int, x) -> Fraction:
    """``i(K_a + co-K_b, x) / 2**(a+b) = (1 + a x)(1 + x)**b / 2**(a+b)``."""
    x = _as_fraction(x)
    if x < 0:
        raise NegativeX(f"x must be non-negative, got {x}")
    return (1 + a * x) * (1 + x) ** b / (1 << (a + b))


# ---------------------------------------------------------------------------
# chain families


def _path_hypergraph(n: int, two_sided: bool) -> Hypergraph:
    if not two_sided:
        return Hypergraph(n, tuple((i, i + 1) for i in range(1, n)))
    # vertex 1 in the middle, then alternately appended on the right and left
    line = [1]
    for v in range(2, n + 1):
        if v % 2 == 0:
            line.append(v)
        else:
            line.insert(0, v)
    return Hypergraph(n, tuple(zip(line, line[1:])))


def path_chain(two_sided: bool = False) -> Chain:
    return Chain(
        "path-both" if two_sided else "path",
        lambda m: _path_hypergraph(m, two_sided),
        {"two_sided": two_sided},
        order=lambda m: m,
    )


def hhat_chain() -> Chain:
    """``H_m`` keeps the edges of sizes ``1..m``."""
    return Chain("hhat", hhat_prefix, {}, order=lambda m: m * (m + 1) // 2)


def hhat_vertex_chain(step: int = 1) -> Chain:
    """``H_m`` is the prefix on the first ``m * step`` vertices."""
    if step < 1:
        raise ValueError("step must be positive")
    return Chain(f"hhat-vertices-{step}", lambda m: hhat_vertex_prefix(m * step), {"step": step}, order=lambda m: m * step)


def hofr_chain(bits: BitStream) -> Chain:
    return Chain(f"hofr-{bits.provenance}", lambda m: h_of_r_prefix(bits, m), {"r": bits.provenance}, order=lambda m: m)


def hofr_chain_rational(p: int, q: int) -> Chain:
    return hofr_chain(bits_of_rational(p, q))


def _clique_union_layout(sizes: list[tuple[int, int]], name: str = "cliqueunion") -> Hypergraph:
    """``K_a + co-K_b`` for the last ``(a, b)`` in ``sizes``, labelled step by step.

    Each step appends its new clique vertices and then its new isolated ones,
    so the graph for a prefix of ``sizes`` is induced on the first vertices.
    """
    clique_vs: list[int] = []
    a_prev = b_prev = 0
    v = 0
    for step, (a, b) in enumerate(sizes, start=1):
        if a < a_prev or b < b_prev:
            raise EmbeddingViolation(f"{name}: sizes must not decrease (step {step})")
        clique_vs.extend(range(v + 1, v + 1 + a - a_prev))
        v += (a - a_prev) + (b - b_prev)
        a_prev, b_prev = a, b
    edges = tuple((u, w) for i, u in enumerate(clique_vs) for w in clique_vs[i + 1:])
    return Hypergraph(v, edges)


def clique_union_chain(a_of: Callable[[int], int], b_of: Callable[[int], int], name: str = "cliqueunion", params=None) -> Chain:
    """``H_m = K_{a(m)} + co-K_{b(m)}`` for non-decreasing ``a`` and ``b``.

    Vertices are numbered in the order they appear: step ``m`` adds the new
    clique vertices and then the new isolated ones, so prefixes are induced.
    """
    a_of = lru_cache(maxsize=None)(a_of)
    b_of = lru_cache(maxsize=None)(b_of)

    def generate(m):
        return _clique_union_layout([(a_of(s), b_of(s)) for s in range(1, m + 1)], name)

    return Chain(
        name,
        generate,
        dict(params or {}),
        order=lambda m: a_of(m) + b_of(m),
        closed_form=lambda m, x: clique_union_density(a_of(m), b_of(m), x),
        shape=lambda m: ("clique_union", a_of(m), b_of(m)),
    )


def clique_chain() -> Chain:
    return clique_union_chain(lambda m: m, lambda m: 0, "clique")


def equal_clique_union_chain() -> Chain:
    return clique_union_chain(lambda m: m, lambda m: m, "cliqueunion-equal")


def floor_n_log2(q: Fraction, n: int) -> int:
    """``floor(n * log2(q))`` for rational ``q >= 1``, exactly."""
    return (q.numerator**n // q.denominator**n).bit_length() - 1


def jump_clique_size(r: Fraction, n: int) -> int:
    """``floor(C n)`` with ``2**(C+1) = 1 + r``, computed without rounding."""
    return floor_n_log2(1 + r, n) - n


def jumping_chain(r) -> Chain:
    """``K_{floor(C n)} + co-K_n`` with ``2**(C+1) = 1 + r``; ``r`` is its jumping point."""
    r = _as_fraction(r)
    if r <= 1:
        raise ROutOfRange(f"jumping points need r > 1, got {r}")
    return clique_union_chain(lambda m: jump_clique_size(r, m), lambda m: m, f"jump-{r}", {"r": r})


def _embeds(c1: Chain, i: int, c2: Chain, j: int) -> bool:
    if c1.shape is not None and c2.shape is not None:
        s1, s2 = c1.shape(i), c2.shape(j)
        if s1[0] == s2[0]:
            return all(u <= v for u, v in zip(s1[1:], s2[1:]))
    h1, h2 = c1[i], c2[j]
    if h1.n > h2.n:
        return False
    return normalize(induced(h2, range(1, h1.n + 1))).same_as(normalize(h1))


SEARCH_LIMIT = 100_000


def interleaved_chain(c1: Chain, c2: Chain, search_limit: int = SEARCH_LIMIT) -> Chain:
    """Alternate members of ``c2`` (odd steps) and ``c1`` (even steps).

    Each step jumps ahead in its source chain to the first member that is
    strictly larger than, and contains, the previously selected graph.
    Prefix embeddings are checked by shape when both chains expose one and by
    materializing the graphs otherwise.
    """
    picks: list[tuple[Chain, int]] = []

    def pick(m: int) -> tuple[Chain, int]:
        while len(picks) < m:
            k = len(picks) + 1
            source = c1 if k % 2 == 0 else c2
            if not picks:
                picks.append((source, 1))
                continue
            prev_chain, prev_idx = picks[-1]
            prev_order = prev_chain.order_at(prev_idx)
            j = 1
            while True:
                if source.order_at(j) > prev_order and _embeds(prev_chain, prev_idx, source, j):
                    break
                j += 1
                if j > search_limit:
                    raise EmbeddingViolation(f"no member of {source.name} contains step {k - 1}")
            picks.append((source, j))
        return picks[m - 1]

    def closed(m, x):
        c, j = pick(m)
        return c.density_at(j, x)

    def generate(m):
        shapes = [c.shape(j) if c.shape else None for c, j in (pick(k) for k in range(1, m + 1))]
        if all(sh is not None and sh[0] == "clique_union" for sh in shapes):
            # the two sources number their vertices differently; relabel
            # along the picked sizes so that members are literal prefixes
            return _clique_union_layout([sh[1:] for sh in shapes], f"interleave step {m}")
        c, j = pick(m)
        return c[j]

    return Chain(
        f"interleave({c1.name},{c2.name})",
        generate,
        {"first": c1.name, "second": c2.name},
        order=lambda m: (lambda c, j: c.order_at(j))(*pick(m)),
        closed_form=closed,
        shape=lambda m: (lambda c, j: c.shape(j) if c.shape else ("opaque", j))(*pick(m)),
    )


def oscillating_chain(x) -> Chain:
    """Interleave the chains with jumping points ``(1+x)/2`` and ``2x``.

    At ``x`` the first diverges and the second tends to zero, so the
    interleaved densities at ``x`` have no limit.
    """
    x = _as_fraction(x)
    if x <= 1:
        raise ROutOfRange(f"oscillation needs x > 1, got {x}")
    return interleaved_chain(jumping_chain((1 + x) / 2), jumping_chain(2 * x))


# ---------------------------------------------------------------------------
# checks


def check_prefix_property(chain: Chain, steps: int) -> bool:
    """True when each ``H_m`` is the prefix of ``H_{m+1}`` on ``1..n_m``."""
    prev = chain[1]
    for m in range(2, steps + 1):
        cur = chain[m]
        if cur.n <= prev.n:
            return False
        if not normalize(induced(cur, range(1, prev.n + 1))).same_as(normalize(prev)):
            return False
        prev = cur
    return True


def _non_increasing(values) -> bool:
    return all(b <= a for a, b in zip(values, values[1:]))


def chain_invariance_check(c1: Chain, c2: Chain, steps, tol) -> bool:
    """Whether two chains for the same hypergraph agree at ``x = 1``.

    ``steps`` is a count for both chains or a pair of counts.  Both density
    sequences must be non-increasing and their final values within ``tol``.
    """
    s1, s2 = (steps, steps) if isinstance(steps, int) else steps
    d1 = density_sequence(c1, s1, 1)
    d2 = density_sequence(c2, s2, 1)
    if not (_non_increasing(d1.values) and _non_increasing(d2.values)):
        return False
    return abs(d1.values[-1] - d2.values[-1]) <= Fraction(tol)


def geometric_outset_bound(include_size: int, exclude_size: int, r: int, t: int) -> Fraction:
    """``2**-(|A|+|B|) * (1 - 2**-r)**t``: the cap from ``t`` disjoint out-sets of size ``<= r``."""
    return Fraction(1, 1 << (include_size + exclude_size)) * (1 - Fraction(1, 1 << r)) ** t


def outset_density_bound(h: Hypergraph, include: Iterable[int] = (), exclude: Iterable[int] = ()) -> Fraction:
    """Upper bound on the constrained density of any hypergraph with ``h`` as a prefix.

    Uses a greedy family of disjoint out-sets inside ``h``; every out-set
    removes at least one completion, and adding vertices can only lower the
    density further.
    """
    a, b = edge_to_mask(include), edge_to_mask(exclude)
    bound = Fraction(1, 1 << (a.bit_count() + b.bit_count()))
    w = 0
    for m in normalize_masks(h.masks()):
        if m & b:
            continue
        o = m & ~a
        if not o:
            return Fraction(0)
        if not o & w:
            w |= o
            bound *= 1 - Fraction(1, 1 << o.bit_count())
    return bound
