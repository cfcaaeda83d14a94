import itertools
import random

import pytest
from hypothesis import strategies as st

from hypdens.core import Hypergraph


def subsets(n):
    verts = range(1, n + 1)
    for k in range(n + 1):
        for s in itertools.combinations(verts, k):
            yield frozenset(s)


def brute_count(h, include=(), exclude=()):
    """Independent-set count by plain set enumeration."""
    edges = [frozenset(e) for e in h.edges]
    a, b = frozenset(include), frozenset(exclude)
    return sum(
        1
        for s in subsets(h.n)
        if a <= s and not s & b and not any(e <= s for e in edges)
    )


def brute_poly(h):
    edges = [frozenset(e) for e in h.edges]
    coeffs = [0] * (h.n + 1)
    for s in subsets(h.n):
        if not any(e <= s for e in edges):
            coeffs[len(s)] += 1
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def random_hypergraph(rng, max_n=12, max_edges=10, max_size=4, allow_empty=False):
    n = rng.randint(1, max_n)
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        lo = 0 if allow_empty else 1
        k = rng.randint(lo, min(max_size, n))
        edges.append(tuple(rng.sample(range(1, n + 1), k)))
    return Hypergraph(n, tuple(edges))


def random_constraints(rng, n):
    a, b = [], []
    for v in range(1, n + 1):
        roll = rng.random()
        if roll < 0.15:
            a.append(v)
        elif roll < 0.3:
            b.append(v)
    return a, b


@pytest.fixture
def rng():
    return random.Random(20240611)


@st.composite
def hypergraphs(draw, max_n=9, max_edges=8, max_size=4):
    n = draw(st.integers(1, max_n))
    edge = st.lists(st.integers(1, n), min_size=1, max_size=min(max_size, n), unique=True)
    edges = draw(st.lists(edge, max_size=max_edges))
    return Hypergraph(n, tuple(tuple(e) for e in edges))


P4 = Hypergraph(4, ((1, 2), (2, 3), (3, 4)))
K3 = Hypergraph(3, ((1, 2), (2, 3), (1, 3)))


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
