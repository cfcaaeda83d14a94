import pytest
from hypothesis import given

from hypdens.core import (
    Hypergraph,
    disjoint_union,
    greedy_maximal_matching,
    induced,
    maximum_matching,
    normalize,
)
from hypdens.count import count_independent
from hypdens.constructions import hhat_prefix
from hypdens.errors import EmptyEdge, OutOfRange

from conftest import K3, brute_count, hypergraphs


def brute_matching_number(h):
    import itertools

    edges = [frozenset(e) for e in h.edges]
    for k in range(len(edges), 0, -1):
        for combo in itertools.combinations(edges, k):
            if sum(len(e) for e in combo) == len(frozenset().union(*combo)):
                return k
    return 0


@pytest.mark.parametrize(
    "edges, expected",
    [
        (((1, 2), (1, 2, 3)), {(1, 2)}),
        ((), set()),
        (((1,), (1,)), {(1,)}),
    ],
)
def test_normalize_examples(edges, expected):
    assert normalize(Hypergraph(3, edges)).edge_set() == expected


def test_normalize_keeps_order():
    h = Hypergraph(4, ((3, 4), (1, 2, 3), (1, 2), (3, 4)))
    assert normalize(h).edges == ((3, 4), (1, 2))


@given(hypergraphs())
def test_normalize_preserves_independent_sets(h):
    assert brute_count(normalize(h)) == brute_count(h)
    g = normalize(h)
    for e in g.edges:
        for f in g.edges:
            assert e == f or not set(e) <= set(f)


def test_induced_examples():
    h = Hypergraph(3, ((1, 2, 3),))
    assert induced(h, {1, 2}) == Hypergraph(2, ())
    assert induced(Hypergraph(3, ((1, 2),)), {1, 2}) == Hypergraph(2, ((1, 2),))
    assert induced(hhat_prefix(3), {1, 2, 3}).edge_set() == {(1,), (2, 3)}


def test_induced_relabels_in_order():
    h = Hypergraph(5, ((2, 4), (4, 5), (1, 3)))
    assert induced(h, {2, 4, 5}).edge_set() == {(1, 2), (2, 3)}


def test_induced_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        induced(Hypergraph(2), {3})


@given(hypergraphs())
def test_induced_on_everything_is_identity(h):
    assert induced(h, range(1, h.n + 1)).same_as(h)


def test_disjoint_union_examples():
    assert disjoint_union(Hypergraph(1), Hypergraph(1)) == Hypergraph(2)
    e = Hypergraph(2, ((1, 2),))
    assert disjoint_union(e, e).edge_set() == {(1, 2), (3, 4)}


@given(hypergraphs(max_n=5), hypergraphs(max_n=5), hypergraphs(max_n=4))
def test_disjoint_union_product_and_associativity(a, b, c):
    u = disjoint_union(a, b)
    assert u.n == a.n + b.n
    assert count_independent(u) == count_independent(a) * count_independent(b)
    assert disjoint_union(disjoint_union(a, b), c).same_as(disjoint_union(a, disjoint_union(b, c)))


def test_hypergraph_validation():
    with pytest.raises(OutOfRange):
        Hypergraph(2, ((1, 3),))
    with pytest.raises(OutOfRange):
        Hypergraph(2, ((1, 1),))
    assert Hypergraph(2, ((2, 1),)).edges == ((1, 2),)


def test_greedy_matching_examples():
    h = Hypergraph(4, ((1, 2), (2, 3), (3, 4)))
    assert greedy_maximal_matching(h).edges == ((1, 2), (3, 4))
    assert greedy_maximal_matching(Hypergraph(3)).edges == ()
    assert greedy_maximal_matching(Hypergraph(3, ((1, 2, 3),))).edges == ((1, 2, 3),)


def test_maximum_matching_examples():
    assert maximum_matching(Hypergraph(4, ((1, 2), (2, 3), (3, 4)))).size == 2
    assert maximum_matching(K3).size == 1
    m = 5
    disjoint = Hypergraph(2 * m, tuple((2 * i + 1, 2 * i + 2) for i in range(m)))
    assert maximum_matching(disjoint).size == m


def test_maximum_beats_greedy():
    # greedy takes the middle edge first and blocks both ends
    h = Hypergraph(4, ((2, 3), (1, 2), (3, 4)))
    assert greedy_maximal_matching(h).size == 1
    assert maximum_matching(h).size == 2


def test_matchings_reject_empty_edge():
    h = Hypergraph(2, ((), (1, 2)))
    with pytest.raises(EmptyEdge):
        greedy_maximal_matching(h)
    with pytest.raises(EmptyEdge):
        maximum_matching(h)


@given(hypergraphs(max_edges=7))
def test_matching_properties(h):
    g = greedy_maximal_matching(h)
    m = maximum_matching(h)
    for match in (g, m):
        covered = [v for e in match.edges for v in e]
        assert len(covered) == len(set(covered))
        assert set(match.edges) <= set(h.edges)
    gcov = g.covered()
    assert all(set(e) & gcov for e in h.edges)
    assert g.size <= m.size == brute_matching_number(h)
