import math
from fractions import Fraction

import pytest

from hypdens.chains import (
    FINITE_POSITIVE,
    INFINITE,
    UNDETERMINED,
    ZERO,
    Chain,
    chain_invariance_check,
    check_prefix_property,
    classify_limit,
    clique_chain,
    clique_union_density,
    density_sequence,
    equal_clique_union_chain,
    floor_n_log2,
    geometric_outset_bound,
    hhat_chain,
    hhat_vertex_chain,
    hofr_chain_rational,
    interleaved_chain,
    jump_clique_size,
    jumping_chain,
    oscillating_chain,
    outset_density_bound,
    path_chain,
    path_closed_form,
)
from hypdens.core import Hypergraph, disjoint_union
from hypdens.count import eval_poly, independence_polynomial
from hypdens.density import id, rho
from hypdens.errors import EmbeddingViolation, NegativeX, ROutOfRange, TooShort

from conftest import random_constraints, random_hypergraph

XS = [Fraction(0), Fraction(1, 3), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(7, 3)]


def fib(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def test_hhat_sequence_start():
    assert density_sequence(hhat_chain(), 3).values == (Fraction(1, 2), Fraction(3, 8), Fraction(21, 64))


def test_path_sequence_is_fibonacci():
    seq = density_sequence(path_chain(), 25)
    for m, v in enumerate(seq.values, start=1):
        assert v == Fraction(fib(m + 2), 2**m)


def test_sequence_matches_polynomial_route():
    chains = [path_chain(), path_chain(True), hhat_vertex_chain(2), hofr_chain_rational(5, 7), clique_chain()]
    for c in chains:
        for x in XS:
            seq = density_sequence(c, 8, x)
            for m, v in enumerate(seq.values, start=1):
                h = c[m]
                assert v == eval_poly(independence_polynomial(h), x) / 2**h.n


def test_parallel_sequence_matches_serial():
    c = hhat_vertex_chain(3)
    assert density_sequence(c, 12, 2, workers=4).values == density_sequence(c, 12, 2).values


def test_negative_x():
    with pytest.raises(NegativeX):
        density_sequence(path_chain(), 3, -1)


@pytest.mark.parametrize(
    "chain",
    [path_chain(), path_chain(True), hhat_chain(), hhat_vertex_chain(1), hofr_chain_rational(1, 3), equal_clique_union_chain(), jumping_chain(3)],
    ids=lambda c: c.name,
)
def test_chain_invariants(chain):
    steps = 14
    assert check_prefix_property(chain, steps)
    at_one = density_sequence(chain, steps, 1).values
    assert all(b <= a for a, b in zip(at_one, at_one[1:]))
    for m in range(1, steps + 1):
        n = chain.order_at(m)
        vals = [chain.density_at(m, x) for x in XS]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        for x in XS:
            assert chain.density_at(m, x) <= ((1 + x) / 2) ** n


@pytest.mark.parametrize("n, x, want", [(2, 1, 3), (5, 1, 13), (4, 2, 21), (1, 0, 1), (1, 5, 6)])
def test_path_closed_form_examples(n, x, want):
    assert path_closed_form(n, x) == want


def test_path_closed_form_matches_counting():
    chain = path_chain()
    # 1 + 4x square for 2 and 6; irrational root for the rest
    for x in [Fraction(1), Fraction(2), Fraction(6), Fraction(1, 2), Fraction(5, 7), Fraction(0)]:
        for n in range(1, 16):
            assert path_closed_form(n, x) == eval_poly(independence_polynomial(chain[n]), x)


def test_path_converges_at_two():
    seq = density_sequence(path_chain(), 40, 2)
    for m, v in enumerate(seq.values, start=1):
        assert abs(v - Fraction(4, 3)) <= Fraction(2, 3) * Fraction(1, 2) ** m
    assert abs(seq.values[-1] - Fraction(4, 3)) < Fraction(1, 10**6)


@pytest.mark.parametrize("a, b, x, want", [(0, 0, 1, 1), (2, 1, 1, Fraction(3, 4)), (5, 5, 3, 16)])
def test_clique_union_examples(a, b, x, want):
    assert clique_union_density(a, b, x) == want


def test_clique_union_matches_counting():
    for a in range(0, 6):
        for b in range(0, 5):
            h = Hypergraph(a + b, tuple((u, v) for u in range(1, a + 1) for v in range(u + 1, a + 1)))
            for x in XS:
                assert clique_union_density(a, b, x) == eval_poly(independence_polynomial(h), x) / 2 ** (a + b)


def test_closed_forms_match_materialized_chain():
    for c in (jumping_chain(Fraction(5, 2)), equal_clique_union_chain(), clique_chain()):
        for m in range(1, 9):
            h = c[m]
            assert h.n == c.order_at(m)
            for x in XS:
                assert c.density_at(m, x) == eval_poly(independence_polynomial(h), x) / 2**h.n


def test_equal_clique_union_at_three_is_linear():
    seq = density_sequence(equal_clique_union_chain(), 50, 3)
    assert all(v == 1 + 3 * n for n, v in enumerate(seq.values, start=1))
    assert classify_limit(seq).tag == INFINITE


def test_floor_n_log2_exact():
    for q in [Fraction(3, 2), Fraction(5, 3), Fraction(8), Fraction(17, 4)]:
        for n in range(0, 60):
            f = floor_n_log2(q, n)
            assert 2**f <= q**n < 2 ** (f + 1)


def test_jumping_sizes():
    assert [jump_clique_size(Fraction(3), n) for n in range(1, 8)] == list(range(1, 8))
    assert [jump_clique_size(Fraction(7), n) for n in range(1, 8)] == [2 * n for n in range(1, 8)]
    c = jumping_chain(Fraction(5, 2))
    C = math.log2(Fraction(7, 2)) - 1
    for n in range(1, 200):
        # the exact floor agrees with floating point away from ties
        if abs(C * n - round(C * n)) > 1e-9:
            assert c.shape(n) == ("clique_union", math.floor(C * n), n)


def test_jumping_rejects_small_r():
    for r in (1, Fraction(1, 2), 0):
        with pytest.raises(ROutOfRange):
            jumping_chain(r)


@pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(3), Fraction(7)])
def test_jumping_trends(r):
    c = jumping_chain(r)
    below = density_sequence(c, 200, r - Fraction(1, 2)).values
    above = density_sequence(c, 200, r + Fraction(1, 2)).values
    assert below[-1] < below[100] < below[10]
    assert above[-1] > above[100] > above[10]
    # at r itself the density is at least 1 + a r, which grows with n
    at = density_sequence(c, 200, r).values
    for n, v in enumerate(at, start=1):
        a = jump_clique_size(r, n)
        assert 1 + a * r <= v <= 2 * (1 + a * r)


def test_interleave_with_itself():
    c = hhat_vertex_chain(1)
    inter = interleaved_chain(c, c)
    for m in range(1, 10):
        assert inter.order_at(m) == m
        assert inter.density_at(m) == c.density_at(m)
    assert check_prefix_property(inter, 9)


def test_interleave_hhat_step_sizes():
    inter = interleaved_chain(hhat_vertex_chain(2), hhat_vertex_chain(3))
    assert check_prefix_property(inter, 12)
    seq = density_sequence(inter, 40).values
    assert all(b <= a for a, b in zip(seq, seq[1:]))
    assert abs(seq[-1] - id(hhat_chain()[12])) < Fraction(1, 2**10)


def test_interleave_reports_missing_embedding():
    left = path_chain()
    right = clique_chain()
    with pytest.raises(EmbeddingViolation):
        interleaved_chain(left, right, search_limit=30).order_at(4)


def test_oscillating_chain():
    x = Fraction(2)
    c = oscillating_chain(x)
    seq = density_sequence(c, 12, x).values
    assert check_prefix_property(c, 7)
    for m in range(1, 7):
        h = c[m]
        assert h.n == c.order_at(m)
        assert c.density_at(m, x) == eval_poly(independence_polynomial(h), x) / 2**h.n
    assert max(seq) > 10**6
    assert min(seq) < Fraction(1, 10**6)
    assert classify_limit(seq).tag == UNDETERMINED
    with pytest.raises(ROutOfRange):
        oscillating_chain(1)


def test_classify_examples():
    assert classify_limit(density_sequence(clique_chain(), 60)).tag == ZERO
    got = classify_limit(density_sequence(path_chain(), 60, 2))
    assert got.tag == FINITE_POSITIVE
    assert abs(got.value - Fraction(4, 3)) <= got.width + Fraction(1, 10**12)
    assert classify_limit([Fraction(1, 2)] * 25).tag == FINITE_POSITIVE
    assert classify_limit([Fraction(1, 2)] * 12).tag == UNDETERMINED
    with pytest.raises(TooShort):
        classify_limit([Fraction(1)] * 9)


def test_classify_is_conservative():
    # slowly vanishing sequences must not be taken for positive limits
    assert classify_limit([Fraction(n + 1, 2**n) for n in range(1, 30)]).tag == UNDETERMINED
    assert classify_limit([Fraction(1, n) for n in range(1, 40)]).tag == UNDETERMINED
    assert classify_limit([Fraction(n) for n in range(1, 40)]).tag == INFINITE


def test_chain_invariance_examples():
    assert chain_invariance_check(hhat_chain(), hhat_vertex_chain(1), (20, 210), Fraction(1, 2**20))
    assert chain_invariance_check(path_chain(), path_chain(True), 80, Fraction(1, 10**6))
    assert not chain_invariance_check(hhat_chain(), path_chain(), 20, Fraction(1, 2**20))


def test_padded_finite_hypergraph_chains_agree():
    base = Hypergraph(3, ((1, 2), (2, 3)))

    def padded(m):
        return disjoint_union(base, Hypergraph(m))

    def padded_front(m):
        # isolated vertices come first, then the same edges shifted
        return disjoint_union(Hypergraph(m), base)

    c1 = Chain("pad-back", padded)
    c2 = Chain("pad-front", padded_front)
    s1 = density_sequence(c1, 15).values
    s2 = density_sequence(c2, 15).values
    assert s1 == s2 == tuple([id(base)] * 15)
    assert chain_invariance_check(c1, c2, 15, 0)


def test_outset_bounds(rng):
    assert geometric_outset_bound(1, 1, 2, 3) == Fraction(1, 4) * Fraction(27, 64)
    for _ in range(200):
        h = random_hypergraph(rng, max_n=9)
        a, b = random_constraints(rng, h.n)
        bound = outset_density_bound(h, a, b)
        assert rho(h, a, b) <= bound
        bigger = disjoint_union(h, random_hypergraph(rng, max_n=3))
        assert rho(bigger, a, b) <= bound
