from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from implicit_graphs.core import (
    BipartiteGraph,
    SplitMix64,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    induced_subgraph,
    make_graph,
    path_graph,
    random_forest,
    random_graph,
    sample_bipartite,
)
from implicit_graphs.degeneracy import (
    BadSubgraphQuery,
    Outcome,
    badness_threshold,
    c_core,
    find_bad_subgraph,
    goodness_size_cap,
    is_good,
    is_k_degenerate,
    min_degree_of,
    monte_carlo_lemma21,
    peel_ordering,
    union_bound_exact,
)
from oracles import brute_bad_exists, brute_degeneracy
from test_core import graphs


def check_certificate(g, cert):
    pos = cert.position()
    assert sorted(cert.order) == list(range(1, g.n + 1))
    for v in range(1, g.n + 1):
        later = sum(1 for w in g.neighbors(v) if pos[w] > pos[v])
        assert cert.forward_degree[v - 1] == later
    assert cert.degeneracy == max(cert.forward_degree, default=0)


def test_peel_examples():
    assert peel_ordering(empty_graph(5)).degeneracy == 0
    assert peel_ordering(complete_graph(4)).degeneracy == 3
    assert peel_ordering(path_graph(7)).degeneracy == 1
    assert peel_ordering(empty_graph(0)).degeneracy == 0


def test_peel_trees():
    rng = SplitMix64(5)
    for _ in range(50):
        n = 2 + rng.below(30)
        # random tree: attach each vertex to an earlier one
        tree = make_graph(n, [(1 + rng.below(v - 1), v) for v in range(2, n + 1)])
        assert peel_ordering(tree).degeneracy == 1


def test_peel_tie_break_lowest_index():
    assert peel_ordering(complete_graph(4)).order == (1, 2, 3, 4)
    assert peel_ordering(path_graph(3)).order == (1, 2, 3)


def test_is_k_degenerate_examples():
    assert is_k_degenerate(path_graph(5), 1)
    assert not is_k_degenerate(complete_graph(3), 1)
    assert is_k_degenerate(cycle_graph(4), 2)
    assert brute_degeneracy(cycle_graph(4)) == 2


def test_peel_matches_brute_force_n5():
    for g in enumerate_graphs(5):
        cert = peel_ordering(g)
        check_certificate(g, cert)
        assert cert.degeneracy == brute_degeneracy(g)


@settings(max_examples=100)
@given(graphs(max_n=8), st.data())
def test_degeneracy_monotone_under_induced(g, data):
    s = data.draw(st.lists(st.integers(1, max(g.n, 1)), unique=True)) if g.n else []
    h = induced_subgraph(g, s)
    assert peel_ordering(h).degeneracy <= peel_ordering(g).degeneracy


def test_c_core():
    g = make_graph(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)])
    assert c_core(g, 2) == [1, 2, 3]
    assert c_core(path_graph(4), 2) == []


def test_find_bad_examples():
    rng = SplitMix64(3)
    for _ in range(20):
        f = random_forest(1 + rng.below(30), rng)
        assert find_bad_subgraph(f, BadSubgraphQuery(2, 10)).outcome is Outcome.NONE
    k4 = complete_graph(4)
    r = find_bad_subgraph(k4, BadSubgraphQuery(3, 4))
    assert r.outcome is Outcome.FOUND and r.witness == (1, 2, 3, 4)
    assert find_bad_subgraph(k4, BadSubgraphQuery(3, 3)).outcome is Outcome.NONE


def test_find_bad_complete_against_brute_force_small():
    """Every graph on <= 6 vertices (<= 5 exhaustively, a seeded sample at 6), c <= 3, cap <= 6."""
    corpus = [g for n in range(1, 6) for g in enumerate_graphs(n)]
    rng = SplitMix64(11)
    corpus += [random_graph(6, rng, 0.5) for _ in range(300)]
    for g in corpus:
        for c in (1, 2, 3):
            for cap in range(1, 7):
                res = find_bad_subgraph(g, BadSubgraphQuery(c, cap, budget=10**6))
                assert res.outcome is not Outcome.BUDGET_EXCEEDED
                assert (res.outcome is Outcome.FOUND) == brute_bad_exists(g, c, cap)
                if res.witness:
                    assert len(res.witness) <= cap
                    assert min_degree_of(g, res.witness) >= c


def test_find_bad_six_vertex_stride_c2():
    from implicit_graphs.core import graph_from_index
    for i in range(0, 1 << 15, 7):
        g = graph_from_index(6, i)
        res = find_bad_subgraph(g, BadSubgraphQuery(2, 4))
        assert (res.outcome is Outcome.FOUND) == brute_bad_exists(g, 2, 4)


def test_witness_soundness_on_random_bipartite():
    for seed in range(30):
        g = sample_bipartite(20, 90, seed).to_graph()
        res = find_bad_subgraph(g, BadSubgraphQuery(3, 8))
        if res.outcome is Outcome.FOUND:
            assert len(res.witness) <= 8 and min_degree_of(g, res.witness) >= 3


def test_vacuity():
    for seed in range(50):
        g = random_graph(12, SplitMix64(seed), 0.7)
        for c in (2, 3, 4):
            assert find_bad_subgraph(g, BadSubgraphQuery(c, c)).outcome is Outcome.NONE


def test_budget_is_a_value():
    g = sample_bipartite(64, 512, 1).to_graph()
    res = find_bad_subgraph(g, BadSubgraphQuery(3, 8, budget=1))
    assert res.outcome is Outcome.BUDGET_EXCEEDED and res.witness is None


def test_query_validation():
    with pytest.raises(ValueError):
        BadSubgraphQuery(0, 3)


def test_threshold_exact_arithmetic():
    assert badness_threshold(0.6, 0.5) == 40  # floats would give 41
    assert badness_threshold(0.75, 0.5) == 16
    assert badness_threshold(0.5, 0.25) == 16
    assert badness_threshold(Fraction(3, 5), Fraction(1, 2)) == 40
    with pytest.raises(ValueError):
        badness_threshold(0.5, 0.5)
    assert goodness_size_cap(128, 0.25) == 3
    assert goodness_size_cap(16, 0.5) == 4
    assert goodness_size_cap(15, 0.5) == 3


def test_is_good_examples():
    forest_like = BipartiteGraph(4, ((1, 5), (1, 6), (2, 6), (3, 7), (4, 8)))
    res = is_good(forest_like, 0.9, 0.2)
    assert (res.c, res.size_cap, res.verdict) == (6, 1, "good")
    # K_{150,150}: c = ceil(4/0.5) = 8, s = floor(300^0.49) = 16 >= 2c
    kfull = sample_bipartite(150, 150 * 150, 0)
    res = is_good(kfull, 0.99, 0.49)
    assert (res.c, res.size_cap, res.verdict) == (8, 16, "bad")
    assert min_degree_of(kfull.to_graph(), res.witness) >= 8
    # K_{30,30}: c = 45 exceeds every degree
    big = sample_bipartite(30, 900, 0)
    res = is_good(big, 0.99, 0.9)
    assert (res.c, res.size_cap, res.verdict) == (45, 39, "good")
    with pytest.raises(ValueError):
        is_good(big, 0.5, 0.6)


def test_is_good_golden_replay():
    b = sample_bipartite(64, 512, 1)
    r1 = is_good(b, 0.5, 0.25)
    r2 = is_good(sample_bipartite(64, 512, 1), 0.5, 0.25)
    assert r1 == r2
    assert (r1.c, r1.size_cap, r1.verdict) == (16, 3, "good")


def test_union_bound_examples():
    assert union_bound_exact(4, 0, 1, 2) == 0
    ub = union_bound_exact(64, 512, 3, 8)
    # independent order: b outer, a inner, no helper
    from math import comb
    total = Fraction(0)
    for b in range(8, 0, -1):
        for a in range(8, 0, -1):
            t = comb(64, a) * comb(64, b) * (Fraction(512 * b, 4096) ** (3 * a) + Fraction(512 * a, 4096) ** (3 * b))
            total += min(t, Fraction(1))
    assert ub == total == 64
    sparse = union_bound_exact(1000, 300, 4, 5)
    assert sparse > 0
    total = Fraction(0)
    for b in range(5, 0, -1):
        for a in range(5, 0, -1):
            t = comb(1000, a) * comb(1000, b) * (Fraction(300 * b, 10**6) ** (4 * a) + Fraction(300 * a, 10**6) ** (4 * b))
            total += min(t, Fraction(1))
    assert sparse == total
    with pytest.raises(ValueError):
        union_bound_exact(0, 0, 1, 1)


def test_cap_below_c_search_agrees_with_zero_probability():
    for seed in range(20):
        g = sample_bipartite(8, 30, seed).to_graph()
        assert find_bad_subgraph(g, BadSubgraphQuery(5, 4)).outcome is Outcome.NONE


def test_monte_carlo_examples():
    rep = monte_carlo_lemma21(10, 0, 1, 3, 100, 5)
    assert rep.bad_frequency == 0 and rep.unknown_count == 0
    rep = monte_carlo_lemma21(3, 9, 2, 6, 100, 5)
    assert rep.bad_frequency == 1


def test_monte_carlo_deterministic_and_worker_independent():
    a = monte_carlo_lemma21(16, 40, 2, 6, 40, 99)
    b = monte_carlo_lemma21(16, 40, 2, 6, 40, 99)
    c = monte_carlo_lemma21(16, 40, 2, 6, 40, 99, workers=2)
    assert a == b == c
    assert a.to_json() == c.to_json()
