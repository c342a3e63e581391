from itertools import permutations

import pytest

from implicit_graphs.core import (
    SplitMix64,
    complete_graph,
    empty_graph,
    enumerate_graphs,
    make_graph,
    path_graph,
    random_forest,
)
from implicit_graphs.errors import CapExceeded, SchemeError
from implicit_graphs.labeling import forest_labels, row_labels, verify_labeling
from implicit_graphs.universal import (
    Embedding,
    count_representable,
    find_induced_embedding,
    is_induced_embedding,
    labels_from_universal,
    min_universal_size,
    representable_patterns,
    represents,
    scheme_embedding,
    universal_from_scheme,
)
from oracles import brute_embeds, induced_pattern

K2 = make_graph(2, [(1, 2)])
E2 = empty_graph(2)
EDGE_PLUS_ISOLATED = make_graph(3, [(1, 2)])


def test_forest_universal_n3():
    univ = universal_from_scheme("forest", 3)
    assert univ.size == 16
    lab = forest_labels(path_graph(3))
    emb = scheme_embedding(lab)
    assert is_induced_embedding(path_graph(3), univ.carrier, emb)


def test_row_universal_n2():
    univ = universal_from_scheme("row", 2)
    assert univ.size == 16
    for g in (K2, E2):
        assert is_induced_embedding(g, univ.carrier, scheme_embedding(row_labels(g)))
        assert find_induced_embedding(g, univ.carrier) is not None


def test_universal_n0():
    univ = universal_from_scheme("forest", 0)
    assert univ.size == 1 and univ.carrier.num_edges == 0


def test_universal_cap_refusal():
    with pytest.raises(CapExceeded) as e:
        universal_from_scheme("row", 20)
    assert e.value.required == 2 ** 25


def test_labels_from_universal_examples():
    lab = labels_from_universal(K2, K2, Embedding((1, 2)))
    assert lab.width == 1 and lab.decoder(*lab.codes)
    single = labels_from_universal(path_graph(3), empty_graph(1), Embedding((2,)))
    assert len(single.codes) == 1 and verify_labeling(empty_graph(1), single)
    with pytest.raises(SchemeError, match=r"\(1, 2\)"):
        labels_from_universal(EDGE_PLUS_ISOLATED, K2, Embedding((1, 3)))


def test_scheme_universal_labeling_composition():
    univ = universal_from_scheme("forest", 8)
    rng = SplitMix64(10)
    for _ in range(10):
        f = random_forest(8, rng)
        emb = scheme_embedding(forest_labels(f))
        lab = labels_from_universal(univ, f, emb)
        assert lab.width == 8 and verify_labeling(f, lab)


def test_embedding_examples():
    assert find_induced_embedding(K2, EDGE_PLUS_ISOLATED) is not None
    assert find_induced_embedding(E2, K2) is None
    assert find_induced_embedding(path_graph(3), complete_graph(5)) is None
    assert find_induced_embedding(empty_graph(0), empty_graph(0)) == Embedding(())


def test_embedding_matches_brute_force_small():
    small = [g for n in range(4) for g in enumerate_graphs(n)]
    for f in small:
        for u in small:
            emb = find_induced_embedding(f, u)
            assert (emb is not None) == brute_embeds(f, u)
            if emb is not None:
                assert is_induced_embedding(f, u, emb)


def test_represents_examples():
    assert represents(K2, [])
    assert not represents(K2, [K2, E2])
    assert represents(EDGE_PLUS_ISOLATED, [K2, E2])


def test_min_universal_examples():
    assert min_universal_size([K2], 6) == 2
    assert min_universal_size([K2, E2], 6) == 3
    all3 = list(enumerate_graphs(3))
    size = min_universal_size(all3, 6)
    assert 3 <= size <= 6
    assert min_universal_size(all3, 3) is None
    with pytest.raises(CapExceeded):
        min_universal_size([K2], 7)


def test_min_universal_all3_against_direct_scan():
    all3 = list(enumerate_graphs(3))
    size = min_universal_size(all3, 6)
    # no labeled graph on fewer vertices works; some labeled graph of that size does
    for u in range(3, size):
        assert not any(represents(c, all3) for c in enumerate_graphs(u))
    assert any(represents(c, all3) for c in enumerate_graphs(size))


def test_count_representable_examples():
    assert count_representable(empty_graph(1), 1) == 1
    assert count_representable(K2, 2) == 1
    assert count_representable(EDGE_PLUS_ISOLATED, 2) == 2
    with pytest.raises(CapExceeded) as e:
        count_representable(empty_graph(20), 6)
    assert e.value.required == 20 ** 6


def test_count_representable_oracle():
    for u in enumerate_graphs(4):
        for n in range(5):
            pats = {induced_pattern(u, t) for t in permutations(range(1, u.n + 1), n)}
            assert count_representable(u, n) == len(pats) <= u.n ** n
    assert len(representable_patterns(path_graph(3), 3)) == 3
