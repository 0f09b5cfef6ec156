import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import planar_graphs, small_graphs
from minoruniv.embedding import planar_embed
from minoruniv.errors import InvalidCertificate, SearchBudgetExceeded
from minoruniv.fatten import fatten
from minoruniv.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    petersen,
    wagner,
)
from minoruniv.minor import (
    MinimalK3Minor,
    MinorCertificate,
    compose,
    find_minor,
    find_rooted_minor,
    find_topological_minor,
    has_k5_minor,
    has_k33_minor,
    identity_certificate,
    minimal_k3,
    verify_certificate,
    verify_topological_minor,
)
from oracles import naive_has_minor, random_connected_graph

K3, K4, K5, K33 = complete_graph(3), complete_graph(4), complete_graph(5), complete_bipartite(3, 3)


def test_verify_certificate_examples():
    assert verify_certificate(K3, K3, identity_certificate(K3))
    # K3 is a minor of C4 (contract one edge); a broken certificate still fails
    c4 = cycle_graph(4)
    good = MinorCertificate({0: frozenset({0, 1}), 1: frozenset({2}), 2: frozenset({3})},
                            {(0, 1): (1, 2), (0, 2): (0, 3), (1, 2): (2, 3)})
    assert verify_certificate(c4, K3, good)
    overlap = MinorCertificate({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({3})}, good.branch_edges)
    assert not verify_certificate(c4, K3, overlap)
    loose = MinorCertificate({0: frozenset({0, 2}), 1: frozenset({1}), 2: frozenset({3})},
                             {(0, 1): (0, 1), (0, 2): (2, 3), (1, 2): (1, 0)})
    assert not verify_certificate(c4, K3, loose)
    f = fatten(K4, planar_embed(K4))
    assert verify_certificate(f.graph, K4, f.certificate)


def test_find_minor_examples():
    cert = find_minor(petersen(), K5)
    assert cert is not None and verify_certificate(petersen(), K5, cert)
    assert find_minor(wagner(), K5) is None
    assert find_minor(K5, K5) == identity_certificate(K5)


def test_class_membership_examples():
    assert has_k5_minor(K5) and not has_k5_minor(wagner())
    assert has_k33_minor(K33) and has_k33_minor(wagner())


def test_budget_is_reported():
    with pytest.raises(SearchBudgetExceeded):
        find_minor(petersen(), K5, budget=1)
    with pytest.raises(SearchBudgetExceeded):
        find_topological_minor(wagner(), K33, budget=1)


def test_topological_examples():
    tm = find_topological_minor(K4, K3)
    assert tm is not None and verify_topological_minor(K4, K3, tm)
    assert find_topological_minor(cycle_graph(5), K4) is None
    tm = find_topological_minor(wagner(), K33)
    assert tm is not None and verify_topological_minor(wagner(), K33, tm)


def test_minimal_k3_examples():
    tri = minimal_k3(K3, identity_certificate(K3))
    assert tri.cycle == [0, 1, 2] and tri.is_valid(K3)
    c9 = cycle_graph(9)
    sets = {0: frozenset({0, 1, 2}), 1: frozenset({3, 4, 5}), 2: frozenset({6, 7, 8})}
    cert = MinorCertificate(sets, {(0, 1): (2, 3), (0, 2): (0, 8), (1, 2): (5, 6)})
    d = minimal_k3(c9, cert)
    assert [tuple(sorted(p)) for p in d.paths] == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    # branch sets that are trees with spurs: only the connecting subpaths survive
    host = Graph(range(9), [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (5, 6), (6, 0), (2, 7), (4, 8)])
    tree_cert = MinorCertificate(
        {0: frozenset({0, 1, 2, 7}), 1: frozenset({3, 4, 8}), 2: frozenset({5, 6})},
        {(0, 1): (1, 3), (0, 2): (0, 6), (1, 2): (4, 5)},
    )
    assert verify_certificate(host, K3, tree_cert)
    d = minimal_k3(host, tree_cert)
    assert d.is_valid(host)
    for p, bs in zip(d.paths, (tree_cert.branch_sets[0], tree_cert.branch_sets[1], tree_cert.branch_sets[2])):
        assert set(p) <= bs
    assert 7 not in d.cycle and 8 not in d.cycle
    with pytest.raises(InvalidCertificate):
        minimal_k3(cycle_graph(4), tree_cert)


def test_minimal_k3_invariants_directly():
    d = MinimalK3Minor(((0,), (1, 2), (3,)))
    assert d.is_valid(cycle_graph(4))
    assert not MinimalK3Minor(((0,), (2,), (1,))).is_valid(cycle_graph(4))


def test_rooted_minor():
    # K4 with roots pinned to three fixed corners
    host = Graph(range(6), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 1), (4, 2)])
    cert = find_rooted_minor(host, K4, {0: 0, 1: 1, 2: 2})
    assert cert is not None and verify_certificate(host, K4, cert)
    assert all(r in cert.branch_sets[p] for p, r in {0: 0, 1: 1, 2: 2}.items())


def test_certificate_json_and_compose():
    cert = find_minor(petersen(), K5)
    assert MinorCertificate.from_dict(cert.to_dict()) == cert
    # K3 < K4 < F(K4)
    inner = find_minor(K4, K3)
    outer = fatten(K4, planar_embed(K4))
    both = compose(inner, outer.certificate)
    assert verify_certificate(outer.graph, K3, both)


@given(small_graphs(min_n=1, max_n=7), st.sampled_from([K3, K4, cycle_graph(4), complete_bipartite(1, 3)]))
def test_agrees_with_naive_enumeration(host, pattern):
    cert = find_minor(host, pattern)
    assert (cert is not None) == naive_has_minor(host, pattern)
    if cert is not None:
        assert verify_certificate(host, pattern, cert)


@given(st.integers(0, 10**6))
def test_monotone_in_host(seed):
    rng = random.Random(seed)
    host = random_connected_graph(rng, rng.randint(5, 8), 0.45)
    pattern = rng.choice([K4, K33.remove_vertices([5]), cycle_graph(5)])
    bigger = host.add_edges([(a, b) for a in host.vertices for b in host.vertices
                             if a < b and not host.has_edge(a, b) and rng.random() < 0.3])
    if find_minor(host, pattern) is not None:
        assert find_minor(bigger, pattern) is not None


@given(planar_graphs(3, 10))
def test_planar_graphs_are_free(g):
    assert not has_k5_minor(g) and not has_k33_minor(g)
