import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minoruniv.cliquesum import random_clique_sum, verify_decomposition
from minoruniv.degree_bound import BOUNDS, boundify, check_boundify, expand_with_pilars, k_pilar
from minoruniv.embedding import planar_embed
from minoruniv.errors import BadArity, Disconnected, ForbiddenMinorPresent, NotAClique
from minoruniv.fatten import fatten
from minoruniv.graph import Graph, complete_graph, cube, grid_graph, max_degree, path_graph, wagner
from minoruniv.minor import MinorCertificate, has_k5_minor, has_k33_minor, verify_certificate
from oracles import to_nx


def iso(a, b):
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def test_pilar_shapes():
    p = k_pilar(1, 5)
    assert iso(p.graph, path_graph(5))
    assert all(p.graph.degree(v) == 2 for lev in p.levels[1:-1] for v in lev)
    prism = k_pilar(3, 2).graph
    assert (prism.n, prism.m) == (6, 9) and all(prism.degree(v) == 3 for v in prism.vertices)
    ladder = k_pilar(2, 3)
    assert iso(ladder.graph, grid_graph(3, 2))
    cols = MinorCertificate(
        {i: frozenset(lev[i] for lev in ladder.levels) for i in range(2)},
        {(0, 1): ladder.base},
    )
    assert verify_certificate(ladder.graph, complete_graph(2), cols)


def test_pilar_interior_degree():
    for k in (1, 2, 3):
        p = k_pilar(k, 4)
        inner = [v for lev in p.levels[1:-1] for v in lev]
        assert all(p.graph.degree(v) == k + 1 for v in inner)


def test_pilar_arity():
    with pytest.raises(BadArity):
        k_pilar(4, 2)
    with pytest.raises(BadArity):
        k_pilar(2, 0)


def test_expand_examples():
    ladder = expand_with_pilars(complete_graph(2), [((0, 1), 2)])
    assert iso(ladder, grid_graph(3, 2))
    with pytest.raises(NotAClique):
        expand_with_pilars(path_graph(3), [((0, 2), 1)])
    with pytest.raises(NotAClique):
        expand_with_pilars(complete_graph(3), [((0, 1, 2), 1)], max_clique=2)


def test_expand_wagner_everywhere():
    w = wagner()
    attach = [((v,), 1) for v in w.vertices] + [(e, 1) for e in w.sorted_edges()]
    h = expand_with_pilars(w, attach)
    assert max_degree(h) == 7
    assert h.subgraph(w.vertices) == w


def test_expand_fattened_cube():
    g = cube()
    f = fatten(g, planar_embed(g))
    attach = [((v,), 1) for v in g.vertices]
    attach += [(e, 1) for e in g.sorted_edges()]
    attach += [((t, u, v), 1) for (u, v), pair in f.tips.items() for t in pair]
    h = expand_with_pilars(f, attach)
    assert max_degree(h) <= 22
    base = f.graph
    for v in base.vertices:
        extra = sum(1 for c, _ in attach if v in c)
        assert h.degree(v) == base.degree(v) + extra


def test_boundify_examples():
    r = boundify(complete_graph(4), "K5")
    assert check_boundify(complete_graph(4), r, "K5") == []
    assert verify_decomposition(r.host, r.decomposition)
    w = boundify(wagner(), "K5")
    assert w.host == wagner() and max_degree(w.host) == 3
    # K5 2-summed with a planar graph on an edge
    planar = Graph(range(4, 10), [(4, 5), (5, 6), (6, 7), (7, 4), (4, 8), (8, 9), (9, 5), (0, 4), (1, 5)])
    g = complete_graph(5).add_edges(planar.edges).add_edges([(0, 1)])
    r = boundify(g, "K33")
    assert max_degree(r.host) <= 9 and verify_certificate(r.host, g, r.certificate)
    assert verify_decomposition(r.host, r.decomposition)


def test_boundify_errors():
    with pytest.raises(ForbiddenMinorPresent):
        boundify(complete_graph(5), "K5")
    with pytest.raises(Disconnected):
        boundify(Graph(range(4), [(0, 1), (2, 3)]), "K5")


def test_audit_csv_header():
    r = boundify(complete_graph(4))
    lines = r.audit_csv().splitlines()
    assert lines[0] == "vertex,category,degree" and len(lines) == r.host.n + 1


@given(st.integers(0, 10**6), st.sampled_from(["K5", "K33"]))
def test_boundify_corpus(seed, mode):
    g = random_clique_sum(seed, pieces=5, mode=mode, max_vertices=30, delete_prob=0.2)
    r = boundify(g, mode)
    assert check_boundify(g, r, mode) == []
    assert verify_decomposition(r.host, r.decomposition)
    for v, (cat, d) in r.degree_report.items():
        assert d == r.host.degree(v)
        assert d <= (7 if cat == "pilar" else BOUNDS[mode])


@given(st.integers(0, 10**6), st.sampled_from(["K5", "K33"]))
def test_small_hosts_are_free_by_brute_force(seed, mode):
    g = random_clique_sum(seed, pieces=2, mode=mode, max_vertices=6)
    r = boundify(g, mode)
    if r.host.n <= 25:
        assert not (has_k5_minor(r.host) if mode == "K5" else has_k33_minor(r.host))


def test_small_k5_mode_hosts_by_brute_force():
    for g in (complete_graph(3), path_graph(4), path_graph(3)):
        r = boundify(g, "K5")
        assert r.host.n <= 25
        assert not has_k5_minor(r.host)


def test_many_triangle_adhesions_at_one_vertex():
    # a K4 glued onto every face of a wheel: the hub lies in every adhesion triangle
    from minoruniv.embedding import faces
    from minoruniv.graph import wheel_graph

    g = wheel_graph(10)
    es, nid = list(g.edges), g.next_id()
    for f in faces(planar_embed(g)):
        if len(f) == 3:
            es += [(nid, x) for x in f.vertices]
            nid += 1
    g = Graph(range(nid), es)
    r = boundify(g, "K5")
    assert sum(1 for a in r.input_decomposition.adhesions.values() if len(a) == 3) == 10
    assert check_boundify(g, r, "K5") == []
    assert verify_decomposition(r.host, r.decomposition)
