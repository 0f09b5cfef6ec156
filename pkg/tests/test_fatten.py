import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import planar_graphs
from minoruniv.embedding import faces, genus_of_rotation, planar_embed
from minoruniv.errors import DegenerateRegion, Disconnected, InvalidRotation
from minoruniv.fatten import (
    blowup_subcubic,
    check_triangle_access,
    fatten,
    fatten_otimes,
    regions,
    subdivide_all,
    triangle_access,
)
from minoruniv.graph import Graph, complete_graph, cube, cycle_graph, is_k_connected, max_degree, path_graph, star_graph
from minoruniv.minor import MinimalK3Minor, compose, identity_certificate, verify_certificate
from oracles import random_access_instance


def embedded(g):
    return g, planar_embed(g)


# -- sub-cubic blow-up ----------------------------------------------------------

def test_blowup_of_subcubic_is_identity():
    g, rho = embedded(cube())
    h, _, cert = blowup_subcubic(g, rho)
    assert h == g and cert == identity_certificate(g)


def test_blowup_star():
    g, rho = embedded(star_graph(5))
    h, rh, cert = blowup_subcubic(g, rho)
    assert max_degree(h) == 3 and h.is_tree()
    assert len(cert.branch_sets[0]) == 3  # centre becomes a path of d - 2 vertices
    assert h.n == 8 and verify_certificate(h, g, cert)
    assert genus_of_rotation(h, rh) == 0


def test_blowup_k4_and_rejects_bad_rotation():
    g, rho = embedded(complete_graph(4))
    h, rh, cert = blowup_subcubic(g, rho)
    assert max_degree(h) <= 3 and genus_of_rotation(h, rh) == 0 and verify_certificate(h, g, cert)
    with pytest.raises(InvalidRotation):
        blowup_subcubic(cycle_graph(4), planar_embed(path_graph(4)))


# -- F(G) -------------------------------------------------------------------

def test_fatten_single_edge_is_k4():
    f = fatten(*embedded(path_graph(2)))
    assert (f.graph.n, f.graph.m) == (4, 6)
    assert is_k_connected(f.graph, 3)


def test_fatten_degree_examples():
    assert max_degree(fatten(*embedded(cycle_graph(4))).graph) == 6
    assert max_degree(fatten(*embedded(cube())).graph) == 9


def test_fatten_rejects_disconnected():
    g = Graph(range(4), [(0, 1), (2, 3)])
    rho = planar_embed(path_graph(2)).relabel({0: 0, 1: 1})
    with pytest.raises(Disconnected):
        fatten(g, rho)


def _fattening_invariants(g, f):
    h = f.graph
    for (u, v), (t1, t2) in f.tips.items():
        assert all(h.has_edge(*e) for e in [(u, t1), (t1, v), (v, t2), (t2, u), (u, v)])
    # around an original vertex the rotation runs neighbour, tip, tip, neighbour, ...;
    # the two tips inside each corner are adjacent
    for v in g.vertices:
        rot = f.rotation[v]
        for i in range(0, len(rot), 3):
            a, b = rot[i + 1], rot[i + 2]
            assert f.origin[a] == f.origin[b] == "tip"
            assert a == b or h.has_edge(a, b)
    tips = [x for x, r in f.origin.items() if r == "tip"]
    assert h.remove_vertices(tips) == g
    for v in g.vertices:
        assert h.degree(v) == 3 * g.degree(v)
    assert all(h.degree(t) <= 4 for t in tips)
    assert genus_of_rotation(h, f.rotation) == 0


@given(planar_graphs(3, 9))
def test_fatten_properties(g):
    f = fatten(*embedded(g))
    _fattening_invariants(g, f)
    assert is_k_connected(f.graph, 3)
    assert verify_certificate(f.graph, g, f.certificate)
    if not g.triangles():
        assert max_degree(f.graph) == max(3 * max_degree(g), 6)


@given(planar_graphs(1, 12))
def test_blowup_properties(g):
    rho = planar_embed(g)
    h, rh, cert = blowup_subcubic(g, rho)
    assert max_degree(h) <= 3
    assert genus_of_rotation(h, rh) == 0
    assert verify_certificate(h, g, cert)


@given(planar_graphs(2, 10))
def test_pipeline_certificates_compose(g):
    s, rs, c1 = subdivide_all(g, planar_embed(g))
    assert not s.triangles() and genus_of_rotation(s, rs) == 0
    b, rb, c2 = blowup_subcubic(s, rs)
    f = fatten(b, rb)
    cert = compose(compose(c1, c2), f.certificate)
    assert verify_certificate(f.graph, g, cert)


# -- X (x) construction -------------------------------------------------------------

def test_otimes_k2_planar():
    g, rho = embedded(path_graph(2))
    h, rh, cert = fatten_otimes(g, rho)
    assert genus_of_rotation(h, rh) == 0 and verify_certificate(h, g, cert)


def test_otimes_rings_separate_vertices():
    g, rho = embedded(cycle_graph(3))
    h, rh, cert = fatten_otimes(g, rho)
    assert verify_certificate(h, g, cert)
    for v in g.vertices:
        ring = sorted(h.neighbors(v))
        assert h.subgraph(ring).m == len(ring)  # the neighbours form a cycle
        rest = h.remove_vertices(ring)
        comp = next(c for c in rest.components() if v in c)
        assert comp == [v]


@given(planar_graphs(1, 8))
def test_otimes_certificate_and_faces(g):
    h, rh, cert = fatten_otimes(*embedded(g))
    assert verify_certificate(h, g, cert)
    assert genus_of_rotation(h, rh) == 0
    assert max_degree(h) <= max(4, 3 * max_degree(g))


# -- triangle access -----------------------------------------------------------------

def _side_of(f, delta, face_cycle):
    a, b = regions(f, delta)
    fs = faces(f.rotation)
    return a if any(set(fs[i].vertices) == set(face_cycle) for i in a) else b


def test_triangle_access_on_facial_triangle():
    f = fatten(*embedded(complete_graph(4)))
    delta = MinimalK3Minor(((0,), (1,), (2,)))
    for side in regions(f, delta):
        ta = triangle_access(f, delta, side)
        assert check_triangle_access(f, delta, ta) == []
        assert ta.paths[1] == (ta.triangle[1],) and ta.paths[2] == (ta.triangle[2],)
        assert f.origin[ta.triangle[0]] == "tip"


def test_triangle_access_on_square():
    f = fatten(*embedded(cycle_graph(4)))
    delta = MinimalK3Minor(((0, 1), (2,), (3,)))
    for side in regions(f, delta):
        ta = triangle_access(f, delta, side)
        assert check_triangle_access(f, delta, ta) == []


def test_triangle_access_with_chord():
    # hexagon with the chord 0-3 on one side
    g = Graph(range(6), [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    f = fatten(*embedded(g))
    delta = MinimalK3Minor(((0, 1), (2, 3), (4, 5)))
    for side in regions(f, delta):
        ta = triangle_access(f, delta, side)
        assert check_triangle_access(f, delta, ta) == []
        for k in range(3):
            assert set(ta.delta.paths[k]) <= set(delta.paths[k])
    chord_side = next(s for s in regions(f, delta)
                      if f.face_of_dart[(0, 3)] in s and f.face_of_dart[(3, 0)] in s)
    ta = triangle_access(f, delta, chord_side)
    assert len(ta.delta.cycle) < 6


def test_triangle_access_rejects_foreign_side():
    f = fatten(*embedded(complete_graph(4)))
    delta = MinimalK3Minor(((0,), (1,), (2,)))
    with pytest.raises(DegenerateRegion):
        triangle_access(f, delta, frozenset())


@given(st.integers(0, 10**6))
def test_triangle_access_random(seed):
    f, delta, side = random_access_instance(seed)
    ta = triangle_access(f, delta, side)
    assert check_triangle_access(f, delta, ta) == []
    # removing the feeders and the new triangle leaves the cycle intact
    used = set(ta.triangle) | {x for p in ta.paths for x in p[:-1]}
    assert not used & (set(ta.delta.cycle) - set(ta.triangle[1:]))
