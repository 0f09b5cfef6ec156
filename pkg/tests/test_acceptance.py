"""The ten acceptance criteria, each with its runtime limit.

Every test appends one ``PASS``/``FAIL`` line to ``RESULTS``; the pytest
terminal summary (see conftest) and ``python tests/test_acceptance.py`` print them.
"""

import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).parent))

from minoruniv.cliquesum import decompose, random_clique_sum, recompose, verify_decomposition  # noqa: E402
from minoruniv.degree_bound import boundify  # noqa: E402
from minoruniv.embedding import genus_of_rotation, is_planar, planar_embed  # noqa: E402
from minoruniv.errors import ForbiddenMinorPresent  # noqa: E402
from minoruniv.fatten import blowup_subcubic, check_triangle_access, fatten, subdivide_all, triangle_access  # noqa: E402
from minoruniv.graph import is_k_connected, max_degree, wagner  # noqa: E402
from minoruniv.minor import find_minor, has_k5_minor, has_k33_minor, verify_certificate  # noqa: E402
from minoruniv.twins import build_t_prime, check_ordered_embedding, ordered_embed, random_binary_tree, rooted_trees  # noqa: E402
from minoruniv.universal import embed_in_universal  # noqa: E402
from oracles import (  # noqa: E402
    minor_pair_suite,
    naive_has_minor,
    random_access_instance,
    random_connected_planar,
    rec_ordered_embed,
    to_nx,
)

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
    except AssertionError as exc:
        took = time.perf_counter() - start
        RESULTS.append(f"FAIL {number:2d} {title} ({took:.1f}s): {exc}")
        raise
    took = time.perf_counter() - start
    ok = took <= limit
    extra = ("; " + ", ".join(notes)) if notes else ""
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} {number:2d} {title} ({took:.1f}s of {limit:.0f}s){extra}")
    assert ok, f"criterion {number} took {took:.1f}s, limit {limit:.0f}s"


def _bounded_hosts(mode: str, bound: int, notes: list[str]) -> None:
    worst = 0
    for seed in range(100):
        g = random_clique_sum(seed, pieces=6, mode=mode, max_vertices=40, delete_prob=0.2)
        assert g.n <= 40
        r = boundify(g, mode)
        worst = max(worst, max_degree(r.host))
        assert max_degree(r.host) <= bound, f"seed {seed}: degree {max_degree(r.host)}"
        assert verify_certificate(r.host, g, r.certificate), f"seed {seed}: certificate"
        assert r.decomposition is not None and verify_decomposition(r.host, r.decomposition), f"seed {seed}"
    notes.append(f"worst degree {worst}")


def test_c01_degree_22():
    with criterion(1, "K5-minor-free hosts of degree <= 22", 300) as notes:
        _bounded_hosts("K5", 22, notes)


def test_c02_degree_9():
    with criterion(2, "K3,3-minor-free hosts of degree <= 9", 300) as notes:
        _bounded_hosts("K33", 9, notes)


def test_c03_fattening_3_connected():
    with criterion(3, "fattening is 3-connected; degree law on triangle-free graphs", 120) as notes:
        rng = random.Random(3)
        count = tri_free = 0
        while count < 220:
            g = random_connected_planar(rng, 3, 9)
            f = fatten(g, planar_embed(g))
            assert is_k_connected(f.graph, 3)
            if not g.triangles():
                tri_free += 1
                assert max_degree(f.graph) == max(3 * max_degree(g), 6)
            count += 1
        notes.append(f"{count} graphs, {tri_free} triangle-free")


def test_c04_degree_nine():
    with criterion(4, "sub-cubic triangle-free planar graphs fatten to degree 9", 60) as notes:
        rng = random.Random(4)
        done = 0
        while done < 50:
            g = random_connected_planar(rng, 2, 10)
            s, rs, _ = subdivide_all(g, planar_embed(g))
            b, rb, _ = blowup_subcubic(s, rs)
            if max_degree(b) != 3:
                continue
            assert not b.triangles() and b.is_connected()
            assert max_degree(fatten(b, rb).graph) == 9
            done += 1
        notes.append(f"{done} graphs")


def test_c05_blowup():
    with criterion(5, "sub-cubic blow-up: degree, genus, certificate", 60) as notes:
        rng = random.Random(5)
        for _ in range(200):
            g = random_connected_planar(rng, 1, 16)
            rho = planar_embed(g)
            h, rh, cert = blowup_subcubic(g, rho)
            assert max_degree(h) <= 3
            assert genus_of_rotation(h, rh) == 0
            assert verify_certificate(h, g, cert)
        notes.append("200 graphs")


def test_c06_decomposition():
    with criterion(6, "clique-sum decomposition round trip and oracle agreement", 600) as notes:
        w = to_nx(wagner())
        for seed in range(100):
            g = random_clique_sum(seed, pieces=6, mode="K5", max_vertices=40, delete_prob=0.2)
            t = decompose(g, "K5")
            assert verify_decomposition(g, t)
            h = recompose(t)
            assert g.edges <= h.edges and set(g.vertices) == set(h.vertices)
            for x in t.torsos.values():
                if not is_planar(x):
                    assert nx.is_isomorphic(to_nx(x), w)
        agree = positive = 0
        for seed in range(300):
            rng = random.Random(10_000 + seed)
            g = random_clique_sum(10_000 + seed, pieces=4, mode="K5", max_vertices=20, delete_prob=0.2)
            vs = list(g.vertices)
            for _ in range(rng.randint(0, 4)):
                a, b = rng.sample(vs, 2)
                if not g.has_edge(a, b):
                    g = g.add_edges([(a, b)])
            assert g.n <= 20
            truth = has_k5_minor(g)
            try:
                decompose(g, "K5")
                got = False
            except ForbiddenMinorPresent:
                got = True
            assert got == truth, f"seed {seed}"
            agree += 1
            positive += truth
        notes.append(f"{agree} oracle cases, {positive} with K5")


def test_c07_minor_oracle():
    with criterion(7, "minor search agrees with naive enumeration", 300) as notes:
        found = 0
        for host, pattern in minor_pair_suite():
            cert = find_minor(host, pattern)
            assert (cert is not None) == naive_has_minor(host, pattern)
            if cert is not None:
                found += 1
                assert verify_certificate(host, pattern, cert)
        assert not has_k5_minor(wagner()) and has_k33_minor(wagner())
        notes.append(f"100 pairs, {found} present")


def test_c08_triangle_access():
    with criterion(8, "triangle access invariants", 120) as notes:
        for seed in range(50):
            f, delta, side = random_access_instance(seed)
            ta = triangle_access(f, delta, side)
            assert check_triangle_access(f, delta, ta) == [], f"seed {seed}"
        notes.append("50 instances")


def test_c09_universal_embedding():
    with criterion(9, "embedding into a universal window", 300) as notes:
        for seed in range(50):
            mode = "K5" if seed % 2 == 0 else "K33"
            g = random_clique_sum(seed, pieces=6, mode=mode, max_vertices=40, delete_prob=0.2)
            t = decompose(g, mode)
            w, cert = embed_in_universal(g, mode, tree=t)
            assert verify_certificate(w.glued, g, cert), f"seed {seed}"
            assert len(w.node_color) == len(t.torsos)
        notes.append("50 graphs")


def test_c10_twins():
    with criterion(10, "ordered tree embedding and ray gadget degree", 120) as notes:
        trees = [t for n in range(1, 7) for t in rooted_trees(n)]
        for a in trees:
            for b in trees:
                f = ordered_embed(a, b)
                assert (f is not None) == rec_ordered_embed(a, b)
                assert f is None or check_ordered_embedding(a, b, f)
        rng = random.Random(10)
        for _ in range(100):
            t = random_binary_tree(rng, rng.randint(1, 15))
            assert max_degree(build_t_prime(t, rng.randint(2, 8))) <= 3
        notes.append(f"{len(trees) ** 2} tree pairs")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
