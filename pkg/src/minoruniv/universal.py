"""Finite windows of the two-coloured universal gluing construction.

A window is a finite tree of host copies. Blue nodes carry a fattened
planar graph, red nodes carry the Wagner graph (K5 in K3,3 mode), and every
directed tree edge carries a clique isomorphism telling which vertices of
the two copies get identified.

``universal_window`` grows such a tree from a caller-supplied planar seed.
It is a demonstration of the gluing rule only; a finite window is of course
not universal. ``embed_in_universal`` builds the window that an input graph's
own clique-sum decomposition asks for and returns a minor certificate into
its glued graph.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

import networkx as nx

from .cliquesum import CliqueSumTree, decompose, normalize_mode
from .degree_bound import Piece, piece_clique, prepare_piece
from .embedding import planar_embed
from .errors import Disconnected, NonPlanar, NonPlanarHost
from .fatten import fatten
from .graph import Graph, complete_graph, wagner
from .minor import DEFAULT_BUDGET, MinorCertificate

BLUE, RED = "blue", "red"


@dataclass(frozen=True)
class UniversalWindow:
    gluing_tree: Graph
    node_color: dict[int, str]
    node_host: dict[int, Graph]
    edge_label: dict[tuple[int, int], dict[int, int]]
    glued: Graph
    placement: dict[int, dict[int, int]]  # node -> host vertex -> glued vertex

    def to_dict(self) -> dict:
        return {
            "tree_edges": [list(e) for e in self.gluing_tree.sorted_edges()],
            "colors": {str(u): c for u, c in sorted(self.node_color.items())},
            "hosts": {str(u): h.to_dict() for u, h in sorted(self.node_host.items())},
            "labels": {
                "%d->%d" % e: {str(x): y for x, y in sorted(lab.items())} for e, lab in sorted(self.edge_label.items())
            },
            "glued": self.glued.to_dict(),
        }

    def check(self) -> list[str]:
        """Violations of the labelling rules (empty when the window is well formed)."""
        bad = []
        for (u, v), lab in self.edge_label.items():
            dom, img = list(lab), list(lab.values())
            if not 1 <= len(dom) <= 3:
                bad.append(f"label {u}->{v} has size {len(dom)}")
            if RED in (self.node_color[u], self.node_color[v]) and len(dom) > 2:
                bad.append(f"label {u}->{v} touches a red node with a triangle")
            if not self.node_host[u].is_clique(dom) or not self.node_host[v].is_clique(img):
                bad.append(f"label {u}->{v} is not between cliques")
            if self.edge_label.get((v, u)) != {y: x for x, y in lab.items()}:
                bad.append(f"labels {u}->{v} and {v}->{u} are not inverse")
            for x, y in lab.items():
                if self.placement[u][x] != self.placement[v][y]:
                    bad.append(f"{u}:{x} and {v}:{y} are not identified")
        return bad


class _Gluer:
    """Accumulates host copies into one graph, sharing identified vertices."""

    def __init__(self) -> None:
        self.nid = 0
        self.edges: set[tuple[int, int]] = set()
        self.vertices: list[int] = []
        self.placement: dict[int, dict[int, int]] = {}

    def add(self, node: int, host: Graph, fixed: dict[int, int]) -> dict[int, int]:
        place = {}
        for v in host.vertices:
            if v in fixed:
                place[v] = fixed[v]
            else:
                place[v] = self.nid
                self.vertices.append(self.nid)
                self.nid += 1
        self.edges.update(tuple(sorted((place[a], place[b]))) for a, b in host.edges)
        self.placement[node] = place
        return place

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)


def _ordered_cliques(g: Graph, size: int) -> list[tuple[int, ...]]:
    """Ordered tuples of distinct vertices forming a clique, lexicographically."""
    from itertools import permutations

    if size == 1:
        return [(v,) for v in g.vertices]
    if size == 2:
        return sorted(p for e in g.edges for p in permutations(e))
    return sorted(p for t in g.triangles() for p in permutations(t))


def _cliques(g: Graph) -> list[tuple[int, ...]]:
    out = [(v,) for v in g.vertices] + [tuple(e) for e in g.edges] + [tuple(t) for t in g.triangles()]
    return sorted(tuple(sorted(c)) for c in out)


def _labels(y: Graph, color: str, hosts: dict[str, Graph]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], str]]:
    for K in _cliques(y):
        cand = []
        for ci, c in enumerate((BLUE, RED)):
            if len(K) > 2 and RED in (color, c):
                continue
            cand += [(img, ci, c) for img in _ordered_cliques(hosts[c], len(K))]
        for img, _, c in sorted(cand):
            yield K, img, c


def universal_window(host: Graph, depth: int, breadth: int) -> UniversalWindow:
    """Window of the given depth; each node gets its first ``breadth`` labels as children."""
    if depth < 1 or breadth < 1:
        raise ValueError("depth and breadth must be positive")
    if not host.is_connected():
        raise Disconnected("seed host must be connected")
    try:
        rho = planar_embed(host)
    except NonPlanar as exc:
        raise NonPlanarHost("seed host is not planar") from exc
    hosts = {BLUE: fatten(host, rho).graph, RED: wagner()}
    colors = {0: BLUE}
    labels: dict[tuple[int, int], dict[int, int]] = {}
    tree_edges = []
    glue = _Gluer()
    glue.add(0, hosts[BLUE], {})
    frontier = [0]
    for _ in range(depth - 1):
        nxt = []
        for u in frontier:
            gen = _labels(hosts[colors[u]], colors[u], hosts)
            for K, img, c in (lab for _, lab in zip(range(breadth), gen)):
                v = len(colors)
                colors[v] = c
                lab = dict(zip(K, img))
                labels[(u, v)] = lab
                labels[(v, u)] = {y: x for x, y in lab.items()}
                tree_edges.append((u, v))
                glue.add(v, hosts[c], {y: glue.placement[u][x] for x, y in lab.items()})
                nxt.append(v)
        frontier = nxt
    tree = Graph(colors, tree_edges)
    return UniversalWindow(tree, colors, {u: hosts[c] for u, c in colors.items()}, labels, glue.graph(), glue.placement)


def _canonical_red(piece: Piece, mode: str) -> Piece:
    """Rename a Wagner / K5 piece onto the library's copy of that graph."""
    target = wagner() if mode == "K5" else complete_graph(5)
    gm = nx.isomorphism.GraphMatcher(_nxg(piece.host), _nxg(target))
    mp = next(gm.isomorphisms_iter())
    cert = piece.base_cert
    moved = MinorCertificate(
        {p: frozenset(mp[x] for x in s) for p, s in cert.branch_sets.items()},
        {e: (mp[a], mp[b]) for e, (a, b) in cert.branch_edges.items()},
    )
    return Piece(
        piece.torso,
        piece.kind,
        target,
        moved,
        {p: set(s) for p, s in moved.branch_sets.items()},
        {mp[v]: c for v, c in piece.category.items()},
    )


def _nxg(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def embed_in_universal(
    g: Graph, mode: str = "K5", budget: int = DEFAULT_BUDGET, tree: CliqueSumTree | None = None
) -> tuple[UniversalWindow, MinorCertificate]:
    """Window following ``g``'s decomposition, and a certificate that ``g`` is a minor of its glued graph."""
    mode = normalize_mode(mode)
    if tree is None:
        tree = decompose(g, mode, budget)
    pieces = {}
    for t, x in sorted(tree.torsos.items()):
        pc = prepare_piece(x, mode)
        pieces[t] = pc if pc.kind == "planar" else _canonical_red(pc, mode)

    # torsos in breadth-first order, so each prefix spans a subtree
    root = min(tree.torsos)
    order, parent = [root], {root: None}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for s in tree.tree.sorted_neighbors(t):
            if s not in parent:
                parent[s] = t
                order.append(s)
                queue.append(s)
    node = {t: i for i, t in enumerate(order)}

    glue = _Gluer()
    labels: dict[tuple[int, int], dict[int, int]] = {}
    tree_edges = []
    for t in order:
        p = parent[t]
        fixed = {}
        if p is not None:
            A = tree.adhesions[tuple(sorted((p, t)))]
            Kp, Kt = piece_clique(pieces[p], A), piece_clique(pieces[t], A)
            lab = dict(zip(Kp, Kt))
            labels[(node[p], node[t])] = lab
            labels[(node[t], node[p])] = {y: x for x, y in lab.items()}
            tree_edges.append((node[p], node[t]))
            fixed = {y: glue.placement[node[p]][x] for x, y in lab.items()}
        glue.add(node[t], pieces[t].host, fixed)

    sets: dict[int, set[int]] = {v: set() for v in g.vertices}
    for t, pc in pieces.items():
        place = glue.placement[node[t]]
        for lab_v, xs in pc.cert_sets.items():
            sets[lab_v].update(place[x] for x in xs)
    bedges = {}
    for u, v in g.sorted_edges():
        t = next(t for t in order if tree.torsos[t].has_edge(u, v))
        x, y = pieces[t].base_cert.branch_edges[(u, v)]
        place = glue.placement[node[t]]
        bedges[(u, v)] = (place[x], place[y])
    cert = MinorCertificate({p: frozenset(s) for p, s in sets.items()}, bedges)

    colors = {node[t]: (BLUE if pieces[t].kind == "planar" else RED) for t in order}
    window = UniversalWindow(
        Graph(colors, tree_edges),
        colors,
        {node[t]: pieces[t].host for t in order},
        labels,
        glue.graph(),
        glue.placement,
    )
    return window, cert


__all__ = ["BLUE", "RED", "UniversalWindow", "embed_in_universal", "universal_window"]
