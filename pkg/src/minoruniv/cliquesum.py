"""Clique-sum tree decompositions of K5-minor-free and K3,3-minor-free graphs.

Two splitting rules are applied until every piece is planar, the Wagner graph
(K5 mode) or K5 (K3,3 mode):

1. Clique cuts of size <= k, tried once each in (size, ids) order. A clique
   that does not separate a piece separates none of its flaps either, so a
   single pass over the candidates suffices.
2. Non-clique separators S whose completion is forced: every 2-separator of a
   2-connected piece, and a 3-separator (K5 mode only) when, for every flap,
   the rest of the piece holds a K3 minor rooted on S. The flaps get S
   completed and are decomposed recursively.

A piece that survives both rules and is not a permitted torso means the input
contains the forbidden minor; a certificate is then searched for on the input.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Literal

import networkx as nx

from .embedding import is_planar
from .errors import Disconnected, ForbiddenMinorPresent, InvariantViolation
from .graph import Graph, complete_graph, norm_edge, wagner
from .minor import DEFAULT_BUDGET, K5, K33, find_minor, find_rooted_minor

Mode = Literal["K5", "K33"]
K3 = complete_graph(3)


def mode_k(mode: str) -> int:
    return {"K5": 3, "K33": 2}[normalize_mode(mode)]


def normalize_mode(mode: str) -> str:
    m = mode.upper().replace(",", "")
    if m not in ("K5", "K33"):
        raise ValueError(f"unknown mode {mode!r}")
    return m


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


_W_NX = _nx(wagner())
_K5_NX = _nx(complete_graph(5))


def classify(g: Graph, mode: str) -> str | None:
    """'planar', 'wagner' or 'k5' if ``g`` is an allowed torso for ``mode``, else None."""
    mode = normalize_mode(mode)
    if is_planar(g):
        return "planar"
    if mode == "K5" and g.n == 8 and g.m == 12 and nx.is_isomorphic(_nx(g), _W_NX):
        return "wagner"
    if mode == "K33" and g.n == 5 and g.m == 10:
        return "k5"
    return None


@dataclass(frozen=True)
class CliqueSumTree:
    tree: Graph
    torsos: dict[int, Graph]
    adhesions: dict[tuple[int, int], frozenset[int]]
    k: int
    mode: str

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "tree_edges": [list(e) for e in self.tree.sorted_edges()],
            "torsos": {str(t): g.to_dict() for t, g in sorted(self.torsos.items())},
            "adhesions": {"%d-%d" % e: sorted(a) for e, a in sorted(self.adhesions.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> CliqueSumTree:
        torsos = {int(t): Graph.from_dict(g) for t, g in d["torsos"].items()}
        tree = Graph(torsos, [tuple(e) for e in d["tree_edges"]])
        ad = {}
        for key, vs in d["adhesions"].items():
            a, b = (int(x) for x in key.split("-"))
            ad[(a, b)] = frozenset(vs)
        return cls(tree, torsos, ad, int(d["k"]), d["mode"])


def _separates(adj: dict[int, set[int]], piece: frozenset[int], cut: frozenset[int]) -> list[set[int]]:
    """Components of ``piece - cut`` under adjacency ``adj``."""
    rest = piece - cut
    comps = []
    seen: set[int] = set()
    for s in sorted(rest):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in rest and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


class _Builder:
    def __init__(self, g: Graph, mode: str, budget: int) -> None:
        self.g = g
        self.mode = mode
        self.k = mode_k(mode)
        self.budget = budget
        self.adj: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in g.vertices}
        self.nodes: dict[int, frozenset[int]] = {}
        self.links: dict[int, set[int]] = {}
        self.fresh = itertools.count()

    # -- node bookkeeping
    def new_node(self, vs: frozenset[int]) -> int:
        n = next(self.fresh)
        self.nodes[n] = vs
        self.links[n] = set()
        return n

    def link(self, a: int, b: int) -> None:
        self.links[a].add(b)
        self.links[b].add(a)

    def drop(self, n: int) -> list[int]:
        nbrs = sorted(self.links.pop(n))
        for m in nbrs:
            self.links[m].discard(n)
        del self.nodes[n]
        return nbrs

    def induced(self, vs: frozenset[int]) -> Graph:
        return Graph(vs, [(u, w) for u in vs for w in self.adj[u] if w in vs and u < w])

    def is_clique(self, vs) -> bool:
        return all(b in self.adj[a] for a, b in itertools.combinations(vs, 2))

    # -- phase 1: clique cuts
    def clique_phase(self, piece: frozenset[int]) -> list[int]:
        root = self.new_node(piece)
        local = {root}
        holders: dict[int, set[int]] = {v: {root} for v in piece}
        cands: list[tuple[int, ...]] = [(v,) for v in sorted(piece)]
        es = sorted((u, w) for u in piece for w in self.adj[u] if w in piece and u < w)
        cands += es
        if self.k >= 3:
            cands += sorted(
                (u, w, x) for u, w in es for x in self.adj[u] & self.adj[w] if x in piece and x > w
            )
        for cand in cands:
            S = frozenset(cand)
            containing = set.intersection(*(holders[v] for v in cand))
            for n in sorted(containing):
                X = self.nodes[n]
                comps = _separates(self.adj, X, S)
                if len(comps) < 2:
                    continue
                outside = self.drop(n)
                local.discard(n)
                for v in X:
                    holders[v].discard(n)
                flaps = []
                for comp in comps:
                    f = self.new_node(frozenset(comp) | S)
                    flaps.append(f)
                    local.add(f)
                    for v in self.nodes[f]:
                        holders[v].add(f)
                for f in flaps[1:]:
                    self.link(flaps[0], f)
                for m in outside:
                    A = self.nodes[m] & X
                    target = next(f for f in flaps if A <= self.nodes[f])
                    self.link(m, target)
        return sorted(local)

    # -- phase 2: forced separators
    def forced_separator(self, X: frozenset[int]) -> tuple[frozenset[int], list[set[int]]] | None:
        vs = sorted(X)
        for size in range(2, self.k + 1):
            for S in itertools.combinations(vs, size):
                Sf = frozenset(S)
                comps = _separates(self.adj, X, Sf)
                if len(comps) < 2:
                    continue
                if size == 2 or self._justified(X, Sf, comps):
                    return Sf, comps
        return None

    def _justified(self, X: frozenset[int], S: frozenset[int], comps: list[set[int]]) -> bool:
        roots = dict(enumerate(sorted(S)))
        for i in range(len(comps)):
            rest = frozenset(S).union(*(c for j, c in enumerate(comps) if j != i))
            sub = self.induced(rest)
            if find_rooted_minor(sub, K3, roots, self.budget) is None:
                return False
        return True

    def build(self, piece: frozenset[int]) -> list[int]:
        local = self.clique_phase(piece)
        out = []
        for n in local:
            X = self.nodes[n]
            if classify(self.induced(X), self.mode) is not None:
                out.append(n)
                continue
            sep = self.forced_separator(X)
            if sep is None:
                raise _Stuck(X)
            S, comps = sep
            for a, b in itertools.combinations(sorted(S), 2):
                self.adj[a].add(b)
                self.adj[b].add(a)
            outside = self.drop(n)
            sub_all: list[int] = []
            anchors = []
            for comp in comps:
                sub = self.build(frozenset(comp) | S)
                anchors.append(next(m for m in sub if S <= self.nodes[m]))
                sub_all += sub
            for a in anchors[1:]:
                self.link(anchors[0], a)
            for m in outside:
                A = self.nodes[m] & X
                target = next(s for s in sub_all if A <= self.nodes[s])
                self.link(m, target)
            out += sub_all
        return out


class _Stuck(Exception):
    def __init__(self, piece: frozenset[int]) -> None:
        super().__init__("no allowed torso")
        self.piece = piece


def decompose(g: Graph, mode: str = "K5", budget: int = DEFAULT_BUDGET) -> CliqueSumTree:
    """Clique-sum tree of a connected graph without the mode's forbidden minor."""
    mode = normalize_mode(mode)
    if g.n == 0 or not g.is_connected():
        raise Disconnected("decompose needs a connected, non-empty graph")
    b = _Builder(g, mode, budget)
    try:
        b.build(frozenset(g.vertices))
    except _Stuck as stuck:
        pattern = K5 if mode == "K5" else K33
        cert = find_minor(g, pattern, budget)
        if cert is None:
            raise InvariantViolation(
                "decomposition stalled on a piece but no forbidden minor exists", piece=sorted(stuck.piece)
            ) from None
        raise ForbiddenMinorPresent(f"graph has a {mode} minor", certificate=cert) from None
    ids = {n: i for i, n in enumerate(sorted(b.nodes))}
    torsos = {ids[n]: b.induced(X) for n, X in b.nodes.items()}
    tedges = sorted({norm_edge(ids[a], ids[c]) for a, ns in b.links.items() for c in ns})
    inv = {i: n for n, i in ids.items()}
    adhesions = {(s, t): b.nodes[inv[s]] & b.nodes[inv[t]] for s, t in tedges}
    return CliqueSumTree(Graph(range(len(ids)), tedges), torsos, adhesions, b.k, mode)


def recompose(t: CliqueSumTree) -> Graph:
    """Union of the torsos along shared vertex ids."""
    if t.tree.n != len(t.torsos) or not t.tree.is_tree():
        raise InvariantViolation("decomposition tree is not a tree")
    vs: set[int] = set()
    es: set[tuple[int, int]] = set()
    for g in t.torsos.values():
        vs.update(g.vertices)
        es.update(g.edges)
    return Graph(vs, es)


def clique_cuts(g: Graph, k: int) -> list[frozenset[int]]:
    """Every clique of size <= k whose removal disconnects ``g``."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    V = frozenset(g.vertices)
    return [frozenset(S) for S in _cliques_upto(g, k) if len(_separates(adj, V, frozenset(S))) >= 2]


def verification_errors(g: Graph, t: CliqueSumTree) -> list[str]:
    errs = []
    tree = t.tree
    if set(tree.vertices) != set(t.torsos) or not tree.is_tree():
        return ["tree is not a tree over the torso ids"]
    k = t.k
    covered = set().union(*(x.vertices for x in t.torsos.values()))
    if covered != set(g.vertices):
        errs.append("(T1) torsos do not cover the vertices")
    star = recompose(t)
    for e in g.edges:
        if not any(x.has_edge(*e) for x in t.torsos.values()):
            errs.append(f"(T2) edge {e} in no torso")
            break
    for v in g.vertices:
        holders = [n for n, x in t.torsos.items() if v in x]
        if holders and not tree.is_connected_set(holders):
            errs.append(f"(T3) torsos holding {v} are not connected in the tree")
            break
    for (a, b) in tree.edges:
        A = frozenset(t.torsos[a].vertices) & frozenset(t.torsos[b].vertices)
        rec = t.adhesions.get((a, b), t.adhesions.get((b, a)))
        if rec is not None and frozenset(rec) != A:
            errs.append(f"adhesion of {(a, b)} misrecorded")
        if len(A) > k:
            errs.append(f"(T4) adhesion {sorted(A)} larger than {k}")
        if not star.is_clique(A):
            errs.append(f"adhesion {sorted(A)} is not a clique")
    adhesion_pairs = set()
    for (a, b) in tree.edges:
        A = sorted(frozenset(t.torsos[a].vertices) & frozenset(t.torsos[b].vertices))
        adhesion_pairs.update(itertools.combinations(A, 2))
    if not set(g.edges) <= set(star.edges) or not set(star.edges) - set(g.edges) <= adhesion_pairs:
        errs.append("completed graph differs from input by more than adhesion edges")
    for n, x in t.torsos.items():
        if x != star.subgraph(x.vertices):
            errs.append(f"torso {n} is not induced in the completed graph")
        if classify(x, t.mode) is None:
            errs.append(f"(T5) torso {n} is neither planar nor allowed")
        if x.n > k + 1 and clique_cuts(x, k):
            errs.append(f"torso {n} has a clique cut of size <= {k}")
    return errs


def verify_decomposition(g: Graph, t: CliqueSumTree) -> bool:
    return not verification_errors(g, t)


# -- corpus generator ----------------------------------------------------------

def random_planar(rng: random.Random, n: int, density: float = 0.7) -> Graph:
    """Random connected planar graph: a random tree plus edges kept while planar."""
    if n == 1:
        return Graph([0])
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for v in range(1, n):
        h.add_edge(v, rng.randrange(v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not h.has_edge(u, v)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() > density:
            continue
        h.add_edge(u, v)
        if not nx.check_planarity(h)[0]:
            h.remove_edge(u, v)
    return Graph(h.nodes, h.edges)


def _cliques_upto(g: Graph, k: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [(v,) for v in g.vertices]
    out += g.sorted_edges()
    if k >= 3:
        out += g.triangles()
    return out


def random_clique_sum(
    seed: int,
    pieces: int = 4,
    mode: str = "K5",
    max_vertices: int = 40,
    delete_prob: float = 0.0,
    special_prob: float = 0.25,
) -> Graph:
    """Iterated clique-sums of random planar graphs and W (K5 mode) / K5 (K3,3 mode)."""
    mode = normalize_mode(mode)
    k = mode_k(mode)
    rng = random.Random(seed)
    special = wagner() if mode == "K5" else complete_graph(5)

    def piece() -> Graph:
        if rng.random() < special_prob:
            return special
        return random_planar(rng, rng.randint(3, 8))

    g = piece()
    if g.n > max_vertices:
        g = random_planar(rng, max(1, max_vertices))
    for _ in range(pieces - 1):
        h = piece()
        size = rng.randint(1, k)
        if h is special or g == special:
            size = min(size, 2)
        if g.n + h.n - size > max_vertices:
            continue
        cg = [c for c in _cliques_upto(g, k) if len(c) == size]
        ch = [c for c in _cliques_upto(h, k) if len(c) == size]
        if not cg or not ch:
            continue
        a = rng.choice(cg)
        b = list(rng.choice(ch))
        rng.shuffle(b)
        nid = g.next_id()
        mp = {}
        for v in h.vertices:
            mp[v] = nid
            nid += 1
        for x, y in zip(a, b):
            mp[y] = x
        vs = set(g.vertices) | set(mp.values())
        es = set(g.edges) | {norm_edge(mp[u], mp[v]) for u, v in h.edges}
        for e in itertools.combinations(sorted(a), 2):
            # a clique edge may be dropped unless it is a bridge on both sides
            if delete_prob and rng.random() < delete_prob and Graph(vs, es - {e}).is_connected():
                es.discard(e)
        g = Graph(vs, es)
    g, _ = g.compact()
    return g
