"""Minor certificates and exhaustive minor / topological-minor search.

The minor search walks the host's vertices in a fixed order and assigns each
one to a branch set ("block"). Partial states are summarised by what the
future can still see: the block labels and intra-block components of the
frontier vertices plus the quotient graph built so far. States that were
already refuted are memoised, which keeps K5/K3,3 tests on a few dozen
vertices cheap.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InvalidCertificate, SearchBudgetExceeded
from .graph import Graph, complete_bipartite, complete_graph, norm_edge

DEFAULT_BUDGET = 3_000_000


@dataclass(frozen=True)
class MinorCertificate:
    """``branch_sets[p]`` is the host vertex set for pattern vertex ``p``;
    ``branch_edges[(p, q)]`` (``p < q``) is a host edge ``(x, y)`` with ``x``
    in the set of ``p`` and ``y`` in the set of ``q``."""

    branch_sets: dict[int, frozenset[int]]
    branch_edges: dict[tuple[int, int], tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "branch_sets": {str(p): sorted(bs) for p, bs in sorted(self.branch_sets.items())},
            "branch_edges": {f"{p}-{q}": list(e) for (p, q), e in sorted(self.branch_edges.items())},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> MinorCertificate:
        bsets = {int(p): frozenset(int(x) for x in vs) for p, vs in data["branch_sets"].items()}
        bedges = {}
        for key, (x, y) in data["branch_edges"].items():
            p, q = (int(s) for s in key.split("-"))
            bedges[(p, q)] = (int(x), int(y))
        return cls(bsets, bedges)

    def owner(self) -> dict[int, int]:
        """Host vertex -> pattern vertex whose branch set holds it."""
        return {x: p for p, bs in self.branch_sets.items() for x in bs}

    def host_vertices(self) -> set[int]:
        return set().union(*self.branch_sets.values()) if self.branch_sets else set()


def identity_certificate(g: Graph) -> MinorCertificate:
    return MinorCertificate({v: frozenset([v]) for v in g.vertices}, {e: e for e in g.sorted_edges()})


def make_certificate(
    pattern: Graph, host: Graph, branch_sets: Mapping[int, Iterable[int]]
) -> MinorCertificate:
    """Fill in branch edges (smallest host edge per pattern edge) for given sets.

    Raises :class:`InvalidCertificate` if some pattern edge has no host edge.
    """
    bsets = {p: frozenset(bs) for p, bs in branch_sets.items()}
    bedges = {}
    for p, q in pattern.sorted_edges():
        best = None
        for x in sorted(bsets[p]):
            for y in sorted(host.neighbors(x) & bsets[q]):
                best = (x, y)
                break
            if best:
                break
        if best is None:
            raise InvalidCertificate(f"no host edge between branch sets of {p} and {q}", edge=(p, q))
        bedges[(p, q)] = best
    return MinorCertificate(bsets, bedges)


def verify_certificate(host: Graph, pattern: Graph, cert: MinorCertificate) -> bool:
    try:
        if set(cert.branch_sets) != set(pattern.vertices):
            return False
        if set(cert.branch_edges) != set(pattern.edges):
            return False
        seen: set[int] = set()
        for bs in cert.branch_sets.values():
            if not bs or not all(x in host for x in bs) or seen & bs:
                return False
            seen |= bs
            if not host.is_connected_set(bs):
                return False
        for (p, q), (x, y) in cert.branch_edges.items():
            if not host.has_edge(x, y):
                return False
            if not (x in cert.branch_sets[p] and y in cert.branch_sets[q]):
                return False
        return True
    except (TypeError, KeyError, ValueError):
        return False


def compose(inner: MinorCertificate, outer: MinorCertificate) -> MinorCertificate:
    """Chain ``A < B`` (``inner``, sets in ``B``) with ``B < C`` (``outer``) into ``A < C``."""
    bsets = {a: frozenset().union(*(outer.branch_sets[b] for b in bs)) for a, bs in inner.branch_sets.items()}
    bedges = {}
    for key, (b1, b2) in inner.branch_edges.items():
        if (b1, b2) in outer.branch_edges:
            bedges[key] = outer.branch_edges[(b1, b2)]
        else:
            y, x = outer.branch_edges[(b2, b1)]
            bedges[key] = (x, y)
    return MinorCertificate(bsets, bedges)


# -- pattern preprocessing ---------------------------------------------------

class _Reduced:
    """Host after stripping low-degree vertices, remembering how to lift back.

    Only valid for patterns that are 2-connected with minimum degree >= 3.
    """

    def __init__(self, host: Graph) -> None:
        adj = {v: set(host.neighbors(v)) for v in host.vertices}
        paths: dict[tuple[int, int], list[int]] = {e: list(e) for e in host.edges}
        changed = True
        while changed:
            changed = False
            for v in sorted(adj):
                if v not in adj:
                    continue
                d = len(adj[v])
                if d <= 1:
                    for u in adj[v]:
                        adj[u].discard(v)
                        paths.pop(norm_edge(u, v), None)
                    del adj[v]
                    changed = True
                elif d == 2:
                    a, b = sorted(adj[v])
                    pa = paths.pop(norm_edge(a, v))
                    pb = paths.pop(norm_edge(v, b))
                    if pa[0] != a:
                        pa = pa[::-1]
                    if pb[0] != v:
                        pb = pb[::-1]
                    adj[a].discard(v)
                    adj[b].discard(v)
                    del adj[v]
                    if b not in adj[a]:
                        adj[a].add(b)
                        adj[b].add(a)
                        paths[(a, b)] = pa + pb[1:]
                    changed = True
        self.graph = Graph(adj, [(u, w) for u in adj for w in adj[u] if u < w])
        self.paths = paths

    def lift(self, cert: MinorCertificate) -> MinorCertificate:
        bsets = {p: set(bs) for p, bs in cert.branch_sets.items()}
        own = cert.owner()
        for (a, b), path in self.paths.items():
            if len(path) > 2 and a in own and own[a] == own.get(b):
                bsets[own[a]].update(path[1:-1])
        bedges = {}
        for key, (x, y) in cert.branch_edges.items():
            path = self.paths[norm_edge(x, y)]
            if path[0] != x:
                path = path[::-1]
            bsets[key[0]].update(path[1:-1])
            bedges[key] = (path[-2], path[-1])
        return MinorCertificate({p: frozenset(s) for p, s in bsets.items()}, bedges)


def _blocks(g: Graph) -> list[list[int]]:
    """Vertex sets of the biconnected components (Tarjan), sorted."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[tuple[int, int]] = []
    out: list[list[int]] = []
    counter = itertools.count()

    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = next(counter)
        work = [(root, -1, iter(g.sorted_neighbors(root)))]
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    stack.append((v, w))
                    index[w] = low[w] = next(counter)
                    work.append((w, v, iter(g.sorted_neighbors(w))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= index[u]:
                    comp = set()
                    while True:
                        e = stack.pop()
                        comp.update(e)
                        if e == (u, v):
                            break
                    out.append(sorted(comp))
    return sorted(out)


# -- core partition search --------------------------------------------------

def _order(host: Graph, first: list[int]) -> list[int]:
    """Greedy vertex order keeping the frontier small."""
    order = list(first)
    placed = set(order)
    rest = [v for v in host.vertices if v not in placed]
    while rest:
        touching = [v for v in rest if host.neighbors(v) & placed]
        pool = touching or rest[:1]
        best = None
        for v in pool:
            trial = placed | {v}
            fr = sum(1 for w in trial if host.neighbors(w) - trial)
            key = (fr, -len(host.neighbors(v) & placed), v)
            if best is None or key < best:
                best = key
        v = best[2]
        order.append(v)
        placed.add(v)
        rest.remove(v)
    return order


def _match(pattern: Graph, quotient: list[int], fixed: Mapping[int, int]) -> dict[int, int] | None:
    """Injective map pattern vertex -> block index preserving edges (backtracking)."""
    pv = sorted(pattern.vertices, key=lambda p: (p not in fixed, -pattern.degree(p), p))
    t = len(quotient)
    deg = [bin(q).count("1") for q in quotient]
    assign: dict[int, int] = {}
    used = [False] * t

    def rec(i: int) -> bool:
        if i == len(pv):
            return True
        p = pv[i]
        cands = [fixed[p]] if p in fixed else range(t)
        for b in cands:
            if used[b] or deg[b] < pattern.degree(p):
                continue
            if all(quotient[b] >> assign[q] & 1 for q in pattern.neighbors(p) if q in assign):
                assign[p] = b
                used[b] = True
                if rec(i + 1):
                    return True
                del assign[p]
                used[b] = False
        return False

    return dict(assign) if rec(0) else None


class _Search:
    def __init__(
        self,
        host: Graph,
        pattern: Graph,
        budget: int,
        cover: bool,
        roots: Mapping[int, int] | None = None,
    ) -> None:
        self.pattern = pattern
        self.t = pattern.n
        self.budget = budget
        self.cover = cover
        self.complete = pattern.m == self.t * (self.t - 1) // 2
        self.min_deg = min((pattern.degree(p) for p in pattern.vertices), default=0)
        roots = dict(roots or {})
        self.root_pattern = sorted(roots)  # pattern vertices pinned, block i <- roots[root_pattern[i]]
        first = [roots[p] for p in self.root_pattern]
        self.order = _order(host, first)
        idx = {v: i for i, v in enumerate(self.order)}
        self.n = len(self.order)
        self.adj = [0] * self.n
        for u, v in host.edges:
            self.adj[idx[u]] |= 1 << idx[v]
            self.adj[idx[v]] |= 1 << idx[u]
        self.nroots = len(first)
        self.lab = [-1] * self.n
        self.blocks: list[int] = []
        self.dead: set = set()
        self.nodes = 0
        self.result: dict[int, int] | None = None

    def _nbr(self, m: int) -> int:
        r = 0
        adj = self.adj
        while m:
            b = m & -m
            m ^= b
            r |= adj[b.bit_length() - 1]
        return r

    def _component(self, seed: int, within: int) -> int:
        seen = seed
        f = seed
        while f:
            f = self._nbr(f) & within & ~seen
            seen |= f
        return seen

    def _quotient(self) -> list[int]:
        q = []
        for a, A in enumerate(self.blocks):
            na = self._nbr(A)
            row = 0
            for b, B in enumerate(self.blocks):
                if b != a and na & B:
                    row |= 1 << b
            q.append(row)
        return q

    def _key(self, i: int) -> tuple:
        future = ~((1 << i) - 1)
        front = [v for v in range(i) if self.lab[v] >= 0 and self.adj[v] & future]
        if self.nroots:
            pos = {b: b for b in range(len(self.blocks))}
        else:
            # blocks are interchangeable: name them by first appearance on the frontier
            pos = {}
            for v in front:
                pos.setdefault(self.lab[v], len(pos))
            for b in range(len(self.blocks)):
                pos.setdefault(b, len(pos))
        cids: dict[int, int] = {}
        comps = []
        for v in front:
            c = self._component(1 << v, self.blocks[self.lab[v]])
            comps.append(cids.setdefault(c, len(cids)))
        q = self._quotient()
        qa = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a in range(len(q)) for b in range(a + 1, len(q)) if q[a] >> b & 1))
        return (i, tuple(pos[self.lab[v]] for v in front), tuple(comps), qa, len(self.blocks))

    def _ok(self, i: int) -> bool:
        future = ((1 << self.n) - 1) & ~((1 << (i + 1)) - 1)
        nb_count = len(self.blocks)
        for a, B in enumerate(self.blocks):
            NB = self._nbr(B) & ~B
            if not NB & future:
                if not self._component(B & -B, B) == B:
                    return False
                if self.complete:
                    if nb_count < self.t:
                        return False
                    if any(c != a and not NB & self.blocks[c] for c in range(nb_count)):
                        return False
                else:
                    deg = sum(1 for c in range(nb_count) if c != a and NB & self.blocks[c])
                    if deg < self.min_deg:
                        return False
            else:
                x = B
                while x:
                    comp = self._component(x & -x, B)
                    x &= ~comp
                    if x or comp != B:
                        if not self._nbr(comp) & future:
                            return False
        return True

    def run(self) -> dict[int, int] | None:
        if self.t == 0:
            return {}
        if self.n < self.t:
            return None
        if self._rec(0):
            return self.result
        return None

    def _rec(self, i: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"minor search exceeded {self.budget} nodes", budget=self.budget)
        if i == self.n:
            if len(self.blocks) != self.t:
                return False
            fixed = {p: j for j, p in enumerate(self.root_pattern)}
            m = _match(self.pattern, self._quotient(), fixed)
            if m is None:
                return False
            self.result = m
            return True
        if self.n - i < self.t - len(self.blocks):
            return False
        key = self._key(i)
        if key in self.dead:
            return False
        bit = 1 << i
        if i < self.nroots:
            choices: list[int] = [i]
        else:
            choices = list(range(len(self.blocks)))
            if len(self.blocks) < self.t:
                choices.append(len(self.blocks))
            if not self.cover:
                choices.append(-1)
        for b in choices:
            if b == -1:
                self.lab[i] = -1
                if self._ok(i) and self._rec(i + 1):
                    return True
                continue
            fresh = b == len(self.blocks)
            if fresh:
                self.blocks.append(bit)
            else:
                self.blocks[b] |= bit
            self.lab[i] = b
            if self._ok(i) and self._rec(i + 1):
                return True
            self.lab[i] = -1
            if fresh:
                self.blocks.pop()
            else:
                self.blocks[b] &= ~bit
        self.dead.add(key)
        return False

    def certificate(self, host: Graph, m: Mapping[int, int]) -> MinorCertificate:
        sets = {}
        for p, b in m.items():
            mask = self.blocks[b]
            sets[p] = frozenset(self.order[j] for j in range(self.n) if mask >> j & 1)
        return make_certificate(self.pattern, host, sets)


def _search(host: Graph, pattern: Graph, budget: int, roots: Mapping[int, int] | None = None) -> MinorCertificate | None:
    pattern_connected = pattern.is_connected()
    if not pattern_connected or roots:
        cover = not roots and host.is_connected() and pattern_connected
        s = _Search(host, pattern, budget, cover=cover, roots=roots)
        m = s.run()
        return None if m is None else s.certificate(host, m)
    spent = 0
    for comp in host.components():
        if len(comp) < pattern.n:
            continue
        sub = host.subgraph(comp)
        s = _Search(sub, pattern, budget - spent, cover=True)
        m = s.run()
        spent += s.nodes
        if m is not None:
            return s.certificate(sub, m)
    return None


def _is_2connected(g: Graph) -> bool:
    return g.n >= 3 and g.is_connected() and len(_blocks(g)) == 1


def find_minor(host: Graph, pattern: Graph, budget: int = DEFAULT_BUDGET) -> MinorCertificate | None:
    """Certificate for ``pattern < host`` or ``None`` if no minor exists.

    Raises :class:`SearchBudgetExceeded` when ``budget`` search nodes are spent
    before the question is settled.
    """
    if pattern.n > host.n or pattern.m > host.m:
        return None
    if pattern.n and min(pattern.degree(p) for p in pattern.vertices) >= 3 and _is_2connected(pattern):
        red = _Reduced(host)
        spent = 0
        for blk in _blocks(red.graph):
            if len(blk) < pattern.n:
                continue
            sub = red.graph.subgraph(blk)
            if sub.m < pattern.m:
                continue
            s = _Search(sub, pattern, budget - spent, cover=True)
            m = s.run()
            spent += s.nodes
            if m is not None:
                return red.lift(s.certificate(sub, m))
        return None
    return _search(host, pattern, budget)


def find_rooted_minor(
    host: Graph, pattern: Graph, roots: Mapping[int, int], budget: int = DEFAULT_BUDGET
) -> MinorCertificate | None:
    """Minor of ``pattern`` where branch set of ``p`` must contain ``roots[p]``."""
    return _search(host, pattern, budget, roots=roots)


K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)


def has_k5_minor(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return find_minor(g, K5, budget) is not None


def has_k33_minor(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return find_minor(g, K33, budget) is not None


# -- topological minors -----------------------------------------------------

@dataclass(frozen=True)
class TopologicalMinor:
    """Subdivision of the pattern inside the host.

    ``vertex_map`` sends every pattern vertex to a distinct host vertex;
    ``paths[(u, v)]`` is the host path from ``vertex_map[u]`` to ``vertex_map[v]``.
    """

    vertex_map: dict[int, int]
    paths: dict[tuple[int, int], tuple[int, ...]]


def _threads(pattern: Graph) -> tuple[list[int], list[list[int]]]:
    """Branch vertices and maximal threads through degree-2 vertices."""
    branch = [v for v in pattern.vertices if pattern.degree(v) != 2]
    bset = set(branch)
    used_edges: set[tuple[int, int]] = set()
    threads = []

    def walk(start: int, nxt: int) -> list[int]:
        path = [start, nxt]
        while path[-1] not in bset:
            a, b = sorted(pattern.neighbors(path[-1]))
            path.append(b if a == path[-2] else a)
        return path

    for s in branch:
        for u in pattern.sorted_neighbors(s):
            if norm_edge(s, u) in used_edges:
                continue
            path = walk(s, u)
            for a, b in zip(path, path[1:]):
                used_edges.add(norm_edge(a, b))
            threads.append(path)
    for comp in pattern.components():
        if any(v in bset for v in comp):
            continue
        s = comp[0]
        branch.append(s)
        bset.add(s)
        path = walk(s, min(pattern.neighbors(s)))
        threads.append(path)
    return branch, threads


def find_topological_minor(
    host: Graph, pattern: Graph, budget: int = DEFAULT_BUDGET
) -> TopologicalMinor | None:
    """Exhaustive search for a subdivision of ``pattern`` in ``host``."""
    branch, threads = _threads(pattern)
    branch.sort(key=lambda v: (-pattern.degree(v), v))
    pos = {v: i for i, v in enumerate(branch)}
    # route each thread as soon as both ends are placed
    due: list[list[int]] = [[] for _ in branch]
    for ti, th in enumerate(threads):
        due[max(pos[th[0]], pos[th[-1]])].append(ti)
    counter = [0]
    image: dict[int, int] = {}
    used: set[int] = set()
    routed: dict[int, list[int]] = {}

    def tick() -> None:
        counter[0] += 1
        if counter[0] > budget:
            raise SearchBudgetExceeded(f"topological minor search exceeded {budget} nodes", budget=budget)

    def paths_between(a: int, b: int, min_inner: int):
        # simple paths a -> b avoiding used vertices, interior length >= min_inner
        stack = [(a, [a])]
        while stack:
            x, path = stack.pop()
            tick()
            for y in sorted(host.neighbors(x), reverse=True):
                if y == b:
                    if len(path) - 1 >= min_inner and (a != b or len(path) >= 3):
                        yield path + [b]
                    continue
                if y in used or y in path:
                    continue
                stack.append((y, path + [y]))

    def route(tis: list[int], k: int, i: int) -> bool:
        if k == len(tis):
            return place(i + 1)
        th = threads[tis[k]]
        a, b = image[th[0]], image[th[-1]]
        for p in paths_between(a, b, len(th) - 2):
            inner = p[1:-1]
            used.update(inner)
            routed[tis[k]] = p
            if route(tis, k + 1, i):
                return True
            used.difference_update(inner)
            del routed[tis[k]]
        return False

    def place(i: int) -> bool:
        if i == len(branch):
            return True
        v = branch[i]
        for h in host.vertices:
            tick()
            if h in used or host.degree(h) < pattern.degree(v):
                continue
            image[v] = h
            used.add(h)
            if route(due[i], 0, i):
                return True
            used.discard(h)
            del image[v]
        return False

    if pattern.n > host.n or not place(0):
        return None
    vmap = dict(image)
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for ti, th in enumerate(threads):
        hp = routed[ti]
        inner_p = th[1:-1]
        # pattern interior vertex j sits at host position j+1; the last edge absorbs the slack
        cuts = [0] + [j + 1 for j in range(len(inner_p))] + [len(hp) - 1]
        for j, pv in enumerate(inner_p):
            vmap[pv] = hp[j + 1]
        for j in range(len(th) - 1):
            seg = tuple(hp[cuts[j] : cuts[j + 1] + 1])
            u, w = th[j], th[j + 1]
            if u < w:
                paths[(u, w)] = seg
            else:
                paths[(w, u)] = seg[::-1]
    return TopologicalMinor(vmap, paths)


def verify_topological_minor(host: Graph, pattern: Graph, tm: TopologicalMinor) -> bool:
    vm = tm.vertex_map
    if set(vm) != set(pattern.vertices) or len(set(vm.values())) != len(vm):
        return False
    if set(tm.paths) != set(pattern.edges):
        return False
    inner_seen: set[int] = set()
    images = set(vm.values())
    for (u, v), p in tm.paths.items():
        if p[0] != vm[u] or p[-1] != vm[v] or len(set(p)) != len(p) or len(p) < 2:
            return False
        if any(not host.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
        inner = set(p[1:-1])
        if inner & images or inner & inner_seen:
            return False
        inner_seen |= inner
    return True


# -- minimal K3 minors -------------------------------------------------------

@dataclass(frozen=True)
class MinimalK3Minor:
    """Three disjoint host paths closed into a cycle by three edges.

    ``edges[k]`` runs from the last vertex of ``paths[k]`` to the first
    vertex of ``paths[(k + 1) % 3]``.
    """

    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    edges: tuple[tuple[int, int], tuple[int, int], tuple[int, int]] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.edges is None:
            es = tuple((self.paths[k][-1], self.paths[(k + 1) % 3][0]) for k in range(3))
            object.__setattr__(self, "edges", es)

    @property
    def cycle(self) -> list[int]:
        return [v for p in self.paths for v in p]

    def vertex_sets(self) -> list[set[int]]:
        return [set(p) for p in self.paths]

    def is_valid(self, host: Graph) -> bool:
        cyc = self.cycle
        if len(cyc) < 3 or len(set(cyc)) != len(cyc):
            return False
        for p in self.paths:
            if not p or any(not host.has_edge(a, b) for a, b in zip(p, p[1:])):
                return False
        for k, (a, b) in enumerate(self.edges):
            if a != self.paths[k][-1] or b != self.paths[(k + 1) % 3][0] or not host.has_edge(a, b):
                return False
        return True


def minimal_k3(host: Graph, cert: MinorCertificate) -> MinimalK3Minor:
    """Shrink a K3 certificate to three subpaths of its branch sets."""
    labels = sorted(cert.branch_sets)
    tri = complete_graph(3).relabel(dict(enumerate(labels))) if len(labels) == 3 else None
    if tri is None or not verify_certificate(host, tri, cert):
        raise InvalidCertificate("not a valid K3 certificate for this host")

    def edge(p: int, q: int) -> tuple[int, int]:
        if (p, q) in cert.branch_edges:
            return cert.branch_edges[(p, q)]
        y, x = cert.branch_edges[(q, p)]
        return (x, y)

    ins = [edge(labels[(k - 1) % 3], labels[k])[1] for k in range(3)]
    outs = [edge(labels[k], labels[(k + 1) % 3])[0] for k in range(3)]
    paths = []
    for k in range(3):
        p = host.shortest_path(ins[k], outs[k], within=cert.branch_sets[labels[k]])
        assert p is not None
        paths.append(tuple(p))
    res = MinimalK3Minor(tuple(paths))  # type: ignore[arg-type]
    if not res.is_valid(host):
        raise InvalidCertificate("branch sets do not close into a cycle")
    return res
