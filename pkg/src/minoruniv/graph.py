"""Finite simple undirected graphs with stable integer vertex ids.

:class:`Graph` is immutable. Vertex iteration always follows id order, so
every construction built on top of it is deterministic.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from collections.abc import Iterable, Mapping
from typing import Any

from .errors import MissingEdge, NotSimple, ParseError, TooSmall

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph.

    ``edges`` are stored as ordered pairs ``(u, v)`` with ``u < v``. Optional
    ``labels`` attach a text tag to vertices and do not take part in equality.
    """

    __slots__ = ("_vertices", "_edges", "_adj", "labels", "_hash")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, str] | None = None,
        *,
        strict: bool = True,
    ) -> None:
        vs = set(vertices)
        es: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise NotSimple(f"self-loop at {u}", vertex=u)
            e = norm_edge(u, v)
            if e in es and strict:
                raise NotSimple(f"duplicate edge {e}", edge=e)
            es.add(e)
            vs.add(u)
            vs.add(v)
        self._vertices = tuple(sorted(vs))
        self._edges = frozenset(es)
        adj: dict[int, set[int]] = {v: set() for v in self._vertices}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self.labels = dict(labels or {})
        self._hash: int | None = None

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs --------------------------------------------------
    def subgraph(self, vs: Iterable[int]) -> Graph:
        keep = set(vs)
        return Graph(keep, [e for e in self._edges if e[0] in keep and e[1] in keep])

    def remove_vertices(self, vs: Iterable[int]) -> Graph:
        drop = set(vs)
        return self.subgraph(v for v in self._vertices if v not in drop)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self._vertices, list(self._edges) + [norm_edge(*e) for e in edges], strict=False)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        drop = {norm_edge(*e) for e in edges}
        return Graph(self._vertices, self._edges - drop)

    def relabel(self, mapping: Mapping[int, int]) -> Graph:
        """Rename vertices; ``mapping`` must be injective on the vertex set."""
        return Graph(
            (mapping[v] for v in self._vertices),
            ((mapping[u], mapping[v]) for u, v in self._edges),
            {mapping[v]: t for v, t in self.labels.items()},
        )

    def compact(self) -> tuple[Graph, dict[int, int]]:
        """Relabel to ``0..n-1`` in id order; returns the graph and old->new map."""
        mp = {v: i for i, v in enumerate(self._vertices)}
        return self.relabel(mp), mp

    def next_id(self) -> int:
        return self._vertices[-1] + 1 if self._vertices else 0

    # -- connectivity ----------------------------------------------------
    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components (sorted lists) of the graph minus ``removed``."""
        gone = set(removed)
        seen: set[int] = set(gone)
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_connected_set(self, vs: Iterable[int]) -> bool:
        vs = set(vs)
        if not vs:
            return False
        start = min(vs)
        seen = {start}
        queue = [start]
        while queue:
            x = queue.pop()
            for y in self._adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(vs)

    def shortest_path(self, s: int, t: int, within: Iterable[int] | None = None) -> list[int] | None:
        """BFS path from ``s`` to ``t`` (neighbours in id order) inside ``within``."""
        allowed = None if within is None else set(within)
        prev = {s: s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if x == t:
                path = [t]
                while path[-1] != s:
                    path.append(prev[path[-1]])
                return path[::-1]
            for y in sorted(self._adj[x]):
                if y not in prev and (allowed is None or y in allowed):
                    prev[y] = x
                    queue.append(y)
        return None

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for u, v in sorted(self._edges):
            for w in sorted(self._adj[u] & self._adj[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def is_tree(self) -> bool:
        return self.n > 0 and self.m == self.n - 1 and self.is_connected()

    # -- serialisation ---------------------------------------------------
    def to_text(self) -> str:
        """Canonical text form: ``n m`` then sorted ``u v`` lines.

        Requires vertex ids ``0..n-1``.
        """
        if self._vertices != tuple(range(self.n)):
            raise ValueError("text format needs vertex ids 0..n-1; call compact() first")
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in sorted(self._edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ParseError("first line must be 'n m'")
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            edges = [(int(a), int(b)) for a, b in rows[1:]]
        except ValueError as exc:
            raise ParseError(f"bad integer: {exc}") from exc
        if len(edges) != m:
            raise ParseError(f"expected {m} edges, found {len(edges)}")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range")
        return cls(range(n), edges)

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"vertices": list(self._vertices), "edges": [list(e) for e in sorted(self._edges)]}
        if self.labels:
            d["labels"] = {str(k): v for k, v in sorted(self.labels.items())}
        return d

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Graph:
        try:
            vs = [int(v) for v in data["vertices"]]
            es = [(int(a), int(b)) for a, b in data["edges"]]
            labels = {int(k): str(v) for k, v in data.get("labels", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from exc
        if any(u not in set(vs) or v not in set(vs) for u, v in es):
            raise ParseError("edge endpoint missing from vertices")
        return cls(vs, es, labels)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Graph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return cls.from_dict(data)


def parse_graph(text: str) -> Graph:
    """Parse either the canonical text format or the JSON format."""
    if text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return Graph.from_text(text)


# -- named graphs -----------------------------------------------------------

def empty_graph(n: int = 0) -> Graph:
    return Graph(range(n))


def complete_graph(n: int) -> Graph:
    return Graph(range(n), itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise TooSmall("a cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim: int) -> Graph:
    return cone(cycle_graph(rim))


def wagner() -> Graph:
    """The Wagner graph V8: an 8-cycle plus its four long diagonals."""
    return Graph(range(8), [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def octahedron() -> Graph:
    return Graph(range(6), [(u, v) for u, v in itertools.combinations(range(6), 2) if v != u + 3 or u >= 3])


def cube() -> Graph:
    return Graph(range(8), [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def grid_graph(rows: int, cols: int) -> Graph:
    vid = lambda r, c: r * cols + c  # noqa: E731
    es = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    es += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph(range(rows * cols), es)


# -- operations -------------------------------------------------------------

def cone(g: Graph) -> Graph:
    """Add one apex vertex (id ``g.next_id()``) adjacent to every vertex."""
    apex = g.next_id()
    return Graph(list(g.vertices) + [apex], list(g.edges) + [(v, apex) for v in g.vertices], g.labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; ``h`` is renumbered consecutively after the ids of ``g``."""
    base = g.next_id()
    hh = h.relabel({v: base + i for i, v in enumerate(h.vertices)})
    return Graph(g.vertices + hh.vertices, list(g.edges) + list(hh.edges), {**g.labels, **hh.labels})


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Merge the endpoints of ``e`` into its smaller endpoint; result stays simple."""
    u, v = norm_edge(*e)
    if not g.has_edge(u, v):
        raise MissingEdge(f"{(u, v)} is not an edge", edge=(u, v))
    es = set()
    for a, b in g.edges:
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            es.add(norm_edge(a2, b2))
    return Graph([x for x in g.vertices if x != v], es)


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in g.vertices), default=0)


def min_degree(g: Graph) -> int:
    return min((g.degree(v) for v in g.vertices), default=0)


def is_k_connected(g: Graph, k: int) -> bool:
    """Exhaustive check that no set of fewer than ``k`` vertices disconnects ``g``."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if g.n <= k:
        raise TooSmall(f"need more than {k} vertices, got {g.n}", n=g.n, k=k)
    for size in range(k):
        for cut in itertools.combinations(g.vertices, size):
            if len(g.components(cut)) > 1:
                return False
    return True
