"""Rotation systems: combinatorial orientable embeddings.

A rotation system lists, for every vertex, its neighbours in cyclic order.
Faces are traced with the rule ``(u, v) -> (v, succ_v(u))``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import networkx as nx

from .errors import Disconnected, InvalidRotation, NonPlanar, NotATriangle, ParseError
from .graph import Graph, norm_edge

Dart = tuple[int, int]


def _canon_cycle(seq: tuple) -> tuple:
    if not seq:
        return seq
    i = min(range(len(seq)), key=lambda j: seq[j])
    return seq[i:] + seq[:i]


@dataclass(frozen=True)
class FaceWalk:
    """Closed facial walk stored as its darts, rotated to start at the smallest one."""

    darts: tuple[Dart, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(norm_edge(*d) for d in self.darts)

    def __len__(self) -> int:
        return len(self.darts)


class RotationSystem:
    """Cyclic neighbour order at each vertex. Immutable."""

    __slots__ = ("_rot", "_pos")

    def __init__(self, rotation: Mapping[int, Iterable[int]]) -> None:
        self._rot: dict[int, tuple[int, ...]] = {v: _canon_cycle(tuple(nb)) for v, nb in sorted(rotation.items())}
        self._pos = {v: {u: i for i, u in enumerate(nb)} for v, nb in self._rot.items()}
        for v, nb in self._rot.items():
            if len(self._pos[v]) != len(nb):
                raise InvalidRotation(f"repeated neighbour at {v}", vertex=v)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rot)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def items(self):
        return self._rot.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RotationSystem) and self._rot == other._rot

    def __repr__(self) -> str:
        return f"RotationSystem({self._rot!r})"

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the cyclic order at ``v``."""
        nb = self._rot[v]
        return nb[(self._pos[v][u] + 1) % len(nb)]

    def pred(self, v: int, u: int) -> int:
        nb = self._rot[v]
        return nb[(self._pos[v][u] - 1) % len(nb)]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.succ(v, u))

    def darts(self) -> list[Dart]:
        return [(v, u) for v, nb in self._rot.items() for u in nb]

    def graph(self) -> Graph:
        return Graph(self._rot, [(v, u) for v, nb in self._rot.items() for u in nb], strict=False)

    def check(self, g: Graph) -> None:
        """Raise :class:`InvalidRotation` unless this is a rotation of ``g``."""
        if set(self._rot) != set(g.vertices):
            raise InvalidRotation("vertex sets differ")
        for v, nb in self._rot.items():
            if set(nb) != g.neighbors(v) or len(nb) != g.degree(v):
                raise InvalidRotation(f"rotation at {v} is not a permutation of its neighbours", vertex=v)

    def is_rotation_of(self, g: Graph) -> bool:
        try:
            self.check(g)
        except InvalidRotation:
            return False
        return True

    def mirror(self) -> RotationSystem:
        return RotationSystem({v: nb[::-1] for v, nb in self._rot.items()})

    def restrict(self, keep: Iterable[int]) -> RotationSystem:
        """Rotation induced on the subgraph spanned by ``keep``."""
        ks = set(keep)
        return RotationSystem({v: [u for u in nb if u in ks] for v, nb in self._rot.items() if v in ks})

    def relabel(self, mapping: Mapping[int, int]) -> RotationSystem:
        return RotationSystem({mapping[v]: [mapping[u] for u in nb] for v, nb in self._rot.items()})

    # text format: "v: a-b c-d ..."
    def to_text(self) -> str:
        lines = []
        for v, nb in self._rot.items():
            names = " ".join("%d-%d" % norm_edge(v, u) for u in nb)
            lines.append(f"{v}: {names}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> RotationSystem:
        rot: dict[int, list[int]] = {}
        for ln in text.strip().splitlines():
            if not ln.strip():
                continue
            try:
                head, rest = ln.split(":", 1)
                v = int(head)
                nb = []
                for name in rest.split():
                    a, b = (int(x) for x in name.split("-"))
                    if v not in (a, b):
                        raise ParseError(f"edge {name} not incident to {v}")
                    nb.append(b if a == v else a)
            except ValueError as exc:
                raise ParseError(f"bad rotation line {ln!r}") from exc
            rot[v] = nb
        return cls(rot)

    def to_dict(self) -> dict[str, list[int]]:
        return {str(v): list(nb) for v, nb in self._rot.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Iterable[int]]) -> RotationSystem:
        return cls({int(k): list(v) for k, v in data.items()})


def planar_embed(g: Graph) -> RotationSystem:
    """Spherical rotation system of a connected planar graph.

    The planarity test is networkx's left-right algorithm; we only read the
    clockwise neighbour orders out of its embedding.
    """
    if not g.is_connected():
        raise Disconnected("planar_embed needs a connected graph")
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.sorted_edges())
    ok, emb = nx.check_planarity(nxg)
    if not ok:
        raise NonPlanar("graph is not planar")
    return RotationSystem({v: list(emb.neighbors_cw_order(v)) for v in g.vertices})


def is_planar(g: Graph) -> bool:
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    return nx.check_planarity(nxg)[0]


def faces(rho: RotationSystem) -> list[FaceWalk]:
    """All facial walks, each dart in exactly one, sorted by first dart."""
    seen: set[Dart] = set()
    out = []
    for d in sorted(rho.darts()):
        if d in seen:
            continue
        walk = []
        x = d
        while x not in seen:
            seen.add(x)
            walk.append(x)
            x = rho.next_dart(x)
        out.append(FaceWalk(tuple(walk)))
    return out


def face_index(rho: RotationSystem) -> tuple[list[FaceWalk], dict[Dart, int]]:
    fs = faces(rho)
    return fs, {d: i for i, f in enumerate(fs) for d in f.darts}


def face_count(rho: RotationSystem) -> int:
    n = len(faces(rho))
    return n if n else 1


def genus_of_rotation(g: Graph, rho: RotationSystem) -> int:
    rho.check(g)
    if not g.is_connected():
        raise Disconnected("genus needs a connected graph")
    chi2 = 2 - g.n + g.m - face_count(rho)
    if chi2 % 2 or chi2 < 0:
        raise InvalidRotation("Euler characteristic is inconsistent")
    return chi2 // 2


def is_spherical(g: Graph, rho: RotationSystem) -> bool:
    return genus_of_rotation(g, rho) == 0


def face_of_triangle(rho: RotationSystem, t: Iterable[int]) -> FaceWalk | None:
    """The face whose boundary is exactly the triangle ``t``, or ``None``."""
    a, b, c = sorted(t)
    g_has = lambda x, y: y in rho[x]  # noqa: E731
    if not (g_has(a, b) and g_has(b, c) and g_has(a, c)):
        raise NotATriangle(f"{(a, b, c)} is not a triangle", vertices=[a, b, c])
    for start in ((a, b), (b, a)):
        d1 = rho.next_dart(start)
        d2 = rho.next_dart(d1)
        if rho.next_dart(d2) == start and {start[0], d1[0], d2[0]} == {a, b, c}:
            fs, idx = face_index(rho)
            return fs[idx[start]]
    return None


def cycle_darts(cycle: list[int]) -> tuple[list[Dart], list[Dart]]:
    k = len(cycle)
    fwd = [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    return fwd, [(v, u) for u, v in fwd]


def cycle_sides(rho: RotationSystem, cycle: list[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Split the faces of a spherical rotation along a cycle.

    Returns two sets of face indices (into :func:`faces`): the side holding
    the face of the dart ``cycle[0] -> cycle[1]`` and the other side.
    """
    fs, idx = face_index(rho)
    fwd, bwd = cycle_darts(cycle)
    cut = {norm_edge(*d) for d in fwd}

    def flood(start: int) -> frozenset[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for u, v in fs[f].darts:
                if norm_edge(u, v) in cut:
                    continue
                other = idx[(v, u)]
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        return frozenset(seen)

    a = flood(idx[fwd[0]])
    b = flood(idx[bwd[0]])
    if a & b:
        raise InvalidRotation("cycle does not separate the faces; rotation is not spherical")
    return a, b


def side_vertices(rho: RotationSystem, side: Iterable[int]) -> set[int]:
    """Vertices on faces of ``side`` (closed region)."""
    fs = faces(rho)
    return {v for f in side for v in fs[f].vertices}
