"""Surgery on embedded graphs.

* ``subdivide_all``: one new vertex on every edge (kills triangles).
* ``blowup_subcubic``: replace each vertex of degree d >= 4 by a path of
  d - 2 vertices, leaves taken in rotation order.
* ``fatten``: per edge a square ``u t1 v t2`` whose two triangles sit in the
  two incident faces; tips at a common corner are joined.
* ``fatten_otimes``: three subdivided copies per edge plus a cycle around
  every vertex.
* ``triangle_access``: given a 3-cycle minor of the base graph and one side
  of it, find a real triangle of the fattening on that side and three
  disjoint feeder paths.

Tips are identified by darts. The tip of dart ``(x, y)`` lives in the face
traced by that dart, i.e. the face whose corner at ``y`` runs from ``x`` to
``succ_y(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .embedding import Dart, RotationSystem, cycle_sides, face_index
from .errors import DegenerateRegion, Disconnected, InvalidCertificate, InvalidRotation
from .graph import Graph, norm_edge
from .minor import MinimalK3Minor, MinorCertificate, identity_certificate


def _check(g: Graph, rho: RotationSystem) -> None:
    rho.check(g)


def subdivide_all(g: Graph, rho: RotationSystem) -> tuple[Graph, RotationSystem, MinorCertificate]:
    """Put one new vertex on every edge; it joins the smaller endpoint's branch set."""
    _check(g, rho)
    nid = g.next_id()
    mid = {}
    for e in g.sorted_edges():
        mid[e] = nid
        nid += 1
    rot = {v: [mid[norm_edge(v, u)] for u in rho[v]] for v in g.vertices}
    edges = []
    for (u, v), w in mid.items():
        rot[w] = [u, v]
        edges += [(u, w), (w, v)]
    sets = {v: {v} for v in g.vertices}
    bedges = {}
    for (u, v), w in mid.items():
        sets[u].add(w)
        bedges[(u, v)] = (w, v)
    h = Graph(list(g.vertices) + list(mid.values()), edges)
    cert = MinorCertificate({v: frozenset(s) for v, s in sets.items()}, bedges)
    return h, RotationSystem(rot), cert


def blowup_subcubic(g: Graph, rho: RotationSystem) -> tuple[Graph, RotationSystem, MinorCertificate]:
    """Sub-cubic blow-up preserving the rotation (hence the genus)."""
    _check(g, rho)
    nid = g.next_id()
    holder: dict[Dart, int] = {}  # (v, u) -> vertex of v's path that carries the edge to u
    chain: dict[int, list[int]] = {}
    rot: dict[int, list[int]] = {}
    for v in g.vertices:
        nb = list(rho[v])
        d = len(nb)
        if d <= 3:
            chain[v] = [v]
            for u in nb:
                holder[(v, u)] = v
            continue
        xs = [v] + list(range(nid, nid + d - 3))
        nid += d - 3
        chain[v] = xs
        holder[(v, nb[0])] = xs[0]
        holder[(v, nb[1])] = xs[0]
        for j in range(1, d - 3):
            holder[(v, nb[j + 1])] = xs[j]
        holder[(v, nb[d - 2])] = xs[-1]
        holder[(v, nb[d - 1])] = xs[-1]
    for v in g.vertices:
        nb = list(rho[v])
        xs = chain[v]
        ext = lambda u: holder[(u, v)]  # noqa: E731
        if len(xs) == 1:
            rot[v] = [ext(u) for u in nb]
            continue
        k = len(xs)
        rot[xs[0]] = [ext(nb[0]), ext(nb[1]), xs[1]]
        for j in range(1, k - 1):
            rot[xs[j]] = [xs[j - 1], ext(nb[j + 1]), xs[j + 1]]
        rot[xs[-1]] = [xs[-2], ext(nb[-2]), ext(nb[-1])]
    rs = RotationSystem(rot)
    h = rs.graph()
    bedges = {(u, v): (holder[(u, v)], holder[(v, u)]) for u, v in g.sorted_edges()}
    cert = MinorCertificate({v: frozenset(xs) for v, xs in chain.items()}, bedges)
    return h, rs, cert


@dataclass(frozen=True)
class FattenedGraph:
    graph: Graph
    rotation: RotationSystem
    tips: dict[tuple[int, int], tuple[int, int]]  # edge (u<v) -> (tip of dart (u,v), tip of dart (v,u))
    origin: dict[int, str]
    certificate: MinorCertificate
    base: Graph
    base_rotation: RotationSystem
    tip_of_dart: dict[Dart, int] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "rotation": self.rotation.to_dict(),
            "tips": {"%d-%d" % e: list(t) for e, t in sorted(self.tips.items())},
            "origin": {str(v): r for v, r in sorted(self.origin.items())},
            "certificate": self.certificate.to_dict(),
        }

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        """Dart -> index into ``faces(self.rotation)``."""
        return face_index(self.rotation)[1]


def fatten(g: Graph, rho: RotationSystem) -> FattenedGraph:
    """Square-and-tip fattening of an embedded simple connected graph."""
    if not g.is_connected():
        raise Disconnected("fatten needs a connected graph")
    _check(g, rho)
    nid = g.next_id()
    tip: dict[Dart, int] = {}
    for d in sorted(rho.darts()):
        tip[d] = nid
        nid += 1
    rot: dict[int, list[int]] = {}
    for v in g.vertices:
        nb = list(rho[v])
        seq = []
        for i, u in enumerate(nb):
            w = nb[(i + 1) % len(nb)]
            seq += [u, tip[(u, v)], tip[(v, w)]]
        rot[v] = seq
    for (x, y), t in tip.items():
        a = tip[(rho.pred(x, y), x)]
        b = tip[(y, rho.succ(y, x))]
        seq = [y, x, a] if a == b else [y, x, a, b]
        rot[t] = seq
    rs = RotationSystem(rot)
    h = rs.graph()
    tips = {(u, v): (tip[(u, v)], tip[(v, u)]) for u, v in g.sorted_edges()}
    origin = {v: "original" for v in g.vertices}
    origin.update({t: "tip" for t in tip.values()})
    return FattenedGraph(h, rs, tips, origin, identity_certificate(g), g, rho, tip)


def fatten_otimes(g: Graph, rho: RotationSystem) -> tuple[Graph, RotationSystem, MinorCertificate]:
    """Triple every edge, subdivide each copy twice, and ring each vertex."""
    _check(g, rho)
    nid = g.next_id()
    near: dict[tuple[int, int, int], int] = {}  # (owner, other, copy) -> subdivision vertex next to owner
    for u, v in g.sorted_edges():
        for c in range(3):
            near[(u, v, c)] = nid
            near[(v, u, c)] = nid + 1
            nid += 2
    whose = {x: key for key, x in near.items()}
    rot: dict[int, list[int]] = {}
    ring: dict[int, list[int]] = {}
    for v in g.vertices:
        spokes = []
        for u in rho[v]:
            copies = (0, 1, 2) if v < u else (2, 1, 0)
            spokes += [near[(v, u, c)] for c in copies]
        rot[v] = spokes
        ring[v] = spokes
    for v, spokes in ring.items():
        k = len(spokes)
        for i, a in enumerate(spokes):
            _, u, c = whose[a]
            b = near[(u, v, c)]
            rot[a] = [v, spokes[(i - 1) % k], b, spokes[(i + 1) % k]]
    rs = RotationSystem(rot)
    h = rs.graph()
    sets = {v: frozenset([v, *ring[v]]) for v in g.vertices}
    bedges = {(u, v): (near[(u, v, 1)], near[(v, u, 1)]) for u, v in g.sorted_edges()}
    return h, rs, MinorCertificate(sets, bedges)


# -- triangle access ----------------------------------------------------------

@dataclass(frozen=True)
class TriangleAccess:
    """``triangle[k]`` is reached from branch path ``k`` by ``paths[k]``.

    ``paths[k]`` starts at ``triangle[k]`` and ends on ``delta.paths[k]``
    (``delta`` is the chord-reduced minor actually used).
    """

    triangle: tuple[int, int, int]
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    delta: MinimalK3Minor
    side: frozenset[int]


def regions(f: FattenedGraph, delta: MinimalK3Minor) -> tuple[frozenset[int], frozenset[int]]:
    """The two sides of the minor's cycle as face sets of ``f.rotation``."""
    return cycle_sides(f.rotation, delta.cycle)


def _interior_edge(f: FattenedGraph, side: frozenset[int], x: int, y: int) -> bool:
    look = f.face_of_dart
    return look[(x, y)] in side and look[(y, x)] in side


def _shortcut(delta: MinimalK3Minor, x: int, y: int) -> MinimalK3Minor:
    where = {v: (k, i) for k, p in enumerate(delta.paths) for i, v in enumerate(p)}
    (kx, ix), (ky, iy) = where[x], where[y]
    paths = [list(p) for p in delta.paths]
    if kx == ky:
        lo, hi = sorted((ix, iy))
        p = paths[kx]
        paths[kx] = p[: lo + 1] + p[hi:]
        return MinimalK3Minor(tuple(tuple(p) for p in paths))  # type: ignore[arg-type]
    if (kx + 1) % 3 != ky:
        (kx, ix), (ky, iy) = (ky, iy), (kx, ix)
    # chord from path kx to path kx+1: keep the third path entirely
    paths[kx] = paths[kx][: ix + 1]
    paths[ky] = paths[ky][iy:]
    return MinimalK3Minor(tuple(tuple(p) for p in paths))  # type: ignore[arg-type]


def _find_chord(f: FattenedGraph, delta: MinimalK3Minor, side: frozenset[int]) -> tuple[int, int] | None:
    on = set(delta.cycle)
    cyc_edges = {norm_edge(a, b) for a, b in zip(delta.cycle, delta.cycle[1:] + delta.cycle[:1])}
    for x, y in f.base.sorted_edges():
        if x in on and y in on and (x, y) not in cyc_edges and _interior_edge(f, side, x, y):
            return (x, y)
    return None


def _subside(f: FattenedGraph, delta: MinimalK3Minor, side: frozenset[int]) -> frozenset[int]:
    a, b = regions(f, delta)
    if a <= side:
        return a
    if b <= side:
        return b
    raise DegenerateRegion("shortcut cycle is not nested in the region")


def _rim_arc(f: FattenedGraph, side: frozenset[int], w: int, p: int, n: int) -> list[int]:
    """Rim of ``w``'s wheel from the tip of ``pw`` to the tip of ``wn`` inside ``side``."""
    rot = f.rotation
    look = f.face_of_dart
    start = f.tip_of_dart[(p, w)]
    step = rot.succ
    if look[(p, w)] not in side:
        start = f.tip_of_dart[(w, p)]
        step = rot.pred
    arc = [start]
    while True:
        nxt = step(w, arc[-1])
        if nxt == n:
            break
        arc.append(nxt)
        if len(arc) > len(rot[w]):
            raise InvalidRotation("rim walk did not close")
    return arc


def _loop_erase(walk: list[int]) -> list[int]:
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            cut = pos[v]
            for u in out[cut + 1 :]:
                del pos[u]
            out = out[: cut + 1]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def triangle_access(f: FattenedGraph, delta: MinimalK3Minor, side: frozenset[int]) -> TriangleAccess:
    """Triangle of the fattening inside ``side`` with feeders to the three branch paths."""
    side = frozenset(side)
    if not delta.is_valid(f.base):
        raise InvalidCertificate("minimal K3 minor is not valid in the base graph")
    a, b = regions(f, delta)
    if not side or side not in (a, b):
        raise DegenerateRegion("side is not one of the two regions of the cycle")
    while (ch := _find_chord(f, delta, side)) is not None:
        delta = _shortcut(delta, *ch)
        side = _subside(f, delta, side)

    cyc = delta.cycle
    look = f.face_of_dart
    u, v = delta.edges[1]  # joins paths 1 and 2; path 0 is the target branch path
    t = f.tip_of_dart[(u, v)] if look[(u, v)] in side else f.tip_of_dart[(v, u)]
    if look[(u, v)] not in side and look[(v, u)] not in side:
        raise DegenerateRegion("edge has no tip in the region")

    x = min(delta.paths[0])
    k = len(cyc)
    ix = cyc.index(x)
    fwd = []
    i = ix
    while True:
        fwd.append(cyc[i])
        if cyc[i] == u:
            break
        i = (i + 1) % k
    bwd = []
    i = ix
    while True:
        bwd.append(cyc[i])
        if cyc[i] == v:
            break
        i = (i - 1) % k
    q = min(fwd, bwd)
    far = v if q[-1] == u else u  # the other end of the edge, just past the arc
    walk = []
    for j in range(1, len(q)):
        w = q[j]
        nxt = q[j + 1] if j + 1 < len(q) else far
        walk += _rim_arc(f, side, w, q[j - 1], nxt)
    p3 = _loop_erase([x] + walk)[::-1]
    return TriangleAccess((t, u, v), (tuple(p3), (u,), (v,)), delta, side)


def check_triangle_access(f: FattenedGraph, original: MinimalK3Minor, ta: TriangleAccess) -> list[str]:
    """Return the list of violated invariants (empty when all hold)."""
    g = f.graph
    bad = []
    t0, t1, t2 = ta.triangle
    if not (g.has_edge(t0, t1) and g.has_edge(t1, t2) and g.has_edge(t0, t2)):
        bad.append("triangle is not a triangle")
    sets = [set(p) for p in ta.paths]
    if sets[0] & sets[1] or sets[1] & sets[2] or sets[0] & sets[2]:
        bad.append("paths intersect")
    cyc = set(ta.delta.cycle)
    for k, p in enumerate(ta.paths):
        if p[0] != ta.triangle[k]:
            bad.append(f"path {k} does not start at its triangle vertex")
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            bad.append(f"path {k} is not a path")
        if p[-1] not in ta.delta.paths[k]:
            bad.append(f"path {k} does not end on its branch path")
        if set(p[:-1]) & cyc:
            bad.append(f"path {k} meets the cycle before its end")
        if not set(ta.delta.paths[k]) <= set(original.paths[k]):
            bad.append(f"reduced branch path {k} left the original branch set")
    inside = set()
    fs, _ = face_index(f.rotation)
    for fi in ta.side:
        inside.update(fs[fi].vertices)
    for p in ta.paths:
        if not set(p) <= inside:
            bad.append("path leaves the closed region")
    if not set(ta.triangle) <= inside:
        bad.append("triangle leaves the closed region")
    return bad
