"""Pilar expansions and the bounded-degree host construction.

``boundify`` turns a K5-minor-free graph into a K5-minor-free host of maximum
degree <= 22 that contains it as a minor (<= 9 for K3,3-minor-free inputs):

* every torso gets its own host piece: planar torsos are subdivided, blown
  up to maximum degree 3 and, in K5 mode, fattened; Wagner and K5 torsos are
  used as they are;
* each adhesion picks a clique inside both pieces (a vertex, an edge of the
  blown-up graph, or a triangle reached through ``triangle_access``);
* pieces are never glued directly. A pilar ``K_k x P_L`` hangs off every
  clique in use and two pieces meet at a private non-base level.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .cliquesum import CliqueSumTree, decompose, normalize_mode
from .embedding import RotationSystem, faces, planar_embed
from .errors import BadArity, InvariantViolation, NotAClique
from .fatten import FattenedGraph, blowup_subcubic, fatten, regions, subdivide_all, triangle_access
from .graph import Graph, max_degree
from .minor import (
    DEFAULT_BUDGET,
    MinorCertificate,
    compose,
    identity_certificate,
    minimal_k3,
    verify_certificate,
)


@dataclass(frozen=True)
class Pilar:
    """``K_k x P_length``; ``levels[0]`` is the base."""

    k: int
    length: int
    levels: tuple[tuple[int, ...], ...]

    @property
    def base(self) -> tuple[int, ...]:
        return self.levels[0]

    @property
    def graph(self) -> Graph:
        es = []
        for j, lev in enumerate(self.levels):
            es += [(lev[a], lev[b]) for a in range(self.k) for b in range(a + 1, self.k)]
            if j:
                es += list(zip(self.levels[j - 1], lev))
        return Graph([v for lev in self.levels for v in lev], es)


def k_pilar(k: int, length: int) -> Pilar:
    if k not in (1, 2, 3):
        raise BadArity(f"pilar clique size must be 1, 2 or 3, got {k}", k=k)
    if length < 1:
        raise BadArity(f"pilar length must be positive, got {length}", length=length)
    return Pilar(k, length, tuple(tuple(j * k + i for i in range(k)) for j in range(length)))


def _grow_pilar(base: Sequence[int], extra: int, next_id: int) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
    """New levels above ``base`` (ids from ``next_id``) and the edges they bring."""
    k = len(base)
    levels = [tuple(base)]
    es = []
    for j in range(1, extra + 1):
        lev = tuple(range(next_id, next_id + k))
        next_id += k
        es += [(lev[a], lev[b]) for a in range(k) for b in range(a + 1, k)]
        es += list(zip(levels[-1], lev))
        levels.append(lev)
    return levels, es


def expand_with_pilars(host: Graph | FattenedGraph, attach: Iterable[tuple[Sequence[int], int]], max_clique: int = 3) -> Graph:
    """Hang a pilar with ``length`` non-base levels off each listed clique."""
    g = host.graph if isinstance(host, FattenedGraph) else host
    vs = list(g.vertices)
    es = list(g.edges)
    nid = g.next_id()
    for clique, length in attach:
        clique = tuple(clique)
        if not 1 <= len(clique) <= max_clique or len(set(clique)) != len(clique) or not g.is_clique(clique) or any(v not in g for v in clique):
            raise NotAClique(f"{clique} is not a clique of size 1..{max_clique}", clique=list(clique))
        levels, new_es = _grow_pilar(clique, length, nid)
        nid += len(clique) * length
        for lev in levels[1:]:
            vs += lev
        es += new_es
    return Graph(vs, es)


# -- per-torso host pieces ----------------------------------------------------------

@dataclass
class Piece:
    """Host graph for one torso with its minor certificate.

    ``base_cert`` only uses vertices of the planar skeleton (no tips);
    ``cert`` is the same minor after triangle-access enlargements.
    """

    torso: Graph
    kind: str
    host: Graph
    base_cert: MinorCertificate
    cert_sets: dict[int, set[int]]
    category: dict[int, str]
    fattened: FattenedGraph | None = None
    rotation: RotationSystem | None = None
    cliques: dict[frozenset[int], tuple[int, ...]] = field(default_factory=dict)

    def certificate(self) -> MinorCertificate:
        sets = {p: frozenset(s) for p, s in self.cert_sets.items()}
        return MinorCertificate(sets, dict(self.base_cert.branch_edges))


def prepare_piece(torso: Graph, mode: str) -> Piece:
    """Host piece for a torso: fattened blow-up for planar (K5 mode), blow-up (K3,3 mode), else itself."""
    mode = normalize_mode(mode)
    from .cliquesum import classify

    kind = classify(torso, mode)
    if kind is None:
        raise InvariantViolation("torso is not an allowed piece", torso=torso.to_dict())
    if kind != "planar":
        cert = identity_certificate(torso)
        return Piece(torso, kind, torso, cert, {p: set(s) for p, s in cert.branch_sets.items()}, {v: "original" for v in torso.vertices})
    rho = planar_embed(torso)
    if mode == "K5":
        s, rs, c1 = subdivide_all(torso, rho)
        b, rb, c2 = blowup_subcubic(s, rs)
        cert = compose(c1, c2)
        f = fatten(b, rb)
        return Piece(torso, kind, f.graph, cert, {p: set(x) for p, x in cert.branch_sets.items()}, dict(f.origin), f, f.rotation)
    b, rb, cert = blowup_subcubic(torso, rho)
    return Piece(torso, kind, b, cert, {p: set(x) for p, x in cert.branch_sets.items()}, {v: "original" for v in b.vertices}, None, rb)


def piece_clique(piece: Piece, adhesion: Iterable[int]) -> tuple[int, ...]:
    """Clique of the piece standing for ``adhesion``; entry i lies in the set of the i-th smallest label."""
    A = frozenset(adhesion)
    if A in piece.cliques:
        return piece.cliques[A]
    labels = sorted(A)
    cert = piece.base_cert
    if len(labels) == 1:
        K: tuple[int, ...] = (min(cert.branch_sets[labels[0]]),)
    elif len(labels) == 2:
        K = cert.branch_edges[(labels[0], labels[1])]
    elif len(labels) == 3:
        if piece.fattened is None:
            raise InvariantViolation("triangle adhesion on a piece without tips", adhesion=labels)
        K = _triangle_clique(piece, labels)
    else:
        raise InvariantViolation("adhesion larger than 3", adhesion=labels)
    piece.cliques[A] = K
    return K


def _triangle_clique(piece: Piece, labels: list[int]) -> tuple[int, ...]:
    f = piece.fattened
    assert f is not None
    cert = piece.base_cert
    sub = MinorCertificate(
        {p: cert.branch_sets[p] for p in labels},
        {(p, q): cert.branch_edges[(p, q)] for p in labels for q in labels if p < q},
    )
    delta = minimal_k3(f.base, sub)
    used = cert.host_vertices()
    cyc = set(delta.cycle)
    fs = faces(f.rotation)
    best = None
    for side in regions(f, delta):
        inside = {v for fi in side for v in fs[fi].vertices} - cyc
        if inside & used:
            continue
        key = (len(side), sorted(side))
        if best is None or key < best[0]:
            best = (key, side)
    if best is None:
        raise InvariantViolation("adhesion triangle has no free side", adhesion=labels)
    ta = triangle_access(f, delta, best[1])
    for k, p in enumerate(labels):
        piece.cert_sets[p].update(ta.paths[k])
    return ta.triangle


# -- assembly ----------------------------------------------------------------------

class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo


@dataclass(frozen=True)
class BoundifyResult:
    host: Graph
    certificate: MinorCertificate
    decomposition: CliqueSumTree | None
    degree_report: dict[int, tuple[str, int]]
    input_decomposition: CliqueSumTree

    def audit_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex", "category", "degree"])
        for v, (cat, d) in sorted(self.degree_report.items()):
            w.writerow([v, cat, d])
        return buf.getvalue()


BOUNDS = {"K5": 22, "K33": 9}


def boundify(g: Graph, mode: str = "K5", budget: int = DEFAULT_BUDGET, with_host_decomposition: bool = True) -> BoundifyResult:
    """Bounded-degree host containing ``g`` as a minor, in the same excluded-minor class."""
    mode = normalize_mode(mode)
    tree = decompose(g, mode, budget)
    pieces = {t: prepare_piece(x, mode) for t, x in sorted(tree.torsos.items())}

    uf = _UnionFind()
    gid: dict[tuple[int, int], int] = {}  # (torso, piece vertex) -> global id
    category: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    nid = 0
    for t, pc in pieces.items():
        for v in pc.host.vertices:
            gid[(t, v)] = nid
            category[nid] = pc.category.get(v, "original")
            uf.add(nid)
            nid += 1
        edges += [(gid[(t, a)], gid[(t, b)]) for a, b in pc.host.edges]

    # adhesion -> clique per side; then one pilar per (torso, clique) with a level per use
    uses: dict[tuple[int, frozenset[int]], list[int]] = {}
    adhesion_list = []
    for (s, t), A in sorted(tree.adhesions.items()):
        for side in (s, t):
            piece_clique(pieces[side], A)
            uses.setdefault((side, A), []).append(len(adhesion_list))
        adhesion_list.append((s, t, A))

    level_of: dict[tuple[int, int], tuple[int, ...]] = {}  # (torso, adhesion index) -> global level ids
    columns: dict[int, set[int]] = {}  # label -> pilar vertices on its columns
    for (side, A), idxs in sorted(uses.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        K = pieces[side].cliques[A]
        base = [gid[(side, x)] for x in K]
        levels, es = _grow_pilar(base, len(idxs), nid)
        for lev in levels[1:]:
            for x in lev:
                uf.add(x)
                category[x] = "pilar"
        nid += len(K) * len(idxs)
        edges += es
        labels = sorted(A)
        for j, ai in enumerate(idxs, start=1):
            level_of[(side, ai)] = levels[j]
        for i, lab in enumerate(labels):
            columns.setdefault(lab, set()).update(lev[i] for lev in levels[1:])
    for ai, (s, t, A) in enumerate(adhesion_list):
        for x, y in zip(level_of[(s, ai)], level_of[(t, ai)]):
            uf.union(x, y)

    sets: dict[int, set[int]] = {v: set() for v in g.vertices}
    for t, pc in pieces.items():
        for lab, xs in pc.cert_sets.items():
            sets[lab].update(uf.find(gid[(t, x)]) for x in xs)
    for lab, xs in columns.items():
        sets[lab].update(uf.find(x) for x in xs)
    bedges = {}
    for u, v in g.sorted_edges():
        t = next(t for t in sorted(pieces) if tree.torsos[t].has_edge(u, v))
        x, y = pieces[t].base_cert.branch_edges[(u, v)]
        bedges[(u, v)] = (uf.find(gid[(t, x)]), uf.find(gid[(t, y)]))
    raw = Graph({uf.find(x) for x in uf.parent}, {(uf.find(a), uf.find(b)) for a, b in edges}, strict=False)
    host, mp = raw.compact()
    cert = MinorCertificate(
        {p: frozenset(mp[x] for x in s) for p, s in sets.items()},
        {e: (mp[a], mp[b]) for e, (a, b) in bedges.items()},
    )
    cats: dict[int, str] = {}
    for x, c in category.items():
        r = mp[uf.find(x)]
        if cats.get(r) in (None, "pilar"):
            cats[r] = c
    report = {v: (cats[v], host.degree(v)) for v in host.vertices}
    hdec = decompose(host, mode, budget) if with_host_decomposition else None
    return BoundifyResult(host, cert, hdec, report, tree)


def check_boundify(g: Graph, res: BoundifyResult, mode: str) -> list[str]:
    """Violated output guarantees (empty list when all hold)."""
    mode = normalize_mode(mode)
    bad = []
    if max_degree(res.host) > BOUNDS[mode]:
        bad.append(f"max degree {max_degree(res.host)} exceeds {BOUNDS[mode]}")
    if not verify_certificate(res.host, g, res.certificate):
        bad.append("certificate does not verify")
    return bad


__all__ = [
    "BOUNDS",
    "BoundifyResult",
    "Piece",
    "Pilar",
    "boundify",
    "check_boundify",
    "expand_with_pilars",
    "k_pilar",
    "piece_clique",
    "prepare_piece",
]
