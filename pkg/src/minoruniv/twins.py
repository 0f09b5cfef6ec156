"""Rooted trees under order-preserving topological embedding, and the ray gadget.

``build_t_prime(t, n)`` hangs, off a ray ``r_1 .. r_n``, a pendant vertex
``v_i`` at every position: odd positions carry a copy of ``t`` rooted at
``v_i`` and even positions a triangle through ``v_i``. The triangles pin the
copies to alternate positions, which is what lets a containment between two
gadgets be traced back to an order-preserving embedding of the trees.
Everything here is finite; ``separate_pair`` reports evidence and proves
nothing about the infinite gadgets.
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvariantViolation, ParseError, SearchBudgetExceeded
from .graph import Graph, max_degree
from .minor import DEFAULT_BUDGET, find_topological_minor


@dataclass(frozen=True)
class RootedTree:
    tree: Graph
    root: int

    def __post_init__(self) -> None:
        if self.root not in self.tree or not self.tree.is_tree():
            raise InvariantViolation("not a rooted tree", root=self.root)

    @cached_property
    def parent(self) -> dict[int, int | None]:
        par: dict[int, int | None] = {self.root: None}
        stack = [self.root]
        while stack:
            x = stack.pop()
            for y in self.tree.sorted_neighbors(x):
                if y not in par:
                    par[y] = x
                    stack.append(y)
        return par

    @cached_property
    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.tree.vertices}
        for v, p in sorted(self.parent.items()):
            if p is not None:
                ch[p].append(v)
        return ch

    @cached_property
    def depth(self) -> dict[int, int]:
        d = {}
        for v in self.preorder():
            p = self.parent[v]
            d[v] = 0 if p is None else d[p] + 1
        return d

    def preorder(self) -> list[int]:
        out, stack = [], [self.root]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(reversed(self.children[x]))
        return out

    def leq(self, x: int, y: int) -> bool:
        """Tree order: ``x`` lies on the root path of ``y``."""
        while y is not None:
            if y == x:
                return True
            y = self.parent[y]
        return False

    def canonical(self, v: int | None = None) -> str:
        v = self.root if v is None else v
        return "(" + "".join(sorted(self.canonical(c) for c in self.children[v])) + ")"

    @property
    def n(self) -> int:
        return self.tree.n

    # parent-array text: "p0 p1 ... pk" with -1 at the root
    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> RootedTree:
        roots = [i for i, p in enumerate(parents) if p == -1]
        if len(roots) != 1:
            raise ParseError("parent array needs exactly one root (-1)")
        if any(not -1 <= p < len(parents) for p in parents):
            raise ParseError("parent index out of range")
        g = Graph(range(len(parents)), [(i, p) for i, p in enumerate(parents) if p != -1], strict=False)
        if g.m != len(parents) - 1 or not g.is_tree():
            raise ParseError("parent array does not describe a tree")
        return cls(g, roots[0])

    @classmethod
    def from_text(cls, text: str) -> RootedTree:
        try:
            return cls.from_parents([int(x) for x in text.split()])
        except ValueError as exc:
            raise ParseError("parent array must be integers") from exc

    def to_parents(self) -> list[int]:
        if list(self.tree.vertices) != list(range(self.n)):
            raise InvariantViolation("parent arrays need vertices 0..n-1")
        return [-1 if self.parent[v] is None else self.parent[v] for v in range(self.n)]

    def to_text(self) -> str:
        return " ".join(map(str, self.to_parents())) + "\n"


def ordered_embed(t1: RootedTree, t2: RootedTree, budget: int = DEFAULT_BUDGET) -> dict[int, int] | None:
    """Order-preserving topological embedding of ``t1`` into ``t2``, or ``None``.

    Each child of ``x`` goes strictly below the image of ``x``, and siblings
    go below distinct children of that image, so the tree paths between
    images never meet.
    """
    order = t1.preorder()
    below = {v: [] for v in t2.tree.vertices}  # strict descendants in preorder
    branch: dict[tuple[int, int], int] = {}  # (ancestor, descendant) -> child of ancestor towards it
    for z in t2.preorder():
        y, prev = t2.parent[z], z
        while y is not None:
            below[y].append(z)
            branch[(y, z)] = prev
            prev, y = y, t2.parent[y]
    image: dict[int, int] = {}
    taken: dict[int, set[int]] = {}  # t2 vertex -> branches used by siblings
    count = [0]

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        count[0] += 1
        if count[0] > budget:
            raise SearchBudgetExceeded(f"ordered embedding exceeded {budget} nodes", budget=budget)
        x = order[i]
        p = t1.parent[x]
        if p is None:
            cands = list(t2.preorder())
        else:
            y = image[p]
            used = taken.setdefault(y, set())
            cands = [z for z in below[y] if branch[(y, z)] not in used]
        need = len(t1.children[x])
        for z in cands:
            if len(t2.children[z]) < need:
                continue
            image[x] = z
            if p is not None:
                taken[image[p]].add(branch[(image[p], z)])
            if rec(i + 1):
                return True
            if p is not None:
                taken[image[p]].discard(branch[(image[p], z)])
            del image[x]
        return False

    return dict(image) if rec(0) else None


def check_ordered_embedding(t1: RootedTree, t2: RootedTree, f: dict[int, int]) -> bool:
    """Injective, order-preserving both ways, and siblings in distinct branches."""
    if set(f) != set(t1.tree.vertices) or len(set(f.values())) != len(f):
        return False
    for x in t1.tree.vertices:
        for y in t1.tree.vertices:
            if t1.leq(x, y) != t2.leq(f[x], f[y]):
                return False
    # disjoint images of edge paths
    seen: set[int] = set()
    for x in t1.tree.vertices:
        p = t1.parent[x]
        if p is None:
            continue
        z, inner = t2.parent[f[x]], []
        while z != f[p]:
            inner.append(z)
            z = t2.parent[z]
        if seen & set(inner) or set(inner) & set(f.values()):
            return False
        seen.update(inner)
    return True


def build_t_prime(t: RootedTree, n: int) -> Graph:
    """Ray gadget with ``n`` positions; ids are stable under growing ``n``."""
    if n < 2:
        raise ValueError("ray length must be at least 2")
    vs, es = [], []
    nid = 0
    prev_r = None
    for i in range(1, n + 1):
        r, v = nid, nid + 1
        nid += 2
        vs += [r, v]
        es.append((r, v))
        if prev_r is not None:
            es.append((prev_r, r))
        prev_r = r
        if i % 2 == 0:
            a, b = nid, nid + 1
            nid += 2
            vs += [a, b]
            es += [(v, a), (v, b), (a, b)]
        else:
            mp = {t.root: v}
            for x in t.preorder()[1:]:
                mp[x] = nid
                vs.append(nid)
                nid += 1
            es += [(mp[x], mp[y]) for x, y in t.tree.edges]
    return Graph(vs, es)


@dataclass(frozen=True)
class PairReport:
    n: int
    ordered: bool
    mapping: dict[int, int] | None
    topological: str  # found | absent | budget
    gadget_sizes: tuple[int, int] = field(default=(0, 0))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ordered_embedding": self.ordered,
            "mapping": None if self.mapping is None else {str(k): v for k, v in sorted(self.mapping.items())},
            "gadget_containment": self.topological,
            "gadget_sizes": list(self.gadget_sizes),
        }


def separate_pair(t1: RootedTree, t2: RootedTree, n: int, budget: int = DEFAULT_BUDGET) -> PairReport:
    """Does gadget(t2, n) contain gadget(t1, n) topologically, next to whether t1 embeds in t2."""
    g1, g2 = build_t_prime(t1, n), build_t_prime(t2, n)
    try:
        tm = find_topological_minor(g2, g1, budget)
        topo = "found" if tm is not None else "absent"
    except SearchBudgetExceeded:
        topo = "budget"
    try:
        f = ordered_embed(t1, t2, budget)
    except SearchBudgetExceeded:
        f = None
    return PairReport(n, f is not None, f, topo, (g1.n, g2.n))


# -- generators ------------------------------------------------------------------

def rooted_trees(n: int) -> Iterator[RootedTree]:
    """One rooted tree per isomorphism class on ``n`` vertices."""
    seen = set()

    def grow(parents: list[int]) -> Iterator[list[int]]:
        if len(parents) == n:
            yield parents
            return
        for p in range(len(parents)):
            yield from grow(parents + [p])

    for ps in grow([-1]) if n >= 1 else ():
        t = RootedTree.from_parents(ps)
        key = t.canonical()
        if key not in seen:
            seen.add(key)
            yield t


def random_binary_tree(rng: random.Random, n: int) -> RootedTree:
    """Random rooted tree where every vertex has at most two children."""
    parents = [-1]
    kids = [0]
    for i in range(1, n):
        open_ = [j for j in range(i) if kids[j] < 2]
        p = rng.choice(open_)
        parents.append(p)
        kids[p] += 1
        kids.append(0)
    return RootedTree.from_parents(parents)


def complete_binary_tree(depth: int) -> RootedTree:
    """Root at depth 0; ``depth`` levels below it."""
    n = 2 ** (depth + 1) - 1
    return RootedTree.from_parents([-1] + [(i - 1) // 2 for i in range(1, n)])


def rooted_path(n: int) -> RootedTree:
    return RootedTree.from_parents([-1] + list(range(n - 1)))


def gadget_degree(t: RootedTree, n: int) -> int:
    return max_degree(build_t_prime(t, n))


__all__ = [
    "PairReport",
    "RootedTree",
    "build_t_prime",
    "check_ordered_embedding",
    "complete_binary_tree",
    "gadget_degree",
    "ordered_embed",
    "random_binary_tree",
    "rooted_path",
    "rooted_trees",
    "separate_pair",
]
