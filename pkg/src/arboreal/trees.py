"""Labeled trees and forests on the node set [n] = {0, ..., n-1}.

Core vocabulary for the whole package: canonical edges and their
lexicographic index, trees validated as connected acyclic edge sets,
forests as partitions into tree components, the Prufer bijection with
deterministic enumeration of all n^(n-2) trees, the edge-set tree
distance, and binary edge-vectors.

All types are immutable value objects; every function here is pure.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import ResourceGuardError

__all__ = [
    "Edge",
    "LabeledTree",
    "Forest",
    "PruferSequence",
    "EdgeVector",
    "ProfileVector",
    "edge",
    "edge_index",
    "edge_from_index",
    "all_edges",
    "prufer_encode",
    "prufer_decode",
    "enumerate_trees",
    "count_trees",
    "tree_budget",
    "tree_distance",
    "remove_edges",
    "profile",
    "star",
    "line",
    "edge_vector",
    "tree_from_edge_vector",
    "format_tree",
    "parse_tree",
    "parse_edge_set",
    "format_prufer",
    "parse_prufer",
]

# Sorted tuple of component sizes of a forest; sums to n.
ProfileVector = tuple[int, ...]

# Word over [n] of length n-2; in bijection with trees on [n].
PruferSequence = tuple[int, ...]

DEFAULT_MAX_TREES = 10**8
MAX_TREES_ENV = "ARBOREAL_MAX_TREES"


class Edge(tuple):
    """Undirected edge as a canonical pair (u, v) with u < v."""

    __slots__ = ()

    def __new__(cls, u: int, v: int) -> "Edge":
        if u == v:
            raise ValueError(f"self-loop at node {u} is not an edge")
        if u < 0 or v < 0:
            raise ValueError(f"negative node index in edge ({u}, {v})")
        if u > v:
            u, v = v, u
        return tuple.__new__(cls, (u, v))

    @property
    def u(self) -> int:
        return self[0]

    @property
    def v(self) -> int:
        return self[1]

    def __repr__(self) -> str:
        return f"Edge({self[0]}, {self[1]})"


def edge(u: int, v: int) -> Edge:
    """Canonical edge constructor; accepts endpoints in either order."""
    return Edge(u, v)


def edge_index(e: Edge | tuple[int, int], n: int) -> int:
    """Lexicographic rank of the canonical edge (u, v) among all C(n, 2) edges.

    rank = u*n - u*(u+1)/2 + (v - u - 1); a bijection onto [C(n, 2)].
    """
    u, v = e
    if not 0 <= u < v < n:
        raise ValueError(f"edge ({u}, {v}) has an endpoint outside [{n}]")
    return u * n - (u * (u + 1)) // 2 + (v - u - 1)


def edge_from_index(i: int, n: int) -> Edge:
    """Inverse of edge_index."""
    if not 0 <= i < comb(n, 2):
        raise ValueError(f"edge index {i} out of range for n={n}")
    u = 0
    # row u holds indices [offset, offset + n-1-u)
    offset = 0
    while i >= offset + (n - 1 - u):
        offset += n - 1 - u
        u += 1
    return Edge(u, u + 1 + (i - offset))


def all_edges(n: int) -> list[Edge]:
    """All C(n, 2) edges on [n] in edge_index order."""
    return [Edge(u, v) for u in range(n) for v in range(u + 1, n)]


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Connected components (as sorted node lists) via union-find."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _is_forest(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the edge set is acyclic on [n]."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


@dataclass(frozen=True)
class LabeledTree:
    """Spanning tree on [n]: a connected acyclic set of n-1 canonical edges."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a tree needs at least one node")
        if len(self.edges) != self.n - 1:
            raise ValueError(
                f"a tree on {self.n} nodes needs {self.n - 1} edges, got {len(self.edges)}"
            )
        for e in self.edges:
            if not (0 <= e[0] < e[1] < self.n):
                raise ValueError(f"edge {tuple(e)} outside node set [{self.n}]")
        if not _is_forest(self.n, self.edges):
            raise ValueError("edge set contains a cycle")
        # acyclic with n-1 edges implies connected

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "LabeledTree":
        return cls(n, frozenset(Edge(u, v) for u, v in pairs))

    @classmethod
    def _trusted(cls, n: int, edges: frozenset[Edge]) -> "LabeledTree":
        """Skip validation for edge sets produced by a bijection."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "edges", edges)
        return obj

    @cached_property
    def mask(self) -> int:
        """Edge set as an integer bitmask in edge_index order."""
        n = self.n
        m = 0
        for u, v in self.edges:
            m |= 1 << (u * n - (u * (u + 1)) // 2 + (v - u - 1))
        return m

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def __repr__(self) -> str:
        return f"LabeledTree({format_tree(self)!r})"


@dataclass(frozen=True)
class Forest:
    """Forest on [n]: components listed in (size, smallest member) order.

    With t+1 components the forest has n-1-t edges; radius t is the number
    of edges whose removal from a spanning tree produces it.
    """

    n: int
    components: tuple[frozenset[int], ...]
    edges: frozenset[Edge]

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Forest":
        edges = frozenset(Edge(u, v) for u, v in pairs)
        for e in edges:
            if not (0 <= e[0] < e[1] < n):
                raise ValueError(f"edge {tuple(e)} outside node set [{n}]")
        if not _is_forest(n, edges):
            raise ValueError("edge set contains a cycle")
        comps = _components(n, edges)
        comps.sort(key=lambda c: (len(c), c[0]))
        return cls(n, tuple(frozenset(c) for c in comps), edges)

    @property
    def radius(self) -> int:
        """Number of edges missing relative to a spanning tree."""
        return len(self.components) - 1

    @cached_property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        """component_of[v] = index of the component containing node v."""
        out = [0] * self.n
        for i, c in enumerate(self.components):
            for v in c:
                out[v] = i
        return tuple(out)

    def __repr__(self) -> str:
        inner = format_edge_set(self.n, self.edges)
        return f"Forest({inner!r})"


def profile(forest: Forest) -> ProfileVector:
    """Sorted component sizes; the combinatorial fingerprint of the forest."""
    return forest.component_sizes


def tree_distance(t1: LabeledTree, t2: LabeledTree) -> int:
    """n-1 minus the number of shared edges; a metric on trees over [n]."""
    if t1.n != t2.n:
        raise ValueError(f"trees on different node sets: {t1.n} vs {t2.n}")
    return t1.n - 1 - len(t1.edges & t2.edges)


def remove_edges(tree: LabeledTree, removed: Iterable[Edge]) -> Forest:
    """Forest obtained by deleting the given subset of the tree's edges."""
    removed = frozenset(Edge(u, v) for u, v in removed)
    if not removed <= tree.edges:
        extra = sorted(tuple(e) for e in removed - tree.edges)
        raise ValueError(f"edges not in tree: {extra}")
    return Forest.from_edges(tree.n, tree.edges - removed)


def prufer_encode(tree: LabeledTree) -> PruferSequence:
    """Word over [n] of length n-2: repeatedly delete the smallest leaf,
    appending its neighbor. Node i appears deg(i)-1 times."""
    n = tree.n
    if n < 2:
        raise ValueError("the word is defined only for n >= 2")
    if n == 2:
        return ()
    adj = tree.adjacency()
    parent = [-1] * n
    order = [n - 1]
    seen = [False] * n
    seen[n - 1] = True
    for u in order:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    deg = [len(a) for a in adj]
    word = []
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for _ in range(n - 2):
        p = parent[leaf]
        word.append(p)
        deg[p] -= 1
        if deg[p] == 1 and p < ptr:
            leaf = p
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    return tuple(word)


def _decode_edge_list(word: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Inverse bijection, on raw pairs; linear-time pointer algorithm."""
    deg = [1] * n
    for w in word:
        deg[w] += 1
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges = []
    for w in word:
        edges.append((leaf, w) if leaf < w else (w, leaf))
        deg[w] -= 1
        if deg[w] == 1 and w < ptr:
            leaf = w
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def prufer_decode(word: Sequence[int], n: int | None = None) -> LabeledTree:
    """Tree whose Prufer word is `word`; n defaults to len(word) + 2."""
    word = tuple(word)
    if n is None:
        n = len(word) + 2
    if n < 2:
        raise ValueError("the word is defined only for n >= 2")
    if len(word) != n - 2:
        raise ValueError(f"word length {len(word)} != n-2 = {n - 2}")
    for w in word:
        if not 0 <= w < n:
            raise ValueError(f"word entry {w} outside [{n}]")
    if n == 2:
        return LabeledTree._trusted(2, frozenset({Edge(0, 1)}))
    edges = frozenset(Edge(u, v) for u, v in _decode_edge_list(word, n))
    return LabeledTree._trusted(n, edges)


def count_trees(n: int) -> int:
    """|T(n)| = n^(n-2), with T(1) = {empty tree}."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    return n ** (n - 2)


def tree_budget() -> int:
    """Enumeration guard; override with the ARBOREAL_MAX_TREES env var."""
    raw = os.environ.get(MAX_TREES_ENV)
    if raw is None:
        return DEFAULT_MAX_TREES
    return int(raw)


def enumerate_trees(
    n: int, prefix: Sequence[int] = (), max_trees: int | None = None
) -> Iterator[LabeledTree]:
    """All trees on [n] in lexicographic Prufer-word order.

    `prefix` restricts the stream to words starting with the given symbols;
    disjoint prefixes partition the full enumeration, so chunks may be
    consumed concurrently and merged back in prefix order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    budget = tree_budget() if max_trees is None else max_trees
    prefix = tuple(prefix)
    if n == 1:
        if prefix:
            raise ValueError("n=1 admits no word prefix")
        yield LabeledTree(1, frozenset())
        return
    if len(prefix) > n - 2:
        raise ValueError(f"prefix longer than word length {n - 2}")
    for w in prefix:
        if not 0 <= w < n:
            raise ValueError(f"prefix entry {w} outside [{n}]")
    remaining = n - 2 - len(prefix)
    total = n**remaining
    if total > budget:
        raise ResourceGuardError(
            f"enumerating {total} trees exceeds the budget of {budget} "
            f"(set {MAX_TREES_ENV} to raise it)"
        )
    if n == 2:
        yield LabeledTree._trusted(2, frozenset({Edge(0, 1)}))
        return
    trusted = LabeledTree._trusted
    for suffix in itertools.product(range(n), repeat=remaining):
        word = prefix + suffix
        edges = frozenset(Edge(u, v) for u, v in _decode_edge_list(word, n))
        yield trusted(n, edges)


def tree_masks(n: int, max_trees: int | None = None) -> list[int]:
    """Edge-index bitmasks of all trees on [n], in enumeration order.

    The workhorse for exhaustive distance computations:
    distance(i, j) = n - 1 - popcount(masks[i] & masks[j]).
    """
    if n == 1:
        return [0]
    budget = tree_budget() if max_trees is None else max_trees
    total = count_trees(n)
    if total > budget:
        raise ResourceGuardError(
            f"enumerating {total} trees exceeds the budget of {budget}"
        )
    if n == 2:
        return [1]
    masks = []
    for word in itertools.product(range(n), repeat=n - 2):
        m = 0
        for u, v in _decode_edge_list(word, n):
            m |= 1 << (u * n - (u * (u + 1)) // 2 + (v - u - 1))
        masks.append(m)
    return masks


def star(n: int, center: int) -> LabeledTree:
    """Tree with deg(center) = n-1 and all other nodes leaves."""
    if not 0 <= center < n:
        raise ValueError(f"center {center} outside [{n}]")
    if n < 2:
        raise ValueError("a star needs at least two nodes")
    return LabeledTree._trusted(
        n, frozenset(Edge(center, v) for v in range(n) if v != center)
    )


def line(n: int, order: Sequence[int] | None = None) -> LabeledTree:
    """Path through the nodes in the given order (default 0, 1, ..., n-1)."""
    if order is None:
        order = range(n)
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of [n]")
    return LabeledTree._trusted(
        n, frozenset(Edge(order[i], order[i + 1]) for i in range(n - 1))
    )


@dataclass(frozen=True)
class EdgeVector:
    """Binary word of length C(n, 2) indexed by edge_index; bit i set iff
    the i-th edge is present."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> comb(self.n, 2):
            raise ValueError(f"bit pattern does not fit C({self.n},2) positions")

    @property
    def length(self) -> int:
        return comb(self.n, 2)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to01(self) -> str:
        """Bit string with edge index 0 leftmost."""
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    @classmethod
    def from01(cls, s: str, n: int) -> "EdgeVector":
        if len(s) != comb(n, 2):
            raise ValueError(f"expected {comb(n, 2)} bits, got {len(s)}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid bit {ch!r}")
        return cls(n, bits)


def edge_vector(tree: LabeledTree) -> EdgeVector:
    """Binary edge-vector of the tree's edge set."""
    return EdgeVector(tree.n, tree.mask)


def tree_from_edge_vector(vec: EdgeVector) -> LabeledTree:
    """Inverse of edge_vector; rejects patterns that are not trees."""
    n = vec.n
    if vec.weight() != n - 1:
        raise ValueError(f"a tree on {n} nodes has {n - 1} edges, got {vec.weight()}")
    pairs = []
    bits = vec.bits
    while bits:
        i = (bits & -bits).bit_length() - 1
        pairs.append(edge_from_index(i, n))
        bits &= bits - 1
    return LabeledTree.from_edges(n, pairs)  # validates acyclicity


# ---------------------------------------------------------------------------
# Text formats (shared with the CLI)
# ---------------------------------------------------------------------------


def format_edge_set(n: int, edges: Iterable[Edge]) -> str:
    """`n=<n>; edges=u1-v1,u2-v2,...` with edges in edge_index order."""
    parts = ",".join(f"{u}-{v}" for u, v in sorted(edges))
    return f"n={n}; edges={parts}"


def format_tree(tree: LabeledTree) -> str:
    return format_edge_set(tree.n, tree.edges)


def parse_edge_set(text: str) -> tuple[int, list[Edge]]:
    """Parse `n=<n>; edges=u1-v1,...`; the edge list may be empty."""
    try:
        n_part, e_part = text.split(";", 1)
        n = int(n_part.strip().removeprefix("n="))
        body = e_part.strip().removeprefix("edges=").strip()
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed edge-set text: {text!r}") from exc
    edges = []
    if body:
        for item in body.split(","):
            u, v = item.strip().split("-")
            edges.append(Edge(int(u), int(v)))
    return n, edges


def parse_tree(text: str) -> LabeledTree:
    n, edges = parse_edge_set(text)
    return LabeledTree(n, frozenset(edges))


def parse_forest(text: str) -> Forest:
    n, edges = parse_edge_set(text)
    return Forest.from_edges(n, edges)


def format_prufer(word: Sequence[int]) -> str:
    """`p=<w0> <w1> ...`; bare `p=` for the empty word (n = 2)."""
    return "p=" + " ".join(str(w) for w in word)


def parse_prufer(text: str) -> PruferSequence:
    body = text.strip().removeprefix("p=").strip()
    if not body:
        return ()
    return tuple(int(w) for w in body.split())
