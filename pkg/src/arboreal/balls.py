"""Balls and spheres of trees under the edge-set tree distance.

Three nested objects drive everything here. Deleting t edges of a tree T
yields its C(n-1, t) "deletion forests"; the multiset of their sorted
component-size profiles is the tree's fingerprint at radius t. A forest F
with t+1 components is completed back into a spanning tree by adding t
cross edges, in exactly n^(t-1) * prod(|C_i|) ways. The ball of trees
within distance t of T is the union of the completions of its deletion
forests, and its size obeys a binomial-weighted recursion whose right side
is n^(t-1) times the profile-product sum.

Every closed form here is paired with a brute-force oracle: enumeration of
all trees and distance filtering, or explicit completion of forests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .counting import enumerate_forests
from .errors import ResourceGuardError
from .trees import (
    Edge,
    Forest,
    LabeledTree,
    ProfileVector,
    count_trees,
    enumerate_trees,
    tree_budget,
    tree_distance,
    tree_masks,
)

__all__ = [
    "BallReport",
    "PinnedQuery",
    "forest_ball",
    "profile_multiset",
    "forest_completions",
    "forest_ball_size_formula",
    "p1_count",
    "p2_count",
    "ball_histogram",
    "tree_ball",
    "sphere",
    "radius_one_ball_size",
    "recursion_check",
    "sphere_recursion_check",
    "star_sphere_formula",
    "star_ball_formula",
    "line_identity_rhs",
    "star_identity_rhs",
    "pinned_product",
    "pinned_products_batch",
    "pinned_recursion_check",
    "pinned_bound_check",
    "sum_ball_sizes",
    "average_ball_exhaustive",
    "radius_one_ball_total",
    "average_ball_formula_r1",
    "average_recursion_rhs",
    "average_recursion_check",
    "lemma29_check",
    "double_count_check",
    "forest_partition_data",
]

# Trees enumerated and filtered per ball when no explicit budget is given.
FILTER_MAX_TREES = 400_000
# Center-times-tree pair computations allowed in exhaustive averages.
PAIR_WORK_MAX = 30_000_000


def _binom(m: int, k: int) -> int:
    """C(m, k) with C(m, 0) = 1 even for negative m (empty product)."""
    if k == 0:
        return 1
    if m < 0 or k < 0 or k > m:
        return 0
    return comb(m, k)


@dataclass(frozen=True)
class BallReport:
    """Size (and optionally members) of a ball or sphere around a center."""

    center: LabeledTree | Forest
    radius: int
    size: int
    members: tuple[LabeledTree, ...] | None = None

    def __post_init__(self) -> None:
        if self.members is not None and len(self.members) != self.size:
            raise ValueError("member list does not match the reported size")


# ---------------------------------------------------------------------------
# Deletion forests and their profiles
# ---------------------------------------------------------------------------


def forest_ball(tree: LabeledTree, t: int) -> list[Forest]:
    """The C(n-1, t) forests obtained by deleting t edges of the tree."""
    _check_radius(tree.n, t)
    out = []
    for removed in itertools.combinations(tree.sorted_edges, t):
        out.append(Forest.from_edges(tree.n, tree.edges.difference(removed)))
    return out


def forest_partition_data(
    tree: LabeledTree, t: int
) -> Iterator[tuple[list[int], list[int], int]]:
    """(component_of, sizes, size product) per t-edge deletion, cheaply.

    Same iteration order as forest_ball but without Forest construction;
    the backbone of the exhaustive profile/pinned sweeps.
    """
    n = tree.n
    edges = tree.sorted_edges
    for removed in itertools.combinations(range(n - 1), t):
        kept = [edges[i] for i in range(n - 1) if i not in removed]
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in kept:
            parent[find(u)] = find(v)
        roots: dict[int, int] = {}
        comp_of = [0] * n
        for v in range(n):
            r = find(v)
            if r not in roots:
                roots[r] = len(roots)
            comp_of[v] = roots[r]
        sizes = [0] * len(roots)
        for v in range(n):
            sizes[comp_of[v]] += 1
        prod = 1
        for s in sizes:
            prod *= s
        yield comp_of, sizes, prod


def profile_multiset(tree: LabeledTree, t: int) -> list[ProfileVector]:
    """Sorted component-size profiles of all t-edge deletions, repetitions
    kept, listed in sorted order."""
    _check_radius(tree.n, t)
    out = [tuple(sorted(sizes)) for _, sizes, _ in forest_partition_data(tree, t)]
    out.sort()
    return out


def _profile_product_sum(tree: LabeledTree, t: int) -> int:
    return sum(prod for _, _, prod in forest_partition_data(tree, t))


def _check_radius(n: int, t: int) -> None:
    if not 0 <= t <= n - 1:
        raise ValueError(f"radius {t} outside [0, {n - 1}]")


# ---------------------------------------------------------------------------
# Completing a forest into spanning trees
# ---------------------------------------------------------------------------


def forest_ball_size_formula(forest: Forest) -> int:
    """n^(t-1) * prod(component sizes) for a forest with t+1 components;
    a single component completes only to itself."""
    t = forest.radius
    prod = 1
    for s in forest.component_sizes:
        prod *= s
    if t == 0:
        return 1
    return forest.n ** (t - 1) * prod


def forest_completions(
    forest: Forest, max_trees: int | None = None
) -> list[LabeledTree]:
    """All spanning trees containing the forest, by adding t cross edges.

    Iterates over the trees on the t+1 components (the "shape" of the added
    edges) and, per shape edge, over all endpoint choices.
    """
    budget = tree_budget() if max_trees is None else max_trees
    expected = forest_ball_size_formula(forest)
    if expected > budget:
        raise ResourceGuardError(
            f"forest completes to {expected} trees, over the budget {budget}"
        )
    n = forest.n
    t = forest.radius
    base = forest.edges
    if t == 0:
        return [LabeledTree(n, base)]
    comps = [sorted(c) for c in forest.components]
    out = []
    for shape in enumerate_trees(t + 1):
        pools = []
        for i, j in shape.sorted_edges:
            pools.append(
                [Edge(u, v) for u in comps[i] for v in comps[j]]
            )
        for added in itertools.product(*pools):
            out.append(LabeledTree._trusted(n, base | frozenset(added)))
    return out


def p1_count(forest: Forest, shape: LabeledTree) -> int:
    """Completions of the forest whose added edges realize the given shape:
    product of |C_i| * |C_j| over the shape's edges."""
    _check_shape(forest, shape)
    sizes = forest.component_sizes
    prod = 1
    for i, j in shape.edges:
        prod *= sizes[i] * sizes[j]
    return prod


def p2_count(forest: Forest, shape: LabeledTree) -> int:
    """prod |C_i|^(deg_shape(i) - 1); summed over all shapes this gives
    n^(t-1) regardless of the profile."""
    _check_shape(forest, shape)
    sizes = forest.component_sizes
    prod = 1
    for i, d in enumerate(shape.degrees()):
        prod *= sizes[i] ** (d - 1)
    return prod


def _check_shape(forest: Forest, shape: LabeledTree) -> None:
    if shape.n != forest.radius + 1:
        raise ValueError(
            f"shape on {shape.n} nodes does not index {forest.radius + 1} components"
        )


# ---------------------------------------------------------------------------
# Balls of trees: brute force
# ---------------------------------------------------------------------------


def ball_histogram(
    tree: LabeledTree, masks: Sequence[int] | None = None
) -> list[int]:
    """hist[k] = number of trees at distance exactly k from the center.

    V_T(n, t) is the prefix sum over k <= t and S_T(n, t) the single entry.
    """
    n = tree.n
    if masks is None:
        masks = tree_masks(n)
    center = tree.mask
    hist = [0] * n
    top = n - 1
    for m in masks:
        hist[top - (center & m).bit_count()] += 1
    return hist


def tree_ball(
    tree: LabeledTree,
    t: int,
    materialize: bool = False,
    strategy: str = "auto",
    max_trees: int | None = None,
) -> BallReport:
    """All trees within distance t of the center.

    strategy "filter" enumerates all n^(n-2) trees and keeps the close
    ones; "completions" unions the completions of every t-edge deletion
    forest (preferable for large n with small t); "auto" picks by size.
    """
    _check_radius(tree.n, t)
    budget = tree_budget() if max_trees is None else max_trees
    n = tree.n
    if strategy == "auto":
        strategy = "filter" if count_trees(n) <= min(budget, FILTER_MAX_TREES) else "completions"
    if strategy == "filter":
        total = count_trees(n)
        if total > budget:
            raise ResourceGuardError(
                f"enumerating {total} trees exceeds the budget {budget}"
            )
        if materialize:
            members = tuple(
                other for other in enumerate_trees(n) if tree_distance(tree, other) <= t
            )
            return BallReport(tree, t, len(members), members)
        hist = ball_histogram(tree)
        return BallReport(tree, t, sum(hist[: t + 1]))
    if strategy != "completions":
        raise ValueError(f"unknown strategy {strategy!r}")
    seen: dict[frozenset, LabeledTree] = {}
    for forest in forest_ball(tree, t):
        for completion in forest_completions(forest, max_trees=budget):
            seen.setdefault(completion.edges, completion)
        if len(seen) > budget:
            raise ResourceGuardError(f"ball exceeded the budget {budget}")
    if materialize:
        members = tuple(seen[k] for k in sorted(seen, key=sorted))
        return BallReport(tree, t, len(members), members)
    return BallReport(tree, t, len(seen))


def sphere(
    tree: LabeledTree,
    t: int,
    materialize: bool = False,
    strategy: str = "auto",
    max_trees: int | None = None,
) -> BallReport:
    """Trees at distance exactly t: the ball shell B(t) minus B(t-1)."""
    _check_radius(tree.n, t)
    if t == 0:
        members = (tree,) if materialize else None
        return BallReport(tree, 0, 1, members)
    if materialize:
        outer = tree_ball(tree, t, True, strategy, max_trees)
        members = tuple(
            m for m in outer.members if tree_distance(tree, m) == t
        )
        return BallReport(tree, t, len(members), members)
    outer = tree_ball(tree, t, False, strategy, max_trees)
    inner = tree_ball(tree, t - 1, False, strategy, max_trees)
    return BallReport(tree, t, outer.size - inner.size)


def radius_one_ball_size(tree: LabeledTree) -> int:
    """V_T(n, 1) = sum over edges of (i * (n-i) - 1) + 1, where i and n-i
    are the sizes of the two sides of the edge's cut."""
    n = tree.n
    adj = tree.adjacency()
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for u in order:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    total = 1
    for v in order[1:]:
        s = size[v]
        total += s * (n - s) - 1
    return total


# ---------------------------------------------------------------------------
# The binomial-weighted recursions
# ---------------------------------------------------------------------------


def _rhs_profile_sum(tree: LabeledTree, t: int) -> int:
    """n^(t-1) * profile-product sum; at t = 0 this collapses to 1."""
    s = _profile_product_sum(tree, t)
    n = tree.n
    if t == 0:
        return s // n  # s = n exactly: the single trivial profile
    return n ** (t - 1) * s


def recursion_check(
    tree: LabeledTree, t: int, hist: Sequence[int] | None = None
) -> tuple[int, int]:
    """(lhs, rhs) of: sum_i C(n-2-t+i, i) V_T(n, t-i) equals
    n^(t-1) * sum of profile products. Equal for every tree and radius."""
    n = tree.n
    _check_radius(n, t)
    if hist is None:
        hist = ball_histogram(tree)
    ball = list(itertools.accumulate(hist))
    lhs = sum(_binom(n - 2 - t + i, i) * ball[t - i] for i in range(t + 1))
    return lhs, _rhs_profile_sum(tree, t)


def sphere_recursion_check(
    tree: LabeledTree, t: int, hist: Sequence[int] | None = None
) -> tuple[int, int]:
    """(lhs, rhs) of the sphere form: sum_i C(n-1-t+i, i) S_T(n, t-i)
    equals the same right side."""
    n = tree.n
    _check_radius(n, t)
    if hist is None:
        hist = ball_histogram(tree)
    lhs = sum(_binom(n - 1 - t + i, i) * hist[t - i] for i in range(t + 1))
    return lhs, _rhs_profile_sum(tree, t)


def star_sphere_formula(n: int, t: int) -> int:
    """S for a star center: C(n-1, t) (n-1)^(t-1) (n-t-1); radius 0 gives 1."""
    _check_radius(n, t)
    if t == 0:
        return 1
    return comb(n - 1, t) * (n - 1) ** (t - 1) * (n - t - 1)


def star_ball_formula(n: int, t: int) -> int:
    """V for a star center: partial sums of the sphere closed form."""
    _check_radius(n, t)
    return sum(star_sphere_formula(n, j) for j in range(t + 1))


def line_identity_rhs(n: int, t: int) -> int:
    """n^(t-1) C(n+t, 2t+1): the recursion right side for a path center."""
    _check_radius(n, t)
    if t == 0:
        return 1
    return n ** (t - 1) * comb(n + t, 2 * t + 1)


def star_identity_rhs(n: int, t: int) -> int:
    """n^(t-1) C(n-1, t) (n-t): the recursion right side for a star center.

    Every tree's right side sits between this and the path's, which is
    the weighted-sum form of the extremal ordering.
    """
    _check_radius(n, t)
    if t == 0:
        return 1
    return n ** (t - 1) * comb(n - 1, t) * (n - t)


# ---------------------------------------------------------------------------
# Pinned profile products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PinnedQuery:
    """Profile-product sum restricted to forests separating the pinned nodes.

    Sums, over the t-edge deletions that put every pinned node in its own
    component, the product of the sizes of the unpinned components. With
    all t+1 components pinned this counts the qualifying forests; with no
    pins it is the plain profile-product sum. Repeated pins make the sum
    empty (one node cannot occupy two components).
    """

    tree: LabeledTree
    radius: int
    pins: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_radius(self.tree.n, self.radius)
        if len(self.pins) > self.radius + 1:
            raise ValueError(
                f"{len(self.pins)} pins exceed t+1 = {self.radius + 1} components"
            )
        for v in self.pins:
            if not 0 <= v < self.tree.n:
                raise ValueError(f"pin {v} outside [{self.tree.n}]")


def pinned_product(query: PinnedQuery) -> int:
    total = 0
    npins = len(query.pins)
    for comp_of, sizes, prod in forest_partition_data(query.tree, query.radius):
        cids = {comp_of[v] for v in query.pins}
        if len(cids) < npins:
            continue
        q = prod
        for c in cids:
            q //= sizes[c]
        total += q
    return total


def pinned_products_batch(
    tree: LabeledTree, t: int, pinsets: Sequence[tuple[int, ...]]
) -> list[int]:
    """pinned_product for many pin tuples in one pass over the deletion
    forests; the workhorse of the exhaustive bound sweeps."""
    totals = [0] * len(pinsets)
    for comp_of, sizes, prod in forest_partition_data(tree, t):
        for k, pins in enumerate(pinsets):
            cids: set[int] = set()
            ok = True
            for v in pins:
                c = comp_of[v]
                if c in cids:
                    ok = False
                    break
                cids.add(c)
            if ok:
                q = prod
                for c in cids:
                    q //= sizes[c]
                totals[k] += q
    return totals


def _delete_leaf(
    tree: LabeledTree, leaf: int
) -> tuple[LabeledTree, dict[int, int], int]:
    """Tree with the leaf removed, relabeled onto [n-1] order-preservingly;
    returns (smaller tree, old->new label map, the leaf's neighbor)."""
    deg = tree.degrees()
    if deg[leaf] != 1:
        raise ValueError(f"node {leaf} has degree {deg[leaf]}, not a leaf")
    (neighbor,) = [u if v == leaf else v for u, v in tree.edges if leaf in (u, v)]
    relabel = {}
    for v in range(tree.n):
        if v != leaf:
            relabel[v] = len(relabel)
    edges = [
        Edge(relabel[u], relabel[v]) for u, v in tree.edges if leaf not in (u, v)
    ]
    return LabeledTree(tree.n - 1, frozenset(edges)), relabel, neighbor


def pinned_recursion_check(
    tree: LabeledTree, t: int, pins: Sequence[int], leaf: int
) -> tuple[int, int]:
    """(lhs, rhs) of the leaf-deletion recursion for the pinned sum.

    For a leaf x with neighbor y and pins not containing x:
        f_T(n, t; v) = f_T1(n-1, t; v) + f_T1(n-1, t; v + (y,))
                       + f_T1(n-1, t-1; v);
    if instead x is the last pin:
        f_T(n, t; v) = f_T1(n-1, t; v[:-1] + (y,)) + f_T1(n-1, t-1; v[:-1]).
    Both sides are evaluated by brute force.
    """
    pins = tuple(pins)
    n = tree.n
    if t > n - 2:
        raise ValueError("the recursion needs t <= n-2 so the smaller tree works")
    lhs = pinned_product(PinnedQuery(tree, t, pins))
    sub, relabel, neighbor = _delete_leaf(tree, leaf)
    y = relabel[neighbor]

    def f(radius: int, p: tuple[int, ...]) -> int:
        # more pins than components: no forest qualifies, empty sum
        if radius < 0 or len(p) > radius + 1:
            return 0
        return pinned_product(PinnedQuery(sub, radius, p))

    if leaf not in pins:
        mapped = tuple(relabel[v] for v in pins)
        rhs = f(t, mapped) + f(t, mapped + (y,)) + f(t - 1, mapped)
    else:
        if pins[-1] != leaf or leaf in pins[:-1]:
            raise ValueError("the deleted leaf must be exactly the last pin")
        head = tuple(relabel[v] for v in pins[:-1])
        rhs = f(t, head + (y,)) + f(t - 1, head)
    return lhs, rhs


def pinned_bound_check(query: PinnedQuery) -> bool:
    """True iff the pinned sum is at most C(n+t-l, 2t+1-l)."""
    n = query.tree.n
    t = query.radius
    l = len(query.pins)
    return pinned_product(query) <= comb(n + t - l, 2 * t + 1 - l)


# ---------------------------------------------------------------------------
# Averages over all trees
# ---------------------------------------------------------------------------


def sum_ball_sizes(n: int, t: int, max_work: int | None = None) -> int:
    """Exhaustive sum of V_T(n, t) over every tree on [n]."""
    _check_radius(n, t)
    total_trees = count_trees(n)
    if t == 0:
        return total_trees
    if t == 1:
        if total_trees > (tree_budget() if max_work is None else max_work):
            raise ResourceGuardError(f"enumerating {total_trees} trees is over budget")
        return sum(radius_one_ball_size(tree) for tree in enumerate_trees(n))
    budget = PAIR_WORK_MAX if max_work is None else max_work
    if total_trees * total_trees > budget:
        raise ResourceGuardError(
            f"{total_trees}^2 distance computations exceed the budget {budget}"
        )
    masks = tree_masks(n)
    top = n - 1
    total = 0
    for center in masks:
        v = 0
        for m in masks:
            if top - (center & m).bit_count() <= t:
                v += 1
        total += v
    return total


def average_ball_exhaustive(n: int, t: int, max_work: int | None = None) -> Fraction:
    """Average ball size as an exact rational: sum V_T / n^(n-2)."""
    return Fraction(sum_ball_sizes(n, t, max_work), count_trees(n))


def radius_one_ball_total(n: int) -> int:
    """Closed form for the radius-one sum over all trees:
    n!/2 * sum_(k<=n-2) n^k/k! - (n-2) n^(n-2)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    acc = Fraction(0)
    for k in range(n - 1):
        acc += Fraction(n**k, factorial(k))
    value = Fraction(factorial(n), 2) * acc - (n - 2) * n ** (n - 2)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer total {value}")
    return int(value)


def average_ball_formula_r1(n: int) -> Fraction:
    """Radius-one average ball size from the closed form, exactly."""
    return Fraction(radius_one_ball_total(n), count_trees(n))


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of n into `parts` positive integers."""
    for cuts in itertools.combinations(range(1, n), parts - 1):
        prev = 0
        out = []
        for c in cuts:
            out.append(c - prev)
            prev = c
        out.append(n - prev)
        yield tuple(out)


def average_recursion_rhs(n: int, t: int) -> int:
    """Sum over all (t+1)-component forests of the squared completion count:
    n^(2t-2)/(t+1)! * sum over compositions of multinomial * prod i_j^i_j."""
    _check_radius(n, t)
    total = 0
    nfact = factorial(n)
    for parts in _compositions(n, t + 1):
        coeff = nfact
        prod = 1
        for p in parts:
            coeff //= factorial(p)
            prod *= p**p
        total += coeff * prod
    value = Fraction(n) ** (2 * t - 2) * Fraction(total, factorial(t + 1))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer squared-completion sum {value}")
    return int(value)


def average_recursion_check(
    n: int, t: int, max_work: int | None = None
) -> tuple[Fraction, Fraction]:
    """(lhs, rhs) of the averaged recursion: sum_i C(n-2-t+i, i) V(n, t-i)
    equals the squared-completion sum divided by n^(n-2)."""
    lhs = Fraction(0)
    for i in range(t + 1):
        lhs += _binom(n - 2 - t + i, i) * average_ball_exhaustive(n, t - i, max_work)
    rhs = Fraction(average_recursion_rhs(n, t), count_trees(n))
    return lhs, rhs


def lemma29_check(n: int) -> tuple[int, int]:
    """(lhs, rhs) of: sum_T V_T(n, 1) equals
    sum over two-component forests of V_F^2, minus (n-2) n^(n-2)."""
    lhs = sum_ball_sizes(n, 1)
    rhs = 0
    for forest in enumerate_forests(n, 2):
        a, b = forest.component_sizes
        rhs += (a * b) ** 2
    rhs -= (n - 2) * count_trees(n)
    return lhs, rhs


def double_count_check(
    n: int, t: int, use_completions: bool = False
) -> tuple[int, int]:
    """(lhs, rhs) of: sum over (t+1)-component forests of V_F equals
    C(n-1, t) n^(n-2). Optionally counts completions explicitly."""
    _check_radius(n, t)
    lhs = 0
    for forest in enumerate_forests(n, t + 1):
        if use_completions:
            lhs += len(forest_completions(forest))
        else:
            lhs += forest_ball_size_formula(forest)
    rhs = comb(n - 1, t) * count_trees(n)
    return lhs, rhs
