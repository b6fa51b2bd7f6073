"""Forest counting, upper bounds on tree-code sizes, and optimal-code search.

F(n, d) counts labeled forests on [n] with exactly d components. Two
published closed forms are evaluated with exact rational arithmetic and
checked against brute-force enumeration. The sphere-packing quotient
F(n, d) / C(n-1, d-1) bounds the largest code size A(n, d) from above;
sharper bounds exist at d = n-1, n-2, n-3. A branch-and-bound clique
search recovers A(n, d) exactly for tiny n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .codes import TreeCode, certify
from .errors import ResourceGuardError
from .trees import (
    Forest,
    LabeledTree,
    all_edges,
    count_trees,
    enumerate_trees,
    tree_budget,
)

__all__ = [
    "BoundReport",
    "forest_count_moon",
    "forest_count_bollobas",
    "forest_count_closed",
    "forest_count_bruteforce",
    "forest_count_partitions",
    "enumerate_forests",
    "corollary_table",
    "sphere_packing_bound",
    "best_upper_bound",
    "proven_upper_bound",
    "reiman_holds",
    "incidence_girth_at_least_six",
    "max_code_search",
]


def forest_count_moon(n: int, d: int) -> int:
    """C(n,d) n^(n-d-1) sum_i (-1/2)^i C(d,i) (d+i) (n-d)! / (n^i (n-d-i)!)."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside [1, {n}]")
    total = Fraction(0)
    for i in range(0, min(d, n - d) + 1):
        term = (
            Fraction(-1, 2) ** i
            * comb(d, i)
            * (d + i)
            * Fraction(factorial(n - d), factorial(n - d - i))
            / n**i
        )
        total += term
    value = comb(n, d) * Fraction(n) ** (n - d - 1) * total
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer forest count {value}")
    return int(value)


def forest_count_bollobas(n: int, d: int) -> int:
    """n^(n-d) sum_i (-1/2)^i C(d,i) C(n-1, d-1+i) (d+i)! / (n^i d!)."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside [1, {n}]")
    total = Fraction(0)
    for i in range(0, d + 1):
        if d - 1 + i > n - 1:
            break
        term = (
            Fraction(-1, 2) ** i
            * comb(d, i)
            * comb(n - 1, d - 1 + i)
            * Fraction(factorial(d + i), factorial(d))
            / n**i
        )
        total += term
    value = Fraction(n) ** (n - d) * total
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer forest count {value}")
    return int(value)


def forest_count_closed(n: int, d: int) -> int:
    """Both closed forms, which must agree; returns their common value."""
    moon = forest_count_moon(n, d)
    bollobas = forest_count_bollobas(n, d)
    if moon != bollobas:
        raise ArithmeticError(
            f"closed forms disagree at F({n},{d}): {moon} vs {bollobas}"
        )
    return moon


def forest_count_bruteforce(n: int, d: int, max_n: int = 8) -> int:
    """Count acyclic (n-d)-subsets of the C(n,2) edges directly."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside [1, {n}]")
    if n > max_n:
        raise ResourceGuardError(f"brute force capped at n={max_n}")
    edges = all_edges(n)
    count = 0
    for subset in itertools.combinations(edges, n - d):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count


def _partitions_into(blocks: int, items: tuple[int, ...]) -> Iterator[list[list[int]]]:
    """Set partitions of `items` into exactly `blocks` nonempty blocks."""
    if len(items) < blocks:
        return
    if blocks == 1:
        yield [list(items)]
        return
    first, rest = items[0], items[1:]
    # first item alone in a block
    for part in _partitions_into(blocks - 1, rest):
        yield [[first]] + part
    # first item joins an existing block
    for part in _partitions_into(blocks, rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def forest_count_partitions(n: int, d: int, max_n: int = 10) -> int:
    """Second oracle: sum over node partitions of prod (block size)^(size-2)."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside [1, {n}]")
    if n > max_n:
        raise ResourceGuardError(f"partition oracle capped at n={max_n}")
    total = 0
    for part in _partitions_into(d, tuple(range(n))):
        prod = 1
        for block in part:
            s = len(block)
            if s >= 3:
                prod *= s ** (s - 2)
        total += prod
    return total


def enumerate_forests(
    n: int, components: int, max_work: int | None = None
) -> Iterator[Forest]:
    """All forests on [n] with the given component count, in a fixed order."""
    if not 1 <= components <= n:
        raise ValueError(f"component count {components} outside [1, {n}]")
    budget = tree_budget() if max_work is None else max_work
    k = n - components
    if comb(comb(n, 2), k) > budget:
        raise ResourceGuardError(
            f"scanning C(C({n},2),{k}) edge subsets exceeds the budget {budget}"
        )
    edges = all_edges(n)
    for subset in itertools.combinations(edges, k):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            yield Forest.from_edges(n, subset)


_CASES = {
    "d=1": (lambda n: 1, lambda n: Fraction(n) ** (n - 2)),
    "d=2": (
        lambda n: 2,
        lambda n: Fraction(1, 2) * Fraction(n) ** (n - 4) * (n - 1) * (n + 6),
    ),
    "d=3": (
        lambda n: 3,
        lambda n: Fraction(1, 8)
        * Fraction(n) ** (n - 6)
        * (n - 1)
        * (n - 2)
        * (n**2 + 13 * n + 60),
    ),
    "d=n-4": (
        lambda n: n - 4,
        lambda n: Fraction(1, 16)
        * comb(n, 4)
        * (n**2 + 3 * n + 10)
        * (n - 4)
        * (n + 3),
    ),
    "d=n-3": (
        lambda n: n - 3,
        lambda n: Fraction(1, 2) * comb(n, 4) * (n**2 + 3 * n + 4),
    ),
    "d=n-2": (lambda n: n - 2, lambda n: Fraction(3 * comb(n + 1, 4))),
    "d=n-1": (lambda n: n - 1, lambda n: Fraction(comb(n, 2))),
    "d=n": (lambda n: n, lambda n: Fraction(1)),
}


def corollary_table(n: int) -> list[tuple[int, int]]:
    """Special-case forest counts valid at this n, as (d, value) pairs.

    Covers d in {1, 2, 3, n-4, n-3, n-2, n-1, n}; cases with d outside
    [1, n] are skipped. Values must match forest_count_closed.
    """
    out = []
    for _, (d_of, value_of) in _CASES.items():
        d = d_of(n)
        if not 1 <= d <= n:
            continue
        value = value_of(n)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integer special case at n={n}, d={d}")
        out.append((d, int(value)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Upper bounds on A(n, d)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    value: int
    provenance: str


def sphere_packing_bound(n: int, d: int) -> BoundReport:
    """A(n, d) <= F(n, d) / C(n-1, d-1), reported as a floor."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} outside [1, {n}]")
    value = forest_count_closed(n, d) // comb(n - 1, d - 1)
    return BoundReport(n, d, value, "sphere-packing")


# Preference among equal-valued bounds: named theorems first, the
# numerically-verified small-n case next, the generic quotient last.
_PROVENANCE_RANK = {
    "exact-(n-1)": 0,
    "improved-(n-2)": 0,
    "improved-(n-3)": 0,
    "improved-(n-3)-small": 1,
    "sphere-packing": 2,
}


def _bound_candidates(n: int, d: int) -> list[BoundReport]:
    cands = [sphere_packing_bound(n, d)]
    if d == n - 1:
        cands.append(BoundReport(n, d, n // 2, "exact-(n-1)"))
    if d == n - 2:
        cands.append(BoundReport(n, d, n, "improved-(n-2)"))
    if d == n - 3:
        if n >= 9:
            cands.append(BoundReport(n, d, n * n, "improved-(n-3)"))
        elif n >= 4:
            cands.append(BoundReport(n, d, (3 * n * n) // 2, "improved-(n-3)-small"))
    return cands


def best_upper_bound(n: int, d: int) -> BoundReport:
    """Minimum of the sphere-packing bound and the applicable sharper ones."""
    return min(
        _bound_candidates(n, d),
        key=lambda b: (b.value, _PROVENANCE_RANK[b.provenance]),
    )


def proven_upper_bound(n: int, d: int) -> int:
    """Best bound excluding the numerically-verified small-n case; safe to
    use as an optimality cutoff in exact search."""
    return min(
        b.value
        for b in _bound_candidates(n, d)
        if b.provenance != "improved-(n-3)-small"
    )


def reiman_holds(u_size: int, v_size: int, edge_count: int) -> bool:
    """|E|^2 - |U||E| - |V||U|(|V|-1) <= 0; valid for bipartite graphs of
    girth >= 6 with |V| <= |U| (the premise is checked separately)."""
    return (
        edge_count * edge_count
        - u_size * edge_count
        - v_size * u_size * (v_size - 1)
        <= 0
    )


def incidence_girth_at_least_six(edge_sets: Sequence[frozenset]) -> bool:
    """No 4-cycle in the set-vs-element incidence graph: no two of the
    given sets may share two elements."""
    for i, a in enumerate(edge_sets):
        for b in edge_sets[i + 1 :]:
            if len(a & b) >= 2:
                return False
    return True


# ---------------------------------------------------------------------------
# Exact/greedy search for the largest code at tiny n
# ---------------------------------------------------------------------------


def _compatibility_masks(trees: list[LabeledTree], d: int) -> list[int]:
    """adj[i] has bit j set iff trees i, j are at distance >= d."""
    n = trees[0].n
    share_max = n - 1 - d
    masks = [t.mask for t in trees]
    big = len(trees)
    adj = [0] * big
    for i in range(big):
        mi = masks[i]
        row = 0
        for j in range(i + 1, big):
            if (mi & masks[j]).bit_count() <= share_max:
                row |= 1 << j
        adj[i] |= row
        while row:
            j = (row & -row).bit_length() - 1
            adj[j] |= 1 << i
            row &= row - 1
    return adj


def _greedy_clique(adj: list[int], size: int) -> list[int]:
    out: list[int] = []
    mask = (1 << size) - 1
    for v in range(size):
        if mask & (1 << v):
            out.append(v)
            mask &= adj[v]
    return out


def _color_bound_order(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; returns vertices ordered by
    color class with their color numbers (a clique upper bound)."""
    order: list[int] = []
    colors: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            bit = 1 << v
            avail &= ~bit & ~adj[v]
            uncolored &= ~bit
            order.append(v)
            colors.append(color)
    return order, colors


def _max_clique(adj: list[int], cand: int, need_stop: int) -> tuple[int, list[int]]:
    """Branch-and-bound maximum clique over the candidate mask.

    Stops early once a clique of size `need_stop` is found (pass a certified
    upper bound to keep the search exact, or a target size for a decision
    query). Returns (best size, one best clique).
    """
    best_size = 0
    best_clique: list[int] = []
    stack: list[int] = []

    def expand(cand_mask: int) -> None:
        nonlocal best_size, best_clique
        if best_size >= need_stop:
            return
        order, colors = _color_bound_order(adj, cand_mask)
        for idx in range(len(order) - 1, -1, -1):
            if len(stack) + colors[idx] <= best_size:
                return
            v = order[idx]
            stack.append(v)
            sub = cand_mask & adj[v]
            if len(stack) > best_size:
                best_size = len(stack)
                best_clique = stack.copy()
            if sub and len(stack) + 1 <= need_stop:
                expand(sub)
            stack.pop()
            if best_size >= need_stop:
                return
            cand_mask &= ~(1 << v)

    expand(cand)
    return best_size, best_clique


def _lex_least_clique(adj: list[int], size: int, omega: int) -> list[int]:
    """Lexicographically least clique of the known maximum size omega."""
    chosen: list[int] = []
    cand = (1 << size) - 1
    while len(chosen) < omega:
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            sub = cand & adj[v] & ~((1 << (v + 1)) - 1)
            need = omega - len(chosen) - 1
            if need == 0 or _max_clique(adj, sub, need)[0] >= need:
                chosen.append(v)
                cand = sub
                break
        else:
            raise AssertionError("maximum clique size was certified incorrectly")
    return chosen


EXACT_SEARCH_MAX_N = 6


def max_code_search(n: int, d: int, mode: str = "exact") -> TreeCode:
    """Largest (exact mode) or first-fit (greedy mode) code of distance >= d.

    Exact mode runs branch-and-bound with a greedy-coloring bound over the
    graph on all n^(n-2) trees whose edges join trees at distance >= d,
    using the proven upper bound on A(n, d) as an admissible early cutoff;
    it returns the lexicographically least maximum clique in enumeration
    order. Greedy mode scans trees in enumeration order and keeps every
    tree compatible with all keepers.
    """
    if not 1 <= d <= n - 1:
        raise ValueError(f"d={d} outside [1, {n - 1}]")
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and n > EXACT_SEARCH_MAX_N:
        raise ResourceGuardError(
            f"exact search capped at n={EXACT_SEARCH_MAX_N} ({count_trees(n)} trees)"
        )
    trees = list(enumerate_trees(n))
    if n == 1:
        return TreeCode(1, tuple(trees), d)
    adj = _compatibility_masks(trees, d)
    size = len(trees)
    if mode == "greedy":
        picked = _greedy_clique(adj, size)
    else:
        cap = proven_upper_bound(n, d)
        greedy = _greedy_clique(adj, size)
        if len(greedy) >= cap:
            omega = len(greedy)
        else:
            omega, _ = _max_clique(adj, (1 << size) - 1, cap)
            omega = max(omega, len(greedy))
        picked = _lex_least_clique(adj, size, omega)
    code = TreeCode(n, tuple(trees[i] for i in picked), d)
    if len(code) > 1:
        certify(code)
    return code
