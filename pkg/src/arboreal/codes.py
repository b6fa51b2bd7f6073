"""Tree codes: four constructions, their decoders, and generic decoding.

A code is a finite set of spanning trees on [n] with a declared minimum
pairwise tree distance d. A code of distance d corrects any d-1 edge
erasures and any floor((d-1)/2) edge errors.

Constructions:
  * line code      -- floor(n/2) rotations of a zigzag Hamiltonian path,
                      pairwise edge-disjoint, distance n-1;
  * star code      -- all n stars, distance n-2;
  * coset code     -- all trees whose binary edge-vector falls in one coset
                      of a shortened BCH code of designed distance 2d-1,
                      giving distance >= d and size >= n^(n-2)/2^rank;
  * two-star code  -- for prime n, trees with two hub nodes built from
                      modular difference sets, distance
                      floor(3n/4) - ceil(3n/(2m)) - 2 with Theta(n^2) size.

Every specialized decoder is cross-checkable against the generic erasure
decoder (the unique codeword containing all surviving edges).
"""

from __future__ import annotations

import dataclasses
import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from . import gf2
from .errors import (
    CertificationError,
    ChannelViolationError,
    ResourceGuardError,
    UndecodableError,
)
from .trees import (
    Edge,
    Forest,
    LabeledTree,
    enumerate_trees,
    count_trees,
    line,
    star,
    tree_budget,
    tree_distance,
)

__all__ = [
    "TreeCode",
    "TwoStarCode",
    "TwoStarParams",
    "BinaryCodeSpec",
    "min_tree_distance",
    "certify",
    "generic_erasure_decode",
    "generic_error_decode",
    "construct_line_code",
    "decode_line_code",
    "construct_star_code",
    "decode_star_code",
    "build_binary_code",
    "construct_coset_code",
    "is_prime",
    "two_star_distance",
    "two_star_b_set",
    "two_star_membership",
    "two_star_W_set",
    "two_star_tree",
    "construct_two_star_code",
    "decode_two_star",
    "lemma_exclusive_center",
    "code_to_json",
    "code_from_json",
    "load_code",
    "save_code",
]


@dataclass(frozen=True)
class TreeCode:
    """A set of codeword-trees on [n] with a declared minimum distance."""

    n: int
    codewords: tuple[LabeledTree, ...]
    declared_distance: int

    def __post_init__(self) -> None:
        if any(t.n != self.n for t in self.codewords):
            raise ValueError("codewords on mismatched node sets")
        if len({t.edges for t in self.codewords}) != len(self.codewords):
            raise ValueError("duplicate codeword-trees")
        if self.declared_distance < 1:
            raise ValueError("declared distance must be positive")

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)


def min_tree_distance(code: TreeCode) -> int:
    """Minimum pairwise tree distance, by exhaustive scan."""
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    n = code.n
    masks = [t.mask for t in code.codewords]
    best = n - 1
    for i, mi in enumerate(masks):
        for mj in masks[i + 1 :]:
            d = n - 1 - (mi & mj).bit_count()
            if d < best:
                best = d
    return best


def certify(code: TreeCode) -> dict:
    """Recompute size and minimum distance; raise if the declaration lies."""
    computed = min_tree_distance(code) if len(code) > 1 else code.n - 1
    report = {
        "n": code.n,
        "size": len(code),
        "declared_distance": code.declared_distance,
        "computed_distance": computed,
        "ok": computed >= code.declared_distance,
    }
    if not report["ok"]:
        raise CertificationError(
            f"declared distance {code.declared_distance} but computed {computed}"
        )
    return report


def generic_erasure_decode(code: TreeCode, forest: Forest) -> LabeledTree:
    """The unique codeword containing every surviving edge.

    Equivalent to intersecting the forest's completion ball with the code:
    a tree completes the forest exactly when its edge set contains the
    forest's. Unique whenever at most d-1 edges were erased.
    """
    if forest.n != code.n:
        raise ValueError("forest and code on different node sets")
    candidates = [t for t in code.codewords if forest.edges <= t.edges]
    if not candidates:
        raise ChannelViolationError("no codeword is consistent with the forest")
    if len(candidates) > 1:
        raise CertificationError(
            f"{len(candidates)} codewords complete the forest; "
            "declared distance must be wrong"
        )
    return candidates[0]


def generic_error_decode(
    code: TreeCode, received: LabeledTree, errors: int | None = None
) -> LabeledTree:
    """The unique codeword within floor((d-1)/2) of the received tree."""
    if received.n != code.n:
        raise ValueError("received tree and code on different node sets")
    psi = (code.declared_distance - 1) // 2 if errors is None else errors
    candidates = [
        t for t in code.codewords if tree_distance(received, t) <= psi
    ]
    if not candidates:
        raise ChannelViolationError(f"no codeword within distance {psi}")
    if len(candidates) > 1:
        raise CertificationError(
            f"{len(candidates)} codewords within distance {psi}; "
            "declared distance must be wrong"
        )
    return candidates[0]


# ---------------------------------------------------------------------------
# Construction: rotated zigzag lines, distance n-1
# ---------------------------------------------------------------------------


def _zigzag_order(n: int, s: int) -> list[int]:
    """Node order s, s-1, s+1, s-2, s+2, ... (mod n)."""
    order = []
    for i in range(n):
        k = (i + 1) // 2
        order.append((s + k) % n if i % 2 == 0 else (s - k) % n)
    return order


def construct_line_code(n: int) -> TreeCode:
    """floor(n/2) pairwise edge-disjoint Hamiltonian paths; distance n-1."""
    if n < 3:
        raise ValueError("line code needs n >= 3")
    words = [line(n, _zigzag_order(n, s)) for s in range(n // 2)]
    code = TreeCode(n, tuple(words), n - 1)
    certify(code)
    return code


def decode_line_code(code: TreeCode, forest: Forest) -> LabeledTree:
    """Any surviving edge identifies its path; all must agree."""
    if forest.n != code.n:
        raise ValueError("forest and code on different node sets")
    if not forest.edges:
        raise UndecodableError("all edges erased; the line code needs one survivor")
    owner: dict[Edge, int] = {}
    for s, t in enumerate(code.codewords):
        for e in t.edges:
            owner[e] = s
    picks = set()
    for e in forest.edges:
        if e not in owner:
            raise ChannelViolationError(f"edge {tuple(e)} is in no codeword")
        picks.add(owner[e])
    if len(picks) != 1:
        raise ChannelViolationError("surviving edges span several codewords")
    return code.codewords[picks.pop()]


# ---------------------------------------------------------------------------
# Construction: all stars, distance n-2
# ---------------------------------------------------------------------------


def construct_star_code(n: int) -> TreeCode:
    """All n stars; two stars share at most one edge, so distance is n-2."""
    if n < 4:
        raise ValueError("star code needs n >= 4")
    code = TreeCode(n, tuple(star(n, c) for c in range(n)), n - 2)
    certify(code)
    return code


def decode_star_code(code: TreeCode, forest: Forest) -> LabeledTree:
    """After at most n-3 erasures only the hub keeps degree >= 2."""
    n = code.n
    if forest.n != n:
        raise ValueError("forest and code on different node sets")
    deg = [0] * n
    for u, v in forest.edges:
        deg[u] += 1
        deg[v] += 1
    hubs = [v for v in range(n) if deg[v] >= 2]
    if not hubs:
        raise UndecodableError("no node of degree >= 2; too many erasures")
    if len(hubs) > 1:
        raise ChannelViolationError(f"several degree->=2 nodes: {hubs}")
    candidate = code.codewords[hubs[0]]
    if not forest.edges <= candidate.edges:
        raise ChannelViolationError("surviving edges are not all incident to the hub")
    return candidate


# ---------------------------------------------------------------------------
# Construction: one coset of a binary code with Hamming distance 2d-1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryCodeSpec:
    """Shortened BCH parity-check data used as the coset-code substrate.

    `rows` is the reduced parity-check matrix (one int bitmask per row, bit
    j = position j among the C(n,2) edge slots); `chosen_syndrome` is the
    coset label once a coset has been selected.
    """

    length: int
    designed_distance: int
    field_degree: int
    rows: tuple[int, ...]
    rank: int
    chosen_syndrome: int | None = None

    def syndrome(self, vector: int) -> int:
        return gf2.syndrome(self.rows, vector)

    def min_weight(self, max_dim: int = 24) -> int:
        """Exhaustive minimum weight of the kernel code (small instances)."""
        basis = gf2.nullspace_basis(self.rows, self.length)
        return gf2.min_weight(basis, max_dim=max_dim)


def build_binary_code(n: int, d: int) -> BinaryCodeSpec:
    """Parity-check of a binary code of length C(n,2) and distance >= 2d-1.

    Narrow-sense primitive BCH of designed distance 2d-1, shortened to the
    C(n,2) low positions. Trees whose edge-vectors share a syndrome then
    differ in >= 2d-1 slots, i.e. have tree distance >= d.
    """
    if d < 2:
        raise ValueError("the substrate needs d >= 2")
    length = comb(n, 2)
    if 2 * d - 1 > length:
        raise ValueError(f"designed distance {2 * d - 1} exceeds length {length}")
    raw, m = gf2.bch_parity_check(length, 2 * d - 1)
    rows, rank = gf2.rref(raw)
    return BinaryCodeSpec(
        length=length,
        designed_distance=2 * d - 1,
        field_degree=m,
        rows=tuple(rows),
        rank=rank,
    )


@dataclass(frozen=True)
class CosetCode(TreeCode):
    """Coset tree code with its substrate and chosen syndrome attached."""

    binary: BinaryCodeSpec = None  # type: ignore[assignment]

    @property
    def syndrome(self) -> int:
        return self.binary.chosen_syndrome


def construct_coset_code(n: int, d: int, max_trees: int | None = None) -> CosetCode:
    """Largest syndrome bucket of all n^(n-2) trees; ties go to the smallest
    syndrome. Size >= n^(n-2) / 2^rank by pigeonhole; distance >= d."""
    budget = tree_budget() if max_trees is None else max_trees
    total = count_trees(n)
    if total > budget:
        raise ResourceGuardError(
            f"materializing {total} trees exceeds the budget {budget}"
        )
    spec = build_binary_code(n, d)
    buckets: dict[int, list[LabeledTree]] = {}
    for t in enumerate_trees(n):
        buckets.setdefault(spec.syndrome(t.mask), []).append(t)
    best = min(buckets.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    syndrome, trees = best
    code = CosetCode(
        n=n,
        codewords=tuple(trees),
        declared_distance=d,
        binary=dataclasses.replace(spec, chosen_syndrome=syndrome),
    )
    certify(code)
    return code


# ---------------------------------------------------------------------------
# Construction: two-star trees over a prime n
# ---------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def two_star_distance(n: int, m: int) -> int:
    """floor(3n/4) - ceil(3n/(2m)) - 2."""
    return (3 * n) // 4 - -((-3 * n) // (2 * m)) - 2


def two_star_b_set(n: int, t: int) -> set[int]:
    """Valid hub residues for step t: ((n+1)/2 * i * t) mod n over odd i."""
    h = (n + 1) // 2
    return {(h * i * t) % n for i in range(1, n, 2)}


def two_star_membership(s: int, t: int, n: int, m: int) -> bool:
    """(s, t) indexes a codeword iff 1 <= t <= floor((n-1)/m) and s is in
    the step-t hub set."""
    if not 1 <= t <= (n - 1) // m:
        return False
    return s % n in two_star_b_set(n, t)


def two_star_W_set(n: int, t: int, alpha: int) -> set[int]:
    """Difference set {t, 2t, ..., alpha*t} mod n seen from a hub."""
    return {(i * t) % n for i in range(1, alpha + 1)}


def lemma_exclusive_center(a: int, t: int, n: int, m: int) -> bool:
    """True iff exactly one of (a, t) and (a - (n+1)/2 * t, t) is a valid
    codeword index. Holds for every a except a = 0, whose orbit position
    pairs it with another invalid residue."""
    h = (n + 1) // 2
    return two_star_membership(a, t, n, m) != two_star_membership(
        (a - h * t) % n, t, n, m
    )


def two_star_tree(n: int, s: int, t: int) -> LabeledTree:
    """Two-hub tree: v_s adjacent to s+t, s+2t, ..., s+(n+1)/2*t and the
    second hub v_(s+(n+1)/2*t) adjacent to the remaining n-2-(n-1)/2 nodes."""
    h = (n + 1) // 2
    plus = [Edge(s % n, (s + i * t) % n) for i in range(1, h + 1)]
    c2 = (s + h * t) % n
    minus = [Edge(c2, (s + (h + j) * t) % n) for j in range(1, (n - 3) // 2 + 1)]
    return LabeledTree(n, frozenset(plus) | frozenset(minus))


@dataclass(frozen=True)
class TwoStarParams:
    """Validated (s, t) index of a two-star codeword for given n, m."""

    n: int
    m: int
    s: int
    t: int

    def __post_init__(self) -> None:
        n, m = self.n, self.m
        if not is_prime(n) or n < 5:
            raise ValueError(f"n={n} must be an odd prime >= 5")
        if not 3 <= m <= n - 1:
            raise ValueError(f"m={m} outside [3, n-1]")
        if two_star_distance(n, m) < 1:
            raise ValueError(
                f"derived distance floor(3*{n}/4) - ceil(3*{n}/(2*{m})) - 2 < 1"
            )
        if not two_star_membership(self.s, self.t, n, m):
            raise ValueError(f"(s={self.s}, t={self.t}) is not a valid index")

    @property
    def distance(self) -> int:
        return two_star_distance(self.n, self.m)

    def tree(self) -> LabeledTree:
        return two_star_tree(self.n, self.s, self.t)


@dataclass(frozen=True)
class TwoStarCode(TreeCode):
    """Two-star code together with its modulus parameter m."""

    m: int = None  # type: ignore[assignment]
    pairs: tuple[tuple[int, int], ...] = ()


def construct_two_star_code(n: int, m: int) -> TwoStarCode:
    """One codeword per valid (s, t); size (n-1)/2 * floor((n-1)/m)."""
    if not is_prime(n) or n < 5:
        raise ValueError(f"n={n} must be an odd prime >= 5")
    if not 3 <= m <= n - 1:
        raise ValueError(f"m={m} outside [3, n-1]")
    d = two_star_distance(n, m)
    if d < 1:
        raise ValueError(
            f"derived distance floor(3*{n}/4) - ceil(3*{n}/(2*{m})) - 2 = {d} < 1"
        )
    pairs = []
    for t in range(1, (n - 1) // m + 1):
        for s in sorted(two_star_b_set(n, t)):
            pairs.append((s, t))
    code = TwoStarCode(
        n=n,
        codewords=tuple(two_star_tree(n, s, t) for s, t in pairs),
        declared_distance=d,
        m=m,
        pairs=tuple(pairs),
    )
    expected = (n - 1) // 2 * ((n - 1) // m)
    if len(code) != expected:
        raise CertificationError(f"size {len(code)} != {expected}")
    certify(code)
    return code


def decode_two_star(code: TwoStarCode, forest: Forest) -> LabeledTree:
    """Recover (s, t) from the hubs that survive an erasure pattern.

    With both hubs at degree >= 2, doubling the hub difference yields +-t
    and only the sign landing in [1, floor((n-1)/m)] is feasible. With one
    surviving hub, its neighbor-difference set pins t uniquely inside one
    of the two hub difference sets, and the exclusive-membership rule picks
    which hub is v_s.
    """
    n, m = code.n, code.m
    if forest.n != n:
        raise ValueError("forest and code on different node sets")
    h = (n + 1) // 2
    tmax = (n - 1) // m
    deg = [0] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in forest.edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    hubs = [v for v in range(n) if deg[v] >= 2]
    if not hubs:
        raise UndecodableError("no node of degree >= 2; too many erasures")
    if len(hubs) > 2:
        raise ChannelViolationError(f"{len(hubs)} nodes of degree >= 2")

    if len(hubs) == 2:
        a, b = hubs
        options = []
        t1 = (2 * (b - a)) % n
        if 1 <= t1 <= tmax:
            options.append((a, t1))
        t2 = (2 * (a - b)) % n
        if 1 <= t2 <= tmax:
            options.append((b, t2))
        if not options:
            raise ChannelViolationError("hub pair fits no valid step")
        if len(options) > 1:
            raise ChannelViolationError("hub pair fits two steps")
        s, t = options[0]
    else:
        (a,) = hubs
        diffs = {(u - a) % n for u in adj[a]}
        steps = set()
        for t in range(1, tmax + 1):
            for alpha in (h, h - 1):
                if diffs <= two_star_W_set(n, t, alpha):
                    steps.add(t)
        if not steps:
            raise ChannelViolationError("hub neighborhood fits no valid step")
        if len(steps) > 1:
            raise ChannelViolationError(f"ambiguous step among {sorted(steps)}")
        (t,) = steps
        cand_a = two_star_membership(a, t, n, m)
        other = (a - h * t) % n
        cand_other = two_star_membership(other, t, n, m)
        if cand_a and cand_other:
            raise CertificationError("both hub candidates index codewords")
        if not cand_a and not cand_other:
            raise ChannelViolationError("neither hub candidate indexes a codeword")
        s = a if cand_a else other

    decoded = two_star_tree(n, s, t)
    if not forest.edges <= decoded.edges:
        raise ChannelViolationError("surviving edges are inconsistent with (s, t)")
    return decoded


# ---------------------------------------------------------------------------
# Code JSON format: {"n": ..., "d": ..., "codewords": [["u-v", ...], ...]}
# ---------------------------------------------------------------------------


def code_to_json(code: TreeCode) -> str:
    payload = {
        "n": code.n,
        "d": code.declared_distance,
        "codewords": [
            [f"{u}-{v}" for u, v in t.sorted_edges] for t in code.codewords
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def code_from_json(text: str) -> TreeCode:
    payload = json.loads(text)
    n = payload["n"]
    codewords = []
    for edges in payload["codewords"]:
        pairs = []
        for item in edges:
            u, v = item.split("-")
            pairs.append((int(u), int(v)))
        codewords.append(LabeledTree.from_edges(n, pairs))
    return TreeCode(n, tuple(codewords), payload["d"])


def save_code(code: TreeCode, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(code_to_json(code) + "\n")


def load_code(path: str) -> TreeCode:
    with open(path, "r", encoding="utf-8") as fh:
        return code_from_json(fh.read())
