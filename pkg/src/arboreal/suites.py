"""Exhaustive verification suites over trees, balls, bounds, and codes.

Each suite expands into a list of picklable tasks, runs them (sequentially
or on a process pool), and merges the per-task results in task order, so
the output is byte-identical regardless of the worker count. All identity
checks compare exact integers or rationals; nothing here touches floats.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import balls, codes, counting, trees
from .balls import (
    _rhs_profile_sum,
    ball_histogram,
    pinned_products_batch,
    radius_one_ball_size,
)
from .trees import LabeledTree, enumerate_trees, prufer_decode, prufer_encode

__all__ = ["VerificationSuiteResult", "SUITE_NAMES", "run_suite", "suite_defaults"]

Task = tuple
Failure = dict


@dataclass
class VerificationSuiteResult:
    suite: str
    n_max: int
    t_max: int | None
    cases: int
    failures: list[Failure]
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_payload(self) -> dict:
        """JSON-ready summary; excludes wall time so reruns are byte-equal."""
        return {
            "schema": 1,
            "suite": self.suite,
            "n_max": self.n_max,
            "t_max": self.t_max,
            "cases": self.cases,
            "failures": self.failures,
            "ok": self.ok,
        }


def _fail(check: str, inputs: str, lhs, rhs) -> Failure:
    return {"check": check, "inputs": inputs, "lhs": str(lhs), "rhs": str(rhs)}


def _eq(out: list, cases: int, check: str, inputs: str, lhs, rhs) -> int:
    if lhs != rhs:
        out.append(_fail(check, inputs, lhs, rhs))
    return cases + 1


def _le(out: list, cases: int, check: str, inputs: str, lhs, rhs) -> int:
    if not lhs <= rhs:
        out.append(_fail(check, inputs, lhs, rhs))
    return cases + 1


# ---------------------------------------------------------------------------
# prufer: bijection round-trip, cardinality, degree law
# ---------------------------------------------------------------------------


def _run_prufer(n: int, prefix: tuple) -> tuple[int, list]:
    cases, failures = 0, []
    check_degrees = n <= 7
    count = 0
    for word in itertools.product(range(n), repeat=n - 2 - len(prefix)):
        full = prefix + word
        tree = prufer_decode(full, n)
        count += 1
        back = prufer_encode(tree)
        cases = _eq(failures, cases, "roundtrip", f"n={n} w={full}", back, full)
        if check_degrees:
            deg = tree.degrees()
            occ = [0] * n
            for w in full:
                occ[w] += 1
            cases = _eq(
                failures,
                cases,
                "degree-law",
                f"n={n} w={full}",
                tuple(occ),
                tuple(d - 1 for d in deg),
            )
    expected = n ** (n - 2 - len(prefix))
    cases = _eq(failures, cases, "chunk-count", f"n={n} prefix={prefix}", count, expected)
    return cases, failures


# ---------------------------------------------------------------------------
# metric: the distance axioms, exhaustively
# ---------------------------------------------------------------------------


def _run_metric(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    masks = trees.tree_masks(n)
    size = len(masks)
    top = n - 1
    dist = [[top - (masks[i] & masks[j]).bit_count() for j in range(size)] for i in range(size)]
    for i in range(size):
        cases = _eq(failures, cases, "identity", f"n={n} i={i}", dist[i][i], 0)
        for j in range(i + 1, size):
            d = dist[i][j]
            if d < 1 or d > top:
                failures.append(_fail("range", f"n={n} i={i} j={j}", d, f"[1,{top}]"))
            cases += 1
            if (d == top) != (masks[i] & masks[j] == 0):
                failures.append(
                    _fail("max-iff-disjoint", f"n={n} i={i} j={j}", d, top)
                )
            cases += 1
    for i, j, k in itertools.combinations(range(size), 3):
        dij, dik, djk = dist[i][j], dist[i][k], dist[j][k]
        ok = dik <= dij + djk and dij <= dik + djk and djk <= dij + dik
        if not ok:
            failures.append(
                _fail("triangle", f"n={n} ({i},{j},{k})", (dij, dik, djk), "triangle")
            )
        cases += 1
    return cases, failures


# ---------------------------------------------------------------------------
# forest-count: closed forms vs oracles vs special cases
# ---------------------------------------------------------------------------


def _run_fc_brute(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    for d in range(1, n + 1):
        closed = counting.forest_count_closed(n, d)
        brute = counting.forest_count_bruteforce(n, d)
        cases = _eq(failures, cases, "closed-vs-brute", f"n={n} d={d}", closed, brute)
        part = counting.forest_count_partitions(n, d)
        cases = _eq(failures, cases, "closed-vs-partitions", f"n={n} d={d}", closed, part)
    return cases, failures


def _run_fc_table(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    for d, value in counting.corollary_table(n):
        closed = counting.forest_count_closed(n, d)
        cases = _eq(failures, cases, "special-case", f"n={n} d={d}", value, closed)
    return cases, failures


# ---------------------------------------------------------------------------
# ball-formula: completion counts vs the product formula and shape sums
# ---------------------------------------------------------------------------


def _run_ball_formula(n: int, t: int) -> tuple[int, list]:
    cases, failures = 0, []
    shapes = list(enumerate_trees(t + 1)) if t >= 1 else []
    for forest in counting.enumerate_forests(n, t + 1):
        completions = balls.forest_completions(forest)
        formula = balls.forest_ball_size_formula(forest)
        label = f"n={n} t={t} F={trees.format_edge_set(n, forest.edges)}"
        cases = _eq(failures, cases, "formula-vs-oracle", label, formula, len(completions))
        if t >= 1:
            p1 = sum(balls.p1_count(forest, s) for s in shapes)
            cases = _eq(failures, cases, "shape-sum", label, p1, len(completions))
            p2 = sum(balls.p2_count(forest, s) for s in shapes)
            cases = _eq(failures, cases, "reduced-shape-sum", label, p2, n ** (t - 1))
    return cases, failures


# ---------------------------------------------------------------------------
# recursion: the binomial-weighted ball/sphere identities
# ---------------------------------------------------------------------------


def _check_recursions(tree: LabeledTree, hist: list[int], failures: list, cases: int) -> int:
    n = tree.n
    ball_sizes = list(itertools.accumulate(hist))
    label_tree = trees.format_prufer(prufer_encode(tree)) if n >= 2 else "n=1"
    for t in range(n):
        rhs = _rhs_profile_sum(tree, t)
        lhs = sum(
            balls._binom(n - 2 - t + i, i) * ball_sizes[t - i] for i in range(t + 1)
        )
        label = f"n={n} t={t} {label_tree}"
        cases = _eq(failures, cases, "ball-recursion", label, lhs, rhs)
        lhs_s = sum(
            balls._binom(n - 1 - t + i, i) * hist[t - i] for i in range(t + 1)
        )
        cases = _eq(failures, cases, "sphere-recursion", label, lhs_s, rhs)
        lo = balls.star_identity_rhs(n, t)
        hi = balls.line_identity_rhs(n, t)
        cases = _le(failures, cases, "weighted-sum-lower", label, lo, rhs)
        cases = _le(failures, cases, "weighted-sum-upper", label, rhs, hi)
    cases = _eq(
        failures,
        cases,
        "full-ball",
        f"n={n} {label_tree}",
        ball_sizes[n - 1],
        trees.count_trees(n),
    )
    return cases


def _run_recursion(n: int, prefix: tuple) -> tuple[int, list]:
    cases, failures = 0, []
    masks = trees.tree_masks(n)
    for tree in enumerate_trees(n, prefix):
        hist = ball_histogram(tree, masks)
        cases = _check_recursions(tree, hist, failures, cases)
    return cases, failures


def _run_recursion_sample(n: int, count: int, seed: int) -> tuple[int, list]:
    cases, failures = 0, []
    masks = trees.tree_masks(n)
    rng = random.Random(seed)
    for _ in range(count):
        word = tuple(rng.randrange(n) for _ in range(n - 2))
        tree = prufer_decode(word, n)
        hist = ball_histogram(tree, masks)
        cases = _check_recursions(tree, hist, failures, cases)
    return cases, failures


# ---------------------------------------------------------------------------
# star / line: closed forms and extremal orderings
# ---------------------------------------------------------------------------


def _run_star(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    hub = trees.star(n, 0)
    hist = ball_histogram(hub)
    running = 0
    for t in range(n):
        running += hist[t]
        cases = _eq(
            failures, cases, "star-sphere", f"n={n} t={t}",
            balls.star_sphere_formula(n, t), hist[t],
        )
        cases = _eq(
            failures, cases, "star-ball", f"n={n} t={t}",
            balls.star_ball_formula(n, t), running,
        )
    return cases, failures


def _run_sandwich(n: int) -> tuple[int, list]:
    """Radius-one extremes: the star is smallest, the path largest."""
    cases, failures = 0, []
    lo = balls.star_ball_formula(n, 1)
    hi = balls.radius_one_ball_size(trees.line(n))
    for tree in enumerate_trees(n):
        v = radius_one_ball_size(tree)
        if not lo <= v <= hi:
            failures.append(
                _fail(
                    "radius-one-sandwich",
                    f"n={n} {trees.format_prufer(prufer_encode(tree))}",
                    v,
                    (lo, hi),
                )
            )
        cases += 1
    return cases, failures


def _run_star_trend() -> tuple[int, list]:
    cases, failures = 0, []
    ratios = [Fraction(balls.star_ball_formula(n, 1), n**2) for n in range(5, 10)]
    for a, b in zip(ratios, ratios[1:]):
        cases = _le(failures, cases, "star-trend-monotone", "5<=n<=9", a, b)
    for r in ratios:
        cases = _le(failures, cases, "star-trend-bounded", "5<=n<=9", r, Fraction(1))
    return cases, failures


def _run_line(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    path = trees.line(n)
    hist = ball_histogram(path)
    ball_sizes = list(itertools.accumulate(hist))
    for t in range(n):
        lhs = sum(
            balls._binom(n - 2 - t + i, i) * ball_sizes[t - i] for i in range(t + 1)
        )
        cases = _eq(
            failures, cases, "line-identity", f"n={n} t={t}",
            lhs, balls.line_identity_rhs(n, t),
        )
    return cases, failures


def _run_line_trend() -> tuple[int, list]:
    cases, failures = 0, []
    ratios = [
        Fraction(balls.radius_one_ball_size(trees.line(n)), n**3) for n in range(5, 10)
    ]
    for a, b in zip(ratios, ratios[1:]):
        cases = _le(failures, cases, "line-trend-monotone", "5<=n<=9", a, b)
    for r in ratios:
        cases = _le(failures, cases, "line-trend-bounded", "5<=n<=9", r, Fraction(1, 6))
    return cases, failures


# ---------------------------------------------------------------------------
# pinned: the pinned profile-product sums
# ---------------------------------------------------------------------------


def _pinsets_upto(n: int, max_len: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for l in range(0, max_len + 1):
        out.extend(itertools.combinations(range(n), l))
    return out


def _run_pin_recursion(n: int, prefix: tuple) -> tuple[int, list]:
    """Definition vs leaf-deletion recursion, all leaves, all pin sets.

    Pin vectors reduce to sorted pin sets: the sum is invariant under pin
    order, and repeated pins vanish on both sides by definition.
    """
    cases, failures = 0, []
    for tree in enumerate_trees(n, prefix):
        deg = tree.degrees()
        leaves = [v for v in range(n) if deg[v] == 1]
        subs = {x: balls._delete_leaf(tree, x) for x in leaves}
        tree_label = trees.format_prufer(prufer_encode(tree))
        for t in range(0, n - 1):
            pinsets = _pinsets_upto(n, min(t + 1, n))
            lhs_vals = pinned_products_batch(tree, t, pinsets)
            for x in leaves:
                sub, relabel, neighbor = subs[x]
                y = relabel[neighbor]
                slots_t: dict[tuple, int] = {}
                slots_t1: dict[tuple, int] = {}

                def slot(d: dict, key: tuple) -> int:
                    if key not in d:
                        d[key] = len(d)
                    return d[key]

                plans = []
                for pins in pinsets:
                    if x not in pins:
                        mapped = tuple(relabel[v] for v in pins)
                        items = [("t", slot(slots_t, mapped))]
                        if len(mapped) + 1 <= t + 1:
                            items.append(("t", slot(slots_t, mapped + (y,))))
                        if t >= 1:
                            items.append(("t1", slot(slots_t1, mapped)))
                    else:
                        head = tuple(relabel[v] for v in pins if v != x)
                        items = [("t", slot(slots_t, head + (y,)))]
                        if t >= 1 and len(head) <= t:
                            items.append(("t1", slot(slots_t1, head)))
                    plans.append(items)
                vals_t = pinned_products_batch(sub, t, list(slots_t))
                vals_t1 = (
                    pinned_products_batch(sub, t - 1, list(slots_t1))
                    if t >= 1 and slots_t1
                    else []
                )
                for k, (pins, items) in enumerate(zip(pinsets, plans)):
                    rhs = sum(
                        (vals_t[i] if lev == "t" else vals_t1[i]) for lev, i in items
                    )
                    cases += 1
                    if lhs_vals[k] != rhs:
                        failures.append(
                            _fail(
                                "pinned-recursion",
                                f"n={n} t={t} pins={pins} leaf={x} {tree_label}",
                                lhs_vals[k],
                                rhs,
                            )
                        )
    return cases, failures


def _run_pin_bound(n: int, t_max: int, prefix: tuple) -> tuple[int, list]:
    cases, failures = 0, []
    for tree in enumerate_trees(n, prefix):
        tree_label = trees.format_prufer(prufer_encode(tree))
        for t in range(0, min(t_max, n - 1) + 1):
            pinsets = _pinsets_upto(n, min(t + 1, n))
            vals = pinned_products_batch(tree, t, pinsets)
            for pins, val in zip(pinsets, vals):
                l = len(pins)
                bound = comb(n + t - l, 2 * t + 1 - l)
                cases = _le(
                    failures, cases, "pinned-bound",
                    f"n={n} t={t} pins={pins} {tree_label}", val, bound,
                )
    return cases, failures


def _run_pin_line_equality(n: int, t_max: int) -> tuple[int, list]:
    """The path achieves the unpinned bound with equality."""
    cases, failures = 0, []
    path = trees.line(n)
    for t in range(0, min(t_max, n - 1) + 1):
        val = balls.pinned_product(balls.PinnedQuery(path, t, ()))
        cases = _eq(
            failures, cases, "line-achieves-bound", f"n={n} t={t}",
            val, comb(n + t, 2 * t + 1),
        )
    return cases, failures


# ---------------------------------------------------------------------------
# average: exhaustive averages vs closed forms
# ---------------------------------------------------------------------------


def _run_avg_r1(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    exhaustive = balls.sum_ball_sizes(n, 1)
    closed = balls.radius_one_ball_total(n)
    cases = _eq(failures, cases, "radius-one-total", f"n={n}", closed, exhaustive)
    return cases, failures


def _run_avg_lemma29(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    lhs, rhs = balls.lemma29_check(n)
    cases = _eq(failures, cases, "squared-completions", f"n={n}", lhs, rhs)
    return cases, failures


def _run_avg_eq20(n: int, t: int) -> tuple[int, list]:
    cases, failures = 0, []
    lhs, rhs = balls.double_count_check(n, t, use_completions=(n <= 5))
    cases = _eq(failures, cases, "double-count", f"n={n} t={t}", lhs, rhs)
    return cases, failures


def _run_avg_recursion(n: int, t: int) -> tuple[int, list]:
    cases, failures = 0, []
    lhs, rhs = balls.average_recursion_check(n, t)
    cases = _eq(failures, cases, "average-recursion", f"n={n} t={t}", lhs, rhs)
    return cases, failures


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def _run_bounds_grid(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    values = [counting.best_upper_bound(n, d).value for d in range(1, n)]
    for d, (a, b) in enumerate(zip(values, values[1:]), start=1):
        cases = _le(failures, cases, "bound-monotone", f"n={n} d={d}->{d+1}", b, a)
    cases = _eq(
        failures, cases, "half-n", f"n={n}",
        counting.sphere_packing_bound(n, n - 1).value, n // 2,
    )
    for d in range(1, n):
        cases = _le(
            failures, cases, "bound-positive", f"n={n} d={d}",
            1, counting.best_upper_bound(n, d).value,
        )
    return cases, failures


def _run_bounds_spot() -> tuple[int, list]:
    cases, failures = 0, []
    cases = _eq(
        failures, cases, "sphere-packing-4-2", "n=4 d=2",
        counting.sphere_packing_bound(4, 2).value, 5,
    )
    ten8 = counting.best_upper_bound(10, 8)
    cases = _eq(failures, cases, "improved-n-2", "n=10 d=8", (ten8.value, ten8.provenance), (10, "improved-(n-2)"))
    nine6 = counting.best_upper_bound(9, 6)
    cases = _eq(failures, cases, "improved-n-3", "n=9 d=6", (nine6.value, nine6.provenance), (81, "improved-(n-3)"))
    for n in range(2, 101):
        for i in range(1, n):
            if not n - 1 <= i * (n - i):
                failures.append(_fail("cut-product", f"n={n} i={i}", i * (n - i), n - 1))
            cases += 1
    return cases, failures


def _run_bounds_search(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    top = counting.max_code_search(n, n - 1)
    cases = _eq(failures, cases, "search-d=n-1", f"n={n}", len(top), n // 2)
    near = counting.max_code_search(n, n - 2)
    cases = _eq(failures, cases, "search-d=n-2", f"n={n}", len(near), n)
    for code, d in ((top, n - 1), (near, n - 2)):
        cases = _le(
            failures, cases, "search-below-bound", f"n={n} d={d}",
            len(code), counting.best_upper_bound(n, d).value,
        )
    return cases, failures


def _run_bounds_reiman(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_star_code(n)
    sets = [t.edges for t in code.codewords]
    girth_ok = counting.incidence_girth_at_least_six(sets)
    cases = _eq(failures, cases, "star-incidence-girth", f"n={n}", girth_ok, True)
    u = comb(n, 2)
    v = len(code)
    e = v * (n - 1)
    cases = _eq(
        failures, cases, "reiman", f"n={n} U={u} V={v} E={e}",
        counting.reiman_holds(u, v, e), True,
    )
    return cases, failures


# ---------------------------------------------------------------------------
# codes: parameters and exhaustive decoder sweeps
# ---------------------------------------------------------------------------


def _run_code_line(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_line_code(n)
    cases = _eq(failures, cases, "line-size", f"n={n}", len(code), n // 2)
    if len(code) > 1:
        cases = _eq(
            failures, cases, "line-distance", f"n={n}",
            codes.min_tree_distance(code), n - 1,
        )
    for a, b in itertools.combinations(code.codewords, 2):
        cases = _eq(
            failures, cases, "line-disjoint", f"n={n}", len(a.edges & b.edges), 0
        )
    return cases, failures


def _run_code_star(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_star_code(n)
    cases = _eq(failures, cases, "star-size", f"n={n}", len(code), n)
    cases = _eq(
        failures, cases, "star-distance", f"n={n}",
        codes.min_tree_distance(code), n - 2,
    )
    return cases, failures


def _run_code_coset(n: int, d: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_coset_code(n, d)
    mind = codes.min_tree_distance(code)
    cases = _le(failures, cases, "coset-distance", f"n={n} d={d}", d, mind)
    floor_size = trees.count_trees(n) // (1 << code.binary.rank)
    cases = _le(
        failures, cases, "coset-pigeonhole", f"n={n} d={d} rank={code.binary.rank}",
        max(floor_size, 1), len(code),
    )
    return cases, failures


def _run_code_twostar(n: int, m: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_two_star_code(n, m)
    expected = (n - 1) // 2 * ((n - 1) // m)
    cases = _eq(failures, cases, "twostar-size", f"n={n} m={m}", len(code), expected)
    d = codes.two_star_distance(n, m)
    cases = _le(
        failures, cases, "twostar-distance", f"n={n} m={m}",
        d, codes.min_tree_distance(code),
    )
    return cases, failures


def _run_code_structure() -> tuple[int, list]:
    cases, failures = 0, []
    for n in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        for m in range(3, n):
            if codes.two_star_distance(n, m) < 1:
                continue
            for t in range(1, (n - 1) // m + 1):
                for s in sorted(codes.two_star_b_set(n, t)):
                    tree = codes.two_star_tree(n, s, t)
                    deg = tree.degrees()
                    leaves = sum(1 for x in deg if x == 1)
                    hubs = sorted((x for x in deg if x >= 2), reverse=True)
                    label = f"n={n} m={m} s={s} t={t}"
                    cases = _eq(failures, cases, "twostar-leaves", label, leaves, n - 2)
                    cases = _eq(
                        failures, cases, "twostar-hub-degrees", label,
                        hubs, [(n + 1) // 2, (n - 1) // 2],
                    )
            # exclusive-membership rule for every nonzero residue
            for t in range(1, (n - 1) // m + 1):
                for a in range(1, n):
                    ok = codes.lemma_exclusive_center(a, t, n, m)
                    cases = _eq(
                        failures, cases, "hub-exclusive", f"n={n} m={m} a={a} t={t}",
                        ok, True,
                    )
    return cases, failures


def _run_code_overlap(n: int, m: int) -> tuple[int, list]:
    cases, failures = 0, []
    tmax = (n - 1) // m
    limit = -((-n) // 4) + -((-3 * n) // (2 * m)) + 1
    for alpha in ((n + 1) // 2, (n - 1) // 2):
        for t1 in range(1, tmax + 1):
            for t2 in range(t1 + 1, tmax + 1):
                inter = len(
                    codes.two_star_W_set(n, t1, alpha)
                    & codes.two_star_W_set(n, t2, alpha)
                )
                if not inter < limit:
                    failures.append(
                        _fail(
                            "difference-set-overlap",
                            f"n={n} m={m} t1={t1} t2={t2} alpha={alpha}",
                            inter,
                            limit,
                        )
                    )
                cases += 1
    return cases, failures


def _erasure_sweep(
    code, decode, rho: int, failures: list, cases: int, label: str
) -> int:
    for cw in code.codewords:
        edges = sorted(cw.edges)
        for removed in itertools.combinations(edges, rho):
            forest = trees.Forest.from_edges(code.n, set(edges) - set(removed))
            inputs = f"{label} cw={trees.format_prufer(prufer_encode(cw))} rm={removed}"
            try:
                got = decode(code, forest)
            except Exception as exc:  # decoder must not fail in capability
                failures.append(_fail("decode-raises", inputs, repr(exc), "codeword"))
                cases += 1
                continue
            cases = _eq(failures, cases, "decode", inputs, sorted(got.edges), edges)
            generic = codes.generic_erasure_decode(code, forest)
            cases = _eq(
                failures, cases, "decode-vs-generic", inputs,
                sorted(got.edges), sorted(generic.edges),
            )
    return cases


def _run_dec_line(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_line_code(n)
    cases = _erasure_sweep(code, codes.decode_line_code, n - 2, failures, cases, f"line n={n}")
    return cases, failures


def _run_dec_star(n: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_star_code(n)
    cases = _erasure_sweep(code, codes.decode_star_code, n - 3, failures, cases, f"star n={n}")
    return cases, failures


def _run_dec_twostar(n: int, m: int, rho_max: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_two_star_code(n, m)
    for rho in range(1, rho_max + 1):
        cases = _erasure_sweep(
            code, codes.decode_two_star, rho, failures, cases, f"twostar n={n} m={m}"
        )
    return cases, failures


def _run_dec_coset(n: int, d: int, rho_max: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_coset_code(n, d)
    for rho in range(1, rho_max + 1):
        for cw in code.codewords:
            edges = sorted(cw.edges)
            for removed in itertools.combinations(edges, rho):
                forest = trees.Forest.from_edges(n, set(edges) - set(removed))
                got = codes.generic_erasure_decode(code, forest)
                cases = _eq(
                    failures, cases, "coset-decode",
                    f"n={n} d={d} rm={removed}", sorted(got.edges), edges,
                )
    return cases, failures


def _run_err_twostar(n: int, m: int) -> tuple[int, list]:
    cases, failures = 0, []
    code = codes.construct_two_star_code(n, m)
    for cw in code.codewords:
        for e in sorted(cw.edges):
            forest = trees.remove_edges(cw, [e])
            c0, c1 = forest.components
            for u in sorted(c0):
                for v in sorted(c1):
                    replacement = trees.Edge(u, v)
                    if replacement == e:
                        continue
                    corrupted = LabeledTree(n, forest.edges | {replacement})
                    got = codes.generic_error_decode(code, corrupted)
                    cases = _eq(
                        failures, cases, "error-decode",
                        f"n={n} m={m} -{tuple(e)}+{tuple(replacement)}",
                        sorted(got.edges), sorted(cw.edges),
                    )
    return cases, failures


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

_RUNNERS = {
    "prufer": _run_prufer,
    "metric": _run_metric,
    "fc-brute": _run_fc_brute,
    "fc-table": _run_fc_table,
    "ball-formula": _run_ball_formula,
    "recursion": _run_recursion,
    "recursion-sample": _run_recursion_sample,
    "star": _run_star,
    "sandwich": _run_sandwich,
    "star-trend": _run_star_trend,
    "line": _run_line,
    "line-trend": _run_line_trend,
    "pin-recursion": _run_pin_recursion,
    "pin-bound": _run_pin_bound,
    "pin-line-equality": _run_pin_line_equality,
    "avg-r1": _run_avg_r1,
    "avg-lemma29": _run_avg_lemma29,
    "avg-eq20": _run_avg_eq20,
    "avg-recursion": _run_avg_recursion,
    "bounds-grid": _run_bounds_grid,
    "bounds-spot": _run_bounds_spot,
    "bounds-search": _run_bounds_search,
    "bounds-reiman": _run_bounds_reiman,
    "code-line": _run_code_line,
    "code-star": _run_code_star,
    "code-coset": _run_code_coset,
    "code-twostar": _run_code_twostar,
    "code-structure": _run_code_structure,
    "code-overlap": _run_code_overlap,
    "dec-line": _run_dec_line,
    "dec-star": _run_dec_star,
    "dec-twostar": _run_dec_twostar,
    "dec-coset": _run_dec_coset,
    "err-twostar": _run_err_twostar,
}


def _chunked(n: int, threshold: int = 6) -> list[tuple]:
    """Prefix partitions of the word space, one chunk per first symbol."""
    if n >= threshold and n >= 3:
        return [(i,) for i in range(n)]
    return [()]


def _tasks_prufer(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = []
    for n in range(2, n_max + 1):
        for prefix in _chunked(n, threshold=8):
            tasks.append(("prufer", n, prefix))
    return tasks


def _tasks_metric(n_max: int, t_max) -> list[Task]:
    return [("metric", n) for n in range(2, min(n_max, 5) + 1)]


def _tasks_forest_count(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = [("fc-brute", n) for n in range(1, min(n_max, 7) + 1)]
    tasks += [("fc-table", n) for n in range(1, n_max + 1)]
    return tasks


def _tasks_ball_formula(n_max: int, t_max) -> list[Task]:
    t_cap = 3 if t_max is None else t_max
    return [
        ("ball-formula", n, t)
        for n in range(2, n_max + 1)
        for t in range(0, min(t_cap, n - 1) + 1)
    ]


def _tasks_recursion(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = []
    for n in range(2, min(n_max, 6) + 1):
        for prefix in _chunked(n):
            tasks.append(("recursion", n, prefix))
    if n_max >= 7:
        tasks.append(("recursion-sample", 7, 1000, 20210))
    return tasks


def _tasks_star(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = [("star", n) for n in range(2, n_max + 1)]
    tasks += [("sandwich", n) for n in range(3, min(n_max, 7) + 1)]
    tasks.append(("star-trend",))
    return tasks


def _tasks_line(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = [("line", n) for n in range(2, n_max + 1)]
    tasks.append(("line-trend",))
    return tasks


def _tasks_pinned(n_max: int, t_max) -> list[Task]:
    t_cap = 3 if t_max is None else t_max
    tasks: list[Task] = []
    for n in range(2, min(n_max, 6) + 1):
        for prefix in _chunked(n):
            tasks.append(("pin-recursion", n, prefix))
    for n in range(2, n_max + 1):
        for prefix in _chunked(n):
            tasks.append(("pin-bound", n, t_cap, prefix))
        tasks.append(("pin-line-equality", n, t_cap))
    return tasks


def _tasks_average(n_max: int, t_max) -> list[Task]:
    t_cap = 2 if t_max is None else t_max
    tasks: list[Task] = [("avg-r1", n) for n in range(2, min(n_max, 7) + 1)]
    tasks += [("avg-lemma29", n) for n in range(3, min(n_max, 6) + 1)]
    for n in range(2, min(n_max, 6) + 1):
        for t in range(0, min(3, n - 1) + 1):
            tasks.append(("avg-eq20", n, t))
    for n in range(2, min(n_max, 6) + 1):
        for t in range(0, min(t_cap, n - 1) + 1):
            tasks.append(("avg-recursion", n, t))
    return tasks


def _tasks_bounds(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = [("bounds-grid", n) for n in range(2, min(n_max, 12) + 1)]
    tasks.append(("bounds-spot",))
    tasks += [("bounds-search", n) for n in (4, 5, 6) if n <= n_max]
    tasks += [("bounds-reiman", n) for n in range(4, min(n_max, 10) + 1)]
    return tasks


def _tasks_codes(n_max: int, t_max) -> list[Task]:
    tasks: list[Task] = []
    tasks += [("code-line", n) for n in range(3, min(n_max, 14) + 1)]
    tasks += [("code-star", n) for n in range(4, min(n_max, 12) + 1)]
    tasks += [
        ("code-coset", n, d)
        for n, d in ((5, 2), (6, 2), (6, 3), (7, 2))
        if n <= n_max
    ]
    tasks += [
        ("code-twostar", n, m)
        for n, m in ((11, 5), (13, 6), (17, 6))
        if n <= max(n_max, 17)
    ]
    tasks.append(("code-structure",))
    tasks += [("code-overlap", n, m) for n, m in ((11, 5), (13, 6), (17, 6))]
    tasks += [("dec-line", n) for n in range(3, min(n_max, 9) + 1)]
    tasks += [("dec-star", n) for n in range(4, min(n_max, 8) + 1)]
    tasks += [("dec-twostar", 11, 5, 1), ("dec-twostar", 13, 6, 2)]
    if n_max >= 6:
        tasks.append(("dec-coset", 6, 3, 2))
    tasks.append(("err-twostar", 13, 6))
    return tasks


_SUITES = {
    "prufer": (_tasks_prufer, 8, None),
    "metric": (_tasks_metric, 5, None),
    "forest-count": (_tasks_forest_count, 12, None),
    "ball-formula": (_tasks_ball_formula, 6, 3),
    "recursion": (_tasks_recursion, 6, None),
    "star": (_tasks_star, 7, None),
    "line": (_tasks_line, 7, None),
    "pinned": (_tasks_pinned, 6, 3),
    "average": (_tasks_average, 6, 2),
    "bounds": (_tasks_bounds, 12, None),
    "codes": (_tasks_codes, 14, None),
}

SUITE_NAMES = tuple(_SUITES)


def suite_defaults(name: str) -> tuple[int, int | None]:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    _, n_default, t_default = _SUITES[name]
    return n_default, t_default


def _run_task(task: Task) -> tuple[int, list]:
    kind, *args = task
    return _RUNNERS[kind](*args)


def run_suite(
    name: str,
    n_max: int | None = None,
    t_max: int | None = None,
    threads: int = 1,
) -> VerificationSuiteResult:
    """Run one named suite and merge per-task results in task order."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    builder, n_default, t_default = _SUITES[name]
    n_cap = n_default if n_max is None else n_max
    t_cap = t_default if t_max is None else t_max
    tasks = builder(n_cap, t_cap)
    start = time.monotonic()
    if threads <= 1:
        parts = [_run_task(task) for task in tasks]
    else:
        import multiprocessing

        with multiprocessing.Pool(threads) as pool:
            parts = pool.map(_run_task, tasks)
    cases = sum(c for c, _ in parts)
    failures: list[Failure] = []
    for _, fs in parts:
        failures.extend(fs)
    wall = time.monotonic() - start
    return VerificationSuiteResult(name, n_cap, t_cap, cases, failures, wall)
