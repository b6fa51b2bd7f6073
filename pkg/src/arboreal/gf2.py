"""GF(2) linear algebra on int bitmask rows and BCH parity-check matrices.

Rows are Python ints: bit j is the coefficient of position j. This keeps
rank computation, syndromes, and nullspace scans exact, allocation-free,
and fast enough for the desk-scale code lengths used here (C(n,2) <= 28).
"""

from __future__ import annotations

from typing import Sequence

__all__ = [
    "PRIMITIVE_POLYS",
    "GF2m",
    "rref",
    "nullspace_basis",
    "min_weight",
    "bch_parity_check",
    "syndrome",
]

# Primitive polynomials over GF(2), degree -> bitmask (x^4+x+1 = 0b10011).
PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


class GF2m:
    """The field GF(2^m) with exp/log tables over a primitive polynomial."""

    def __init__(self, m: int):
        if m not in PRIMITIVE_POLYS:
            raise ValueError(f"no primitive polynomial configured for m={m}")
        self.m = m
        self.order = (1 << m) - 1
        poly = PRIMITIVE_POLYS[m]
        exp = [0] * (2 * self.order)
        log = [0] * (1 << m)
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x >> m:
                x ^= poly
        if x != 1:
            raise ValueError(f"polynomial {poly:#b} is not primitive for m={m}")
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp = exp
        self.log = log

    def pow_alpha(self, k: int) -> int:
        """alpha^k for the primitive element alpha."""
        return self.exp[k % self.order]


def rref(rows: Sequence[int]) -> tuple[list[int], int]:
    """Reduced row echelon form over GF(2); returns (nonzero rows, rank).

    Pivots are chosen at the lowest set bit first, so the result is a
    canonical basis of the row space.
    """
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            low = row & -row
            for i, b in enumerate(basis[:-1]):
                if b & low:
                    basis[i] = b ^ row
    basis.sort(key=lambda r: r & -r)
    return basis, len(basis)


def nullspace_basis(rows: Sequence[int], length: int) -> list[int]:
    """Basis of {v : every row r has parity(r & v) = 0}, as bitmask ints."""
    basis, rank = rref(rows)
    pivots = [(r & -r).bit_length() - 1 for r in basis]
    pivot_set = set(pivots)
    free = [j for j in range(length) if j not in pivot_set]
    out = []
    for j in free:
        v = 1 << j
        for r, p in zip(basis, pivots):
            if (r >> j) & 1:
                v |= 1 << p
        out.append(v)
    return out


def min_weight(basis: Sequence[int], max_dim: int = 24) -> int:
    """Minimum Hamming weight of a nonzero codeword, by exhaustive scan."""
    k = len(basis)
    if k == 0:
        raise ValueError("code is trivial")
    if k > max_dim:
        raise ValueError(f"dimension {k} exceeds exhaustive-scan limit {max_dim}")
    best = None
    # Gray-code walk: flip one basis vector per step.
    word = 0
    prev = 0
    for i in range(1, 1 << k):
        gray = i ^ (i >> 1)
        word ^= basis[(gray ^ prev).bit_length() - 1]
        prev = gray
        w = word.bit_count()
        if best is None or w < best:
            best = w
    return best


def bch_parity_check(length: int, designed_distance: int) -> tuple[list[int], int]:
    """Parity-check rows of a narrow-sense primitive BCH code shortened to
    `length` positions, and the extension degree m.

    The parent code has length 2^m - 1 with m minimal such that
    2^m - 1 >= length; its roots are alpha^1 .. alpha^(designed_distance-1).
    Shortening keeps the low positions 0..length-1, which preserves the
    designed minimum distance. Rows are NOT rank-reduced.
    """
    if designed_distance < 2:
        raise ValueError("designed distance must be at least 2")
    if length < 1:
        raise ValueError("length must be positive")
    m = 2
    while (1 << m) - 1 < length:
        m += 1
    if m not in PRIMITIVE_POLYS:
        raise ValueError(f"length {length} needs GF(2^{m}), not configured")
    if designed_distance > length:
        raise ValueError(
            f"designed distance {designed_distance} exceeds length {length}"
        )
    field = GF2m(m)
    rows = []
    for r in range(1, designed_distance):
        # Row over GF(2^m): (alpha^0, alpha^r, alpha^2r, ...); expand into
        # m binary rows, one per basis coordinate of the field element.
        cells = [field.pow_alpha(r * j) for j in range(length)]
        for bit in range(m):
            row = 0
            for j, c in enumerate(cells):
                if (c >> bit) & 1:
                    row |= 1 << j
            rows.append(row)
    return rows, m


def syndrome(rows: Sequence[int], vector: int) -> int:
    """Syndrome bits of `vector` against the given rows, packed low-first."""
    s = 0
    for i, row in enumerate(rows):
        if (row & vector).bit_count() & 1:
            s |= 1 << i
    return s
