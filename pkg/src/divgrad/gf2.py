"""Linear algebra over GF(2) with vectors packed into int bitmasks."""
from __future__ import annotations

from typing import Sequence

from .groups import Element, FinAbelianGroup, sub_squares


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def rank(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def kernel(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : row . x = 0 for every row}, as bitmasks over ``ncols`` bits."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = r.bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= r
        pivots[col] = r
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        x = 1 << fcol
        for col, prow in pivots.items():
            if prow >> fcol & 1:
                x |= 1 << col
        out.append(x)
    return out


def solve_images(columns: Sequence[int], nbits: int) -> list[int] | None:
    """Invert the square matrix whose i-th column is ``columns[i]``; returns its columns."""
    n = len(columns)
    rows = []
    for r in range(nbits):
        v = 0
        for c, col in enumerate(columns):
            if col >> r & 1:
                v |= 1 << c
        rows.append((v, 1 << r))
    for c in range(n):
        piv = next((i for i in range(c, nbits) if rows[i][0] >> c & 1), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        for i in range(nbits):
            if i != c and rows[i][0] >> c & 1:
                rows[i] = (rows[i][0] ^ rows[c][0], rows[i][1] ^ rows[c][1])
    # rows[c][1] is row c of the inverse; return columns
    inv_cols = []
    for j in range(nbits):
        v = 0
        for c in range(n):
            if rows[c][1] >> j & 1:
                v |= 1 << c
        inv_cols.append(v)
    return inv_cols


class QuotientCoords:
    """GF(2) coordinates on T/T^2 for a subgroup T (given by its elements).

    ``reps`` are lexicographically greedy representatives of a basis of the
    quotient; ``coord[t]`` is the bitmask of t's class.
    """

    def __init__(self, group: FinAbelianGroup, elems: Sequence[Element]):
        self.group = group
        self.elements = tuple(sorted(elems))
        self.squares = sub_squares(group, self.elements)
        covered = {s: 0 for s in self.squares}
        reps: list[Element] = []
        for t in self.elements:
            if t in covered:
                continue
            bit = 1 << len(reps)
            reps.append(t)
            for x, c in list(covered.items()):
                covered[group.mul(x, t)] = c | bit
        self.reps = tuple(reps)
        self.coord = covered
        self.dim = len(reps)

    def lift(self, mask: int) -> Element:
        out = self.group.identity
        for i, r in enumerate(self.reps):
            if mask >> i & 1:
                out = self.group.mul(out, r)
        return out
