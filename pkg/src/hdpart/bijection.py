"""The last-passage transform between nonnegative matrices and partitions.

A matrix maps to the grid of its directed last-passage times, which is always
a partition; the inverse recovers each entry as the drop below the forward
maximum.  Both directions preserve the declared bounding box.
"""

import itertools
from dataclasses import dataclass

from .core import DdPartition, InvalidPartitionError, NdArray, box_cells, corners


def last_passage_partition(a):
    """Grid of last passage times of the matrix.

    Entry i is the largest sum of matrix entries over directed lattice paths
    (steps +e_1 .. +e_d) starting at i, computed by a single sweep in reverse
    lexicographic order so every forward neighbor is already final.
    """
    bounds = a.bounds
    d = a.rank
    strides = [1] * d
    for axis in range(d - 2, -1, -1):
        strides[axis] = strides[axis + 1] * bounds[axis + 1]
    flat = a.flat()
    g = [0] * len(flat)
    pos = len(flat)
    for coords in itertools.product(*(range(b, 0, -1) for b in bounds)):
        pos -= 1
        best = 0
        for axis in range(d):
            if coords[axis] < bounds[axis]:
                v = g[pos + strides[axis]]
                if v > best:
                    best = v
        g[pos] = flat[pos] + best
    return DdPartition._raw(tuple(g), bounds)


def source_matrix(p):
    """Invert the last-passage map.

    Each entry is p[i] minus the largest forward-neighbor entry; a negative
    drop means the input was not a partition.
    """
    bounds = p.bounds
    d = p.rank
    strides = [1] * d
    for axis in range(d - 2, -1, -1):
        strides[axis] = strides[axis + 1] * bounds[axis + 1]
    flat = p.flat()
    out = []
    pos = -1
    for coords in box_cells(bounds):
        pos += 1
        best = 0
        for axis in range(d):
            if coords[axis] < bounds[axis]:
                v = flat[pos + strides[axis]]
                if v > best:
                    best = v
        drop = flat[pos] - best
        if drop < 0:
            raise InvalidPartitionError(f"entry at {coords} increases along an axis")
        out.append(drop)
    return NdArray._raw(tuple(out), bounds)


def _trim_row(row):
    n = len(row)
    while n and row[n - 1] == 0:
        n -= 1
    return tuple(row[:n])


@dataclass(frozen=True)
class WeightMonomial:
    """Exponents of one monomial over d separate variable alphabets.

    exponents[axis][j-1] is the exponent of variable j of that alphabet;
    trailing zeros are trimmed so equal monomials compare equal.
    """

    rank: int
    exponents: tuple

    @classmethod
    def from_rows(cls, rows):
        return cls(len(rows), tuple(_trim_row(r) for r in rows))

    def degree(self, axis):
        return sum(self.exponents[axis])

    def degrees(self):
        return tuple(self.degree(axis) for axis in range(self.rank))

    def is_one(self):
        return all(not e for e in self.exponents)


def weight_of_matrix(a):
    """Per-axis exponent of index j is the total mass of the slice i_axis = j."""
    rows = [[0] * b for b in a.bounds]
    for idx, v in a.cells():
        if v:
            for axis in range(a.rank):
                rows[axis][idx[axis] - 1] += v
    return WeightMonomial.from_rows(rows)


def weight_of_partition(p):
    """Per-axis exponent of index j is the number of corners with i_axis = j."""
    rows = [[0] * b for b in p.bounds]
    for cell in corners(p):
        for axis in range(p.rank):
            rows[axis][cell[axis] - 1] += 1
    return WeightMonomial.from_rows(rows)


def check_membership(a, rho, cap=None):
    """Support inside rho, and largest last-passage time at most cap (if given)."""
    if a.rank != rho.rank:
        raise ValueError(f"matrix rank {a.rank} does not match shape rank {rho.rank}")
    for idx in a.support():
        if idx not in rho:
            return False
    if cap is not None:
        g = last_passage_partition(a)
        if g.get((1,) * a.rank) > cap:
            return False
    return True
