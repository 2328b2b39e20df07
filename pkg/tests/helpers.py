"""Independent oracles used by the tests.

Everything here recomputes values from first definitions (explicit path
enumeration, raw set membership, nested loops) so the production code paths
are checked against genuinely separate routes.
"""

import itertools

from hdpart.core import DdPartition, DiagramSet, NdArray, box_cells
from hdpart.groth import MultiPoly


def brute_path_max(a, start):
    """Largest entry sum over explicit directed paths from start to the box corner."""
    d = a.rank

    def rec(idx):
        here = a.get(idx)
        best = 0
        for axis in range(d):
            if idx[axis] < a.bounds[axis]:
                nxt = idx[:axis] + (idx[axis] + 1,) + idx[axis + 1:]
                v = rec(nxt)
                if v > best:
                    best = v
        return here + best

    return rec(start)


def naive_matrices_lp(bounds, cap):
    """All matrices on the box with every passage time <= cap, by nested loops."""
    total = 1
    for b in bounds:
        total *= b
    out = []
    for flat in itertools.product(range(cap + 1), repeat=total):
        a = NdArray.from_flat(flat, bounds)
        if brute_path_max(a, (1,) * len(bounds)) <= cap:
            out.append(a)
    return out


def corner_cells_by_definition(p):
    """Corners recomputed by raw membership tests on the diagram set."""
    cells = set()
    for idx, v in p.cells():
        for k in range(1, v + 1):
            cells.add(idx + (k,))
    d = p.rank
    out = set()
    for c in cells:
        if all(c[:ax] + (c[ax] + 1,) + c[ax + 1:] not in cells for ax in range(d)):
            out.add(c)
    return out


def top_corner_cells_by_definition(p):
    cells = set()
    for idx, v in p.cells():
        for k in range(1, v + 1):
            cells.add(idx + (k,))
    r = p.rank + 1
    out = set()
    for c in cells:
        if all(c[:ax] + (c[ax] + 1,) + c[ax + 1:] not in cells for ax in range(r)):
            out.add(c)
    return out


def first_axis_shape_by_definition(p):
    """sh1 recomputed from the union over the whole diagram."""
    cells = set()
    for idx, v in p.cells():
        for k in range(1, v + 1):
            cells.add(idx[1:] + (k,))
    return DiagramSet(p.rank, cells)


def ssyt_schur(shape_rows, nvars):
    """Schur polynomial by explicit semistandard-tableau enumeration.

    Rows weakly increase, columns strictly increase, entries in 1..nvars.
    Returns a one-alphabet MultiPoly.
    """
    rows = [r for r in shape_rows if r]
    acc = {}

    def rec(i, filled):
        if i == len(rows):
            exps = [0] * nvars
            for row in filled:
                for e in row:
                    exps[e - 1] += 1
            key = (tuple(exps),)
            acc[key] = acc.get(key, 0) + 1
            return
        width = rows[i]

        def fill_row(j, row):
            if j == width:
                rec(i + 1, filled + [row])
                return
            lo = row[j - 1] if j else 1
            if i:
                above = filled[i - 1][j]
                lo = max(lo, above + 1)
            for v in range(lo, nvars + 1):
                fill_row(j + 1, row + [v])

        fill_row(0, [])

    rec(0, [])
    return MultiPoly((nvars,), acc)


def random_sparse_matrix(rng, d, max_bound=4, max_nonzero=5, max_entry=3):
    bounds = tuple(rng.randint(1, max_bound) for _ in range(d))
    total = 1
    for b in bounds:
        total *= b
    flat = [0] * total
    for _ in range(rng.randint(0, max_nonzero)):
        flat[rng.randrange(total)] = rng.randint(0, max_entry)
    return NdArray.from_flat(flat, bounds)


def pad_to(p, bounds):
    """Re-declare a partition on a larger box."""
    flat = [p.get(idx) for idx in box_cells(bounds)]
    return DdPartition.from_flat(flat, bounds)
