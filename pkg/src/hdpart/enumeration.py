"""Exhaustive generators and exact counters for partitions and matrices.

All generators fill cells in lexicographic order with the upper bound taken
from the already-filled predecessor neighbors, so monotonicity violations are
pruned before recursion.  Counts are plain Python ints (arbitrary precision).
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .bijection import last_passage_partition
from .core import (
    DdPartition,
    DiagramSet,
    NdArray,
    SoftLimitError,
    box_cells,
    pyramid_diagram,
    shape,
)
from .stats import cohook, corner_hook_volume

_VOLUME_LIMIT = 16
_CELL_LIMIT = 200_000


def _predecessors(cells):
    # positions of cell - e_axis within the (lex sorted) cell list
    index = {c: i for i, c in enumerate(cells)}
    preds = []
    for c in cells:
        row = []
        for axis in range(len(c)):
            if c[axis] > 1:
                row.append(index[c[:axis] + (c[axis] - 1,) + c[axis + 1:]])
        preds.append(tuple(row))
    return preds


def _build_array(cls, cells, vals, bounds):
    strides = [1] * len(bounds)
    for axis in range(len(bounds) - 2, -1, -1):
        strides[axis] = strides[axis + 1] * bounds[axis + 1]
    total = 1
    for b in bounds:
        total *= b
    flat = [0] * total
    for c, v in zip(cells, vals):
        if v:
            flat[sum((c[a] - 1) * strides[a] for a in range(len(bounds)))] = v
    return cls._raw(tuple(flat), bounds)


def _iter_fill(cells, bounds, caps):
    """Yield every monotone filling of `cells`, cell k capped by caps[k]."""
    preds = _predecessors(cells)
    n = len(cells)
    vals = [0] * n

    def rec(k):
        if k == n:
            yield _build_array(DdPartition, cells, vals, bounds)
            return
        cap = caps[k]
        for j in preds[k]:
            if vals[j] < cap:
                cap = vals[j]
        for v in range(cap + 1):
            vals[k] = v
            yield from rec(k + 1)
        vals[k] = 0

    yield from rec(0)


def iter_partitions_in_shape(rho, max_entry):
    """Every partition with support inside the lower set rho, entries <= max_entry."""
    if not rho.is_lower_set():
        raise ValueError("rho must be a lower set")
    if max_entry is None:
        if rho:
            raise ValueError("unbounded enumeration: give a max_entry for a nonempty shape")
        max_entry = 0
    if max_entry < 0:
        raise ValueError("max_entry must be nonnegative")
    cells = rho.cells()
    yield from _iter_fill(cells, rho.bounds(), [max_entry] * len(cells))


def iter_boxed_partitions(bounds):
    """Every partition whose diagram fits in the box; last bound caps entries."""
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) < 2:
        raise ValueError("need at least two bounds: a box and an entry cap")
    if any(b < 0 for b in bounds):
        raise ValueError("bounds must be nonnegative")
    box, cap = bounds[:-1], bounds[-1]
    cells = list(box_cells(box))
    yield from _iter_fill(cells, box, [cap] * len(cells))


def iter_subpartitions(sigma):
    """Every partition bounded entrywise by sigma (same declared box)."""
    cells = shape(sigma).cells()
    caps = [sigma.get(c) for c in cells]
    yield from _iter_fill(cells, sigma.bounds, caps)


def iter_matrices(rho, lp_bound=None, weight_bound=None, weight_fn=None):
    """Matrices supported inside rho, under one of two caps.

    lp_bound: largest last-passage time at most lp_bound (pruned cell by cell
    in reverse lexicographic order, where the time is already final).
    weight_bound: sum of entry * weight_fn(cell) at most weight_bound, with
    weight_fn defaulting to the cohook length; weights must be >= 1 so the
    enumeration is finite.
    """
    if (lp_bound is None) == (weight_bound is None):
        raise ValueError("give exactly one of lp_bound, weight_bound")
    if not rho.is_lower_set():
        raise ValueError("rho must be a lower set")
    bounds = rho.bounds()
    if lp_bound is not None:
        if lp_bound < 0:
            raise ValueError("lp_bound must be nonnegative")
        yield from _iter_matrices_lp(rho, bounds, lp_bound)
    else:
        if weight_bound < 0:
            raise ValueError("weight_bound must be nonnegative")
        fn = weight_fn if weight_fn is not None else cohook
        yield from _iter_matrices_weighted(rho, bounds, weight_bound, fn)


def _iter_matrices_weighted(rho, bounds, budget, fn):
    cells = rho.cells()
    weights = [fn(c) for c in cells]
    if any(w < 1 for w in weights):
        raise ValueError("cell weights must be >= 1 for a finite enumeration")
    n = len(cells)
    vals = [0] * n

    def rec(k, left):
        if k == n:
            yield _build_array(NdArray, cells, vals, bounds)
            return
        w = weights[k]
        for v in range(left // w + 1):
            vals[k] = v
            yield from rec(k + 1, left - v * w)
        vals[k] = 0

    yield from rec(0, budget)


def _iter_matrices_lp(rho, bounds, cap):
    # reverse-lex fill: forward neighbors are filled first, so the passage
    # time at each cell is final and caps every extension (times decrease
    # coordinatewise, hence all stay <= the time at the origin cell)
    cells = list(reversed(rho.cells()))
    index = {c: i for i, c in enumerate(cells)}
    succs = []
    for c in cells:
        row = []
        for axis in range(len(c)):
            up = c[:axis] + (c[axis] + 1,) + c[axis + 1:]
            if up in index:
                row.append(index[up])
        succs.append(tuple(row))
    n = len(cells)
    vals = [0] * n
    times = [0] * n

    def rec(k):
        if k == n:
            yield _build_array(NdArray, cells, vals, bounds)
            return
        floor = 0
        for j in succs[k]:
            if times[j] > floor:
                floor = times[j]
        for v in range(cap - floor + 1):
            vals[k] = v
            times[k] = floor + v
            yield from rec(k + 1)
        vals[k] = 0
        times[k] = 0

    yield from rec(0)


def slice_sums(a, axis):
    """Entry totals of the hyperplane slices along one axis."""
    if not 0 <= axis < a.rank:
        raise ValueError(f"axis {axis} out of range for rank {a.rank}")
    sums = [0] * a.bounds[axis]
    for idx, v in a.cells():
        if v:
            sums[idx[axis] - 1] += v
    return tuple(sums)


def composition_of(sums):
    """Strip trailing zeros; the result is a composition iff no zeros remain."""
    n = len(sums)
    while n and sums[n - 1] == 0:
        n -= 1
    return tuple(sums[:n])


def is_packed(a):
    """True when no axis has a zero slice before a positive one."""
    for axis in range(a.rank):
        if 0 in composition_of(slice_sums(a, axis)):
            return False
    return True


def pack(a):
    """Remove all-zero hyperplane slices along every axis."""
    keep = []
    for axis in range(a.rank):
        sums = slice_sums(a, axis)
        keep.append({j + 1: i + 1 for i, j in enumerate(k for k, s in enumerate(sums) if s)})
    bounds = tuple(len(k) for k in keep)
    entries = {}
    for idx, v in a.cells():
        if v:
            entries[tuple(keep[axis][idx[axis]] for axis in range(a.rank))] = v
    flat = [entries.get(idx, 0) for idx in box_cells(bounds)]
    return NdArray.from_flat(flat, bounds)


def iter_packed_matrices(bounds, cap):
    """Packed matrices on the box with largest last-passage time <= cap."""
    bounds = tuple(int(b) for b in bounds)
    box = DiagramSet(len(bounds), box_cells(bounds), require_lower=True)
    for a in iter_matrices(box, lp_bound=cap):
        if is_packed(a):
            yield a


def _volume_cells(d, upto):
    # a nonzero entry at idx forces a full lower box of prod(idx) cells, so
    # cells with a larger coordinate product can never be positive
    cells = []

    def rec(prefix, prod):
        if len(prefix) == d:
            cells.append(tuple(prefix))
            return
        i = 1
        while prod * i <= upto:
            prefix.append(i)
            rec(prefix, prod * i)
            prefix.pop()
            i += 1

    if upto >= 1:
        rec([], 1)
    return cells


def _volume_subtree(d, upto, first):
    """Volume histogram over partitions whose first entry equals `first`."""
    cells = _volume_cells(d, upto)
    preds = _predecessors(cells)
    n = len(cells)
    table = [0] * (upto + 1)
    vals = [0] * n

    def rec(k, used):
        if used == upto or k == n:
            # every remaining cell is forced to zero
            table[used] += 1
            return
        cap = upto - used
        for j in preds[k]:
            if vals[j] < cap:
                cap = vals[j]
        for v in range(cap + 1):
            vals[k] = v
            rec(k + 1, used + v)
        vals[k] = 0

    if first > upto:
        return table
    vals[0] = first
    rec(1, first)
    return table


def volume_table(d, upto, threads=1):
    """Exact counts of d-dimensional partitions of each volume 0..upto."""
    if d < 1 or upto < 0:
        raise ValueError("need d >= 1 and upto >= 0")
    if upto > _VOLUME_LIMIT or len(_volume_cells(d, max(upto, 1))) > _CELL_LIMIT:
        raise SoftLimitError(f"volume enumeration limited to n <= {_VOLUME_LIMIT}")
    if upto == 0:
        return [1]
    firsts = list(range(upto + 1))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            tables = list(ex.map(_volume_worker, [(d, upto, f) for f in firsts]))
    else:
        tables = [_volume_subtree(d, upto, f) for f in firsts]
    out = [0] * (upto + 1)
    for t in tables:
        for i, v in enumerate(t):
            out[i] += v
    return out


def _volume_worker(args):
    return _volume_subtree(*args)


def count_by_volume(d, n, threads=1):
    """Number of d-dimensional partitions of volume exactly n."""
    return volume_table(d, n, threads=threads)[n]


def ch_volume_table(d, upto, via="matrix"):
    """Counts of d-dimensional partitions by corner-hook volume 0..upto.

    via="matrix" counts source matrices by their cohook-weighted mass;
    via="partition" maps each matrix through the last-passage transform and
    reads the statistic off the corner set.  The two routes must agree.
    """
    if d < 1 or upto < 0:
        raise ValueError("need d >= 1 and upto >= 0")
    if via not in ("matrix", "partition"):
        raise ValueError("via must be 'matrix' or 'partition'")
    # support cells need cohook <= upto, i.e. coordinate sum <= upto + d - 1
    rho = pyramid_diagram(d, upto) if upto else DiagramSet(d)
    table = [0] * (upto + 1)
    if via == "matrix":
        weights = [cohook(c) for c in rho.cells()]
        n = len(weights)

        def rec(k, used):
            if k == n:
                table[used] += 1
                return
            w = weights[k]
            for v in range((upto - used) // w + 1):
                rec(k + 1, used + v * w)

        rec(0, 0)
    else:
        for a in iter_matrices(rho, weight_bound=upto):
            table[corner_hook_volume(last_passage_partition(a))] += 1
    return table


def count_by_ch_volume(d, n, via="matrix"):
    """Number of d-dimensional partitions with corner-hook volume exactly n."""
    return ch_volume_table(d, n, via=via)[n]


def boxed_count(bounds):
    """Number of partitions in the box, by exhaustive generation."""
    return sum(1 for _ in iter_boxed_partitions(bounds))


def macmahon_box_count(n1, n2, n3):
    """Closed-form count of rank-2 partitions in the box [n1] x [n2] x [n3]."""
    out = Fraction(1)
    for i in range(1, n1 + 1):
        for j in range(1, n2 + 1):
            for k in range(1, n3 + 1):
                out *= Fraction(i + j + k - 1, i + j + k - 2)
    if out.denominator != 1:
        raise AssertionError("box product did not reduce to an integer")
    return out.numerator
