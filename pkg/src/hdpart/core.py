"""Core types for d-dimensional integer arrays, partitions and diagram sets.

Indices are 1-based tuples throughout the public API.  An array owns a
declared bounding box and is implicitly zero outside it; equality and hashing
use the trimmed form (trailing all-zero hyperplanes removed), so two arrays
compare equal exactly when they agree as maps on the whole positive lattice.
All values are immutable after construction and safe to share across workers.
"""

import itertools
import json
from functools import lru_cache


class InvalidPartitionError(ValueError):
    """Entries violate coordinatewise monotonicity."""


class SoftLimitError(RuntimeError):
    """A request exceeds a documented size limit."""


def check_index(idx, rank=None):
    """Validate a 1-based multi-index and return it as a tuple of ints."""
    idx = tuple(int(i) for i in idx)
    if rank is not None and len(idx) != rank:
        raise ValueError(f"index {idx} has rank {len(idx)}, expected {rank}")
    if any(i < 1 for i in idx):
        raise ValueError(f"index {idx} must have all coordinates >= 1")
    return idx


def _strides(bounds):
    # row-major: the last axis varies fastest
    st = [1] * len(bounds)
    for axis in range(len(bounds) - 2, -1, -1):
        st[axis] = st[axis + 1] * bounds[axis + 1]
    return tuple(st)


def box_cells(bounds):
    """All 1-based cells of the box, in lexicographic (row-major) order."""
    return itertools.product(*(range(1, b + 1) for b in bounds))


def _parse_nested(entries, rank=None):
    if rank is None:
        rank = 0
        node = entries
        while isinstance(node, (list, tuple)):
            rank += 1
            if not node:
                break
            node = node[0]
        if rank == 0:
            raise ValueError("entries must be nested sequences of integers")
    bounds = [None] * rank
    flat = []

    def walk(node, depth):
        if depth == rank:
            if isinstance(node, bool) or not isinstance(node, int):
                raise ValueError(f"expected integer entry, got {node!r}")
            if node < 0:
                raise ValueError("entries must be nonnegative")
            flat.append(node)
            return
        if not isinstance(node, (list, tuple)):
            raise ValueError("entries nested too shallowly for the given rank")
        if bounds[depth] is None:
            bounds[depth] = len(node)
        elif bounds[depth] != len(node):
            raise ValueError("ragged entries: bounding box must be rectangular")
        for child in node:
            walk(child, depth + 1)

    walk(entries, 0)
    return tuple(b if b is not None else 0 for b in bounds), flat


class NdArray:
    """Dense nonnegative-integer array of runtime rank inside a bounding box.

    Bounds may contain zeros (an empty box); reads outside the box return 0.
    """

    __slots__ = ("rank", "bounds", "_flat", "_strides", "_canon")

    def __init__(self, entries, rank=None):
        bounds, flat = _parse_nested(entries, rank)
        self._init(flat, bounds)
        self._check()

    def _init(self, flat, bounds):
        self.rank = len(bounds)
        self.bounds = tuple(bounds)
        self._flat = tuple(flat)
        self._strides = _strides(self.bounds)
        self._canon = None
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    def _check(self):
        pass

    @classmethod
    def from_flat(cls, flat, bounds):
        """Build from a row-major flat sequence and explicit bounds."""
        bounds = tuple(int(b) for b in bounds)
        if any(b < 0 for b in bounds):
            raise ValueError("bounds must be nonnegative")
        flat = [int(v) for v in flat]
        need = 1
        for b in bounds:
            need *= b
        if len(flat) != need:
            raise ValueError(f"expected {need} entries for bounds {bounds}, got {len(flat)}")
        if any(v < 0 for v in flat):
            raise ValueError("entries must be nonnegative")
        obj = object.__new__(cls)
        obj._init(flat, bounds)
        obj._check()
        return obj

    @classmethod
    def _raw(cls, flat, bounds):
        # internal fast path: caller guarantees validity
        obj = object.__new__(cls)
        obj._init(flat, bounds)
        return obj

    @classmethod
    def zeros(cls, bounds):
        n = 1
        for b in bounds:
            n *= b
        return cls.from_flat([0] * n, bounds)

    def get(self, idx):
        """Entry at a 1-based index; implicitly 0 outside the box."""
        if len(idx) != self.rank:
            raise ValueError(f"index {idx} has rank {len(idx)}, expected {self.rank}")
        pos = 0
        for i, b, s in zip(idx, self.bounds, self._strides):
            if i < 1:
                raise ValueError(f"index {idx} must have all coordinates >= 1")
            if i > b:
                return 0
            pos += (i - 1) * s
        return self._flat[pos]

    __getitem__ = get

    def flat(self):
        """Row-major flat tuple of the stored box."""
        return self._flat

    def cells(self):
        """Yield (index, value) over the box in lexicographic order."""
        return zip(box_cells(self.bounds), self._flat)

    def support(self):
        """Indices of the nonzero entries, in lexicographic order."""
        return (idx for idx, v in self.cells() if v)

    def total(self):
        return sum(self._flat)

    def is_zero(self):
        return not any(self._flat)

    def trim(self):
        """Minimal bounding box holding the same values."""
        nb = [0] * self.rank
        for idx, v in self.cells():
            if v:
                for axis in range(self.rank):
                    if idx[axis] > nb[axis]:
                        nb[axis] = idx[axis]
        nb = tuple(nb)
        if nb == self.bounds:
            return self
        flat = [self.get(idx) for idx in box_cells(nb)]
        return type(self)._raw(tuple(flat), nb)

    def reverse(self):
        """Entries reflected along every axis (result is a plain NdArray)."""
        flat = []
        for idx in box_cells(self.bounds):
            mirror = tuple(b + 1 - i for i, b in zip(idx, self.bounds))
            flat.append(self.get(mirror))
        return NdArray._raw(tuple(flat), self.bounds)

    def to_nested(self):
        if any(b == 0 for b in self.bounds):
            def empty(axis):
                if axis >= self.rank or self.bounds[axis] == 0:
                    return []
                return [empty(axis + 1) for _ in range(self.bounds[axis])]
            return empty(0)

        def build(axis, offset):
            b = self.bounds[axis]
            s = self._strides[axis]
            if axis == self.rank - 1:
                return list(self._flat[offset:offset + b])
            return [build(axis + 1, offset + k * s) for k in range(b)]

        return build(0, 0)

    def _canonical(self):
        c = self._canon
        if c is None:
            t = self.trim()
            c = (self.rank, t.bounds, t._flat)
            self._canon = c
        return c

    def __eq__(self, other):
        if not isinstance(other, NdArray):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        return f"{type(self).__name__}({self.to_nested()!r})"

    def to_json_dict(self):
        t = self.trim()
        return {"rank": t.rank, "bounds": list(t.bounds), "entries": t.to_nested()}

    @classmethod
    def from_json_dict(cls, data):
        obj = cls(data["entries"], rank=int(data["rank"]))
        if "bounds" in data and tuple(data["bounds"]) != obj.bounds:
            raise ValueError("declared bounds do not match the nesting of entries")
        return obj

    def dumps(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text):
        return cls.from_json_dict(json.loads(text))


class DdPartition(NdArray):
    """A d-dimensional partition: entries weakly decrease along every axis."""

    __slots__ = ()

    def _check(self):
        pos = -1
        for idx in box_cells(self.bounds):
            pos += 1
            v = self._flat[pos]
            for axis in range(self.rank):
                if idx[axis] < self.bounds[axis] and self._flat[pos + self._strides[axis]] > v:
                    raise InvalidPartitionError(
                        f"entry at {idx} is {v} but increases along axis {axis + 1}"
                    )

    @property
    def volume(self):
        return self.total()


class DiagramSet:
    """A finite set of 1-based lattice cells of a fixed rank.

    Represents diagrams and shapes (lower sets) as well as corner sets, which
    need not be lower sets; pass require_lower=True to enforce closure under
    coordinatewise decrease.  Iteration is in lexicographic order.
    """

    __slots__ = ("rank", "_set", "_sorted")

    def __init__(self, rank, cells=(), require_lower=False):
        rank = int(rank)
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        self._set = frozenset(check_index(c, rank) for c in cells)
        self._sorted = tuple(sorted(self._set))
        if require_lower and not self.is_lower_set():
            raise ValueError("cell set is not a lower set")

    def cells(self):
        return self._sorted

    def __contains__(self, cell):
        return tuple(cell) in self._set

    def __iter__(self):
        return iter(self._sorted)

    def __len__(self):
        return len(self._set)

    def __bool__(self):
        return bool(self._set)

    def __eq__(self, other):
        if not isinstance(other, DiagramSet):
            return NotImplemented
        return self.rank == other.rank and self._set == other._set

    def __hash__(self):
        return hash((self.rank, self._set))

    def __repr__(self):
        return f"DiagramSet(rank={self.rank}, cells={list(self._sorted)!r})"

    def bounds(self):
        """Coordinatewise maximum over the cells (zeros when empty)."""
        nb = [0] * self.rank
        for c in self._set:
            for axis in range(self.rank):
                if c[axis] > nb[axis]:
                    nb[axis] = c[axis]
        return tuple(nb)

    def is_lower_set(self):
        for c in self._set:
            for axis in range(self.rank):
                if c[axis] > 1:
                    below = c[:axis] + (c[axis] - 1,) + c[axis + 1:]
                    if below not in self._set:
                        return False
        return True

    def maximal_cells(self):
        """Cells with no neighbor one step up along any axis (top corners)."""
        out = []
        for c in self._sorted:
            if all(c[:axis] + (c[axis] + 1,) + c[axis + 1:] not in self._set
                   for axis in range(self.rank)):
                out.append(c)
        return DiagramSet(self.rank, out)

    def to_partition(self):
        """Read a lower set as column heights along its last axis."""
        if self.rank < 2:
            raise ValueError("rank must be >= 2 to read off a partition")
        if not self.is_lower_set():
            raise ValueError("cell set is not a lower set")
        sub = self.bounds()[:-1]
        heights = {}
        for c in self._set:
            key = c[:-1]
            if c[-1] > heights.get(key, 0):
                heights[key] = c[-1]
        flat = [heights.get(idx, 0) for idx in box_cells(sub)]
        return DdPartition.from_flat(flat, sub)

    def to_json_dict(self):
        return {"rank": self.rank, "cells": [list(c) for c in self._sorted]}

    @classmethod
    def from_json_dict(cls, data):
        return cls(int(data["rank"]), [tuple(c) for c in data["cells"]])

    def dumps(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text):
        return cls.from_json_dict(json.loads(text))


def diagram(p):
    """The set of cells below the partition surface; one rank higher than p."""
    cells = []
    for idx, v in p.cells():
        for k in range(1, v + 1):
            cells.append(idx + (k,))
    return DiagramSet(p.rank + 1, cells)


def shape(p):
    """Support of the partition; always a lower set."""
    return DiagramSet(p.rank, [idx for idx, v in p.cells() if v])


def _stack_floor(p, idx):
    # largest entry among the d forward neighbors of idx
    best = 0
    for axis in range(p.rank):
        w = p.get(idx[:axis] + (idx[axis] + 1,) + idx[axis + 1:])
        if w > best:
            best = w
    return best


@lru_cache(maxsize=4096)
def corners(p):
    """Diagram cells with no diagram neighbor in the first d directions.

    The cell (i, k) qualifies exactly when k <= p[i] and k exceeds every
    forward-neighbor entry p[i + e_axis].
    """
    cells = []
    for idx, v in p.cells():
        if not v:
            continue
        floor = _stack_floor(p, idx)
        for k in range(floor + 1, v + 1):
            cells.append(idx + (k,))
    return DiagramSet(p.rank + 1, cells)


def top_corners(p):
    """Corners that additionally have no diagram neighbor straight above."""
    cells = []
    for idx, v in p.cells():
        if v and v > _stack_floor(p, idx):
            cells.append(idx + (v,))
    return DiagramSet(p.rank + 1, cells)


def first_axis_shape(p):
    """Diagram of the first slice of p (its shape with respect to axis 1)."""
    d = p.rank
    cells = []
    if d == 1:
        for k in range(1, p.get((1,)) + 1):
            cells.append((k,))
    else:
        for idx in box_cells(p.bounds[1:]):
            for k in range(1, p.get((1,) + idx) + 1):
                cells.append(idx + (k,))
    return DiagramSet(d, cells)


def pyramid_diagram(rank, m):
    """The lower set of cells with coordinate sum at most m + rank - 1."""
    rank = int(rank)
    m = int(m)
    if rank < 1 or m < 1:
        raise ValueError("rank and m must both be at least 1")
    cap = m + rank - 1
    out = []

    def rec(prefix, total):
        axis = len(prefix)
        if axis == rank:
            out.append(tuple(prefix))
            return
        i = 1
        while total + i + (rank - axis - 1) <= cap:
            prefix.append(i)
            rec(prefix, total + i)
            prefix.pop()
            i += 1

    rec([], 0)
    return DiagramSet(rank, out)


def partition_from_diagram(ds):
    """Inverse of diagram(): rebuild the partition from its cell set."""
    return ds.to_partition()


def partition_from_top_corners(tc):
    """Rebuild a partition from its top-corner set.

    Each entry is the largest height among top corners weakly above the
    index; inverse of top_corners() (test utility).
    """
    rank = tc.rank - 1
    if rank < 1:
        raise ValueError("top-corner set must have rank >= 2")
    if not tc:
        return DdPartition.from_flat([], (0,) * rank)
    nb = tc.bounds()[:-1]
    cs = tc.cells()
    flat = []
    for idx in box_cells(nb):
        h = 0
        for c in cs:
            if c[-1] > h and all(c[axis] >= idx[axis] for axis in range(rank)):
                h = c[-1]
        flat.append(h)
    return DdPartition.from_flat(flat, nb)
