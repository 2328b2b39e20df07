"""Directed last passage percolation with geometric weights.

Weights are i.i.d. geometric(q) on a finite box; passage times are maxima of
entry sums over directed lattice paths from the origin cell.  Exact boundary
probabilities come from specialized Grothendieck polynomials with rational
arithmetic end to end; Monte Carlo runs on numpy Philox streams, split per
block so results are independent of the worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import DdPartition, NdArray, box_cells
from .groth import groth_poly

BLOCK_SIZE = 50_000  # fixed: sampling never depends on the thread count


@dataclass(frozen=True)
class GeomParams:
    """Geometric weight parameter, box dimensions, and RNG seed."""

    q: Fraction
    dims: tuple
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if not self.dims or any(n < 1 for n in self.dims):
            raise ValueError("dims must be positive")
        if not 0 < self.q < 1:
            raise ValueError("q must lie strictly between 0 and 1")


def _rng(seed, block):
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.Philox(ss))


def sample_weight_batch(params, count, block=0):
    """Array of shape (count, *dims) of geometric(q) entries.

    Inverse-CDF on a uniform: k = floor(log(1 - u) / log(q)) has
    P(k = m) = (1 - q) q^m exactly.
    """
    rng = _rng(params.seed, block)
    u = rng.random(size=(count,) + params.dims)
    logq = math.log(float(params.q))
    return np.floor(np.log1p(-u) / logq).astype(np.int64)


def sample_weights(params):
    """One weight matrix; deterministic for a fixed seed."""
    arr = sample_weight_batch(params, 1)[0]
    return NdArray.from_flat([int(v) for v in arr.reshape(-1)], params.dims)


def last_passage_grid(w):
    """Forward passage times: G(i) = w(i) + max over predecessors G(i - e)."""
    bounds = w.bounds
    d = w.rank
    strides = [1] * d
    for axis in range(d - 2, -1, -1):
        strides[axis] = strides[axis + 1] * bounds[axis + 1]
    flat = w.flat()
    g = [0] * len(flat)
    pos = -1
    for coords in box_cells(bounds):
        pos += 1
        best = 0
        for axis in range(d):
            if coords[axis] > 1:
                v = g[pos - strides[axis]]
                if v > best:
                    best = v
        g[pos] = flat[pos] + best
    return NdArray._raw(tuple(g), bounds)


def _grid_batch(warr):
    """Forward DP vectorized over a leading sample axis."""
    g = np.zeros_like(warr)
    dims = warr.shape[1:]
    for coords in np.ndindex(*dims):
        best = None
        for axis in range(len(dims)):
            if coords[axis] > 0:
                prev_idx = (slice(None),) + coords[:axis] + (coords[axis] - 1,) + coords[axis + 1:]
                prev = g[prev_idx]
                best = prev if best is None else np.maximum(best, prev)
        cell = (slice(None),) + coords
        g[cell] = warr[cell] if best is None else warr[cell] + best
    return g


def _target_array(rho, dims):
    """rho padded out to dims[1:]; the event compares the flipped boundary slice."""
    sub = dims[1:]
    if any(t > b for t, b in zip(rho.trim().bounds, sub)):
        raise ValueError(f"rho does not fit the boundary box {sub}")
    arr = np.zeros(sub, dtype=np.int64)
    for idx, v in rho.cells():
        if v:
            arr[tuple(i - 1 for i in idx)] = v
    return arr


def boundary_slice(g, dims):
    """The slice G(n1, n - i) indexed by i, as an array over dims[1:]."""
    sub = dims[1:]
    out = []
    for idx in box_cells(sub):
        coords = (dims[0],) + tuple(b + 1 - i for i, b in zip(idx, sub))
        out.append(g.get(coords))
    return NdArray.from_flat(out, sub)


@dataclass(frozen=True)
class McJointResult:
    dims: tuple
    q: Fraction
    seed: int
    samples: int
    hits: int

    @property
    def frequency(self):
        return self.hits / self.samples

    @property
    def stderr(self):
        p = self.frequency
        return math.sqrt(p * (1.0 - p) / self.samples)


def _block_hits(q_float, dims, seed, block, count, target_bytes, target_shape):
    target = np.frombuffer(target_bytes, dtype=np.int64).reshape(target_shape)
    # sampling only consumes float(q), so the stream is identical in workers
    params = GeomParams(q_float, dims, seed)
    w = sample_weight_batch(params, count, block=block)
    g = _grid_batch(w)
    flipped = g[(slice(None), -1) + (slice(None, None, -1),) * (len(dims) - 1)]
    matches = (flipped == target).all(axis=tuple(range(1, flipped.ndim)))
    return int(matches.sum())


def monte_carlo_joint(rho, params, samples, threads=1):
    """Empirical frequency of the boundary slice equalling rho entrywise."""
    if samples < 1:
        raise ValueError("samples must be positive")
    target = _target_array(rho, params.dims)
    blocks = []
    start = 0
    idx = 0
    while start < samples:
        count = min(BLOCK_SIZE, samples - start)
        blocks.append((idx, count))
        start += count
        idx += 1
    args = [
        (float(params.q), params.dims, params.seed, b, count,
         target.tobytes(), target.shape)
        for b, count in blocks
    ]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            hits = sum(ex.map(_block_hits_star, args))
    else:
        hits = sum(_block_hits(*a) for a in args)
    return McJointResult(dims=params.dims, q=params.q, seed=params.seed,
                         samples=samples, hits=hits)


def _block_hits_star(args):
    return _block_hits(*args)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def joint_probability_exact(rho, n1, q):
    """Exact probability that the boundary slice equals rho entrywise.

    rho is a partition whose declared bounds give the trailing box
    dimensions; the value is (1 - q)^N times the one-alphabet Grothendieck
    specialization at q repeated n1 times.
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise ValueError("q must lie strictly between 0 and 1")
    if n1 < 1:
        raise ValueError("n1 must be positive")
    dims = (n1,) + rho.bounds
    if len(dims) < 2 or any(n < 1 for n in dims):
        raise ValueError("rho must declare positive bounds for every trailing axis")
    top = max(rho.flat(), default=0)
    box = dims + (top,)
    g = groth_poly(rho, box)
    values = {0: (q,) * n1}
    for axis in range(1, len(dims)):
        values[axis] = (1,) * dims[axis]
    val = g.specialize(values)
    return (1 - q) ** _prod(dims) * Fraction(val)


def single_point_cdf(dims, n, q):
    """Exact P(G(dims) <= n) via the boxed-shape Grothendieck specialization."""
    dims = tuple(int(x) for x in dims)
    if len(dims) < 2 or any(x < 1 for x in dims):
        raise ValueError("dims must have length >= 2 with positive entries")
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = Fraction(q)
    if not 0 < q < 1:
        raise ValueError("q must lie strictly between 0 and 1")
    sub = dims[1:]
    cells = 1
    for b in sub:
        cells *= b
    rho = DdPartition.from_flat([n] * cells, sub)
    box = (dims[0] + 1,) + sub + (n,)
    g = groth_poly(rho, box)
    values = {0: (1,) + (q,) * dims[0]}
    for axis in range(1, len(dims)):
        values[axis] = (1,) * dims[axis]
    val = g.specialize(values)
    return (1 - q) ** _prod(dims) * Fraction(val)
