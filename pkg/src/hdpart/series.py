"""Truncated power series in t and q, and the product-formula generators.

Coefficients are exact Python ints.  A series is truncated beyond q-degree
and t-degree N; every inverted factor here is (1 - t^a q^e)^(-1) with
a + e >= 1, which folds into the table by a two-term recurrence instead of
generic division.
"""

from functools import lru_cache
from math import comb

from .core import box_cells
from .stats import cohook, top_corner_weight


class TruncSeries:
    """Bivariate series modulo t^(N+1) and q^(N+1)."""

    __slots__ = ("trunc", "_c")

    def __init__(self, trunc, table=None):
        trunc = int(trunc)
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        self.trunc = trunc
        if table is None:
            table = [[0] * (trunc + 1) for _ in range(trunc + 1)]
        self._c = table

    @classmethod
    def zero(cls, trunc):
        return cls(trunc)

    @classmethod
    def one(cls, trunc):
        s = cls(trunc)
        s._c[0][0] = 1
        return s

    @classmethod
    def from_terms(cls, trunc, terms):
        """Accumulate unit contributions (t_deg, q_deg), dropping overflow."""
        s = cls(trunc)
        c = s._c
        for tdeg, qdeg in terms:
            if tdeg <= trunc and qdeg <= trunc:
                c[tdeg][qdeg] += 1
        return s

    def coefficient(self, t_deg, q_deg):
        if t_deg > self.trunc or q_deg > self.trunc:
            raise ValueError("degree beyond the truncation order")
        return self._c[t_deg][q_deg]

    def terms(self):
        """Yield (t_deg, q_deg, coeff) for the nonzero coefficients."""
        for j, row in enumerate(self._c):
            for n, v in enumerate(row):
                if v:
                    yield j, n, v

    def t1_marginal(self):
        """Coefficients in q after setting t = 1."""
        out = [0] * (self.trunc + 1)
        for row in self._c:
            for n, v in enumerate(row):
                out[n] += v
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._c == other._c

    def __repr__(self):
        parts = [f"{v}*t^{j}*q^{n}" for j, n, v in self.terms()]
        return f"TruncSeries(N={self.trunc}: {' + '.join(parts) or '0'})"

    def __add__(self, other):
        self._match(other)
        return TruncSeries(self.trunc, [[a + b for a, b in zip(r1, r2)]
                                        for r1, r2 in zip(self._c, other._c)])

    def __sub__(self, other):
        self._match(other)
        return TruncSeries(self.trunc, [[a - b for a, b in zip(r1, r2)]
                                        for r1, r2 in zip(self._c, other._c)])

    def __mul__(self, other):
        self._match(other)
        N = self.trunc
        out = [[0] * (N + 1) for _ in range(N + 1)]
        for j1, row in enumerate(self._c):
            for n1, v1 in enumerate(row):
                if not v1:
                    continue
                for j2 in range(N + 1 - j1):
                    orow = other._c[j2]
                    trow = out[j1 + j2]
                    for n2 in range(N + 1 - n1):
                        v2 = orow[n2]
                        if v2:
                            trow[n1 + n2] += v1 * v2
        return TruncSeries(N, out)

    def _match(self, other):
        if not isinstance(other, TruncSeries) or other.trunc != self.trunc:
            raise ValueError("truncation orders must match")

    def scale(self, k):
        return TruncSeries(self.trunc, [[k * v for v in row] for row in self._c])

    def shift(self, t_deg, q_deg):
        """Multiply by t^t_deg q^q_deg, dropping overflow."""
        N = self.trunc
        out = [[0] * (N + 1) for _ in range(N + 1)]
        for j, row in enumerate(self._c):
            if j + t_deg > N:
                break
            for n, v in enumerate(row):
                if v and n + q_deg <= N:
                    out[j + t_deg][n + q_deg] = v
        return TruncSeries(N, out)

    def geometric_divide(self, a, e):
        """Multiply by (1 - t^a q^e)^(-1) via new[j][n] = old[j][n] + new[j-a][n-e]."""
        if a < 0 or e < 0 or a + e < 1:
            raise ValueError("factor exponents must be nonnegative with a + e >= 1")
        N = self.trunc
        out = [row[:] for row in self._c]
        for j in range(N + 1):
            src = out[j - a] if j >= a else None
            row = out[j]
            if a == 0:
                src = row
            if src is None:
                continue
            for n in range(e, N + 1):
                row[n] += src[n - e]
        return TruncSeries(N, out)

    def inverse(self):
        """Multiplicative inverse; the constant term must be 1."""
        N = self.trunc
        if self._c[0][0] != 1:
            raise ValueError("inverse requires constant term 1")
        g = [[0] * (N + 1) for _ in range(N + 1)]
        g[0][0] = 1
        f = self._c
        for j in range(N + 1):
            for n in range(N + 1):
                if j == 0 and n == 0:
                    continue
                acc = 0
                for k in range(j + 1):
                    frow = f[k]
                    grow = g[j - k]
                    for m in range(n + 1):
                        if (k or m) and frow[m]:
                            acc += frow[m] * grow[n - m]
                g[j][n] = -acc
        return TruncSeries(N, g)

    def csv_rows(self, marginal=False):
        """Rows for CSV emission: full (t_deg, q_deg, coeff) or the t=1 marginal."""
        if marginal:
            yield ("q_deg", "coeff")
            for n, v in enumerate(self.t1_marginal()):
                yield (n, v)
        else:
            yield ("t_deg", "q_deg", "coeff")
            for j, n, v in self.terms():
                yield (j, n, v)


def geometric_factor(e, trunc):
    """The single factor (1 - t q^e)^(-1) = sum_j t^j q^(j e)."""
    if e < 1:
        raise ValueError("cohook exponent must be at least 1")
    return TruncSeries.one(trunc).geometric_divide(1, e)


def shaped_gf(rho, exact_shape, trunc):
    """Product formula for (corners, corner-hook volume) over shapes inside rho.

    One factor (1 - t q^cohook(cell))^(-1) per cell of rho; the exact-shape
    variant carries the prefactor t^(#maximal cells) q^(their cohook total).
    """
    if not rho.is_lower_set():
        raise ValueError("rho must be a lower set")
    s = TruncSeries.one(trunc)
    for cell in rho.cells():
        s = s.geometric_divide(1, cohook(cell))
    if exact_shape:
        s = s.shift(len(rho.maximal_cells()), top_corner_weight(rho))
    return s


def boxed_gf(bounds, trunc):
    """shaped_gf over a full box, subset mode."""
    bounds = tuple(int(b) for b in bounds)
    if any(b < 1 for b in bounds):
        raise ValueError("box bounds must be positive")
    s = TruncSeries.one(trunc)
    for cell in box_cells(bounds):
        s = s.geometric_divide(1, cohook(cell))
    return s


def macmahon_series(d, trunc):
    """Product over n of (1 - t q^n)^(-C(n+d-2, d-1)), truncated."""
    if d < 1:
        raise ValueError("d must be at least 1")
    s = TruncSeries.one(trunc)
    for n in range(1, trunc + 1):
        for _ in range(comb(n + d - 2, d - 1)):
            s = s.geometric_divide(1, n)
    return s


def macmahon_number(d, n):
    """q^n coefficient of the macmahon series at t = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return macmahon_series(d, n).t1_marginal()[n]


def pyramid_gf(d, m, trunc):
    """Finite product over n <= m of (1 - t q^n)^(-C(n+d-2, d-1))."""
    if m < 1:
        raise ValueError("m must be at least 1")
    s = TruncSeries.one(trunc)
    for n in range(1, min(m, trunc) + 1):
        for _ in range(comb(n + d - 2, d - 1)):
            s = s.geometric_divide(1, n)
    return s


@lru_cache(maxsize=None)
def distinct_partition_count(n, d):
    """Number of partitions of n into exactly d distinct positive parts."""
    if d == 0:
        return 1 if n == 0 else 0
    if n < d * (d + 1) // 2:
        return 0
    # subtract one from every part: smallest part was 1 or greater
    return distinct_partition_count(n - d, d) + distinct_partition_count(n - d, d - 1)


def distinct_parts_gf(d, trunc):
    """Product over n of (1 - q^n)^(-p(n, d)) with p counting distinct-part partitions."""
    if d < 1:
        raise ValueError("d must be at least 1")
    s = TruncSeries.one(trunc)
    for n in range(1, trunc + 1):
        for _ in range(distinct_partition_count(n, d)):
            s = s.geometric_divide(0, n)
    return s


def corner_coord_gf(bounds, trunc):
    """Product over i <= n1 of (1 - q^i)^(-(n2 ... nd)); pure q series."""
    bounds = tuple(int(b) for b in bounds)
    if any(b < 1 for b in bounds):
        raise ValueError("box bounds must be positive")
    rest = 1
    for b in bounds[1:]:
        rest *= b
    s = TruncSeries.one(trunc)
    for i in range(1, bounds[0] + 1):
        for _ in range(rest):
            s = s.geometric_divide(0, i)
    return s
