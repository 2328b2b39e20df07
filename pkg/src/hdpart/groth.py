"""Multivariate polynomials over d alphabets and Grothendieck-type sums.

A term key is a tuple of per-alphabet exponent vectors (fixed lengths), so
iteration sorted on the concatenated key is deterministic.  Coefficients are
exact ints; specialization accepts ints or fractions.
"""

import itertools
import json
from fractions import Fraction

from .core import (
    DdPartition,
    DiagramSet,
    SoftLimitError,
    box_cells,
    corners,
)
from .enumeration import (
    composition_of,
    iter_boxed_partitions,
    iter_packed_matrices,
    iter_subpartitions,
    slice_sums,
)

GROTH_CELL_LIMIT = 24

_LETTERS = ("x", "y", "z", "w")


def _axis_letter(axis, rank):
    if rank <= len(_LETTERS):
        return _LETTERS[axis]
    return f"x({axis + 1})"


class MultiPoly:
    """Polynomial with integer coefficients over d ordered alphabets."""

    __slots__ = ("alphabets", "terms")

    def __init__(self, alphabets, terms=None):
        self.alphabets = tuple(int(n) for n in alphabets)
        if any(n < 0 for n in self.alphabets):
            raise ValueError("alphabet sizes must be nonnegative")
        clean = {}
        for key, coeff in (terms or {}).items():
            key = tuple(tuple(int(e) for e in exps) for exps in key)
            if len(key) != len(self.alphabets):
                raise ValueError("term key does not match the number of alphabets")
            for exps, n in zip(key, self.alphabets):
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match alphabet size {n}")
                if any(e < 0 for e in exps):
                    raise ValueError("exponents must be nonnegative")
            if coeff:
                clean[key] = clean.get(key, 0) + coeff
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls, alphabets):
        return cls(alphabets)

    @classmethod
    def one(cls, alphabets):
        key = tuple((0,) * n for n in alphabets)
        return cls(alphabets, {key: 1})

    def copy_terms(self):
        return dict(self.terms)

    def coefficient(self, key):
        key = tuple(tuple(exps) for exps in key)
        return self.terms.get(key, 0)

    def sorted_terms(self):
        """(key, coeff) pairs sorted by the concatenated exponent vectors."""
        return sorted(self.terms.items(), key=lambda kv: tuple(itertools.chain(*kv[0])))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.alphabets == other.alphabets and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        self._match(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return MultiPoly(self.alphabets, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return MultiPoly(self.alphabets, {key: k * c for key, c in self.terms.items()})

    def __mul__(self, other):
        self._match(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(tuple(a + b for a, b in zip(e1, e2)) for e1, e2 in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.alphabets, out)

    def _match(self, other):
        if not isinstance(other, MultiPoly) or other.alphabets != self.alphabets:
            raise ValueError("alphabets must match")

    def tensor(self, other):
        """Product over concatenated (disjoint) alphabets."""
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return MultiPoly(self.alphabets + other.alphabets, out)

    def axis_degree(self, key, axis):
        return sum(key[axis])

    def specialize(self, values):
        """Substitute numeric values for whole alphabets.

        values maps axis -> sequence of ints/Fractions (one per variable).
        Axes not mentioned stay symbolic; a full assignment returns a scalar
        (int when the result is integral, Fraction otherwise).
        """
        values = {int(ax): tuple(v) for ax, v in values.items()}
        for ax, vals in values.items():
            if not 0 <= ax < len(self.alphabets):
                raise ValueError(f"axis {ax} out of range")
            if len(vals) != self.alphabets[ax]:
                raise ValueError(
                    f"axis {ax} needs {self.alphabets[ax]} values, got {len(vals)}"
                )
        keep = [ax for ax in range(len(self.alphabets)) if ax not in values]
        acc = {}
        for key, coeff in self.terms.items():
            factor = Fraction(coeff)
            for ax, vals in values.items():
                for v, e in zip(vals, key[ax]):
                    if e:
                        factor *= Fraction(v) ** e
            if not factor:
                continue
            new_key = tuple(key[ax] for ax in keep)
            acc[new_key] = acc.get(new_key, 0) + factor
        if keep:
            out = {}
            for key, c in acc.items():
                if c:
                    if c.denominator != 1:
                        raise ValueError("partial specialization must keep integer coefficients")
                    out[key] = int(c)
            return MultiPoly(tuple(self.alphabets[ax] for ax in keep), out)
        total = sum(acc.values(), Fraction(0))
        return int(total) if total.denominator == 1 else total

    def pretty(self):
        """Human-readable form, alphabets printed as x, y, z, w."""
        rank = len(self.alphabets)
        chunks = []
        for key, coeff in self.sorted_terms():
            vars_ = []
            for axis, exps in enumerate(key):
                letter = _axis_letter(axis, rank)
                for j, e in enumerate(exps):
                    if e == 1:
                        vars_.append(f"{letter}{j + 1}")
                    elif e > 1:
                        vars_.append(f"{letter}{j + 1}^{e}")
            body = "*".join(vars_)
            if not body:
                chunks.append(str(coeff))
            elif coeff == 1:
                chunks.append(body)
            elif coeff == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{coeff}*{body}")
        return " + ".join(chunks) if chunks else "0"

    def to_json_dict(self):
        return {
            "alphabets": list(self.alphabets),
            "terms": [
                {"exps": [list(e) for e in key], "coeff": str(coeff)}
                for key, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data):
        terms = {
            tuple(tuple(e) for e in t["exps"]): int(t["coeff"])
            for t in data["terms"]
        }
        return cls(tuple(data["alphabets"]), terms)

    def dumps(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text):
        return cls.from_json_dict(json.loads(text))


def corner_weight_key(p, alphabets):
    """Term key of a partition: one variable per alphabet for each corner."""
    rows = [[0] * n for n in alphabets]
    for cell in corners(p):
        for axis in range(p.rank):
            rows[axis][cell[axis] - 1] += 1
    return tuple(tuple(r) for r in rows)


def _coerce_shape(rho, d):
    # accept the indexing shape as a (d-1)-dimensional partition or its
    # rank-d diagram
    if isinstance(rho, DiagramSet):
        if rho.rank != d:
            raise ValueError(f"shape diagram must have rank {d}")
        if not rho:
            return DdPartition.from_flat([], (0,) * (d - 1))
        return rho.to_partition()
    if isinstance(rho, DdPartition):
        if rho.rank != d - 1:
            raise ValueError(f"indexing partition must have rank {d - 1}")
        return rho
    raise TypeError("rho must be a DdPartition or DiagramSet")


def _check_cell_budget(box):
    cells = 1
    for b in box[:-1]:
        cells *= b
    if cells > GROTH_CELL_LIMIT:
        raise SoftLimitError(
            f"polynomial construction limited to {GROTH_CELL_LIMIT} box cells, got {cells}"
        )


def _embed(p, bounds):
    flat = [p.get(idx) for idx in box_cells(bounds)]
    return DdPartition._raw(tuple(flat), bounds)


def _iter_with_first_slice(first, n1, sub):
    """Partitions on the box (n1, *sub) whose first slice equals `first`."""
    slices = [first]

    def rec():
        if len(slices) == n1:
            flat = []
            for s in slices:
                flat.extend(s.flat())
            yield DdPartition._raw(tuple(flat), (n1,) + sub)
            return
        for tau in iter_subpartitions(slices[-1]):
            slices.append(tau)
            yield from rec()
            slices.pop()

    yield from rec()


def groth_poly(rho, box, check_limit=True):
    """Corner-weight generating polynomial over partitions with a fixed
    first-axis shape.

    rho indexes the polynomial; box = (n1, ..., n_{d+1}) fixes the alphabet
    sizes (n1..nd) and the entry cap.  Enumeration fixes the first slice to
    rho and recurses over the deeper slices, each dominated by the previous.
    """
    box = tuple(int(b) for b in box)
    if len(box) < 3:
        raise ValueError("box needs at least three bounds")
    d = len(box) - 1
    if check_limit:
        _check_cell_budget(box)
    rho_p = _coerce_shape(rho, d)
    sub = box[1:-1]
    cap = box[-1]
    tb = rho_p.trim().bounds
    if any(t > b for t, b in zip(tb, sub)):
        raise ValueError(f"rho with bounds {tb} does not fit the box {sub}")
    if max(rho_p.flat(), default=0) > cap:
        raise ValueError("rho entries exceed the box entry cap")
    alphabets = box[:-1]
    first = _embed(rho_p, sub)
    acc = {}
    for p in _iter_with_first_slice(first, box[0], sub):
        key = corner_weight_key(p, alphabets)
        acc[key] = acc.get(key, 0) + 1
    return MultiPoly(alphabets, acc)


def boxed_poly(bounds, check_limit=True):
    """Corner-weight sum over every partition in the box."""
    bounds = tuple(int(b) for b in bounds)
    if check_limit:
        _check_cell_budget(bounds)
    alphabets = bounds[:-1]
    acc = {}
    for p in iter_boxed_partitions(bounds):
        key = corner_weight_key(p, alphabets)
        acc[key] = acc.get(key, 0) + 1
    return MultiPoly(alphabets, acc)


def cauchy_product(bounds, max_degree):
    """Expansion of the product over box cells of (1 - x_{i1}...x_{id})^(-1),
    truncated beyond first-alphabet total degree max_degree.

    Expanded directly as a sum over matrices on the box with total mass at
    most max_degree (each unit of mass at a cell contributes one variable of
    every alphabet).
    """
    bounds = tuple(int(b) for b in bounds)
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    cells = list(box_cells(bounds))
    d = len(bounds)
    rows = [[0] * n for n in bounds]
    acc = {}

    def rec(k, left):
        if k == len(cells):
            key = tuple(tuple(r) for r in rows)
            acc[key] = acc.get(key, 0) + 1
            return
        cell = cells[k]
        for v in range(left + 1):
            if v:
                for axis in range(d):
                    rows[axis][cell[axis] - 1] += 1
            rec(k + 1, left - v)
        # the loop left `left` units on this cell; undo before backtracking
        for axis in range(d):
            rows[axis][cell[axis] - 1] -= left

    rec(0, max_degree)
    return MultiPoly(bounds, acc)


def set_first_variable_one(p, axis=0):
    """Substitute 1 for the first variable of an alphabet and reindex the rest."""
    if p.alphabets[axis] < 1:
        raise ValueError("alphabet has no variables to substitute")
    alphabets = list(p.alphabets)
    alphabets[axis] -= 1
    out = {}
    for key, coeff in p.terms.items():
        exps = key[axis][1:]
        new_key = key[:axis] + (exps,) + key[axis + 1:]
        out[new_key] = out.get(new_key, 0) + coeff
    return MultiPoly(tuple(alphabets), out)


def check_quasisymmetric(p, axis=0):
    """Coefficient invariance across increasing variable supports.

    Returns (True, None), or (False, (key_a, key_b)) naming two term keys
    whose coefficients should agree but do not (a missing placement counts
    as coefficient 0).
    """
    n = p.alphabets[axis]
    groups = {}
    for key, coeff in p.terms.items():
        exps = key[axis]
        supp = tuple(j for j, e in enumerate(exps) if e)
        pattern = tuple(exps[j] for j in supp)
        rest = key[:axis] + key[axis + 1:]
        groups.setdefault((pattern, rest), {})[supp] = (coeff, key)

    def place(pattern, supp):
        exps = [0] * n
        for j, e in zip(supp, pattern):
            exps[j] = e
        return tuple(exps)

    for (pattern, rest), placements in groups.items():
        ref_supp = min(placements)
        ref_coeff, ref_key = placements[ref_supp]
        for supp in itertools.combinations(range(n), len(pattern)):
            hit = placements.get(supp)
            if hit is None:
                missing = rest[:axis] + (place(pattern, supp),) + rest[axis:]
                return False, (ref_key, missing)
            if hit[0] != ref_coeff:
                return False, (ref_key, hit[1])
    return True, None


def check_symmetric(p, axis=0):
    """Full symmetric-group invariance on one alphabet; witness on failure."""
    groups = {}
    for key, coeff in p.terms.items():
        exps = key[axis]
        rest = key[:axis] + key[axis + 1:]
        gid = (tuple(sorted(exps, reverse=True)), rest)
        groups.setdefault(gid, {})[exps] = (coeff, key)
    for (sorted_exps, rest), placements in groups.items():
        ref = None
        for exps in set(itertools.permutations(sorted_exps)):
            hit = placements.get(exps)
            if hit is None:
                missing = rest[:axis] + (exps,) + rest[axis:]
                hit = (0, missing)
            if ref is None:
                ref = hit
            elif hit[0] != ref[0]:
                return False, (ref[1], hit[1])
    return True, None


def monomial_qsym(alpha, n):
    """Monomial quasisymmetric polynomial M_alpha in n variables."""
    alpha = tuple(int(a) for a in alpha)
    if any(a < 1 for a in alpha):
        raise ValueError("composition parts must be positive")
    out = {}
    for supp in itertools.combinations(range(n), len(alpha)):
        exps = [0] * n
        for j, a in zip(supp, alpha):
            exps[j] = a
        out[(tuple(exps),)] = 1
    return MultiPoly((n,), out)


def monomial_expansion(bounds):
    """Packed-matrix counts indexing the monomial expansion of the boxed sum.

    bounds = (n1, ..., nd, cap).  Maps a tuple of d compositions (the stripped
    slice-sum vectors) to the number of packed matrices on the box with those
    slice sums, under the last-passage cap.
    """
    bounds = tuple(int(b) for b in bounds)
    box, cap = bounds[:-1], bounds[-1]
    out = {}
    for a in iter_packed_matrices(box, cap):
        key = tuple(composition_of(slice_sums(a, axis)) for axis in range(len(box)))
        out[key] = out.get(key, 0) + 1
    return out


def expansion_poly(expansion, alphabets):
    """Rebuild the boxed polynomial from its monomial expansion coefficients."""
    alphabets = tuple(int(n) for n in alphabets)
    total = MultiPoly.zero(alphabets)
    for comps, mult in sorted(expansion.items()):
        term = None
        for alpha, n in zip(comps, alphabets):
            m = monomial_qsym(alpha, n) if alpha else MultiPoly.one((n,))
            term = m if term is None else term.tensor(m)
        total = total + term.scale(mult)
    return total


def top_component(p, axis=0):
    """Terms of maximal total degree in one alphabet."""
    if p.is_zero():
        raise ValueError("zero polynomial has no top component")
    best = max(sum(key[axis]) for key in p.terms)
    return MultiPoly(
        p.alphabets,
        {key: c for key, c in p.terms.items() if sum(key[axis]) == best},
    )
