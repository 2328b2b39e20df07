"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Stated runtime budgets are asserted with time.monotonic.
"""

import itertools
import random
import time
from fractions import Fraction
from math import sqrt

from hdpart.bijection import (
    last_passage_partition,
    source_matrix,
    weight_of_matrix,
    weight_of_partition,
)
from hdpart.core import (
    DdPartition,
    DiagramSet,
    box_cells,
    corners,
    diagram,
    shape,
    top_corners,
)
from hdpart.enumeration import (
    ch_volume_table,
    iter_boxed_partitions,
    iter_matrices,
    iter_subpartitions,
    macmahon_box_count,
    volume_table,
)
from hdpart.groth import (
    MultiPoly,
    boxed_poly,
    cauchy_product,
    check_quasisymmetric,
    check_symmetric,
    expansion_poly,
    groth_poly,
    monomial_expansion,
    set_first_variable_one,
)
from hdpart.lpp import (
    GeomParams,
    joint_probability_exact,
    monte_carlo_joint,
    single_point_cdf,
)
from hdpart.series import TruncSeries, macmahon_number, shaped_gf
from hdpart.stats import corner_hook_volume
from helpers import random_sparse_matrix

PP = DdPartition([[4, 3, 2], [3, 3, 0]])


def _ok(num, name):
    print(f"criterion {num:02d} ({name}): PASS")


def _box_shape(bounds):
    return DiagramSet(len(bounds), box_cells(bounds), require_lower=True)


def _bijection_families():
    for n1 in (1, 2, 3):
        for n2 in (1, 2, 3):
            for cap in (1, 2, 3):
                yield (n1, n2), cap
    for bounds in itertools.product((1, 2), repeat=3):
        for cap in (1, 2):
            yield bounds, cap


def test_c01_bijection_roundtrip():
    t0 = time.monotonic()
    for bounds, cap in _bijection_families():
        rho = _box_shape(bounds)
        mats = list(iter_matrices(rho, lp_bound=cap))
        parts = list(iter_boxed_partitions(bounds + (cap,)))
        image = set()
        for a in mats:
            p = last_passage_partition(a)
            assert source_matrix(p) == a
            image.add(p)
        assert image == set(parts)
        assert len(mats) == len(parts) == len(image)
        for p in parts:
            assert last_passage_partition(source_matrix(p)) == p
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    _ok(1, f"bijection exhaustive roundtrip, {elapsed:.2f}s")


def test_c02_weight_preservation():
    t0 = time.monotonic()
    for bounds, cap in _bijection_families():
        for a in iter_matrices(_box_shape(bounds), lp_bound=cap):
            assert weight_of_matrix(a) == weight_of_partition(last_passage_partition(a))
    rng = random.Random(20240810)
    for d in (2, 3, 4):
        for _ in range(10_000):
            a = random_sparse_matrix(rng, d, max_bound=3 if d > 2 else 4)
            assert weight_of_matrix(a) == weight_of_partition(last_passage_partition(a))
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    _ok(2, f"weight preservation incl. 3x10^4 random, {elapsed:.2f}s")


def test_c03_corner_hook_example():
    assert corners(PP).cells() == (
        (1, 1, 4), (1, 3, 1), (1, 3, 2), (2, 2, 1), (2, 2, 2), (2, 2, 3),
    )
    assert len(corners(PP)) == 6
    assert top_corners(PP).cells() == ((1, 1, 4), (1, 3, 2), (2, 2, 3))
    assert len(top_corners(PP)) == 3
    assert corner_hook_volume(PP) == 16
    _ok(3, "corner and corner-hook example values")


def _shaped_family():
    yield diagram(DdPartition([1]))
    yield diagram(DdPartition([2, 1]))
    yield diagram(DdPartition([3, 2]))
    yield diagram(DdPartition([[1]]))          # unit cell, rank 3
    yield diagram(DdPartition([[1], [1]]))     # 2 x 1 x 1 column
    yield diagram(PP)                          # 15-cell rank-3 shape


def test_c04_shaped_generating_function():
    t0 = time.monotonic()
    trunc = 6
    for rho in _shaped_family():
        subset_pairs = []
        exact_pairs = []
        for a in iter_matrices(rho, weight_bound=trunc):
            p = last_passage_partition(a)
            cor = len(corners(p))
            ch = corner_hook_volume(p)
            # transport identity, asserted per instance: the definitional
            # statistic equals the weighted matrix mass, so the enumeration
            # is exhaustive for ch <= trunc
            assert ch == sum(v * (sum(i) - len(i) + 1) for i, v in a.cells() if v)
            subset_pairs.append((cor, ch))
            if shape(p) == rho:
                exact_pairs.append((cor, ch))
        assert TruncSeries.from_terms(trunc, subset_pairs) == shaped_gf(rho, False, trunc)
        assert TruncSeries.from_terms(trunc, exact_pairs) == shaped_gf(rho, True, trunc)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    _ok(4, f"shaped product formulas to q^6, {elapsed:.2f}s")


def test_c05_macmahon_interpretation():
    t0 = time.monotonic()
    for d in (2, 3):
        counts = ch_volume_table(d, 6)
        assert counts == [macmahon_number(d, n) for n in range(7)]
    p3 = volume_table(3, 6)
    m3 = [macmahon_number(3, n) for n in range(7)]
    assert p3[:6] == m3[:6]
    assert m3[6] == p3[6] + 1
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0
    _ok(5, f"corner-hook counts match product coefficients, {elapsed:.2f}s")


def test_c06_equidistribution():
    trunc = 6
    for box in [(1, 2), (2, 2), (2, 3)]:
        from hdpart.stats import trace

        tv = [
            (trace(p), p.volume)
            for p in iter_boxed_partitions(box + (trunc,))
            if p.volume <= trunc
        ]
        cc = []
        for a in iter_matrices(_box_shape(box), weight_bound=trunc):
            p = last_passage_partition(a)
            cc.append((len(corners(p)), corner_hook_volume(p)))
        assert TruncSeries.from_terms(trunc, tv) == TruncSeries.from_terms(trunc, cc)
    _ok(6, "trace/volume equidistributes with corner/corner-hook")


def test_c07_groth_examples():
    from test_groth import EXPECTED_A, EXPECTED_B, EXPECTED_C, RHO_A, RHO_B, RHO_C

    box = (3, 2, 2, 2)
    assert groth_poly(RHO_A, box).terms == EXPECTED_A
    assert groth_poly(RHO_B, box).terms == EXPECTED_B
    assert groth_poly(RHO_C, box).terms == EXPECTED_C
    _ok(7, "reference polynomials reproduced term for term")


def test_c08_cauchy_branching_boxedspec():
    # Cauchy identity on boxes with at most 8 cells, total degree <= 4
    for bounds in [(2, 2), (2, 4), (2, 2, 2)]:
        deg = 4
        rhs = cauchy_product(bounds, deg)
        acc = MultiPoly.zero(bounds)
        for r in iter_boxed_partitions(bounds[1:] + (deg,)):
            acc = acc + groth_poly(r, bounds + (deg,))
        lhs = MultiPoly(bounds, {k: c for k, c in acc.terms.items() if sum(k[0]) <= deg})
        assert lhs == rhs

    # branching rule
    lam = DdPartition([2, 1])
    g = groth_poly(lam, (3, 2, 2)).specialize({1: (1, 1)})
    total = MultiPoly.zero((2,))
    for s in iter_subpartitions(lam):
        total = total + groth_poly(s, (2, 2, 2)).specialize({1: (1, 1)})
    assert set_first_variable_one(g) == total

    # boxed specialization at all-ones equals the closed box product
    for n1, n2, n3 in itertools.product((1, 2, 3), repeat=3):
        rho = DdPartition.from_flat([n3] * n2, (n2,))
        val = groth_poly(rho, (n1 + 1, n2, n3)).specialize(
            {0: (1,) * (n1 + 1), 1: (1,) * n2}
        )
        assert val == macmahon_box_count(n1, n2, n3)
    _ok(8, "cauchy, branching, boxed specialization")


def test_c09_quasisymmetry():
    from test_groth import RHO_A, RHO_B, RHO_C

    box = (3, 2, 2, 2)
    for rho in (RHO_A, RHO_B, RHO_C, DdPartition([[2, 2], [1, 0]])):
        g = groth_poly(rho, box)
        ok, witness = check_quasisymmetric(g, 0)
        assert ok, witness
    gc = groth_poly(RHO_C, box)
    key = ((3, 1), (3, 1))
    assert gc.coefficient(((2, 1, 1),) + key) == 3
    assert gc.coefficient(((1, 2, 1),) + key) == 3
    assert gc.coefficient(((1, 1, 2),) + key) == 2
    sym, witness = check_symmetric(gc, 0)
    assert not sym and witness is not None
    _ok(9, "quasisymmetric in the first alphabet; symmetry fails with witness")


def test_c10_monomial_expansion():
    for bounds in [(2, 2, 2), (2, 2, 2, 2)]:
        exp = monomial_expansion(bounds)
        assert expansion_poly(exp, bounds[:-1]) == boxed_poly(bounds)
    _ok(10, "monomial reconstruction equals the boxed polynomial")


def test_c11_lpp_agreement():
    t0 = time.monotonic()
    samples = 200_000
    seed = 20240811
    for dims in [(2, 2), (2, 2, 2)]:
        sub = dims[1:]
        cells = 1
        for b in sub:
            cells *= b
        targets = [
            [0] * cells,
            [1] + [0] * (cells - 1),
            [2] + [1] * (cells - 1),
        ]
        for q in (Fraction(1, 4), Fraction(1, 2)):
            for flat in targets:
                rho = DdPartition.from_flat(flat, sub)
                exact = float(joint_probability_exact(rho, dims[0], q))
                res = monte_carlo_joint(rho, GeomParams(q, dims, seed), samples)
                se = sqrt(exact * (1 - exact) / samples)
                assert abs(res.frequency - exact) <= 4 * se, (
                    dims, str(q), flat, res.frequency, exact,
                )
    for d in (2, 3):
        dims = (1,) * d
        for q in (Fraction(1, 4), Fraction(1, 2)):
            for n in range(6):
                assert single_point_cdf(dims, n, q) == 1 - q ** (n + 1)
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0
    _ok(11, f"monte carlo within 4 standard errors, cdf exact, {elapsed:.2f}s")
