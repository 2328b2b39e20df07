import math
from fractions import Fraction

import numpy as np
import pytest

from hdpart.bijection import last_passage_partition
from hdpart.core import DdPartition, NdArray
from hdpart.enumeration import iter_boxed_partitions
from hdpart.lpp import (
    BLOCK_SIZE,
    GeomParams,
    boundary_slice,
    joint_probability_exact,
    last_passage_grid,
    monte_carlo_joint,
    sample_weight_batch,
    sample_weights,
    single_point_cdf,
)
from helpers import pad_to


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            GeomParams(Fraction(3, 2), (2, 2))
        with pytest.raises(ValueError):
            GeomParams(Fraction(1, 2), (0, 2))


class TestSampling:
    def test_deterministic(self):
        p = GeomParams(Fraction(1, 2), (3, 3), seed=42)
        assert sample_weights(p) == sample_weights(p)
        a = sample_weight_batch(p, 1000)
        b = sample_weight_batch(p, 1000)
        assert (a == b).all()

    def test_blocks_differ(self):
        p = GeomParams(Fraction(1, 2), (2, 2), seed=1)
        a = sample_weight_batch(p, 100, block=0)
        b = sample_weight_batch(p, 100, block=1)
        assert (a != b).any()

    def test_empirical_mean(self):
        q = 0.4
        p = GeomParams(Fraction(2, 5), (10, 10), seed=5)
        arr = sample_weight_batch(p, 1000)
        mean = q / (1 - q)
        var = q / (1 - q) ** 2
        se = math.sqrt(var / arr.size)
        assert abs(arr.mean() - mean) < 3 * se

    def test_distribution_exact(self):
        # frequencies of small values match (1-q) q^k within 4 sigma
        q = 0.5
        p = GeomParams(Fraction(1, 2), (1,), seed=9)
        arr = sample_weight_batch(p, 200_000).reshape(-1)
        n = arr.size
        for k in range(4):
            want = (1 - q) * q**k
            got = float((arr == k).mean())
            se = math.sqrt(want * (1 - want) / n)
            assert abs(got - want) < 4 * se


class TestGrid:
    def test_zero(self):
        assert last_passage_grid(NdArray([[0, 0]])).is_zero()

    def test_example(self):
        assert last_passage_grid(NdArray([[1, 2], [3, 4]])).to_nested() == [[1, 3], [4, 8]]

    def test_rank1_prefix_sums(self):
        assert last_passage_grid(NdArray([2, 3, 1])).to_nested() == [2, 5, 6]

    def test_flip_identity(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            dims = tuple(rng.integers(1, 4, size=rng.integers(1, 4)))
            w = NdArray.from_flat([int(v) for v in rng.integers(0, 5, size=int(np.prod(dims)))], dims)
            g = last_passage_grid(w)
            assert g.reverse() == last_passage_partition(w.reverse())

    def test_boundary_slice(self):
        g = last_passage_grid(NdArray([[1, 2], [3, 4]]))
        # G(2, 3 - i) for i in [2]: (G(2,2), G(2,1))
        assert boundary_slice(g, (2, 2)).to_nested() == [8, 4]


class TestExactJoint:
    def test_zero_boundary(self):
        q = Fraction(1, 3)
        rho = DdPartition.from_flat([0, 0], (2,))
        assert joint_probability_exact(rho, 2, q) == (1 - q) ** 4

    def test_single_cell_geometric(self):
        q = Fraction(1, 4)
        for k in range(4):
            rho = DdPartition.from_flat([k], (1,))
            assert joint_probability_exact(rho, 1, q) == (1 - q) * q**k

    @pytest.mark.parametrize("dims", [(1, 1), (2, 1), (2, 2), (1, 1, 2)])
    def test_total_mass_one(self, dims):
        # summing over boundary values up to a cap approaches 1 from below;
        # the tail is at most P(max passage time > cap)
        q = Fraction(1, 2)
        cap = 10
        sub = dims[1:]
        total = Fraction(0)
        for p in iter_boxed_partitions(sub + (cap,)):
            rho = pad_to(p, sub)
            total += joint_probability_exact(rho, dims[0], q)
        assert total <= 1
        assert float(total) > 1 - 0.02

    def test_matches_empirical_distribution_exactly(self):
        # tiny case: exhaust the weight space by truncation and compare
        q = Fraction(1, 2)
        dims = (1, 2)
        cap = 14
        target = DdPartition.from_flat([1, 1], (2,))
        prob = Fraction(0)
        for w_flat in __import__("itertools").product(range(cap + 1), repeat=2):
            w = NdArray.from_flat(w_flat, dims)
            g = last_passage_grid(w)
            if boundary_slice(g, dims) == target:
                prob += (1 - q) ** 2 * q ** sum(w_flat)
        exact = joint_probability_exact(target, 1, q)
        assert abs(float(prob - exact)) < 1e-3  # truncation tail only


class TestSinglePointCdf:
    @pytest.mark.parametrize("dims", [(1, 1), (1, 1, 1)])
    def test_geometric_identity(self, dims):
        q = Fraction(1, 3)
        for n in range(5):
            assert single_point_cdf(dims, n, q) == 1 - q ** (n + 1)

    def test_monotone_to_one(self):
        prev = Fraction(-1)
        for n in range(8):
            v = single_point_cdf((2, 2), n, Fraction(1, 2))
            assert prev <= v <= 1
            prev = v
        assert single_point_cdf((2, 2), 7, Fraction(1, 4)) > Fraction(99, 100)

    def test_truncated_enumeration_oracle(self):
        # P(G(1,2) <= 1) by summing geometric weights with a negligible tail
        q = Fraction(1, 2)
        dims = (1, 2)
        cap = 44  # tail mass below 1e-12
        want = Fraction(0)
        for w_flat in __import__("itertools").product(range(cap + 1), repeat=2):
            w = NdArray.from_flat(w_flat, dims)
            if last_passage_grid(w).get((1, 2)) <= 1:
                want += (1 - q) ** 2 * q ** sum(w_flat)
        got = single_point_cdf(dims, 1, q)
        assert abs(float(want - got)) < 1e-12


class TestMonteCarlo:
    def test_impossible_boundary(self):
        # boundary slices decrease along i, so an increasing target can never
        # occur; such a target is not even constructible as a partition
        from hdpart.core import InvalidPartitionError
        from hdpart.lpp import _grid_batch

        with pytest.raises(InvalidPartitionError):
            DdPartition.from_flat([0, 9], (2,))
        params = GeomParams(Fraction(1, 2), (2, 2), seed=0)
        g = _grid_batch(sample_weight_batch(params, 5000))
        flipped = g[:, -1, ::-1]
        hits = ((flipped[:, 0] == 0) & (flipped[:, 1] == 9)).sum()
        assert hits == 0

    def test_matches_exact_within_4_sigma(self):
        q = Fraction(1, 2)
        params = GeomParams(q, (2, 2), seed=11)
        rho = DdPartition.from_flat([1, 0], (2,))
        exact = float(joint_probability_exact(rho, 2, q))
        res = monte_carlo_joint(rho, params, 100_000)
        se = math.sqrt(exact * (1 - exact) / res.samples)
        assert abs(res.frequency - exact) <= 4 * se

    def test_seed_determinism_and_block_split(self):
        q = Fraction(1, 4)
        params = GeomParams(q, (2, 2), seed=2)
        rho = DdPartition.from_flat([0, 0], (2,))
        r1 = monte_carlo_joint(rho, params, BLOCK_SIZE + 123)
        r2 = monte_carlo_joint(rho, params, BLOCK_SIZE + 123)
        assert r1.hits == r2.hits

    def test_two_seeds_close(self):
        q = Fraction(1, 2)
        rho = DdPartition.from_flat([0, 0], (2,))
        exact = float(joint_probability_exact(rho, 2, q))
        rs = [
            monte_carlo_joint(rho, GeomParams(q, (2, 2), seed=s), 50_000)
            for s in (101, 202)
        ]
        se = math.sqrt(2) * math.sqrt(exact * (1 - exact) / 50_000)
        assert abs(rs[0].frequency - rs[1].frequency) <= 5 * se

    def test_threads_do_not_change_result(self):
        q = Fraction(1, 2)
        params = GeomParams(q, (2, 2), seed=4)
        rho = DdPartition.from_flat([1, 1], (2,))
        serial = monte_carlo_joint(rho, params, 2 * BLOCK_SIZE)
        parallel = monte_carlo_joint(rho, params, 2 * BLOCK_SIZE, threads=2)
        assert serial.hits == parallel.hits
