"""Self-verification suites exercising the package's exact identities.

Each suite returns a list of Check records; the CLI renders them as a
machine-readable report and exits nonzero on any failure.  Scales are kept
small enough for the full run to finish in well under a minute.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import bijection, enumeration, groth, lpp, series, stats
from .core import (
    DdPartition,
    DiagramSet,
    box_cells,
    corners,
    diagram,
    shape,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _full_box(bounds):
    return DiagramSet(len(bounds), box_cells(bounds), require_lower=True)


def suite_roundtrip(**opts):
    checks = []
    for bounds, cap in [((2, 2), 2), ((3, 3), 3), ((2, 2, 2), 2)]:
        rho = _full_box(bounds)
        mats = list(enumeration.iter_matrices(rho, lp_bound=cap))
        parts = list(enumeration.iter_boxed_partitions(bounds + (cap,)))
        ok = len(mats) == len(parts)
        image = set()
        for a in mats:
            p = bijection.last_passage_partition(a)
            if bijection.source_matrix(p) != a:
                ok = False
                break
            image.add(p)
        ok = ok and image == set(parts)
        for p in parts:
            if bijection.last_passage_partition(bijection.source_matrix(p)) != p:
                ok = False
                break
        checks.append(Check(f"roundtrip box={bounds} cap={cap}", ok,
                            f"{len(mats)} matrices, {len(parts)} partitions"))
    return checks


def suite_weights(**opts):
    import random

    from .core import NdArray

    count = int(opts.get("samples", 2000))
    rng = random.Random(int(opts.get("seed", 0)))
    bad = 0
    for _ in range(count):
        d = rng.choice([2, 3, 4])
        bounds = tuple(rng.randint(1, 4 if d < 4 else 3) for _ in range(d))
        total = 1
        for b in bounds:
            total *= b
        flat = [0] * total
        for _ in range(rng.randint(0, 5)):
            flat[rng.randrange(total)] = rng.randint(0, 3)
        a = NdArray.from_flat(flat, bounds)
        p = bijection.last_passage_partition(a)
        if bijection.weight_of_matrix(a) != bijection.weight_of_partition(p):
            bad += 1
    return [Check("weight preservation (random)", bad == 0, f"{count} samples, {bad} mismatches")]


def _shaped_sums(rho, trunc):
    subset = []
    exact = []
    for a in enumeration.iter_matrices(rho, weight_bound=trunc):
        p = bijection.last_passage_partition(a)
        cor = len(corners(p))
        ch = stats.corner_hook_volume(p)
        subset.append((cor, ch))
        if shape(p) == rho:
            exact.append((cor, ch))
    return subset, exact


def shaped_test_family():
    d2 = [DdPartition([1]), DdPartition([2, 1]), DdPartition([3, 2])]
    d3 = [
        DdPartition([[1]]),
        DdPartition([[1], [1]]),
        DdPartition([[4, 3, 2], [3, 3, 0]]),
    ]
    return [diagram(p) for p in d2] + [diagram(p) for p in d3]


def suite_shaped(**opts):
    trunc = int(opts.get("trunc", 6))
    checks = []
    for rho in shaped_test_family():
        subset, exact = _shaped_sums(rho, trunc)
        lhs_sub = series.TruncSeries.from_terms(trunc, subset)
        lhs_ex = series.TruncSeries.from_terms(trunc, exact)
        ok = (lhs_sub == series.shaped_gf(rho, False, trunc)
              and lhs_ex == series.shaped_gf(rho, True, trunc))
        checks.append(Check(f"shaped gf rank={rho.rank} |rho|={len(rho)}", ok,
                            f"trunc={trunc}, {len(subset)} partitions"))
    return checks


def suite_macmahon(**opts):
    upto = int(opts.get("upto", 6))
    checks = []
    for d in (2, 3):
        table = enumeration.ch_volume_table(d, upto)
        want = [series.macmahon_number(d, n) for n in range(upto + 1)]
        checks.append(Check(f"ch-volume counts d={d}", table == want, f"{table}"))
    p3 = enumeration.volume_table(3, min(upto, 6))
    m3 = [series.macmahon_number(3, n) for n in range(min(upto, 6) + 1)]
    ok = p3[:6] == m3[:6] and (len(p3) < 7 or m3[6] == p3[6] + 1)
    checks.append(Check("volume vs macmahon d=3", ok, f"p3={p3} m3={m3}"))
    return checks


def suite_full(**opts):
    trunc = int(opts.get("trunc", 6))
    checks = []
    for d in (2, 3):
        rho = enumeration.pyramid_diagram(d, trunc)
        pairs = []
        for a in enumeration.iter_matrices(rho, weight_bound=trunc):
            p = bijection.last_passage_partition(a)
            pairs.append((len(corners(p)), stats.corner_hook_volume(p)))
        lhs = series.TruncSeries.from_terms(trunc, pairs)
        rhs = series.macmahon_series(d, trunc)
        checks.append(Check(f"full gf d={d}", lhs == rhs, f"trunc={trunc}, {len(pairs)} partitions"))
    return checks


def suite_equidist(**opts):
    trunc = int(opts.get("trunc", 6))
    n1 = opts.get("n1")
    n2 = opts.get("n2")
    boxes = [(int(n1), int(n2))] if n1 and n2 else [(1, 2), (2, 2), (2, 3)]
    checks = []
    for b in boxes:
        tr_vol = []
        for p in enumeration.iter_boxed_partitions(b + (trunc,)):
            if p.volume <= trunc:
                tr_vol.append((stats.trace(p), p.volume))
        cor_ch = []
        rho = _full_box(b)
        for a in enumeration.iter_matrices(rho, weight_bound=trunc):
            p = bijection.last_passage_partition(a)
            cor_ch.append((len(corners(p)), stats.corner_hook_volume(p)))
        lhs = series.TruncSeries.from_terms(trunc, tr_vol)
        rhs = series.TruncSeries.from_terms(trunc, cor_ch)
        checks.append(Check(f"equidistribution box={b}", lhs == rhs,
                            f"{len(tr_vol)} vs {len(cor_ch)} partitions"))
    return checks


def suite_cauchy(**opts):
    degree = int(opts.get("degree", 3))
    checks = []
    for bounds in [(2, 2), (2, 2, 2)]:
        rhs = groth.cauchy_product(bounds, degree)
        acc = groth.MultiPoly.zero(bounds)
        for r in enumeration.iter_boxed_partitions(bounds[1:] + (degree,)):
            acc = acc + groth.groth_poly(r, bounds + (degree,))
        lhs = groth.MultiPoly(
            bounds, {k: c for k, c in acc.terms.items() if sum(k[0]) <= degree}
        )
        checks.append(Check(f"cauchy box={bounds}", lhs == rhs, f"degree<={degree}"))
    return checks


def suite_branch(**opts):
    checks = []
    for lam, box in [(DdPartition([2, 1]), (3, 2, 2)), (DdPartition([[1, 1], [1, 0]]), (2, 2, 2, 1))]:
        g = groth.groth_poly(lam, box)
        ones = {ax: (1,) * box[ax] for ax in range(1, len(box) - 1)}
        lhs = groth.set_first_variable_one(g.specialize(ones) if ones else g)
        total = groth.MultiPoly.zero((box[0] - 1,))
        for s in enumeration.iter_subpartitions(lam):
            gs = groth.groth_poly(s, (box[0] - 1,) + box[1:])
            total = total + (gs.specialize(ones) if ones else gs)
        checks.append(Check(f"branching box={box}", lhs == total, ""))
    return checks


def suite_boxedspec(**opts):
    checks = []
    for n1, n2, n3 in [(1, 2, 2), (2, 2, 2), (2, 3, 2)]:
        rho = DdPartition.from_flat([n3] * n2, (n2,))
        g = groth.groth_poly(rho, (n1 + 1, n2, n3))
        val = g.specialize({0: (1,) * (n1 + 1), 1: (1,) * n2})
        want = enumeration.macmahon_box_count(n1, n2, n3)
        checks.append(Check(f"boxed specialization ({n1},{n2},{n3})", val == want,
                            f"{val} vs {want}"))
    return checks


def suite_qsym(**opts):
    box = (3, 2, 2, 2)
    checks = []
    for nested in [[[2, 1]], [[1, 1], [1, 0]], [[2, 1], [1, 0]]]:
        rho = DdPartition(nested)
        g = groth.groth_poly(rho, box)
        ok, witness = groth.check_quasisymmetric(g, 0)
        checks.append(Check(f"quasisymmetric rho={nested}", ok, str(witness or "")))
    g = groth.groth_poly(DdPartition([[2, 1], [1, 0]]), box)
    sym, witness = groth.check_symmetric(g, 0)
    checks.append(Check("non-symmetry witness", not sym, str(witness)))
    f = groth.boxed_poly((2, 2, 2, 2))
    ok = all(groth.check_quasisymmetric(f, ax)[0] for ax in range(3))
    checks.append(Check("boxed polynomial fully quasisymmetric", ok, "box (2,2,2,2)"))
    return checks


def suite_monomial(**opts):
    checks = []
    for bounds in [(2, 2, 2), (2, 2, 2, 2)]:
        exp = groth.monomial_expansion(bounds)
        rebuilt = groth.expansion_poly(exp, bounds[:-1])
        checks.append(Check(f"monomial expansion box={bounds}",
                            rebuilt == groth.boxed_poly(bounds),
                            f"{len(exp)} packed classes"))
    return checks


def suite_lpp(**opts):
    samples = int(opts.get("samples", 20000))
    seed = int(opts.get("seed", 2024))
    threads = int(opts.get("threads", 1))
    checks = []
    zmax = 0.0
    for dims in [(2, 2), (2, 2, 2)]:
        sub = dims[1:]
        cells = 1
        for b in sub:
            cells *= b
        for q in (Fraction(1, 4), Fraction(1, 2)):
            for rho_flat in ([0] * cells, [1] + [0] * (cells - 1)):
                rho = DdPartition.from_flat(rho_flat, sub)
                exact = lpp.joint_probability_exact(rho, dims[0], q)
                params = lpp.GeomParams(q, dims, seed)
                res = lpp.monte_carlo_joint(rho, params, samples, threads=threads)
                p = float(exact)
                se = (p * (1 - p) / samples) ** 0.5
                z = abs(res.frequency - p) / se if se else 0.0
                zmax = max(zmax, z)
                checks.append(Check(
                    f"lpp dims={dims} q={q} rho={rho_flat}",
                    z <= 4.0,
                    f"freq={res.frequency:.5f} exact={p:.5f} z={z:.2f}",
                ))
    for dims in [(1, 1), (1, 1, 1)]:
        q = Fraction(1, 3)
        ok = all(lpp.single_point_cdf(dims, n, q) == 1 - q ** (n + 1) for n in range(5))
        checks.append(Check(f"single-point cdf dims={dims}", ok, ""))
    return checks


SUITES = {
    "roundtrip": suite_roundtrip,
    "weights": suite_weights,
    "shaped": suite_shaped,
    "macmahon": suite_macmahon,
    "full": suite_full,
    "equidist": suite_equidist,
    "cauchy": suite_cauchy,
    "branch": suite_branch,
    "boxedspec": suite_boxedspec,
    "qsym": suite_qsym,
    "monomial": suite_monomial,
    "lpp": suite_lpp,
}


def run_suites(names=None, **opts):
    """Run the named suites (all by default); returns (checks, all_passed)."""
    if not names:
        names = list(SUITES)
    checks = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        checks.extend(SUITES[name](**opts))
    return checks, all(c.passed for c in checks)
