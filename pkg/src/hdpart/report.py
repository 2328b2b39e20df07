"""Report rendering: delimited tables with matplotlib figures beside them.

Every report writes a CSV file and a PNG figure with the same stem into the
output directory and returns the paths.  Rendering is batch-only (Agg).
"""

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import enumeration, lpp, series
from .core import DdPartition, box_cells


def _prepare(out_dir):
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_csv(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in rows:
            writer.writerow(row)


def counts_report(d, upto, out_dir):
    """Volume counts next to the product-formula coefficients, with a figure."""
    out = _prepare(out_dir)
    stem = f"counts_d{d}_n{upto}"
    volume = enumeration.volume_table(d, upto)
    product = series.macmahon_series(d, upto).t1_marginal()
    rows = [("n", "volume_count", "product_coefficient")]
    rows += [(n, str(volume[n]), str(product[n])) for n in range(upto + 1)]
    csv_path = out / f"{stem}.csv"
    _write_csv(csv_path, rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ns = list(range(upto + 1))
    ax.plot(ns, volume, "o-", label="partitions by volume")
    ax.plot(ns, product, "s--", label="product-formula coefficients")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.set_title(f"d = {d}: volume counts vs corner-hook counts")
    ax.legend()
    fig.tight_layout()
    png_path = out / f"{stem}.png"
    fig.savefig(png_path)
    plt.close(fig)
    return [csv_path, png_path]


def series_report(s, out_dir, stem, marginal=False):
    """A truncated series as CSV plus a coefficient heatmap (or marginal bars)."""
    out = _prepare(out_dir)
    csv_path = out / f"{stem}.csv"
    _write_csv(csv_path, s.csv_rows(marginal=marginal))

    fig, ax = plt.subplots(figsize=(6, 4))
    if marginal:
        marg = s.t1_marginal()
        ax.bar(range(len(marg)), marg)
        ax.set_xlabel("q degree")
        ax.set_ylabel("coefficient at t = 1")
    else:
        table = [[s.coefficient(j, n) for n in range(s.trunc + 1)]
                 for j in range(s.trunc + 1)]
        im = ax.imshow(table, origin="lower", aspect="auto", cmap="viridis")
        fig.colorbar(im, ax=ax, label="coefficient")
        ax.set_xlabel("q degree")
        ax.set_ylabel("t degree")
    ax.set_title(stem.replace("_", " "))
    fig.tight_layout()
    png_path = out / f"{stem}.png"
    fig.savefig(png_path)
    plt.close(fig)
    return [csv_path, png_path]


def lpp_report(dims, q, samples, seed, out_dir, max_entry=2, threads=1):
    """Empirical vs exact boundary-slice frequencies over small outcomes."""
    out = _prepare(out_dir)
    q = Fraction(q)
    stem = f"lpp_{'x'.join(map(str, dims))}_q{q.numerator}-{q.denominator}_s{seed}"
    sub = dims[1:]
    rows = [("rho", "empirical", "exact", "stderr")]
    labels, empirical, exact, errs = [], [], [], []
    for p in enumeration.iter_boxed_partitions(sub + (max_entry,)):
        rho = DdPartition.from_flat([p.get(i) for i in box_cells(sub)], sub)
        ex = lpp.joint_probability_exact(rho, dims[0], q)
        params = lpp.GeomParams(q, dims, seed)
        res = lpp.monte_carlo_joint(rho, params, samples, threads=threads)
        label = "/".join(str(v) for _, v in rho.cells())
        labels.append(label)
        empirical.append(res.frequency)
        exact.append(float(ex))
        errs.append(res.stderr)
        rows.append((label, repr(res.frequency), str(ex), repr(res.stderr)))
    csv_path = out / f"{stem}.csv"
    _write_csv(csv_path, rows)

    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(labels)), 4))
    xs = range(len(labels))
    ax.bar(xs, empirical, yerr=errs, alpha=0.6, label="empirical")
    ax.plot(xs, exact, "k_", markersize=14, label="exact")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("probability")
    ax.set_title(f"boundary slice law, dims={dims}, q={q}, {samples} samples")
    ax.legend()
    fig.tight_layout()
    png_path = out / f"{stem}.png"
    fig.savefig(png_path)
    plt.close(fig)
    return [csv_path, png_path]
