"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 soft-limit breach.
Exact values are always emitted as decimal strings; identical flags and seed
give byte-identical output.
"""

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import enumeration, groth, lpp, series, stats, verify
from .bijection import last_passage_partition, source_matrix, weight_of_matrix
from .core import (
    DdPartition,
    DiagramSet,
    InvalidPartitionError,
    NdArray,
    SoftLimitError,
    box_cells,
    diagram,
)


def _parse_ints(text):
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise ValueError("expected at least one integer")
    return out


def _parse_q(text):
    q = Fraction(text)
    if not 0 < q < 1:
        raise ValueError("q must lie strictly between 0 and 1")
    return q


def _threads(args):
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("HDPART_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_shape(path):
    """A lower set from either a diagram JSON or a partition JSON."""
    data = _load_json(path)
    if "cells" in data:
        return DiagramSet.from_json_dict(data)
    return diagram(DdPartition.from_json_dict(data))


def _load_partition(path):
    return DdPartition.from_json_dict(_load_json(path))


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _emit_csv(rows):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    for row in rows:
        writer.writerow(row)


def _count_payload(d, n, value):
    return {"d": d, "n": n, "count": str(value)}


def cmd_count(args):
    if args.what == "boxed":
        dims = _parse_ints(args.dims)
        value = enumeration.boxed_count(dims)
        _emit_json({"dims": list(dims), "count": str(value)})
    elif args.what == "volume":
        upto = args.upto if args.upto is not None else args.n
        if upto is None:
            raise ValueError("give --n or --upto")
        table = enumeration.volume_table(args.d, upto, threads=_threads(args))
        if args.upto is not None:
            _emit_json([_count_payload(args.d, n, table[n]) for n in range(upto + 1)])
        else:
            _emit_json(_count_payload(args.d, upto, table[upto]))
    elif args.what == "macmahon":
        upto = args.upto if args.upto is not None else args.n
        if upto is None:
            raise ValueError("give --n or --upto")
        marg = series.macmahon_series(args.d, upto).t1_marginal()
        if args.upto is not None:
            _emit_json([_count_payload(args.d, n, marg[n]) for n in range(upto + 1)])
        else:
            _emit_json(_count_payload(args.d, upto, marg[upto]))
    elif args.what == "chvolume":
        upto = args.upto if args.upto is not None else args.n
        if upto is None:
            raise ValueError("give --n or --upto")
        table = enumeration.ch_volume_table(args.d, upto)
        if args.upto is not None:
            _emit_json([_count_payload(args.d, n, table[n]) for n in range(upto + 1)])
        else:
            _emit_json(_count_payload(args.d, upto, table[upto]))
    elif args.what == "packed":
        dims = _parse_ints(args.dims)
        count = sum(1 for _ in enumeration.iter_packed_matrices(dims, args.cap))
        _emit_json({"dims": list(dims), "cap": args.cap, "count": str(count)})
    return 0


def cmd_series(args):
    trunc = args.trunc
    if args.kind == "shaped":
        rho = _load_shape(args.rho)
        s = series.shaped_gf(rho, args.exact, trunc)
    elif args.kind == "boxed":
        s = series.boxed_gf(_parse_ints(args.dims), trunc)
    elif args.kind == "macmahon":
        s = series.macmahon_series(args.d, trunc)
    elif args.kind == "pyramid":
        s = series.pyramid_gf(args.d, args.m, trunc)
    else:  # distinct
        s = series.distinct_parts_gf(args.d, trunc)
    _emit_csv(s.csv_rows(marginal=args.marginal))
    return 0


def cmd_groth(args):
    if args.what == "poly":
        box = _parse_ints(args.box)
        rho = _load_shape(args.rho)
        g = groth.groth_poly(rho, box)
    elif args.what == "boxed":
        g = groth.boxed_poly(_parse_ints(args.box))
    else:  # expansion
        box = _parse_ints(args.box)
        exp = groth.monomial_expansion(box)
        payload = [
            {"compositions": [list(a) for a in key], "count": str(v)}
            for key, v in sorted(exp.items())
        ]
        _emit_json({"box": list(box), "terms": payload})
        return 0
    if args.format == "pretty":
        sys.stdout.write(g.pretty() + "\n")
    else:
        _emit_json(g.to_json_dict())
    return 0


def cmd_bij(args):
    if args.what == "forward":
        a = NdArray.from_json_dict(_load_json(args.input))
        _emit_json(last_passage_partition(a).to_json_dict())
    elif args.what == "inverse":
        p = _load_partition(args.input)
        _emit_json(source_matrix(p).to_json_dict())
    else:  # weight
        a = NdArray.from_json_dict(_load_json(args.input))
        w = weight_of_matrix(a)
        _emit_json({"rank": w.rank, "exponents": [list(e) for e in w.exponents]})
    return 0


def cmd_stats(args):
    p = _load_partition(args.input)
    rec = stats.partition_stats(p)
    _emit_json(rec.to_json_dict())
    return 0


def cmd_lpp(args):
    q = _parse_q(args.q)
    dims = _parse_ints(args.dims)
    if args.what == "cdf":
        value = lpp.single_point_cdf(dims, args.n, q)
        _emit_json({
            "dims": list(dims), "n": args.n, "q": str(q),
            "probability": str(value),
        })
        return 0
    if args.d is not None and args.d != len(dims):
        raise ValueError(f"--d {args.d} does not match --dims of length {len(dims)}")
    rho = _load_partition(args.rho)
    rho = DdPartition.from_flat(
        [rho.get(idx) for idx in box_cells(dims[1:])], dims[1:]
    )
    exact = lpp.joint_probability_exact(rho, dims[0], q)
    params = lpp.GeomParams(q, dims, args.seed)
    res = lpp.monte_carlo_joint(rho, params, args.samples, threads=_threads(args))
    p = float(exact)
    se = (p * (1 - p) / args.samples) ** 0.5
    z = (res.frequency - p) / se if se else 0.0
    _emit_json({
        "dims": list(dims), "q": str(q), "seed": args.seed,
        "samples": str(args.samples), "hits": str(res.hits),
        "empirical": repr(res.frequency), "exact": str(exact),
        "stderr": repr(res.stderr), "z_score": repr(z),
    })
    return 0


def cmd_verify(args):
    names = [args.suite] if args.suite else None
    opts = {}
    for key in ("trunc", "samples", "seed", "n1", "n2", "degree", "upto"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    opts["threads"] = _threads(args)
    checks, passed = verify.run_suites(names, **opts)
    _emit_json({
        "suites": args.suite or "all",
        "passed": passed,
        "checks": [c.to_json_dict() for c in checks],
    })
    return 0 if passed else 1


def cmd_report(args):
    from . import report

    outdir = args.out_dir
    if args.what == "counts":
        paths = report.counts_report(args.d, args.upto, outdir)
    elif args.what == "series":
        if args.kind == "macmahon":
            s = series.macmahon_series(args.d, args.trunc)
            stem = f"series_macmahon_d{args.d}_n{args.trunc}"
        else:
            s = series.boxed_gf(_parse_ints(args.dims), args.trunc)
            stem = "series_boxed_" + "x".join(map(str, _parse_ints(args.dims)))
        paths = report.series_report(s, outdir, stem, marginal=args.marginal)
    else:  # lpp
        q = _parse_q(args.q)
        dims = _parse_ints(args.dims)
        paths = report.lpp_report(dims, q, args.samples, args.seed, outdir,
                                  max_entry=args.max_entry, threads=_threads(args))
    _emit_json({"written": [str(p) for p in paths]})
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hdpart",
        description="Exact computations on higher-dimensional partitions.",
    )
    ap.add_argument("--threads", type=int, default=None,
                    help="worker count (default: HDPART_THREADS or all cores)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact counting")
    p.add_argument("what", choices=["boxed", "volume", "macmahon", "chvolume", "packed"])
    p.add_argument("--dims", help="comma-separated box bounds")
    p.add_argument("--d", type=int, default=2, help="partition dimension")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--upto", type=int, default=None)
    p.add_argument("--cap", type=int, default=1, help="last-passage cap for packed counts")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("series", help="truncated generating functions as CSV")
    p.add_argument("kind", choices=["shaped", "boxed", "macmahon", "pyramid", "distinct"])
    p.add_argument("--rho", help="JSON file: diagram cells or partition entries")
    p.add_argument("--dims", help="comma-separated box bounds")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--trunc", type=int, default=6)
    p.add_argument("--exact", action="store_true", help="fixed-shape variant")
    p.add_argument("--marginal", action="store_true", help="emit the t=1 marginal")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("groth", help="multivariate polynomials")
    p.add_argument("what", choices=["poly", "boxed", "expansion"])
    p.add_argument("--rho", help="JSON file: diagram cells or partition entries")
    p.add_argument("--box", required=True, help="comma-separated box bounds")
    p.add_argument("--format", choices=["json", "pretty"], default="json")
    p.add_argument("--pretty", dest="format", action="store_const", const="pretty")
    p.set_defaults(fn=cmd_groth)

    p = sub.add_parser("bij", help="matrix/partition transform")
    p.add_argument("what", choices=["forward", "inverse", "weight"])
    p.add_argument("--input", required=True, help="JSON file")
    p.set_defaults(fn=cmd_bij)

    p = sub.add_parser("stats", help="statistics of one partition")
    p.add_argument("--input", required=True, help="partition JSON file")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("lpp", help="last passage percolation")
    p.add_argument("what", choices=["simulate", "cdf"])
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--dims", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rho", help="boundary partition JSON (simulate)")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_lpp)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", choices=sorted(verify.SUITES), default=None)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--upto", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", help="CSV tables with rendered figures")
    p.add_argument("what", choices=["counts", "series", "lpp"])
    p.add_argument("--out-dir", default="reports")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--upto", type=int, default=6)
    p.add_argument("--kind", choices=["macmahon", "boxed"], default="macmahon")
    p.add_argument("--dims", default="2,2")
    p.add_argument("--trunc", type=int, default=6)
    p.add_argument("--marginal", action="store_true")
    p.add_argument("--q", default="1/2")
    p.add_argument("--samples", type=int, default=50_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-entry", type=int, default=2, dest="max_entry")
    p.set_defaults(fn=cmd_report)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.fn(args)
    except SoftLimitError as exc:
        print(f"hdpart: size limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, InvalidPartitionError, OSError, KeyError) as exc:
        print(f"hdpart: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
