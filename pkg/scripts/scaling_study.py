#!/usr/bin/env python3
"""Wall-clock scaling of the subsampled pipeline versus network size.

Holds the subsample size fixed, sweeps N, and fits a log-log slope of the
total pipeline time (near 1 expected: the work grows linearly in N at
fixed n). Optionally times the dense full-network baseline at its largest
feasible N for a speedup ratio.

Usage:
    python scripts/scaling_study.py
    python scripts/scaling_study.py --sizes 2000,4000,8000,16000 --trials 9
    python scripts/scaling_study.py --with-full-baseline
"""

import argparse
import time

import numpy as np

from sscluster import bench, sampling, sbm
from sscluster.bench import run_full_sc, run_ssc


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=lambda s: tuple(int(x) for x in s.split(",")),
                    default=(2000, 4000, 8000))
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--beta", type=float, default=0.02)
    ap.add_argument("--zeta", type=float, default=0.05)
    ap.add_argument("--trials", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--method", choices=("srs", "dcs"), default="srs")
    ap.add_argument("--with-full-baseline", action="store_true")
    ap.add_argument("--out", type=str, default=None, help="records CSV path")
    args = ap.parse_args()

    B = sbm.block_matrix(args.beta, args.zeta, args.k)
    records = []
    largest_graph = None
    for N in args.sizes:
        for trial in range(args.trials):
            seed = bench.derive_seed(args.seed, "scaling", N, trial)
            rng = np.random.default_rng(seed)
            z = sbm.sample_memberships([1 / args.k] * args.k, N, rng)
            g = sbm.generate_adjacency(z, B, rng)
            t0 = time.perf_counter()
            if args.method == "srs":
                s = sampling.srs(N, args.n, rng)
            else:
                s = sampling.dcs(g, args.n, args.k, rng)
            t_sampling = time.perf_counter() - t0
            _, _, timings = run_ssc(g, s, args.k, rng)
            records.append(bench.TrialRecord(
                scenario="scaling", cell=args.sizes.index(N), N=N, n=args.n,
                K=args.k, beta=args.beta, zeta=args.zeta, delta=0.0,
                method=args.method, trial=trial, seed=seed, rate=0.0,
                t_sampling=t_sampling, t_laplacian=timings["laplacian"],
                t_eig=timings["eig"], t_kmeans=timings["kmeans"],
            ))
            if N == max(args.sizes) and trial == 0:
                largest_graph = g

    summary = bench.timing_summary(records)
    for row in summary["rows"]:
        print(f"N={row['N']:>6} n={row['n']}: total {row['t_total']*1e3:8.2f} ms "
              f"(sampling {row['t_sampling']*1e3:.2f}, laplacian "
              f"{row['t_laplacian']*1e3:.2f}, eig {row['t_eig']*1e3:.2f}, "
              f"kmeans {row['t_kmeans']*1e3:.2f})")
    slope = summary["slopes"][args.method]
    print(f"log-log slope of total time vs N: {slope:.3f}")

    if args.with_full_baseline and largest_graph is not None:
        N_base = min(max(args.sizes), 4000)
        rng = np.random.default_rng(args.seed)
        z = sbm.sample_memberships([1 / args.k] * args.k, N_base, rng)
        g = sbm.generate_adjacency(z, B, rng)
        t0 = time.perf_counter()
        run_full_sc(g, args.k, rng)
        t_full = time.perf_counter() - t0
        ssc_at_max = [r.t_total for r in records if r.N == max(args.sizes)]
        print(f"dense full SC at N={N_base}: {t_full:.2f} s; subsampled "
              f"pipeline at N={max(args.sizes)}: {np.median(ssc_at_max)*1e3:.1f} ms")

    if args.out:
        bench.write_records_csv(records, args.out)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
