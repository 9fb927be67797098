"""Benchmark harness: seeded scenario sweeps, method comparison, CSV output.

Four simulation scenarios sweep network size, subsample size, signal
strength, and community imbalance. Every trial is driven by a seed derived
from (master seed, scenario, cell index, trial index), so identical
configurations reproduce the CSV byte for byte except for the timing
columns.

CSV schema (version header "# sscluster bench csv v1"):
    row_type   TRIAL | AGG | TREND
    scenario   s1..s4 | real
    cell       cell index within the sweep grid
    N, n, K    network size, subsample size, community count
    beta, zeta, delta   SBM signal and imbalance parameters
    method     srs | dcs | full
    trial      trial index within the cell (TRIAL rows)
    seed       derived per-trial seed
    status     ok | degenerate | skipped
    covered    1 if the sample hit every community, else 0
    rate       per-trial misclustered rate (TRIAL rows)
    rate_mean, rate_se   aggregates over the cell (AGG rows)
    trend      per-method monotonicity summary of mean rates (TREND rows)
    t_sampling, t_laplacian, t_eig, t_kmeans, t_total   stage seconds
"""

from __future__ import annotations

import csv
import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import graph, metrics, sampling, sbm, spectral
from .errors import DegenerateInputError
from .kmeans import kmeans

CSV_VERSION = "# sscluster bench csv v1"
COLUMNS = [
    "row_type", "scenario", "cell", "N", "n", "K", "beta", "zeta", "delta",
    "method", "trial", "seed", "status", "covered", "rate",
    "rate_mean", "rate_se", "trend",
    "t_sampling", "t_laplacian", "t_eig", "t_kmeans", "t_total",
]
TIMING_COLUMNS = ["t_sampling", "t_laplacian", "t_eig", "t_kmeans", "t_total"]


def derive_seed(master: int, scenario: str, cell: int, trial: int) -> int:
    """Stable per-trial seed: no correlation across cells or trials."""
    key = f"{master}|{scenario}|{cell}|{trial}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def subsample_size_rule(N: int) -> int:
    """Growth rule for the consistency sweep: ceil(2 * (log N)^2), natural log."""
    return math.ceil(2.0 * math.log(N) ** 2)


@dataclass
class TrialRecord:
    scenario: str
    cell: int
    N: int
    n: int
    K: int
    beta: float
    zeta: float
    delta: float
    method: str
    trial: int
    seed: int
    status: str = "ok"
    covered: bool | None = None
    rate: float | None = None
    t_sampling: float = 0.0
    t_laplacian: float = 0.0
    t_eig: float = 0.0
    t_kmeans: float = 0.0

    @property
    def t_total(self) -> float:
        return self.t_sampling + self.t_laplacian + self.t_eig + self.t_kmeans


@dataclass
class ScenarioConfig:
    """Parameters for one scenario sweep; unused grids stay at None.

    Desk defaults keep every sweep runnable in minutes on one core; the
    full-size settings (N up to 30,000, T=100) go through the grids.
    """

    scenario: str                       # s1 | s2 | s3 | s4
    K: int = 3
    pi: tuple[float, ...] | None = None
    beta: float = 0.1
    zeta: float = 0.05
    N: int = 2000
    n: int = 100
    N_grid: tuple[int, ...] | None = None
    n_grid: tuple[int, ...] | None = None
    beta_grid: tuple[float, ...] | None = None
    zeta_grid: tuple[float, ...] | None = None
    delta_grid: tuple[float, ...] | None = None
    trials: int = 20
    master_seed: int = 0
    out: str = "bench.csv"
    jobs: int = 1
    methods: tuple[str, ...] = ("srs", "dcs")
    full_sc: bool = False               # add full-SC baseline rows (1 per cell)
    full_dense_guard: int = spectral.FULL_DENSE_GUARD
    kmeans_restarts: int = 10

    def resolved_pi(self) -> tuple[float, ...]:
        if self.pi is not None:
            return tuple(self.pi)
        return tuple([1.0 / self.K] * self.K)


@dataclass(frozen=True)
class _Cell:
    """One grid point of a sweep, fully resolved."""

    index: int
    N: int
    n: int
    beta: float
    zeta: float
    delta: float
    pi: tuple[float, ...]


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def run_ssc(g: graph.SparseGraph, sample: sampling.SampleSet, K: int,
            rng: np.random.Generator, restarts: int = 10):
    """Subsampled spectral clustering with per-stage wall-clock timings.

    Returns (labels, embedding, timings). An all-zero bi-adjacency (no
    edges touch the sample) raises DegenerateInputError.
    """
    timings = {}
    t0 = time.perf_counter()
    biadj = graph.bi_adjacency(g, sample.ids)
    ls = spectral.subsampled_laplacian(biadj)
    timings["laplacian"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    emb = spectral.embed(ls, K)
    timings["eig"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    km = kmeans(emb.matrix, K, restarts=restarts, rng=rng)
    timings["kmeans"] = time.perf_counter() - t0
    return km.labels, emb, timings


def run_full_sc(g: graph.SparseGraph, K: int, rng: np.random.Generator,
                restarts: int = 10, dense_guard: int = spectral.FULL_DENSE_GUARD,
                iterative: bool = False):
    """Full-network spectral clustering baseline with stage timings."""
    timings = {"sampling": 0.0}
    t0 = time.perf_counter()
    lap = spectral.full_laplacian(g)
    timings["laplacian"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    emb = spectral.full_embed(lap, K, dense_guard=dense_guard, iterative=iterative)
    timings["eig"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    km = kmeans(emb.matrix, K, restarts=restarts, rng=rng)
    timings["kmeans"] = time.perf_counter() - t0
    return km.labels, emb, timings


# ---------------------------------------------------------------------------
# Trials
# ---------------------------------------------------------------------------

def _sbm_trial(scenario: str, cell: _Cell, trial: int, seed: int, K: int,
               methods: tuple[str, ...], restarts: int, with_full: bool,
               full_dense_guard: int) -> list[TrialRecord]:
    """Run one seeded replication of a scenario cell.

    Draws labels and a graph, then evaluates each subsampling method (and
    optionally the full-SC baseline) against the planted communities.
    """
    rng = np.random.default_rng(seed)
    z = sbm.sample_memberships(cell.pi, cell.N, rng)
    B = sbm.block_matrix(cell.beta, cell.zeta, K)
    g = sbm.generate_adjacency(z, B, rng)

    base = dict(scenario=scenario, cell=cell.index, N=cell.N, n=cell.n, K=K,
                beta=cell.beta, zeta=cell.zeta, delta=cell.delta, trial=trial,
                seed=seed)
    records = []
    for method in methods:
        t0 = time.perf_counter()
        if method == "srs":
            s = sampling.srs(cell.N, cell.n, rng)
        else:
            s = sampling.dcs(g, cell.n, K, rng)
        t_sampling = time.perf_counter() - t0
        covered = sampling.coverage_event(s, z, K)
        try:
            labels, _, timings = run_ssc(g, s, K, rng, restarts=restarts)
            rate = metrics.misclustered_rate(labels, z, K)
            records.append(TrialRecord(
                **base, method=method, covered=covered, rate=rate,
                t_sampling=t_sampling, t_laplacian=timings["laplacian"],
                t_eig=timings["eig"], t_kmeans=timings["kmeans"],
            ))
        except DegenerateInputError:
            # No signal at all (e.g. beta = 0): score the trivial one-block
            # labeling, which sits at chance level for the given pi.
            rate = metrics.misclustered_rate(np.ones(cell.N, dtype=np.int64), z, K)
            records.append(TrialRecord(
                **base, method=method, status="degenerate", covered=covered,
                rate=rate, t_sampling=t_sampling,
            ))

    if with_full:
        if cell.N <= full_dense_guard:
            try:
                labels, _, timings = run_full_sc(
                    g, K, rng, restarts=restarts, dense_guard=full_dense_guard)
                rate = metrics.misclustered_rate(labels, z, K)
                records.append(TrialRecord(
                    **base, method="full", rate=rate,
                    t_laplacian=timings["laplacian"], t_eig=timings["eig"],
                    t_kmeans=timings["kmeans"],
                ))
            except DegenerateInputError:
                records.append(TrialRecord(**base, method="full", status="degenerate"))
        else:
            records.append(TrialRecord(**base, method="full", status="skipped"))
    return records


def _run_sweep(cfg: ScenarioConfig, cells: list[_Cell]) -> list[TrialRecord]:
    """Execute every (cell, trial), serially or on a process pool.

    Rows come back in deterministic (cell, trial) order regardless of
    completion order.
    """
    tasks = []
    for cell in cells:
        for t in range(cfg.trials):
            seed = derive_seed(cfg.master_seed, cfg.scenario, cell.index, t)
            with_full = cfg.full_sc and t == 0
            tasks.append((cfg.scenario, cell, t, seed, cfg.K, cfg.methods,
                          cfg.kmeans_restarts, with_full, cfg.full_dense_guard))

    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_trial_star, tasks))
    else:
        chunks = [_trial_star(t) for t in tasks]

    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.cell, r.trial, _method_order(r.method)))
    return records


def _trial_star(args):
    return _sbm_trial(*args)


def _method_order(method: str) -> int:
    return {"srs": 0, "dcs": 1, "full": 2}.get(method, 9)


# ---------------------------------------------------------------------------
# Scenario runners
# ---------------------------------------------------------------------------

def _validate_common(cfg: ScenarioConfig) -> None:
    pi = cfg.resolved_pi()
    if len(pi) != cfg.K:
        raise ValueError(f"pi must have K={cfg.K} entries, got {len(pi)}")
    if any(p < 0 for p in pi) or abs(sum(pi) - 1.0) > 1e-9:
        raise ValueError("pi entries must be >= 0 and sum to 1")
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    if not all(m in ("srs", "dcs") for m in cfg.methods):
        raise ValueError(f"methods must be srs/dcs, got {cfg.methods}")


def run_scenario1(cfg: ScenarioConfig) -> list[TrialRecord]:
    """Consistency sweep: N grows, n follows ceil(2 (log N)^2)."""
    cfg = replace(cfg, scenario="s1")
    _validate_common(cfg)
    grid = cfg.N_grid or (1000, 2000, 4000)
    if list(grid) != sorted(grid):
        raise ValueError("N grid must be ascending")
    pi = cfg.resolved_pi()
    cells = [
        _Cell(index=i, N=N, n=subsample_size_rule(N), beta=cfg.beta,
              zeta=cfg.zeta, delta=0.0, pi=pi)
        for i, N in enumerate(grid)
    ]
    _check_cells(cells, cfg)
    return _finish(cfg, cells, trend_axis="N")


def run_scenario2(cfg: ScenarioConfig) -> list[TrialRecord]:
    """Subsample-size sweep at fixed N."""
    cfg = replace(cfg, scenario="s2")
    _validate_common(cfg)
    grid = cfg.n_grid or (100, 300, 500, 700, 900, 1100)
    pi = cfg.resolved_pi()
    cells = [
        _Cell(index=i, N=cfg.N, n=n, beta=cfg.beta, zeta=cfg.zeta,
              delta=0.0, pi=pi)
        for i, n in enumerate(grid)
    ]
    _check_cells(cells, cfg)
    return _finish(cfg, cells, trend_axis="n")


def run_scenario3(cfg: ScenarioConfig) -> list[TrialRecord]:
    """Signal-strength grid over (beta, zeta) at fixed N and n."""
    cfg = replace(cfg, scenario="s3")
    _validate_common(cfg)
    betas = cfg.beta_grid or (0.05, 0.35, 0.65, 0.95)
    zetas = cfg.zeta_grid or (0.05, 0.35, 0.65, 0.95)
    if min(betas) < 0 or max(betas) > 1 or min(zetas) < 0 or max(zetas) > 1:
        raise ValueError("beta and zeta grids must lie in [0, 1]")
    pi = cfg.resolved_pi()
    cells = []
    for i, b in enumerate(betas):
        for j, zt in enumerate(zetas):
            cells.append(_Cell(index=i * len(zetas) + j, N=cfg.N, n=cfg.n,
                               beta=b, zeta=zt, delta=0.0, pi=pi))
    _check_cells(cells, cfg)
    return _finish(cfg, cells, trend_axis=None)


def run_scenario4(cfg: ScenarioConfig) -> list[TrialRecord]:
    """Imbalance sweep: pi = (1/3 - d, 1/3, 1/3 + d) over a delta grid."""
    cfg = replace(cfg, scenario="s4")
    if cfg.K != 3:
        raise ValueError("the imbalance sweep is defined for K = 3")
    grid = cfg.delta_grid or (0.0, 0.1, 0.2, 0.3)
    if max(grid) > 1 / 3 + 1e-12:
        raise ValueError("delta must satisfy 1/3 - delta >= 0")
    cells = [
        _Cell(index=i, N=cfg.N, n=cfg.n, beta=cfg.beta, zeta=cfg.zeta,
              delta=d, pi=(1 / 3 - d, 1 / 3, 1 / 3 + d))
        for i, d in enumerate(grid)
    ]
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    _check_cells(cells, cfg)
    return _finish(cfg, cells, trend_axis="delta")


SCENARIOS = {
    "s1": run_scenario1,
    "s2": run_scenario2,
    "s3": run_scenario3,
    "s4": run_scenario4,
}


def default_config(scenario: str) -> ScenarioConfig:
    """Desk-scale defaults per scenario; beta/zeta follow each sweep's
    standard parameter block."""
    if scenario == "s1":
        return ScenarioConfig(scenario="s1", beta=0.1, zeta=0.05,
                              N_grid=(1000, 2000, 4000), full_sc=True)
    if scenario == "s2":
        return ScenarioConfig(scenario="s2", beta=0.03, zeta=0.05, N=2000,
                              n_grid=(100, 300, 500, 700, 900, 1100))
    if scenario == "s3":
        return ScenarioConfig(scenario="s3", N=2000, n=100)
    if scenario == "s4":
        return ScenarioConfig(scenario="s4", beta=0.1, zeta=0.05, N=2000, n=100)
    raise ValueError(f"unknown scenario {scenario!r}")


def _check_cells(cells: list[_Cell], cfg: ScenarioConfig) -> None:
    """Validate every cell against the pipeline preconditions up front, so
    an invalid config fails before any trial runs (no partial CSV)."""
    for c in cells:
        if not 1 <= c.n <= c.N:
            raise ValueError(f"cell {c.index}: need 1 <= n <= N, got n={c.n}, N={c.N}")
        if cfg.K > c.n:
            raise ValueError(f"cell {c.index}: K={cfg.K} exceeds subsample size {c.n}")
        if any(p < 0 for p in c.pi):
            raise ValueError(f"cell {c.index}: negative pi entry")


def _finish(cfg: ScenarioConfig, cells: list[_Cell], trend_axis: str | None):
    records = _run_sweep(cfg, cells)
    if cfg.out:
        write_records_csv(records, cfg.out, trend_axis=trend_axis)
    return records


# ---------------------------------------------------------------------------
# Aggregation and CSV
# ---------------------------------------------------------------------------

def aggregate(records: list[TrialRecord]) -> list[dict]:
    """Mean and standard error of the rate per (cell, method)."""
    cells: dict[tuple[int, str], list[TrialRecord]] = {}
    for r in records:
        if r.rate is not None:
            cells.setdefault((r.cell, r.method), []).append(r)
    rows = []
    for (cell, method), rs in sorted(cells.items(), key=lambda kv: (kv[0][0], _method_order(kv[0][1]))):
        rates = np.array([r.rate for r in rs])
        se = rates.std(ddof=1) / math.sqrt(len(rates)) if len(rates) > 1 else 0.0
        r0 = rs[0]
        rows.append({
            "cell": cell, "method": method, "N": r0.N, "n": r0.n, "K": r0.K,
            "beta": r0.beta, "zeta": r0.zeta, "delta": r0.delta,
            "scenario": r0.scenario,
            "rate_mean": float(rates.mean()), "rate_se": float(se),
            "status": "degenerate" if any(r.status == "degenerate" for r in rs) else "ok",
            "t_total_mean": float(np.mean([r.t_total for r in rs])),
            "n_trials": len(rs),
        })
    return rows


def _trend_label(means: list[float]) -> str:
    if all(b <= a + 1e-12 for a, b in zip(means, means[1:])):
        return "non-increasing"
    if all(b >= a - 1e-12 for a, b in zip(means, means[1:])):
        return "non-decreasing"
    return "mixed"


def write_records_csv(records: list[TrialRecord], path,
                      trend_axis: str | None = None) -> None:
    """One TRIAL row per record, AGG rows per (cell, method), and, for
    sweeps along a single axis, a TREND row per method."""
    aggs = aggregate(records)
    with open(path, "w", newline="") as fh:
        fh.write(CSV_VERSION + "\n")
        w = csv.DictWriter(fh, fieldnames=COLUMNS)
        w.writeheader()
        for r in records:
            w.writerow({
                "row_type": "TRIAL", "scenario": r.scenario, "cell": r.cell,
                "N": r.N, "n": r.n, "K": r.K,
                "beta": _fmt(r.beta), "zeta": _fmt(r.zeta), "delta": _fmt(r.delta),
                "method": r.method, "trial": r.trial, "seed": r.seed,
                "status": r.status,
                "covered": "" if r.covered is None else int(r.covered),
                "rate": _fmt(r.rate),
                "rate_mean": "", "rate_se": "", "trend": "",
                "t_sampling": _fmt_t(r.t_sampling),
                "t_laplacian": _fmt_t(r.t_laplacian),
                "t_eig": _fmt_t(r.t_eig),
                "t_kmeans": _fmt_t(r.t_kmeans),
                "t_total": _fmt_t(r.t_total),
            })
        for a in aggs:
            w.writerow({
                "row_type": "AGG", "scenario": a["scenario"], "cell": a["cell"],
                "N": a["N"], "n": a["n"], "K": a["K"],
                "beta": _fmt(a["beta"]), "zeta": _fmt(a["zeta"]),
                "delta": _fmt(a["delta"]),
                "method": a["method"], "trial": "", "seed": "",
                "status": a["status"], "covered": "",
                "rate": "", "rate_mean": _fmt(a["rate_mean"]),
                "rate_se": _fmt(a["rate_se"]), "trend": "",
                "t_sampling": "", "t_laplacian": "", "t_eig": "", "t_kmeans": "",
                "t_total": _fmt_t(a["t_total_mean"]),
            })
        if trend_axis is not None:
            by_method: dict[str, list[dict]] = {}
            for a in aggs:
                by_method.setdefault(a["method"], []).append(a)
            for method, rows in sorted(by_method.items(), key=lambda kv: _method_order(kv[0])):
                rows = sorted(rows, key=lambda a: a["cell"])
                label = _trend_label([a["rate_mean"] for a in rows])
                w.writerow({
                    "row_type": "TREND", "scenario": rows[0]["scenario"],
                    "cell": "", "N": "", "n": "", "K": rows[0]["K"],
                    "beta": "", "zeta": "", "delta": "", "method": method,
                    "trial": "", "seed": "", "status": "", "covered": "",
                    "rate": "", "rate_mean": "", "rate_se": "",
                    "trend": f"{trend_axis}:{label}",
                    "t_sampling": "", "t_laplacian": "", "t_eig": "",
                    "t_kmeans": "", "t_total": "",
                })


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.10g}"


def _fmt_t(x) -> str:
    return f"{x:.6f}"


def read_records_csv(path) -> list[dict]:
    """Read any bench CSV back as a list of dict rows (strings)."""
    with open(path) as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        return list(csv.DictReader(fh))


# ---------------------------------------------------------------------------
# Real-network pipeline
# ---------------------------------------------------------------------------

def run_real(edge_list_path, n: int | None, k, method: str, seed: int,
             out_prefix: str | None = None, n_nodes: int | None = None,
             full_dense_guard: int = spectral.FULL_DENSE_GUARD,
             iterative_full: bool = False, kmeans_restarts: int = 10,
             dcs_partition_k: int = 3) -> dict:
    """Cluster a network from an edge-list file.

    ``method`` selects srs/dcs subsampling (size ``n``) or "full" for the
    whole-network baseline (``n`` ignored). ``k`` may be an integer or
    "auto" (eigengap selection on the subsampled spectrum, or on the full
    spectrum under the dense guard for method="full"). Degree-corrected
    sampling needs a community count before the eigengap is available, so
    with ``k="auto"`` its degree partition uses ``dcs_partition_k``; the
    clustering K still comes from the eigengap. When the full baseline is
    feasible under the dense guard (or the iterative solver is enabled),
    subsampled runs also report the disagreement rate against full
    spectral clustering. Nodes with no connection to the sample are
    counted, not fatal.
    """
    rng = np.random.default_rng(seed)
    g, ext_ids = graph.graph_from_file(edge_list_path, n_nodes=n_nodes)

    if method == "full":
        return _run_full_file(g, ext_ids, k, rng, out_prefix,
                              full_dense_guard, iterative_full, kmeans_restarts)

    t0 = time.perf_counter()
    if method == "srs":
        s = sampling.srs(g.n_nodes, n, rng)
    elif method == "dcs":
        k_for_dcs = k if isinstance(k, int) else dcs_partition_k
        s = sampling.dcs(g, n, k_for_dcs, rng)
    else:
        raise ValueError(f"method must be srs, dcs or full, got {method!r}")
    t_sampling = time.perf_counter() - t0

    t0 = time.perf_counter()
    biadj = graph.bi_adjacency(g, s.ids)
    ls = spectral.subsampled_laplacian(biadj)
    t_laplacian = time.perf_counter() - t0

    if k == "auto":
        spec = spectral.subsampled_spectrum(ls)
        k = spectral.select_k(spec)
    elif not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive int or 'auto', got {k!r}")

    t0 = time.perf_counter()
    emb = spectral.embed(ls, k)
    t_eig = time.perf_counter() - t0
    t0 = time.perf_counter()
    km = kmeans(emb.matrix, k, restarts=kmeans_restarts, rng=rng)
    t_kmeans = time.perf_counter() - t0

    summary = {
        "N": g.n_nodes, "n_edges": g.n_edges, "n": n, "K": k,
        "method": method, "seed": seed,
        "n_disconnected_from_sample": ls.n_zero_rows,
        "t_sampling": t_sampling, "t_laplacian": t_laplacian,
        "t_eig": t_eig, "t_kmeans": t_kmeans,
        "t_ssc_total": t_sampling + t_laplacian + t_eig + t_kmeans,
        "labels": km.labels,
        "sample": s,
    }

    can_full = g.n_nodes <= full_dense_guard or iterative_full
    if can_full:
        t0 = time.perf_counter()
        full_labels, _, _ = run_full_sc(
            g, k, rng, restarts=kmeans_restarts,
            dense_guard=full_dense_guard, iterative=iterative_full)
        summary["t_full_total"] = time.perf_counter() - t0
        summary["full_labels"] = full_labels
        summary["disagreement_rate"] = metrics.misclustered_rate(km.labels, full_labels, k)

    if out_prefix:
        sbm.write_labels(km.labels, f"{out_prefix}.labels")
        sampling.write_sample(s, f"{out_prefix}.sample")
        if ext_ids is not None:
            graph.write_relabel_map(ext_ids, f"{out_prefix}.idmap")
    return summary


def _run_full_file(g, ext_ids, k, rng, out_prefix, full_dense_guard,
                   iterative, kmeans_restarts) -> dict:
    """Full-network spectral clustering of a loaded graph (method=full).

    With ``k="auto"`` the eigengap runs on the full Laplacian spectrum,
    which needs the dense path (N within the guard).
    """
    if k == "auto":
        if g.n_nodes > full_dense_guard:
            raise ValueError(
                "k='auto' with method=full needs the dense eigensolver; "
                f"N={g.n_nodes} exceeds the guard {full_dense_guard}"
            )
        t0 = time.perf_counter()
        lap = spectral.full_laplacian(g)
        w, _ = spectral.symmetric_eig(np.asarray(lap.todense()))
        k = spectral.select_k(spectral.EigenSpectrum(values=w))
    elif not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive int or 'auto', got {k!r}")

    labels, emb, timings = run_full_sc(
        g, k, rng, restarts=kmeans_restarts,
        dense_guard=full_dense_guard, iterative=iterative)
    summary = {
        "N": g.n_nodes, "n_edges": g.n_edges, "n": g.n_nodes, "K": k,
        "method": "full", "seed": None,
        "n_disconnected_from_sample": 0,
        "t_sampling": 0.0, "t_laplacian": timings["laplacian"],
        "t_eig": timings["eig"], "t_kmeans": timings["kmeans"],
        "t_ssc_total": timings["laplacian"] + timings["eig"] + timings["kmeans"],
        "labels": labels,
        "sample": None,
    }
    if out_prefix:
        sbm.write_labels(labels, f"{out_prefix}.labels")
        if ext_ids is not None:
            graph.write_relabel_map(ext_ids, f"{out_prefix}.idmap")
    return summary


# ---------------------------------------------------------------------------
# Timing analysis
# ---------------------------------------------------------------------------

def timing_summary(records: list[TrialRecord]) -> dict | None:
    """Per-stage medians by (method, N) and a log-log slope of total
    subsampled-pipeline time versus N at fixed n.

    Returns None (summary omitted) when fewer than two distinct N are
    present at a common n.
    """
    ssc = [r for r in records if r.method in ("srs", "dcs") and r.status == "ok"]
    if not ssc:
        return None
    by_n: dict[int, set[int]] = {}
    for r in ssc:
        by_n.setdefault(r.n, set()).add(r.N)
    n_fixed = max(by_n, key=lambda n: len(by_n[n]))
    if len(by_n[n_fixed]) < 2:
        return None

    rows = []
    slopes = {}
    for method in ("srs", "dcs"):
        pts = {}
        for N in sorted(by_n[n_fixed]):
            rs = [r for r in ssc if r.method == method and r.n == n_fixed and r.N == N]
            if not rs:
                continue
            med = {
                "t_sampling": float(np.median([r.t_sampling for r in rs])),
                "t_laplacian": float(np.median([r.t_laplacian for r in rs])),
                "t_eig": float(np.median([r.t_eig for r in rs])),
                "t_kmeans": float(np.median([r.t_kmeans for r in rs])),
                "t_total": float(np.median([r.t_total for r in rs])),
            }
            rows.append({"method": method, "N": N, "n": n_fixed, **med})
            pts[N] = med["t_total"]
        if len(pts) >= 2:
            xs = np.log([float(N) for N in sorted(pts)])
            ys = np.log([max(pts[N], 1e-9) for N in sorted(pts)])
            slopes[method] = float(np.polyfit(xs, ys, 1)[0])
    return {"n": n_fixed, "rows": rows, "slopes": slopes}


def write_timing_csv(summary: dict, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_VERSION + "\n")
        w = csv.writer(fh)
        w.writerow(["row_type", "method", "N", "n",
                    "t_sampling", "t_laplacian", "t_eig", "t_kmeans",
                    "t_total", "slope"])
        for r in summary["rows"]:
            w.writerow(["STAGE", r["method"], r["N"], r["n"],
                        _fmt_t(r["t_sampling"]), _fmt_t(r["t_laplacian"]),
                        _fmt_t(r["t_eig"]), _fmt_t(r["t_kmeans"]),
                        _fmt_t(r["t_total"]), ""])
        for method, slope in sorted(summary["slopes"].items()):
            w.writerow(["SLOPE", method, "", summary["n"],
                        "", "", "", "", "", f"{slope:.4f}"])


# ---------------------------------------------------------------------------
# Config files: plain "key = value" lines, '#' comments. Flags override.
# ---------------------------------------------------------------------------

def read_config_file(path) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out
