"""Seeded experiment orchestration and the phase-transition sweep.

A sweep scans, for each method and each cross-cluster density q, ascending
in-cluster densities p until the method succeeds on at least half of the
trials; the smallest such p is reported per (method, q).  Every trial derives
its own RNG seed from a stable hash of (seed, method, q, p, trial), so cells
are independent and the whole sweep is reproducible.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .alm import SolverConfig, solve
from .baselines import lrps, slink, spectral_cluster
from .estimation import estimate_parameters
from .graphmodel import (
    AdversarySpec,
    GsbmParams,
    apply_adversary,
    cluster_matrix_from,
    complement_graph,
    generate_gsbm,
    misclassified_pairs,
    round_by_mean,
)
from .objective import make_weights

METHODS = ("convex", "slink", "spectral", "lrps")
SENTINEL = float("nan")


@dataclass(frozen=True)
class RunConfig:
    """Per-trial method configuration."""

    rho: float = 1.0
    fixed_t: Optional[float] = None  # threshold on the solved (possibly
    # complemented) graph; default: estimate from data
    lrps_scale: float = 1.0
    tol_primal: float = 1e-7
    max_iter: int = 500
    success_threshold: float = 0.001


@dataclass
class TrialRecord:
    method: str
    seed: int
    misclassified: Optional[int] = None
    success: bool = False
    error: Optional[str] = None
    wall_time: float = 0.0
    iterations: Optional[int] = None
    t_used: Optional[float] = None
    p_hat: Optional[float] = None
    q_hat: Optional[float] = None


@dataclass(frozen=True)
class SweepSpec:
    n: int
    r: int
    k: int
    q_grid: Sequence[float]
    p_min: float
    p_max: float
    p_step: float
    trials: int = 20
    success_threshold: float = 0.001
    methods: Sequence[str] = METHODS
    rho: float = 1.0
    seed: int = 0
    fixed_t: Optional[float] = None
    tol_primal: float = 1e-7
    max_iter: int = 500

    def __post_init__(self):
        if self.n != self.r * self.k:
            raise ValueError("sweep assumes n = r * K with equal cluster sizes")
        if not self.q_grid:
            raise ValueError("q_grid must be non-empty")
        if self.p_step <= 0:
            raise ValueError("p_step must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")

    def p_values(self):
        count = int(math.floor((self.p_max - self.p_min) / self.p_step + 1e-9)) + 1
        return [round(self.p_min + i * self.p_step, 12) for i in range(max(count, 0))]

    @classmethod
    def from_json(cls, path) -> "SweepSpec":
        with open(path) as fh:
            raw = json.load(fh)
        raw["q_grid"] = tuple(raw["q_grid"])
        if "methods" in raw:
            raw["methods"] = tuple(raw["methods"])
        return cls(**raw)


@dataclass(frozen=True)
class SweepRow:
    method: str
    q: float
    p_min_success: float  # NaN when no p in the grid succeeds
    success_rate: float
    mean_misclassified: float


CSV_HEADER = ("method", "q", "p_min_success", "success_rate", "mean_misclassified")


def derive_seed(base: int, method: str, q: float, p: float, trial: int) -> int:
    """Stable per-trial seed; independent of scan order and grid contents."""
    key = f"{base}|{method}|{q:.12g}|{p:.12g}|{trial}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def run_single(
    params: GsbmParams,
    adversary: Optional[AdversarySpec],
    method: str,
    cfg: RunConfig,
    seed: int,
) -> TrialRecord:
    """Generate, optionally perturb, solve and score one instance.

    Errors are captured in the record, never raised.
    """
    record = TrialRecord(method=method, seed=seed)
    start = time.perf_counter()
    try:
        a, _, truth = generate_gsbm(params, seed)
        if adversary is not None:
            a = apply_adversary(a, truth, adversary, params.homophily)
        n = params.n

        if method == "convex":
            graph = a if params.homophily else complement_graph(a)
            if cfg.fixed_t is not None:
                t = cfg.fixed_t
            else:
                est = estimate_parameters(graph)
                t = est.t
                record.p_hat, record.q_hat = est.p_hat, est.q_hat
            record.t_used = t
            weights = make_weights(t, n, cfg.rho)
            res = solve(
                graph,
                SolverConfig(
                    weights=weights,
                    tol_primal=cfg.tol_primal,
                    max_iter=cfg.max_iter,
                ),
            )
            record.iterations = res.iterations
            estimate = round_by_mean(res.y_hat)
        elif method == "lrps":
            res = lrps(
                a, cfg.lrps_scale, tol_primal=cfg.tol_primal, max_iter=cfg.max_iter
            )
            record.iterations = res.iterations
            estimate = round_by_mean(res.y_hat)
        elif method == "slink":
            estimate = cluster_matrix_from(slink(a, params.r)).matrix
        elif method == "spectral":
            estimate = cluster_matrix_from(spectral_cluster(a, params.r)).matrix
        else:
            raise ValueError(f"unknown method {method!r}")

        record.misclassified = misclassified_pairs(truth, estimate)
        record.success = record.misclassified < cfg.success_threshold * n * n
    except Exception as exc:  # noqa: BLE001 - per-trial fault isolation
        record.error = f"{type(exc).__name__}: {exc}"
    record.wall_time = time.perf_counter() - start
    return record


def run_cell(
    spec: SweepSpec, method: str, q: float, p: float
) -> list:
    """All trial records for one (method, q, p) grid cell."""
    params = GsbmParams(
        n1=spec.n, n2=0, cluster_sizes=(spec.k,) * spec.r, p=p, q=q
    )
    cfg = RunConfig(
        rho=spec.rho,
        fixed_t=spec.fixed_t,
        tol_primal=spec.tol_primal,
        max_iter=spec.max_iter,
        success_threshold=spec.success_threshold,
    )
    return [
        run_single(params, None, method, cfg, derive_seed(spec.seed, method, q, p, t))
        for t in range(spec.trials)
    ]


def run_sweep(spec: SweepSpec, csv_path=None) -> list:
    """Ascending p scan per (method, q); rows carry the first p with a
    majority of successful trials, or a NaN sentinel."""
    rows = []
    for method in spec.methods:
        for q in spec.q_grid:
            row = None
            for p in spec.p_values():
                if p <= q:
                    continue
                records = run_cell(spec, method, q, p)
                rate = sum(r.success for r in records) / len(records)
                if rate >= 0.5:
                    scored = [r.misclassified for r in records if r.misclassified is not None]
                    row = SweepRow(
                        method=method,
                        q=q,
                        p_min_success=p,
                        success_rate=rate,
                        mean_misclassified=sum(scored) / len(scored),
                    )
                    break
            if row is None:
                row = SweepRow(method, q, SENTINEL, 0.0, SENTINEL)
            rows.append(row)
    if csv_path is not None:
        write_sweep_csv(rows, csv_path)
    return rows


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row.method,
                    repr(row.q),
                    repr(row.p_min_success),
                    repr(row.success_rate),
                    repr(row.mean_misclassified),
                ]
            )
