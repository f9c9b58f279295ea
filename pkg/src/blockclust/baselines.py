"""Comparison methods: single-linkage, spectral embedding, and the
unweighted low-rank-plus-sparse decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import squareform, pdist

from .alm import SolveResult, SolverConfig, solve
from .graphmodel import Adjacency, ClusterAssignment
from .objective import make_weights


@dataclass(frozen=True)
class BaselineConfig:
    method: str  # slink | spectral | lrps
    r: Optional[int] = None
    lrps_lambda_scale: float = 1.0

    def __post_init__(self):
        if self.method not in ("slink", "spectral", "lrps"):
            raise ValueError(f"unknown baseline method {self.method!r}")
        if self.method in ("slink", "spectral") and (self.r is None or self.r < 1):
            raise ValueError(f"{self.method} needs r >= 1")


def _single_linkage_labels(dist: np.ndarray, r: int) -> np.ndarray:
    """Agglomerative single linkage on a dense distance matrix, stopped at
    exactly r clusters.

    Equivalent to Kruskal merging: process pairs in ascending (distance, i, j)
    order, so ties break on the lexicographically smallest pair.  Output
    labels are 1..r ordered by each cluster's smallest node index.
    """
    n = dist.shape[0]
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    iu, ju = np.triu_indices(n, k=1)
    d = dist[iu, ju]
    order = np.lexsort((ju, iu, d))

    parent = np.arange(n)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    clusters = n
    for e in order:
        if clusters == r:
            break
        ri, rj = find(iu[e]), find(ju[e])
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            clusters -= 1

    roots = np.array([find(i) for i in range(n)])
    labels = np.zeros(n, dtype=np.int64)
    next_label = 1
    seen = {}
    for i in range(n):
        if roots[i] not in seen:
            seen[roots[i]] = next_label
            next_label += 1
        labels[i] = seen[roots[i]]
    return labels


def slink(a: Adjacency, r: int) -> ClusterAssignment:
    """Single-linkage clustering of nodes under the L1 row distance
    ||A_i. - A_j.||_1, terminated at r clusters."""
    rows = a.matrix.astype(float)
    dist = squareform(pdist(rows, metric="cityblock"))
    return ClusterAssignment(_single_linkage_labels(dist, r))


def spectral_cluster(a: Adjacency, r: int) -> ClusterAssignment:
    """Embed nodes as rows of the top-r left singular vectors of A, then
    cluster the embedding with single linkage under the L1 distance."""
    if not 1 <= r <= a.n:
        raise ValueError("need 1 <= r <= n")
    u, _, _ = np.linalg.svd(a.matrix.astype(float))
    embedding = u[:, :r]
    dist = squareform(pdist(embedding, metric="cityblock"))
    return ClusterAssignment(_single_linkage_labels(dist, r))


def lrps(
    a: Adjacency,
    scale: float = 1.0,
    tol_primal: float = 1e-7,
    max_iter: int = 500,
) -> SolveResult:
    """Unweighted low-rank-plus-sparse decomposition: the ALM solver with a
    uniform weight matrix and lambda = scale / sqrt(n)."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    # t = 1/2 makes both entry weights 1; rho = 1/scale gives the target lambda
    weights = make_weights(0.5, a.n, rho=1.0 / scale)
    cfg = SolverConfig(weights=weights, tol_primal=tol_primal, max_iter=max_iter)
    return solve(a, cfg)
