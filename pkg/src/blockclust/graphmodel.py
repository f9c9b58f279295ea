"""Graph and cluster-structure primitives.

Graphs are undirected, unweighted, stored as dense symmetric 0/1 matrices
with unit diagonal.  Cluster structure is carried either as per-node labels
(0 = outlier) or as the equivalent block-of-ones cluster matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components


@dataclass(frozen=True)
class Adjacency:
    """Symmetric binary adjacency matrix with a_ii = 1."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("adjacency must be symmetric")
        if not np.isin(m, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if not (np.diag(m) == 1).all():
            raise ValueError("adjacency diagonal must be all ones")
        object.__setattr__(self, "matrix", m.astype(np.int8))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ClusterAssignment:
    """Per-node cluster labels; label 0 is reserved for outliers."""

    labels: np.ndarray
    r: int = field(init=False)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be a 1-d sequence")
        if (labels < 0).any():
            raise ValueError("labels must be nonnegative")
        present = np.unique(labels[labels > 0])
        r = int(present.max()) if present.size else 0
        if not np.array_equal(present, np.arange(1, r + 1)):
            raise ValueError("non-outlier labels must cover 1..r with no gaps")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.r + 1)[1:]


@dataclass(frozen=True)
class ClusterMatrix:
    """Binary matrix with y_ij = 1 iff i and j share a non-outlier cluster.

    Clustered nodes carry y_ii = 1; outlier rows and columns are all zero.
    Up to relabeling, the support is a disjoint union of all-ones blocks.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"cluster matrix must be square, got shape {m.shape}")
        if not np.isin(m, (0, 1)).all():
            raise ValueError("cluster matrix entries must be 0 or 1")
        if not np.array_equal(m, m.T):
            raise ValueError("cluster matrix must be symmetric")
        object.__setattr__(self, "matrix", m.astype(np.int8))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GsbmParams:
    """Parameters of the generalized blockmodel generator.

    n1 clustered nodes split into clusters of the given sizes, n2 outliers,
    in-cluster edge probability p, all other pairs with probability q.
    """

    n1: int
    n2: int
    cluster_sizes: tuple
    p: float
    q: float

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.cluster_sizes)
        object.__setattr__(self, "cluster_sizes", sizes)
        if not sizes or min(sizes) < 1:
            raise ValueError("every cluster must have at least one node")
        if sum(sizes) != self.n1:
            raise ValueError("cluster sizes must sum to n1")
        if self.n2 < 0:
            raise ValueError("n2 must be nonnegative")
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.p == self.q:
            raise ValueError("p = q carries no cluster signal; rejected")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def r(self) -> int:
        return len(self.cluster_sizes)

    @property
    def min_cluster_size(self) -> int:
        return min(self.cluster_sizes)

    @property
    def homophily(self) -> bool:
        return self.p > self.q


@dataclass(frozen=True)
class AdversarySpec:
    """Seeded instantiation of the aligned-edit adversary.

    add_fraction of the pairs eligible for structure-aligned additions and
    remove_fraction of those eligible for removals are edited, chosen by a
    seeded permutation.
    """

    add_fraction: float
    remove_fraction: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.add_fraction <= 1.0:
            raise ValueError("add_fraction must lie in [0, 1]")
        if not 0.0 <= self.remove_fraction <= 1.0:
            raise ValueError("remove_fraction must lie in [0, 1]")


def cluster_matrix_from(assignment: ClusterAssignment) -> ClusterMatrix:
    """Build the block cluster matrix implied by an assignment."""
    labels = assignment.labels
    same = (labels[:, None] == labels[None, :]) & (labels[:, None] > 0)
    return ClusterMatrix(same.astype(np.int8))


def generate_gsbm(params: GsbmParams, seed: int):
    """Sample a blockmodel graph.

    In-cluster pairs are edged independently with probability p, every other
    pair with probability q; the diagonal is forced to 1.  Returns the
    adjacency, the ground-truth assignment and its cluster matrix.
    """
    n = params.n
    labels = np.concatenate(
        [np.full(s, k + 1) for k, s in enumerate(params.cluster_sizes)]
        + [np.zeros(params.n2, dtype=np.int64)]
    ).astype(np.int64)
    assignment = ClusterAssignment(labels)
    truth = cluster_matrix_from(assignment)

    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    in_cluster = truth.matrix[iu, ju] == 1
    probs = np.where(in_cluster, params.p, params.q)
    edges = (rng.random(iu.size) < probs).astype(np.int8)
    m = np.zeros((n, n), dtype=np.int8)
    m[iu, ju] = edges
    m += m.T
    np.fill_diagonal(m, 1)
    return Adjacency(m), assignment, truth


def apply_adversary(
    a: Adjacency, truth: ClusterMatrix, spec: AdversarySpec, homophily: bool = True
) -> Adjacency:
    """Edit edges in the direction aligned with the planted structure.

    For homophily, edges may only be added inside true clusters and removed
    elsewhere; mirrored for heterophily.  Diagonal entries are untouched.
    """
    if a.n != truth.n:
        raise ValueError("adjacency and cluster matrix dimensions differ")
    m = a.matrix.copy()
    y = truth.matrix
    iu, ju = np.triu_indices(a.n, k=1)
    in_cluster = y[iu, ju] == 1
    edged = m[iu, ju] == 1
    if homophily:
        add_ok = in_cluster & ~edged
        remove_ok = ~in_cluster & edged
    else:
        add_ok = ~in_cluster & ~edged
        remove_ok = in_cluster & edged

    rng = np.random.default_rng(spec.seed)
    for mask, fraction, value in (
        (add_ok, spec.add_fraction, 1),
        (remove_ok, spec.remove_fraction, 0),
    ):
        idx = np.flatnonzero(mask)
        count = int(np.floor(fraction * idx.size))
        chosen = rng.permutation(idx)[:count]
        m[iu[chosen], ju[chosen]] = value
        m[ju[chosen], iu[chosen]] = value
    return Adjacency(m)


def complement_graph(a: Adjacency) -> Adjacency:
    """Flip every off-diagonal entry; the diagonal stays at 1."""
    m = (1 - a.matrix).astype(np.int8)
    np.fill_diagonal(m, 1)
    return Adjacency(m)


def is_cluster_matrix(y: np.ndarray, tol: float = 1e-6):
    """Detect whether y is entrywise within tol of a valid cluster matrix.

    Returns the recovered ClusterAssignment, or None.  Detection thresholds
    the entries at 1/2, finds connected components of the support and checks
    that every component is a complete block with unit diagonal.
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 2 or y.shape[0] != y.shape[1]:
        return None
    b = (y > 0.5).astype(np.int8)
    if np.abs(y - b).max() > tol:
        return None
    if not np.array_equal(b, b.T):
        return None

    n = b.shape[0]
    clustered = np.diag(b) == 1
    # outlier rows must be entirely zero
    if b[~clustered].any():
        return None
    labels = np.zeros(n, dtype=np.int64)
    if clustered.any():
        sub = b[np.ix_(clustered, clustered)]
        ncomp, comp = connected_components(sub, directed=False)
        # each component must be a complete block
        for c in range(ncomp):
            members = comp == c
            if not sub[np.ix_(members, members)].all():
                return None
        # relabel components 1..r by order of first appearance
        order = {}
        sub_labels = np.zeros(comp.shape, dtype=np.int64)
        for pos, c in enumerate(comp):
            if c not in order:
                order[c] = len(order) + 1
            sub_labels[pos] = order[c]
        labels[clustered] = sub_labels
    return ClusterAssignment(labels)


def round_by_mean(y: np.ndarray) -> np.ndarray:
    """Threshold each entry at the mean of all entries (strictly above -> 1)."""
    y = np.asarray(y, dtype=float)
    return (y > y.mean()).astype(np.int8)


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, (Adjacency, ClusterMatrix)):
        return x.matrix
    return np.asarray(x)


def misclassified_pairs(truth, estimate) -> int:
    """Entrywise L1 distance between two 0/1 matrices over all n^2 entries."""
    t = _as_matrix(truth).astype(np.int64)
    e = _as_matrix(estimate).astype(np.int64)
    if t.shape != e.shape:
        raise ValueError("shape mismatch")
    return int(np.abs(t - e).sum())


def pair_error_rate(truth, estimate) -> float:
    """Misclassified pairs as a fraction of all n^2 ordered pairs."""
    t = _as_matrix(truth)
    return misclassified_pairs(truth, estimate) / float(t.shape[0] ** 2)
