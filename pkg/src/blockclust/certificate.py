"""Dual optimality certificate for the convexified clustering program.

Given the observed graph, the candidate ground-truth cluster matrix and the
homogeneous densities (p, q), constructs the explicit four-part witness
W = W1 + W2 + W3 + W4 and checks the sufficient optimality conditions:

  (a) ||W||_2 <= 1,
  (b) ||P_T(W)||_inf <= (eps/2) * lambda * min(c_ac, c_a),
  (c) entrywise equalities on supp(Y*) w/o edges and off-supp edges, plus
      entrywise inequalities on the remaining two index sets.

A passing report witnesses that the true cluster matrix is the unique
optimum, independently of the iterative solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphmodel import Adjacency, ClusterMatrix, is_cluster_matrix
from .objective import Weights

EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class Certificate:
    w: np.ndarray
    parts: tuple  # (W1, W2, W3, W4)
    epsilon: float
    spectral_basis: np.ndarray  # orthonormal columns spanning col(Y*)
    support: np.ndarray  # boolean, supp(Y*)
    edges: np.ndarray  # boolean, supp(A)


@dataclass(frozen=True)
class CertificateReport:
    norm_w: float
    pt_w_inf: float
    condition_a_pass: bool
    condition_b_pass: bool
    condition_c_pass: bool
    c_equalities_max_violation: float
    c_inequalities_min_slack: float

    @property
    def all_pass(self) -> bool:
        return self.condition_a_pass and self.condition_b_pass and self.condition_c_pass


def default_epsilon(w: Weights, n: int, k: int) -> float:
    """Slack level implied by the conservative analysis constants."""
    logn = math.log(n)
    return (
        48.0
        / math.sqrt(w.t * (1.0 - w.t))
        * max(math.sqrt(n) / k, math.sqrt(logn**4 / k))
    )


def spectral_basis(truth: ClusterMatrix) -> np.ndarray:
    """Orthonormal columns spanning the column space of the cluster matrix:
    one normalized block indicator per cluster."""
    assignment = is_cluster_matrix(truth.matrix, tol=0.0)
    if assignment is None:
        raise ValueError("truth is not a valid cluster matrix")
    n = truth.n
    u0 = np.zeros((n, assignment.r))
    for m in range(1, assignment.r + 1):
        members = assignment.labels == m
        u0[members, m - 1] = 1.0 / math.sqrt(members.sum())
    return u0


def project_t(m: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the tangent space of the low-rank factor:
    P(M) = UU'M + MUU' - UU'MUU'."""
    p = basis @ basis.T
    pm = p @ m
    return pm + m @ p - pm @ p


def build_certificate(
    a: Adjacency,
    truth: ClusterMatrix,
    w: Weights,
    p: float,
    q: float,
    epsilon_override: Optional[float] = None,
) -> Certificate:
    """Construct the four-part witness for the given instance."""
    if a.n != truth.n:
        raise ValueError("adjacency and cluster matrix dimensions differ")
    if not p > q:
        raise ValueError("need p > q (complement-adjust for heterophily)")
    if p == 0:
        raise ValueError("p = 0 leaves the in-cluster parts undefined")
    if q == 1:
        raise ValueError("q = 1 leaves the off-cluster part undefined")

    n = a.n
    u0 = spectral_basis(truth)
    k_min = int(min(np.sum(u0 > 0, axis=0))) if u0.shape[1] else n
    eps = (
        epsilon_override
        if epsilon_override is not None
        else default_epsilon(w, n, max(k_min, 1))
    )

    support = truth.matrix == 1
    edges = a.matrix == 1
    offdiag = ~np.eye(n, dtype=bool)
    uut = u0 @ u0.T
    lam = w.lam

    in_supp_edge = support & edges
    in_supp_noedge = support & ~edges
    out_edge_offdiag = ~support & offdiag & edges
    out_noedge_offdiag = ~support & offdiag & ~edges

    w1 = np.where(in_supp_noedge, -uut, 0.0) + np.where(
        in_supp_edge, (1.0 - p) / p * uut, 0.0
    )
    w2 = (
        (1.0 + eps)
        * lam
        * w.c_ac
        * (-in_supp_noedge.astype(float) + (1.0 - p) / p * in_supp_edge.astype(float))
    )
    w3 = (
        (1.0 + eps)
        * lam
        * w.c_a
        * (
            out_edge_offdiag.astype(float)
            - q / (1.0 - q) * out_noedge_offdiag.astype(float)
        )
    )
    w4 = (1.0 + eps) * lam * w.c_a * np.diag((~np.diag(support)).astype(float))

    return Certificate(
        w=w1 + w2 + w3 + w4,
        parts=(w1, w2, w3, w4),
        epsilon=eps,
        spectral_basis=u0,
        support=support,
        edges=edges,
    )


def check_certificate(cert: Certificate, w: Weights) -> CertificateReport:
    """Evaluate optimality conditions (a)-(c) on a constructed witness."""
    n = cert.w.shape[0]
    lam = w.lam
    eps = cert.epsilon
    uut = cert.spectral_basis @ cert.spectral_basis.T
    total = uut + cert.w
    offdiag = ~np.eye(n, dtype=bool)

    norm_w = float(np.linalg.norm(cert.w, 2))
    pt_w_inf = float(np.abs(project_t(cert.w, cert.spectral_basis)).max())

    eq_violations = [0.0]
    mask = cert.support & ~cert.edges
    if mask.any():
        eq_violations.append(
            float(np.abs(-(1.0 + eps) * lam * w.c_ac - total[mask]).max())
        )
    mask = ~cert.support & cert.edges
    if mask.any():
        eq_violations.append(
            float(np.abs(-(1.0 + eps) * lam * w.c_a + cert.w[mask]).max())
        )
    max_violation = max(eq_violations)

    slacks = [np.inf]
    mask = cert.support & cert.edges
    if mask.any():
        slacks.append(float(((1.0 - eps) * lam * w.c_a - total[mask]).min()))
    mask = ~cert.support & ~cert.edges & offdiag
    if mask.any():
        slacks.append(float(((1.0 - eps) * lam * w.c_ac + cert.w[mask]).min()))
    min_slack = min(slacks)

    return CertificateReport(
        norm_w=norm_w,
        pt_w_inf=pt_w_inf,
        condition_a_pass=norm_w <= 1.0,
        condition_b_pass=pt_w_inf <= (eps / 2.0) * lam * min(w.c_a, w.c_ac),
        condition_c_pass=max_violation <= EQUALITY_TOL and min_slack >= 0.0,
        c_equalities_max_violation=max_violation,
        c_inequalities_min_slack=min_slack,
    )
