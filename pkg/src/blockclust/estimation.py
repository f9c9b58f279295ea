"""Spectral estimation of blockmodel parameters and recovery-condition margins.

For the standard blockmodel (equal cluster sizes, no outliers) the expected
adjacency has three eigenvalue tiers:

    K(p-q) + nq + (1-p)   with multiplicity 1,
    K(p-q) + (1-p)        with multiplicity n/K - 1,
    1 - p                 with multiplicity n - n/K.

The estimator reads r off the largest consecutive eigenvalue gap and inverts
the two top tiers for p and q; the resolution parameter is t = (p+q)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graphmodel import Adjacency

T_CLAMP = 1e-6
# gaps at or below this (scaled by n) are treated as exact ties, which the
# gap-argmax cannot resolve
_DEGENERATE_GAP = 1e-9


@dataclass(frozen=True)
class EstimationResult:
    eigenvalues: np.ndarray  # sorted descending, raw
    r_hat: int
    k_hat: float
    p_hat: float
    q_hat: float
    t: float


@dataclass(frozen=True)
class ConditionReport:
    """Raw margins of the sufficient and necessary recovery conditions.

    Absolute constants are not included; callers threshold the margins.
    """

    lhs: float
    thm1_bound: float
    margin: float
    thm2_bound: float


def estimate_parameters(a: Union[Adjacency, np.ndarray]) -> EstimationResult:
    """Estimate (r, K, p, q) and the resolution t from the spectrum of A.

    Accepts either an observed graph or any symmetric matrix (for example an
    expected adjacency, which is not binary).
    """
    m = a.matrix if isinstance(a, Adjacency) else np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(m, m.T):
        raise ValueError("expected a symmetric matrix")
    n = m.shape[0]
    if n < 3:
        raise ValueError("estimation needs at least 3 nodes")
    ev = np.sort(np.linalg.eigvalsh(m.astype(float)))[::-1]

    # gap i -> ev[i] - ev[i+1] for 1-based i in {2, ..., n-1}; ties break
    # toward the smallest index
    gaps = ev[1:-1] - ev[2:]
    best = int(np.argmax(gaps))
    if gaps[best] <= _DEGENERATE_GAP * n:
        raise ValueError("degenerate spectrum: no usable eigenvalue gap")
    r_hat = best + 2
    k_hat = n / r_hat
    if k_hat <= 1:
        raise ValueError("estimated cluster size K <= 1 is degenerate")

    p_raw = (k_hat * ev[0] + (n - k_hat) * ev[1] - n) / (n * (k_hat - 1))
    q_raw = (ev[0] - ev[1]) / n
    p_hat = float(np.clip(p_raw, 0.0, 1.0))
    q_hat = float(np.clip(q_raw, 0.0, 1.0))
    t = float(np.clip((p_hat + q_hat) / 2.0, T_CLAMP, 1.0 - T_CLAMP))
    return EstimationResult(
        eigenvalues=ev, r_hat=r_hat, k_hat=k_hat, p_hat=p_hat, q_hat=q_hat, t=t
    )


def condition_report(p: float, q: float, n: int, k: float) -> ConditionReport:
    """Margins of the density-gap recovery condition at (p, q, n, K)."""
    if not 0.0 <= q < p <= 1.0:
        raise ValueError("need 0 <= q < p <= 1 (complement-adjust for heterophily)")
    lhs = (p - q) / math.sqrt(p * (1.0 - q))
    logn = math.log(n)
    thm1_bound = max(math.sqrt(n) / k, logn**2 / math.sqrt(k))
    return ConditionReport(
        lhs=lhs,
        thm1_bound=thm1_bound,
        margin=lhs / thm1_bound,
        thm2_bound=1.0 / math.sqrt(n),
    )
