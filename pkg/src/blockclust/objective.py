"""Weights and objective of the convexified likelihood program.

The program maximizes, over 0 <= y_ij <= 1,

    c_a * sum_{a_ij = 1} y_ij  -  c_ac * sum_{a_ij = 0} y_ij  -  rho*sqrt(n)*||Y||_*

where the edge/non-edge weights are determined by a single resolution
parameter t in (0, 1).  The equivalent minimization form used by the solver
is  lambda*||C o (A - Y)||_1 + ||Y||_*  with  lambda = 1/(rho*sqrt(n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphmodel import Adjacency

BOX_TOL = 1e-6


@dataclass(frozen=True)
class Weights:
    t: float
    n: int
    rho: float
    c_a: float
    c_ac: float

    @property
    def lam(self) -> float:
        """Sparse-part coefficient of the minimization form."""
        return 1.0 / (self.rho * math.sqrt(self.n))

    @property
    def nuclear_coeff(self) -> float:
        """Nuclear-norm coefficient rho*sqrt(n) of the maximization form."""
        return self.rho * math.sqrt(self.n)


def make_weights(t: float, n: int, rho: float = 48.0) -> Weights:
    """Build the weight pair c_a = sqrt((1-t)/t), c_ac = sqrt(t/(1-t))."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie strictly in (0, 1), got {t}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if rho <= 0:
        raise ValueError("rho must be positive")
    c_a = math.sqrt((1.0 - t) / t)
    return Weights(t=t, n=n, rho=rho, c_a=c_a, c_ac=1.0 / c_a)


def weight_matrix(a: Adjacency, w: Weights) -> np.ndarray:
    """Entrywise weights: c_a on edges (incl. diagonal), c_ac elsewhere."""
    if a.n != w.n:
        raise ValueError("adjacency size differs from the weights' n")
    return np.where(a.matrix == 1, w.c_a, w.c_ac)


def objective_value(a: Adjacency, y: np.ndarray, w: Weights) -> float:
    """Evaluate the maximization objective at a feasible y."""
    y = np.asarray(y, dtype=float)
    if y.shape != a.matrix.shape:
        raise ValueError("y shape differs from the adjacency")
    if y.min() < -BOX_TOL or y.max() > 1.0 + BOX_TOL:
        raise ValueError("y violates the box constraints 0 <= y_ij <= 1")
    edges = a.matrix == 1
    likelihood = w.c_a * y[edges].sum() - w.c_ac * y[~edges].sum()
    nuclear = np.linalg.svd(y, compute_uv=False).sum()
    return float(likelihood - w.nuclear_coeff * nuclear)
