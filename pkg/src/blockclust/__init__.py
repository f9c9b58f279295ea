"""Convex graph clustering with a nuclear-norm relaxed likelihood objective."""

from .alm import SolveResult, SolverConfig, soft_threshold_weighted, solve, solve_heterophily, svt
from .baselines import BaselineConfig, lrps, slink, spectral_cluster
from .certificate import (
    Certificate,
    CertificateReport,
    build_certificate,
    check_certificate,
    project_t,
)
from .estimation import ConditionReport, EstimationResult, condition_report, estimate_parameters
from .graphmodel import (
    Adjacency,
    AdversarySpec,
    ClusterAssignment,
    ClusterMatrix,
    GsbmParams,
    apply_adversary,
    cluster_matrix_from,
    complement_graph,
    generate_gsbm,
    is_cluster_matrix,
    misclassified_pairs,
    round_by_mean,
)
from .harness import RunConfig, SweepRow, SweepSpec, run_single, run_sweep
from .objective import Weights, make_weights, objective_value, weight_matrix

__all__ = [
    "Adjacency",
    "AdversarySpec",
    "BaselineConfig",
    "Certificate",
    "CertificateReport",
    "ClusterAssignment",
    "ClusterMatrix",
    "ConditionReport",
    "EstimationResult",
    "GsbmParams",
    "RunConfig",
    "SolveResult",
    "SolverConfig",
    "SweepRow",
    "SweepSpec",
    "Weights",
    "apply_adversary",
    "build_certificate",
    "check_certificate",
    "cluster_matrix_from",
    "complement_graph",
    "condition_report",
    "estimate_parameters",
    "generate_gsbm",
    "is_cluster_matrix",
    "lrps",
    "make_weights",
    "misclassified_pairs",
    "objective_value",
    "project_t",
    "round_by_mean",
    "run_single",
    "run_sweep",
    "slink",
    "soft_threshold_weighted",
    "solve",
    "solve_heterophily",
    "spectral_cluster",
    "svt",
    "weight_matrix",
]
