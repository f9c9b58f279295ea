"""Command-line interface: generate / solve / estimate / certify / baselines / sweep."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .alm import SolverConfig, solve
from .baselines import lrps, slink, spectral_cluster
from .certificate import build_certificate, check_certificate
from .estimation import estimate_parameters
from .graphmodel import (
    AdversarySpec,
    GsbmParams,
    apply_adversary,
    cluster_matrix_from,
    complement_graph,
    generate_gsbm,
    is_cluster_matrix,
    misclassified_pairs,
    round_by_mean,
)
from .harness import SweepSpec, run_sweep
from .objective import make_weights


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rho", type=float, default=1.0)
    parser.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockclust")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a blockmodel graph")
    g.add_argument("--n1", type=int, required=True)
    g.add_argument("--n2", type=int, default=0)
    g.add_argument("--sizes", required=True, help="comma-separated cluster sizes")
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--q", type=float, required=True)
    g.add_argument("--add-fraction", type=float, default=0.0)
    g.add_argument("--remove-fraction", type=float, default=0.0)
    g.add_argument("--labels-out", default=None)
    _add_common(g)

    s = sub.add_parser("solve", help="run the convex clustering solver")
    s.add_argument("--graph", required=True)
    s.add_argument("--t", type=float, default=None, help="fixed resolution; default: estimate")
    s.add_argument("--complement", action="store_true", help="heterophily: solve on the complement")
    s.add_argument("--tol", type=float, default=1e-7)
    s.add_argument("--max-iter", type=int, default=500)
    s.add_argument("--truth", default=None, help="optional ground-truth labels to score against")
    s.add_argument("--y-out", default=None, help="save the raw solution matrix (.npy)")
    _add_common(s)

    e = sub.add_parser("estimate", help="spectral parameter estimation")
    e.add_argument("--graph", required=True)
    _add_common(e)

    c = sub.add_parser("certify", help="build and check the optimality certificate")
    c.add_argument("--graph", required=True)
    c.add_argument("--labels", required=True, help="candidate clustering to certify")
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--q", type=float, required=True)
    c.add_argument("--t", type=float, default=None, help="default: (p+q)/2")
    c.add_argument("--epsilon", type=float, default=None)
    _add_common(c)

    b = sub.add_parser("baselines", help="run a comparison method")
    b.add_argument("--graph", required=True)
    b.add_argument("--method", choices=("slink", "spectral", "lrps"), required=True)
    b.add_argument("--r", type=int, default=None)
    b.add_argument("--lrps-scale", type=float, default=1.0)
    b.add_argument("--truth", default=None)
    _add_common(b)

    w = sub.add_parser("sweep", help="phase-transition sweep, CSV output")
    w.add_argument("--config", default=None, help="JSON file mirroring the sweep spec")
    w.add_argument("--n", type=int)
    w.add_argument("--r", type=int)
    w.add_argument("--k", type=int)
    w.add_argument("--q-grid", help="comma-separated q values")
    w.add_argument("--p-min", type=float)
    w.add_argument("--p-max", type=float)
    w.add_argument("--p-step", type=float)
    w.add_argument("--trials", type=int, default=20)
    w.add_argument("--methods", default="convex,slink,spectral,lrps")
    w.add_argument("--fixed-t", type=float, default=None)
    _add_common(w)
    return parser


def _cmd_generate(args) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(","))
    params = GsbmParams(n1=args.n1, n2=args.n2, cluster_sizes=sizes, p=args.p, q=args.q)
    a, assignment, truth = generate_gsbm(params, args.seed)
    if args.add_fraction or args.remove_fraction:
        spec = AdversarySpec(args.add_fraction, args.remove_fraction, seed=args.seed)
        a = apply_adversary(a, truth, spec, params.homophily)
    if args.out:
        io.write_graph(a, args.out)
    if args.labels_out:
        io.write_assignment(assignment, args.labels_out)
    print(f"n={a.n} edges={int(np.triu(a.matrix, 1).sum())} r={assignment.r}")
    return 0


def _cmd_solve(args) -> int:
    a = io.read_graph(args.graph)
    graph = complement_graph(a) if args.complement else a
    t = args.t if args.t is not None else estimate_parameters(graph).t
    weights = make_weights(t, a.n, args.rho)
    result = solve(graph, SolverConfig(weights=weights, tol_primal=args.tol, max_iter=args.max_iter))
    rounded = round_by_mean(result.y_hat)
    assignment = is_cluster_matrix(rounded.astype(float), tol=0.5)
    print(f"t={t:.6g} iterations={result.iterations} residual={result.primal_residual:.3e} "
          f"objective={result.objective:.6g} converged={result.converged}")
    if assignment is None:
        print("cluster_matrix=no")
    else:
        print(f"cluster_matrix=yes r={assignment.r}")
        if args.out:
            io.write_assignment(assignment, args.out)
    if args.y_out:
        np.save(args.y_out, result.y_hat)
    if args.truth:
        truth = cluster_matrix_from(io.read_assignment(args.truth))
        print(f"misclassified_pairs={misclassified_pairs(truth, rounded)}")
    return 0


def _cmd_estimate(args) -> int:
    est = estimate_parameters(io.read_graph(args.graph))
    print(f"r_hat={est.r_hat} k_hat={est.k_hat:.6g} p_hat={est.p_hat:.6g} "
          f"q_hat={est.q_hat:.6g} t={est.t:.6g}")
    return 0


def _cmd_certify(args) -> int:
    a = io.read_graph(args.graph)
    truth = cluster_matrix_from(io.read_assignment(args.labels))
    t = args.t if args.t is not None else (args.p + args.q) / 2.0
    weights = make_weights(t, a.n, args.rho)
    cert = build_certificate(a, truth, weights, args.p, args.q, epsilon_override=args.epsilon)
    report = check_certificate(cert, weights)
    lines = [
        f"epsilon={cert.epsilon!r}",
        f"norm_w={report.norm_w!r}",
        f"pt_w_inf={report.pt_w_inf!r}",
        f"condition_a_pass={report.condition_a_pass}",
        f"condition_b_pass={report.condition_b_pass}",
        f"condition_c_pass={report.condition_c_pass}",
        f"c_equalities_max_violation={report.c_equalities_max_violation!r}",
        f"c_inequalities_min_slack={report.c_inequalities_min_slack!r}",
        f"all_pass={report.all_pass}",
    ]
    text = "\n".join(lines)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def _cmd_baselines(args) -> int:
    a = io.read_graph(args.graph)
    if args.method == "lrps":
        result = lrps(a, args.lrps_scale)
        rounded = round_by_mean(result.y_hat)
        assignment = is_cluster_matrix(rounded.astype(float), tol=0.5)
        print(f"iterations={result.iterations} cluster_matrix={'yes' if assignment else 'no'}")
        estimate = rounded
    else:
        if args.r is None:
            raise SystemExit("--r is required for slink/spectral")
        fn = slink if args.method == "slink" else spectral_cluster
        assignment = fn(a, args.r)
        estimate = cluster_matrix_from(assignment).matrix
    if assignment is not None and args.out:
        io.write_assignment(assignment, args.out)
    if args.truth:
        truth = cluster_matrix_from(io.read_assignment(args.truth))
        print(f"misclassified_pairs={misclassified_pairs(truth, estimate)}")
    return 0


def _cmd_sweep(args) -> int:
    if args.config:
        spec = SweepSpec.from_json(args.config)
    else:
        required = ("n", "r", "k", "q_grid", "p_min", "p_max", "p_step")
        missing = [name for name in required if getattr(args, name) is None]
        if missing:
            raise SystemExit(f"sweep needs --config or flags: missing {missing}")
        spec = SweepSpec(
            n=args.n,
            r=args.r,
            k=args.k,
            q_grid=tuple(float(v) for v in args.q_grid.split(",")),
            p_min=args.p_min,
            p_max=args.p_max,
            p_step=args.p_step,
            trials=args.trials,
            methods=tuple(args.methods.split(",")),
            rho=args.rho,
            seed=args.seed,
            fixed_t=args.fixed_t,
        )
    rows = run_sweep(spec, csv_path=args.out)
    for row in rows:
        print(f"{row.method} q={row.q} p_min={row.p_min_success} "
              f"rate={row.success_rate} mean_mis={row.mean_misclassified}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "estimate": _cmd_estimate,
    "certify": _cmd_certify,
    "baselines": _cmd_baselines,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
