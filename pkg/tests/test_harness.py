import json
import math

import pytest

from blockclust import GsbmParams, RunConfig, SweepSpec, run_single, run_sweep
from blockclust.graphmodel import AdversarySpec
from blockclust.harness import CSV_HEADER, derive_seed, run_cell, write_sweep_csv


def small_spec(**overrides):
    base = dict(
        n=24,
        r=2,
        k=12,
        q_grid=(0.05,),
        p_min=0.9,
        p_max=0.95,
        p_step=0.05,
        trials=4,
        methods=("slink",),
        seed=7,
    )
    base.update(overrides)
    return SweepSpec(**base)


class TestDeriveSeed:
    def test_deterministic(self):
        assert derive_seed(1, "convex", 0.1, 0.5, 3) == derive_seed(1, "convex", 0.1, 0.5, 3)

    def test_distinct_across_fields(self):
        base = derive_seed(1, "convex", 0.1, 0.5, 3)
        assert derive_seed(2, "convex", 0.1, 0.5, 3) != base
        assert derive_seed(1, "slink", 0.1, 0.5, 3) != base
        assert derive_seed(1, "convex", 0.2, 0.5, 3) != base
        assert derive_seed(1, "convex", 0.1, 0.6, 3) != base
        assert derive_seed(1, "convex", 0.1, 0.5, 4) != base

    def test_independent_of_float_formatting(self):
        assert derive_seed(1, "m", 0.1, 0.5, 0) == derive_seed(1, "m", 0.1000000000, 0.50, 0)


class TestSweepSpec:
    def test_dimension_constraint(self):
        with pytest.raises(ValueError):
            small_spec(n=25)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            small_spec(methods=("convex", "greedy"))

    def test_p_values_inclusive_grid(self):
        spec = small_spec(p_min=0.3, p_max=0.7, p_step=0.1)
        assert spec.p_values() == [0.3, 0.4, 0.5, 0.6, 0.7]

    def test_from_json(self, tmp_path):
        raw = dict(
            n=24, r=2, k=12, q_grid=[0.05], p_min=0.9, p_max=0.95,
            p_step=0.05, trials=4, methods=["slink"], seed=7,
        )
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(raw))
        assert SweepSpec.from_json(path) == small_spec()


class TestRunSingle:
    def test_easy_slink_trial_succeeds(self):
        params = GsbmParams(n1=40, n2=0, cluster_sizes=(20, 20), p=0.95, q=0.05)
        rec = run_single(params, None, "slink", RunConfig(), seed=1)
        assert rec.error is None
        assert rec.success
        assert rec.misclassified == 0

    def test_convex_records_estimates(self):
        params = GsbmParams(n1=60, n2=0, cluster_sizes=(30, 30), p=0.9, q=0.1)
        rec = run_single(params, None, "convex", RunConfig(), seed=1)
        assert rec.error is None
        assert rec.t_used is not None and 0 < rec.t_used < 1
        assert rec.p_hat is not None and rec.q_hat is not None
        assert rec.iterations is not None

    def test_fixed_t_bypasses_estimation(self):
        params = GsbmParams(n1=60, n2=0, cluster_sizes=(30, 30), p=0.9, q=0.1)
        rec = run_single(params, None, "convex", RunConfig(fixed_t=0.5), seed=1)
        assert rec.t_used == 0.5
        assert rec.p_hat is None

    def test_heterophily_uses_complement(self):
        params = GsbmParams(n1=60, n2=0, cluster_sizes=(30, 30), p=0.05, q=0.95)
        rec = run_single(params, None, "convex", RunConfig(), seed=1)
        assert rec.error is None
        assert rec.success

    def test_adversary_is_applied(self):
        params = GsbmParams(n1=40, n2=0, cluster_sizes=(20, 20), p=0.9, q=0.1)
        adv = AdversarySpec(0.2, 0.2, seed=3)
        rec = run_single(params, adv, "spectral", RunConfig(), seed=1)
        assert rec.error is None

    def test_errors_are_captured(self):
        params = GsbmParams(n1=40, n2=0, cluster_sizes=(20, 20), p=0.9, q=0.1)
        rec = run_single(params, None, "nonsense", RunConfig(), seed=1)
        assert rec.error is not None
        assert not rec.success


class TestSweep:
    def test_easy_sweep_finds_p_min(self):
        rows = run_sweep(small_spec())
        assert len(rows) == 1
        row = rows[0]
        assert row.method == "slink"
        assert row.q == 0.05
        assert row.p_min_success == 0.9  # succeeds at the first grid point
        assert row.success_rate >= 0.5

    def test_unreachable_cell_yields_nan(self):
        spec = small_spec(q_grid=(0.4,), p_min=0.45, p_max=0.5, p_step=0.05, trials=4)
        rows = run_sweep(spec)
        assert math.isnan(rows[0].p_min_success)
        assert rows[0].success_rate == 0.0

    def test_p_below_q_skipped(self):
        # all grid p <= q: no cells run, sentinel row
        spec = small_spec(q_grid=(0.95,), p_min=0.9, p_max=0.95, p_step=0.05)
        rows = run_sweep(spec)
        assert math.isnan(rows[0].p_min_success)

    def test_cell_records_reproducible(self):
        spec = small_spec()
        rec1 = run_cell(spec, "slink", 0.05, 0.9)
        rec2 = run_cell(spec, "slink", 0.05, 0.9)
        assert [r.misclassified for r in rec1] == [r.misclassified for r in rec2]
        assert [r.seed for r in rec1] == [r.seed for r in rec2]

    def test_csv_byte_identical_across_runs(self, tmp_path):
        spec = small_spec()
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_sweep_csv(run_sweep(spec), p1)
        write_sweep_csv(run_sweep(spec), p2)
        assert p1.read_bytes() == p2.read_bytes()
        header = p1.read_text().splitlines()[0]
        assert header == ",".join(CSV_HEADER)

    def test_csv_roundtrip_floats(self, tmp_path):
        spec = small_spec()
        path = tmp_path / "rows.csv"
        rows = run_sweep(spec, csv_path=path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1 + len(rows)
        fields = lines[1].split(",")
        assert fields[0] == rows[0].method
        assert float(fields[1]) == rows[0].q
        assert float(fields[2]) == rows[0].p_min_success
