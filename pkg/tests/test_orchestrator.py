"""Orchestration tests: seed plans, runs, campaigns, persistence, recompute."""

import numpy as np
import pytest

from emolab.algorithms import AlgorithmConfig
from emolab.core import FrontApproximation, ObjectiveBatch, ProblemInstance, make_problem
from emolab.errors import ConfigurationError, PayloadLoadError, RunFailedError
from emolab.indicators import MetricSpec
from emolab.orchestrator import (
    ExperimentPlan,
    ProblemVariant,
    ProgressEvent,
    RunPayload,
    canonical_dumps,
    load,
    persist,
    plan_seeds,
    recompute_metrics,
    run_experiment,
    run_single,
)


def tiny_problem(reference_points=200):
    return make_problem("zdt1", n_var=6, reference_points=reference_points)


def tiny_config(alg="nsga2", pop=12):
    return AlgorithmConfig(alg, pop_size=pop)


def poisoned_problem():
    """Evaluator that returns NaN once x1 exceeds 0.9 anywhere."""

    def evaluator(X):
        f1 = X[:, 0]
        f2 = 1.0 - f1
        f2 = np.where(X.max(axis=1) > 0.9, np.nan, f2)
        n = X.shape[0]
        return ObjectiveBatch(
            F=np.column_stack([f1, f2]), G=np.zeros((n, 0)), H=np.zeros((n, 0))
        )

    return ProblemInstance(
        id="poisoned",
        name="Poisoned",
        n_var=4,
        n_obj=2,
        n_ieq=0,
        n_eq=0,
        lower=np.zeros(4),
        upper=np.ones(4),
        evaluator=evaluator,
    )


class TestSeedPlans:
    def test_sequence(self):
        assert plan_seeds("sequence", 42, 3).realized == (42, 43, 44)

    def test_fixed(self):
        assert plan_seeds("fixed", 7, 4).realized == (7, 7, 7, 7)

    def test_random_recorded_and_replayable(self):
        plan = plan_seeds("random", None, 2)
        assert len(plan.realized) == 2
        assert len(set(plan.realized)) == 2  # entropy seeds differ
        problem = tiny_problem(reference_points=0)
        a = run_single(problem, tiny_config(), plan.realized[0], 60)
        b = run_single(problem, tiny_config(), plan.realized[0], 60)
        assert canonical_dumps(a.final_F) == canonical_dumps(b.final_F)

    def test_missing_base_seed(self):
        with pytest.raises(ConfigurationError):
            plan_seeds("fixed", None, 3)
        with pytest.raises(ConfigurationError):
            plan_seeds("sequence", None, 3)

    def test_unknown_policy(self):
        with pytest.raises(ConfigurationError):
            plan_seeds("chaotic", 1, 1)


class TestRunSingle:
    def test_history_cadence(self):
        problem = make_problem("zdt1")
        payload = run_single(
            problem, AlgorithmConfig("nsga2", pop_size=100), 42, 1000,
            metrics=[MetricSpec("igd")],
        )
        history = payload.history_for("igd")
        assert [fe for fe, _ in history.points] == list(range(100, 1001, 100))

    def test_determinism_modulo_identity(self):
        problem = tiny_problem()
        kwargs = dict(metrics=[MetricSpec("igd")], fe_budget=120)
        a = run_single(problem, tiny_config(), 5, kwargs["fe_budget"], kwargs["metrics"])
        b = run_single(problem, tiny_config(), 5, kwargs["fe_budget"], kwargs["metrics"])
        assert canonical_dumps(a.final_F) == canonical_dumps(b.final_F)
        assert canonical_dumps(a.final_X) == canonical_dumps(b.final_X)
        assert a.history_for("igd").points == b.history_for("igd").points

    def test_event_stream_contract(self):
        events: list[ProgressEvent] = []
        problem = tiny_problem()
        run_single(problem, tiny_config(), 9, 60, metrics=[MetricSpec("igd")],
                   event_sink=events.append)
        kinds = [e.kind for e in events]
        assert kinds[0] == "started"
        assert kinds[-1] == "finished"
        assert kinds.count("finished") + kinds.count("failed") == 1
        fes = [e.fe_used for e in events]
        assert fes == sorted(fes)

    def test_budget_below_pop_size_rejected(self):
        with pytest.raises(ConfigurationError):
            run_single(tiny_problem(), tiny_config(pop=12), 1, 6)

    def test_failure_retains_log_and_emits_failed(self):
        events = []
        with pytest.raises(RunFailedError) as err:
            run_single(poisoned_problem(), tiny_config(), 3, 120,
                       event_sink=events.append)
        payload = err.value.payload
        assert payload.meta["status"] == "failed"
        assert any("failed" in line for line in payload.log)
        assert events[-1].kind == "failed"

    def test_moead_payload_records_resolved_config(self):
        problem = make_problem("dtlz2", reference_points=0)
        payload = run_single(problem, AlgorithmConfig("moead", pop_size=50), 2, 200)
        # pop snaps up to the lattice size C(9+2, 2) = 55
        assert payload.algorithm["config"]["pop_size"] == 55

    def test_convergence_improves_igd(self):
        problem = make_problem("zdt1")
        deltas = []
        for seed in range(5):
            payload = run_single(
                problem, AlgorithmConfig("nsga2", pop_size=100), seed, 10_000,
                metrics=[MetricSpec("igd")],
            )
            pts = payload.history_for("igd").points
            deltas.append(pts[-1][1] - pts[0][1])
        assert all(d < 0 for d in deltas)


class TestPersistence:
    def test_round_trip_equality(self, tmp_path):
        payload = run_single(tiny_problem(), tiny_config(), 8, 60,
                             metrics=[MetricSpec("igd"), MetricSpec("hv", ref_point=(2, 2))])
        path = tmp_path / "one.run.json"
        persist(payload, path)
        loaded = load(path)
        assert loaded.canonical() == payload.canonical()

    def test_nan_metric_round_trip(self, tmp_path):
        problem = tiny_problem(reference_points=0)  # no reference -> NaN igd
        payload = run_single(problem, tiny_config(), 8, 60, metrics=[MetricSpec("igd")])
        assert np.isnan(payload.history_for("igd").final_value)
        path = tmp_path / "nan.run.json"
        persist(payload, path)
        loaded = load(path)
        assert np.isnan(loaded.history_for("igd").final_value)
        assert loaded.canonical() == payload.canonical()

    def test_tampered_indices_rejected(self, tmp_path):
        payload = run_single(tiny_problem(), tiny_config(), 8, 60)
        data = payload.to_dict()
        data["nondominated_indices"] = list(range(len(data["final_F"])))
        if data["nondominated_indices"] == payload.nondominated_indices:
            data["nondominated_indices"] = data["nondominated_indices"][:-1]
        path = tmp_path / "bad.run.json"
        from emolab.orchestrator import write_canonical

        write_canonical(data, path)
        with pytest.raises(PayloadLoadError) as err:
            load(path)
        assert "nondominated_indices" in str(err.value)

    def test_unknown_schema_version(self, tmp_path):
        payload = run_single(tiny_problem(), tiny_config(), 8, 60)
        data = payload.to_dict()
        data["schema_version"] = 999
        from emolab.orchestrator import write_canonical

        path = write_canonical(data, tmp_path / "v999.run.json")
        with pytest.raises(PayloadLoadError) as err:
            load(path)
        assert "schema_version" in str(err.value)


def small_plan(tmp=None, n_runs=3, max_workers=1, metrics=()):
    return ExperimentPlan(
        experiment_id="exp-test",
        algorithms=(tiny_config("nsga2"), tiny_config("moead")),
        variants=(
            ProblemVariant("zdt1", n_var=6),
            ProblemVariant("zdt2", n_var=6),
        ),
        n_runs=n_runs,
        fe_budget=60,
        seed_plan=plan_seeds("sequence", 100, n_runs),
        max_workers=max_workers,
        metrics=tuple(metrics),
    )


class TestRunExperiment:
    def test_payload_count(self, tmp_path):
        result = run_experiment(small_plan(), store_dir=tmp_path)
        assert len(result.payloads) == 2 * 2 * 3
        assert len(list(tmp_path.glob("*.run.json"))) == 12
        assert result.manifest_path is not None

    def test_worker_count_invariance(self):
        res1 = run_experiment(small_plan(max_workers=1))
        res8 = run_experiment(small_plan(max_workers=8))
        by_id = lambda r: sorted(r.payloads, key=lambda p: p.run_id)  # noqa: E731
        for a, b in zip(by_id(res1), by_id(res8)):
            assert canonical_dumps(a.final_F) == canonical_dumps(b.final_F)

    def test_failure_isolation(self):
        plan = small_plan(n_runs=2)

        def resolver(pid, n_obj=None, n_var=None):
            if pid == "zdt2":
                return poisoned_problem()
            return make_problem(pid, n_obj=n_obj, n_var=n_var)

        result = run_experiment(plan, problem_resolver=resolver)
        assert len(result.failures) > 0
        assert len(result.payloads) + len(result.failures) == plan.total_runs

    def test_cell_configuration_error_is_isolated(self):
        # one variant's pop_size override exceeds the budget: those runs are
        # recorded as failures, the rest of the campaign completes
        plan = ExperimentPlan(
            experiment_id="exp-cfg",
            algorithms=(tiny_config("nsga2"),),
            variants=(
                ProblemVariant("zdt1", n_var=6),
                ProblemVariant("zdt1", n_var=6, pop_size=200),  # > fe_budget
            ),
            n_runs=2,
            fe_budget=60,
            seed_plan=plan_seeds("sequence", 3, 2),
        )
        result = run_experiment(plan)
        assert len(result.payloads) == 2
        assert len(result.failures) == 2
        assert all("population size" in f["error"] for f in result.failures)

    def test_plan_round_trip(self):
        plan = small_plan(metrics=[MetricSpec("igd")])
        restored = ExperimentPlan.from_dict(plan.to_dict())
        assert restored.to_dict() == plan.to_dict()

    def test_seed_count_mismatch_rejected(self):
        plan = small_plan()
        bad = ExperimentPlan(
            **{**plan.__dict__, "seed_plan": plan_seeds("sequence", 1, 2)}
        )
        with pytest.raises(ConfigurationError):
            bad.validate()


class TestRecomputeMetrics:
    def test_matches_stored_final_history(self):
        problem = make_problem("zdt1", n_var=8)
        spec = MetricSpec("igd")
        payloads = [
            run_single(problem, tiny_config(), seed, 120, metrics=[spec])
            for seed in range(3)
        ]
        records = recompute_metrics(payloads, [spec])
        for payload, record in zip(payloads, records):
            stored = payload.history_for("igd").final_value
            assert record["values"]["igd"] == pytest.approx(stored, abs=1e-12)

    def test_hv_without_ref_point_flagged_others_proceed(self):
        payload = run_single(tiny_problem(), tiny_config(), 1, 60)
        records = recompute_metrics([payload], [MetricSpec("hv"), MetricSpec("igd")])
        rec = records[0]
        assert "configuration_error" in rec["flags"]["hv"]
        assert np.isfinite(rec["values"]["igd"])

    def test_empty_payload_list(self):
        assert recompute_metrics([], [MetricSpec("igd")]) == []

    def test_unresolvable_problem_yields_nan_flag(self):
        payload = run_single(tiny_problem(), tiny_config(), 1, 60)
        payload.problem["id"] = "not-a-problem"
        records = recompute_metrics([payload], [MetricSpec("igd")])
        assert np.isnan(records[0]["values"]["igd"])
        assert records[0]["flags"]["igd"] == "missing_reference_front"
