"""API and CLI tests; the whole suite runs offline with LLM fixtures."""

import json
import time
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from emolab.algorithms import AlgorithmConfig
from emolab.cli import main as cli_main
from emolab.core import make_problem
from emolab.indicators import MetricSpec
from emolab.mcdm import topsis_decide
from emolab.orchestrator import canonical_dumps, load, run_single, write_canonical
from emolab.service import ServiceSettings, create_app


@pytest.fixture()
def client(tmp_path):
    settings = ServiceSettings(store_dir=tmp_path / "store", max_workers=2, llm_mode="fixture")
    app = create_app(settings)
    with TestClient(app) as c:
        c.store_dir = settings.store_dir
        yield c


def wait_run(client, run_id, timeout=60.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        body = client.get(f"/api/runs/{run_id}").json()
        if body["status"] != "running":
            return body
        time.sleep(0.02)
    raise TimeoutError("run did not finish")


def wait_experiment(client, experiment_id, timeout=120.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        body = client.get(f"/api/experiments/{experiment_id}").json()
        if body["status"] != "running":
            return body
        time.sleep(0.05)
    raise TimeoutError("experiment did not finish")


RUN_BODY = {
    "problem": "zdt1",
    "n_var": 6,
    "algorithm": "nsga2",
    "config": {"pop_size": 12},
    "seed": 11,
    "fe_budget": 60,
    "metrics": [{"metric_id": "igd"}],
}


class TestCatalogs:
    def test_builtin_catalogs(self, client):
        problems = client.get("/api/problems").json()["problems"]
        assert {p["id"] for p in problems} >= {"zdt1", "zdt4", "dtlz2"}
        algorithms = client.get("/api/algorithms").json()["algorithms"]
        assert [a["id"] for a in algorithms] == ["nsga2", "moead"]
        metrics = client.get("/api/metrics").json()["metrics"]
        assert {m["id"] for m in metrics} == {"igd", "igd_plus", "gd", "hv"}

    def test_unknown_path_has_error_code(self, client):
        response = client.get("/api/nothing/here")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"

    def test_problem_front_endpoint(self, client):
        body = client.get("/api/problems/zdt1/front", params={"points": 50}).json()
        assert len(body["front"]) == 50
        assert body["front"][0] == [0.0, 1.0]  # closed-form front endpoint
        assert body["front"][-1] == [1.0, 0.0]
        assert client.get("/api/problems/nope/front").status_code == 404


class TestRuns:
    def test_run_lifecycle_and_module_parity(self, client):
        response = client.post("/api/runs", json=RUN_BODY)
        assert response.status_code == 202
        run_id = response.json()["run_id"]
        body = wait_run(client, run_id)
        assert body["status"] == "finished"
        api_f = body["payload"]["final_F"]

        problem = make_problem("zdt1", n_var=6)
        direct = run_single(
            problem, AlgorithmConfig("nsga2", pop_size=12), 11, 60,
            metrics=[MetricSpec("igd")],
        )
        assert canonical_dumps(api_f) == canonical_dumps(direct.final_F)
        # payload persisted to the store
        path = Path(body["payload_path"])
        assert path.exists()
        assert load(path).run_id == run_id

    def test_negative_budget_code(self, client):
        response = client.post("/api/runs", json={**RUN_BODY, "fe_budget": -5})
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_budget"

    def test_unknown_problem(self, client):
        response = client.post("/api/runs", json={**RUN_BODY, "problem": "nope"})
        assert response.status_code == 422
        assert response.json()["code"] == "unknown_problem"

    def test_invalid_config_field_detail(self, client):
        response = client.post("/api/runs", json={**RUN_BODY, "config": {"pop_size": 7}})
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_config"

    def test_unknown_run_404(self, client):
        assert client.get("/api/runs/deadbeef").status_code == 404

    def test_malformed_body_422(self, client):
        response = client.post("/api/runs", json={"problem": "zdt1"})
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_request"


def parse_sse(text: str) -> list[dict]:
    events = []
    for block in text.strip().split("\n\n"):
        kind, data = None, None
        for line in block.splitlines():
            if line.startswith("event: "):
                kind = line[len("event: "):]
            elif line.startswith("data: "):
                data = json.loads(line[len("data: "):])
        if kind and data is not None:
            events.append({"kind": kind, **data})
    return events


class TestEventStream:
    def test_finished_run_replays_snapshot_then_closes(self, client):
        run_id = client.post("/api/runs", json=RUN_BODY).json()["run_id"]
        wait_run(client, run_id)
        with client.stream("GET", f"/api/runs/{run_id}/events") as stream:
            text = "".join(stream.iter_text())
        events = parse_sse(text)
        kinds = [e["kind"] for e in events]
        assert kinds[0] == "started"
        assert "generation" in kinds
        assert kinds[-1] == "finished"
        # the replayed generation snapshot carries front and histories
        generation = next(e for e in events if e["kind"] == "generation")
        assert generation["payload"]["front"]
        assert "igd" in generation["payload"]["histories"]

    def test_live_stream_reaches_terminal(self, client):
        run_id = client.post("/api/runs", json={**RUN_BODY, "fe_budget": 240}).json()["run_id"]
        with client.stream("GET", f"/api/runs/{run_id}/events") as stream:
            text = "".join(stream.iter_text())
        events = parse_sse(text)
        assert events[-1]["kind"] in ("finished", "failed")
        fes = [e["fe_used"] for e in events]
        assert fes == sorted(fes)
        assert sum(1 for e in events if e["kind"] in ("finished", "failed")) == 1

    def test_unknown_run_events_404(self, client):
        assert client.get("/api/runs/nope/events").status_code == 404

    def test_event_log_replay_semantics(self):
        from emolab.orchestrator import ProgressEvent
        from emolab.service import RunEventLog

        log = RunEventLog("r")
        started = ProgressEvent("r", "started", 0, {})
        gen1 = ProgressEvent("r", "generation", 10, {"generation": 0})
        gen2 = ProgressEvent("r", "generation", 20, {"generation": 1})
        log.append(started)
        log.append(gen1)

        mid = log.subscribe()  # subscribed mid-run: snapshot then live tail
        log.append(gen2)
        done = ProgressEvent("r", "finished", 20, {})
        log.append(done)
        received = [mid.get_nowait() for _ in range(4)]
        assert [e.kind for e in received] == ["started", "generation", "generation", "finished"]
        assert received[1] is gen1 and received[2] is gen2

        late = log.subscribe()  # after the terminal event: snapshot only
        replay = [late.get_nowait() for _ in range(3)]
        assert [e.kind for e in replay] == ["started", "generation", "finished"]
        # the generation snapshot is the LAST one, not the first
        assert replay[1] is gen2
        assert late.empty()


EXPERIMENT_BODY = {
    "experiment_id": "exp-api",
    "algorithms": [
        {"algorithm_id": "nsga2", "pop_size": 12},
        {"algorithm_id": "moead", "pop_size": 12},
    ],
    "problems": [
        {"problem_id": "zdt1", "variants": [{"n_var": 6}]},
        {"problem_id": "zdt2", "variants": [{"n_var": 6}]},
    ],
    "n_runs": 3,
    "fe_budget": 60,
    "seed_plan": {"policy": "sequence", "base_seed": 5},
    "max_workers": 2,
    "metrics": [{"metric_id": "igd"}],
}


class TestExperiments:
    def test_campaign_summary_and_export(self, client):
        response = client.post("/api/experiments", json=EXPERIMENT_BODY)
        assert response.status_code == 202
        experiment_id = response.json()["experiment_id"]
        body = wait_experiment(client, experiment_id)
        assert body["completed"] == 12
        summary = client.get(
            f"/api/experiments/{experiment_id}/summary", params={"metric": "igd"}
        ).json()["summary"]
        assert len(summary["rows"]) == 2
        assert summary["algorithms"] == ["nsga2", "moead"]
        for row in summary["rows"]:
            bests = [c for c in row["cells"].values() if c["best"]]
            assert len(bests) >= 1
            for cell in row["cells"].values():
                assert cell["n"] == 3

        csv_text = client.get(
            f"/api/experiments/{experiment_id}/export",
            params={"metric": "igd", "format": "csv"},
        ).text
        assert csv_text.startswith("problem,M,D,nsga2,moead")
        latex = client.get(
            f"/api/experiments/{experiment_id}/export",
            params={"metric": "igd", "format": "latex"},
        ).text
        assert latex.startswith("\\begin{tabular}")
        assert "\\bottomrule" in latex

    def test_unknown_metric_422(self, client):
        run = client.post("/api/experiments", json=EXPERIMENT_BODY).json()
        wait_experiment(client, run["experiment_id"])
        response = client.get(
            f"/api/experiments/{run['experiment_id']}/summary",
            params={"metric": "spacing"},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "unknown_metric"

    def test_invalid_plan_422(self, client):
        response = client.post("/api/experiments", json={"algorithms": []})
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_plan"

    def test_nonparametric_tests_endpoint(self, client):
        run = client.post("/api/experiments", json=EXPERIMENT_BODY).json()
        wait_experiment(client, run["experiment_id"])
        body = client.get(
            f"/api/experiments/{run['experiment_id']}/tests", params={"metric": "igd"}
        ).json()
        assert body["wilcoxon"], "expected at least one pairwise test"
        assert body["friedman"] is not None
        assert 0.0 <= body["wilcoxon"][0]["p_value"] <= 1.0


class TestMcdm:
    def test_decide_parity_and_sidecar(self, client):
        run_id = client.post("/api/runs", json=RUN_BODY).json()["run_id"]
        body = wait_run(client, run_id)
        response = client.post(
            "/api/mcdm/decide",
            json={"run_id": run_id, "method": "topsis"},
        )
        assert response.status_code == 200
        payload_front = np.asarray(body["payload"]["final_F"])[
            body["payload"]["nondominated_indices"]
        ]
        expected_index, expected_score = topsis_decide(payload_front)
        data = response.json()
        assert data["highlight_index"] == expected_index
        assert data["snapshot"]["score"] == pytest.approx(expected_score)
        sidecar = Path(body["payload_path"]).with_name(f"{run_id}.decision.json")
        assert sidecar.exists()

    def test_running_run_conflict(self, client):
        slow = {**RUN_BODY, "problem": "zdt1", "n_var": 30,
                "config": {"pop_size": 100}, "fe_budget": 200_000}
        run_id = client.post("/api/runs", json=slow).json()["run_id"]
        response = client.post(
            "/api/mcdm/decide", json={"run_id": run_id, "method": "topsis"}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "run_not_finished"

    def test_bad_weights_422(self, client):
        run_id = client.post("/api/runs", json=RUN_BODY).json()["run_id"]
        wait_run(client, run_id)
        response = client.post(
            "/api/mcdm/decide",
            json={"run_id": run_id, "method": "topsis", "weights": [1.0, 1.0, 1.0]},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_weights"


class TestFormulation:
    def test_generate_validate_register_cycle(self, client):
        source = client.post(
            "/api/formulation/generate", json={"prompt": "a ridge problem"}
        ).json()["source"]
        assert source["provenance"] == "llm"

        report = client.post(
            "/api/formulation/validate", json={"source": source}
        ).json()["report"]
        assert report["accepted"]

        registered = client.post(
            "/api/formulation/register", json={"source": source}
        ).json()
        problem_id = registered["problem_id"]
        assert problem_id.endswith("@v1")
        ids = {p["id"] for p in client.get("/api/problems").json()["problems"]}
        assert problem_id in ids

        # hot reload: the registered problem is immediately runnable
        run_id = client.post(
            "/api/runs",
            json={
                "problem": problem_id,
                "algorithm": "nsga2",
                "config": {"pop_size": 12},
                "seed": 1,
                "fe_budget": 36,
            },
        ).json()["run_id"]
        assert wait_run(client, run_id)["status"] == "finished"

    def test_invalid_source_fails_with_report(self, client):
        source = {
            "name": "bad", "n_var": 4, "n_obj": 1,
            "objectives": ["x[1] + * 2"],
        }
        report = client.post(
            "/api/formulation/validate", json={"source": source}
        ).json()["report"]
        assert not report["accepted"]
        assert report["stages"][-1]["stage"] == "parse"

        response = client.post("/api/formulation/register", json={"source": source})
        assert response.status_code == 422
        assert response.json()["code"] == "verification_failed"
        assert response.json()["detail"]["report"]["stages"]


class TestCli:
    def test_lab_test_writes_payload(self, tmp_path, capsys):
        exit_code = cli_main([
            "test", "--problem", "zdt1", "--n-var", "6", "--algorithm", "nsga2",
            "--pop-size", "12", "--seed", "42", "--budget", "60",
            "--metric", "igd", "--store", str(tmp_path),
        ])
        assert exit_code == 0
        out = capsys.readouterr().out
        assert "igd:" in out
        paths = list(tmp_path.glob("*.run.json"))
        assert len(paths) == 1
        assert "payload:" in out

    def test_lab_experiment_and_export(self, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        write_canonical(EXPERIMENT_BODY, plan_path)
        store = tmp_path / "store"
        assert cli_main(["experiment", "--plan", str(plan_path), "--store", str(store)]) == 0
        manifest = store / "exp-api.exp.json"
        assert manifest.exists()
        capsys.readouterr()
        assert cli_main([
            "export", "--manifest", str(manifest), "--metric", "igd",
            "--format", "latex",
        ]) == 0
        out = capsys.readouterr().out
        assert out.startswith("\\begin{tabular}")
        assert out.count("\\textbf") == 2  # one best per problem row

    def test_lab_decide(self, tmp_path, capsys):
        cli_main([
            "test", "--problem", "zdt1", "--n-var", "6", "--pop-size", "12",
            "--seed", "3", "--budget", "60", "--store", str(tmp_path),
        ])
        payload_path = next(tmp_path.glob("*.run.json"))
        capsys.readouterr()
        assert cli_main([
            "decide", "--payload", str(payload_path), "--method", "weighted_sum",
            "--weights", "0.9,0.1",
        ]) == 0
        out = capsys.readouterr().out
        assert "selected_index:" in out
        assert payload_path.with_name(
            payload_path.name.replace(".run.json", ".decision.json")
        ).exists()

    def test_lab_validate(self, tmp_path, capsys):
        source_path = tmp_path / "source.json"
        write_canonical(
            {
                "name": "ok", "n_var": 3, "n_obj": 1,
                "objectives": ["sum(i=1..3, x[i]^2)"],
            },
            source_path,
        )
        assert cli_main(["validate", "--source", str(source_path)]) == 0
        out = capsys.readouterr().out
        assert "accepted: True" in out

        bad_path = tmp_path / "bad.json"
        write_canonical(
            {"name": "bad", "n_var": 3, "n_obj": 1, "objectives": ["x[9]"]},
            bad_path,
        )
        assert cli_main(["validate", "--source", str(bad_path)]) == 1

    def test_lab_recompute(self, tmp_path, capsys):
        cli_main([
            "test", "--problem", "zdt1", "--n-var", "6", "--pop-size", "12",
            "--seed", "3", "--budget", "60", "--store", str(tmp_path),
        ])
        capsys.readouterr()
        assert cli_main(["recompute", str(tmp_path), "--metric", "igd"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "run_id,problem,algorithm,seed,igd"

    def test_invalid_flag_exits_nonzero_with_usage(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli_main(["test", "--no-such-flag"])
        assert err.value.code == 2
        assert "usage" in capsys.readouterr().err
