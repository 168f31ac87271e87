"""HTTP API and SSE event streams over the workbench modules.

Every endpoint is a thin adapter: it validates the request, calls the
corresponding module operation, and serializes the result. Errors carry a
stable machine code alongside the human-readable message.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..algorithms import AlgorithmConfig, algorithm_listing
from ..errors import (
    ConfigurationError,
    ContractViolation,
    DecisionError,
    ExtractionError,
    RegistrationError,
    TransportError,
    UnsupportedProblemError,
)
from ..formulation import ProblemSource, register, verify
from ..indicators import METRIC_IDS, MetricSpec, metric_listing
from ..mcdm import MCDM_METHODS, decide_and_snapshot
from ..orchestrator import ExperimentPlan, recompute_metrics
from ..stats import export_csv, export_latex, groups_from_records, summarize
from .events import drain
from .state import AppState, ServiceSettings, jsonable

SSE_KEEPALIVE_SECONDS = 15.0


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


class RunRequest(BaseModel):
    problem: str
    n_obj: int | None = None
    n_var: int | None = None
    algorithm: str = "nsga2"
    config: dict = Field(default_factory=dict)
    seed: int = 0
    fe_budget: int
    metrics: list[dict] = Field(default_factory=list)
    use_reference_front: bool = True


class DecideRequest(BaseModel):
    run_id: str
    method: str
    weights: list[float] | None = None


class GenerateRequest(BaseModel):
    prompt: str


class SourceRequest(BaseModel):
    source: dict


def _metric_specs(raw: list[dict]) -> tuple[MetricSpec, ...]:
    specs = []
    for item in raw:
        if isinstance(item, str):
            item = {"metric_id": item}
        try:
            specs.append(MetricSpec.from_dict(item))
        except (ConfigurationError, KeyError) as exc:
            raise ApiError(422, "unknown_metric", f"bad metric spec: {exc}")
    return tuple(specs)


def _algorithm_config(algorithm: str, config: dict) -> AlgorithmConfig:
    data = {"algorithm_id": algorithm, **config}
    try:
        cfg = AlgorithmConfig.from_dict(data)
        cfg.validate()
    except ConfigurationError as exc:
        raise ApiError(422, "invalid_config", str(exc))
    return cfg


def create_app(settings: ServiceSettings | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    settings = settings or ServiceSettings.from_env()
    state = AppState(settings)
    app = FastAPI(title="emolab", version="0.1.0")
    app.state.lab = state

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message, "detail": exc.detail}
        return JSONResponse(status_code=exc.status, content=jsonable(body))

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={
                "code": "invalid_request",
                "message": "request body failed validation",
                "detail": jsonable(exc.errors()),
            },
        )

    @app.exception_handler(404)
    async def not_found_handler(_request: Request, exc):
        return JSONResponse(
            status_code=404,
            content={"code": "not_found", "message": "no such path or resource", "detail": None},
        )

    # -- catalogs ---------------------------------------------------------

    @app.get("/api/problems")
    def problems():
        return {"problems": jsonable(state.registry.listing())}

    @app.get("/api/algorithms")
    def algorithms():
        return {"algorithms": algorithm_listing()}

    @app.get("/api/metrics")
    def metrics():
        return {"metrics": metric_listing()}

    @app.get("/api/problems/{problem_id}/front")
    def problem_front(problem_id: str, points: int = 200):
        try:
            instance = state.registry.resolve(problem_id)
        except UnsupportedProblemError as exc:
            raise ApiError(404, "not_found", str(exc))
        if instance.reference_front is None:
            raise ApiError(404, "no_reference_front",
                           f"'{problem_id}' has no closed-form front")
        F = instance.reference_front.F
        if 0 < points < F.shape[0]:
            import numpy as np

            idx = np.round(np.linspace(0, F.shape[0] - 1, points)).astype(int)
            F = F[idx]
        return {"problem_id": problem_id, "front": F.tolist()}

    # -- runs ---------------------------------------------------------------

    @app.post("/api/runs", status_code=202)
    def post_run(request: RunRequest):
        if request.fe_budget <= 0:
            raise ApiError(422, "invalid_budget", "fe_budget must be positive")
        config = _algorithm_config(request.algorithm, request.config)
        specs = _metric_specs(request.metrics)
        try:
            problem = state.resolve_problem(
                request.problem, request.n_obj, request.n_var,
                request.use_reference_front,
            )
            resolved = config.resolve(problem)  # surface sizing errors up front
            if request.fe_budget < resolved.pop_size:
                raise ApiError(
                    422, "invalid_budget",
                    "fe_budget is below the population size",
                )
        except UnsupportedProblemError as exc:
            raise ApiError(422, "unknown_problem", str(exc))
        except ConfigurationError as exc:
            raise ApiError(422, "invalid_config", str(exc))
        record = state.submit_run(
            request.problem,
            config,
            request.seed,
            request.fe_budget,
            specs,
            n_obj=request.n_obj,
            n_var=request.n_var,
            use_reference_front=request.use_reference_front,
        )
        return {"run_id": record.run_id}

    @app.get("/api/runs/{run_id}")
    def get_run(run_id: str):
        record = state.get_run(run_id)
        if record is None:
            raise ApiError(404, "not_found", f"unknown run '{run_id}'")
        body = {
            "run_id": run_id,
            "status": record.status,
            "request": record.request,
            "error": record.error,
            "payload_path": str(record.path) if record.path else None,
        }
        if record.payload is not None:
            body["payload"] = record.payload.to_dict()
        return jsonable(body)

    @app.get("/api/runs/{run_id}/events")
    def run_events(run_id: str):
        record = state.get_run(run_id)
        if record is None:
            raise ApiError(404, "not_found", f"unknown run '{run_id}'")

        def stream() -> Iterator[str]:
            q = record.events.subscribe()
            try:
                while True:
                    event = drain(q, SSE_KEEPALIVE_SECONDS)
                    if event is None:
                        yield ": keepalive\n\n"
                        continue
                    data = json.dumps(jsonable(event.to_dict()))
                    yield f"event: {event.kind}\ndata: {data}\n\n"
                    if event.terminal:
                        return
            finally:
                record.events.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    # -- experiments -----------------------------------------------------------

    @app.post("/api/experiments", status_code=202)
    def post_experiment(body: dict):
        try:
            plan = ExperimentPlan.from_dict(body)
            plan.validate(state.registry.resolve)
        except (ConfigurationError, ContractViolation, KeyError, ValueError) as exc:
            raise ApiError(422, "invalid_plan", str(exc))
        record = state.submit_experiment(plan)
        return {"experiment_id": record.experiment_id}

    def _experiment_or_404(experiment_id: str):
        record = state.get_experiment(experiment_id)
        if record is None:
            raise ApiError(404, "not_found", f"unknown experiment '{experiment_id}'")
        return record

    @app.get("/api/experiments/{experiment_id}")
    def get_experiment(experiment_id: str):
        record = _experiment_or_404(experiment_id)
        body = {
            "experiment_id": experiment_id,
            "status": record.status,
            "error": record.error,
            "total_runs": record.plan.total_runs,
        }
        if record.result is not None:
            body["completed"] = len(record.result.payloads)
            body["failed"] = len(record.result.failures)
            body["failures"] = record.result.failures
            body["manifest_path"] = (
                str(record.result.manifest_path) if record.result.manifest_path else None
            )
        return jsonable(body)

    def _summary_table(record, metric_id: str):
        if metric_id not in METRIC_IDS:
            raise ApiError(422, "unknown_metric", f"unknown metric '{metric_id}'")
        spec = next(
            (m for m in record.plan.metrics if m.metric_id == metric_id),
            MetricSpec(metric_id) if metric_id != "hv" else None,
        )
        if spec is None:
            raise ApiError(
                422, "unknown_metric",
                "hv summaries need the metric configured in the plan (ref_point)",
            )
        payloads = record.result.payloads if record.result else []
        records = recompute_metrics(payloads, [spec], state.registry.resolve)
        groups = groups_from_records(records, metric_id)
        algorithms = [a.algorithm_id for a in record.plan.algorithms]
        return summarize(groups, metric_id, spec.direction, algorithms=algorithms)

    @app.get("/api/experiments/{experiment_id}/summary")
    def experiment_summary(experiment_id: str, metric: str = "igd"):
        record = _experiment_or_404(experiment_id)
        table = _summary_table(record, metric)
        return jsonable({"status": record.status, "summary": table.to_dict()})

    @app.get("/api/experiments/{experiment_id}/export")
    def experiment_export(experiment_id: str, metric: str = "igd", format: str = "csv"):
        record = _experiment_or_404(experiment_id)
        if format not in ("csv", "latex"):
            raise ApiError(422, "invalid_format", f"unknown format '{format}'")
        table = _summary_table(record, metric)
        text = export_csv(table) if format == "csv" else export_latex(table)
        return PlainTextResponse(text)

    @app.get("/api/experiments/{experiment_id}/tests")
    def experiment_tests(experiment_id: str, metric: str = "igd"):
        """Wilcoxon over paired runs per algorithm pair, Friedman over rows."""
        from ..stats import friedman, wilcoxon_signed_rank

        record = _experiment_or_404(experiment_id)
        table = _summary_table(record, metric)
        algorithms = table.algorithms
        payloads = record.result.payloads if record.result else []
        spec = MetricSpec(metric) if metric != "hv" else None
        results: dict = {"wilcoxon": [], "friedman": None}
        if spec is not None and payloads:
            records = recompute_metrics(payloads, [spec], state.registry.resolve)
            by_alg: dict[str, dict[tuple, dict[int, float]]] = {}
            for r, p in zip(records, payloads):
                cell = (r["problem_id"], r["n_obj"], r["n_var"])
                by_alg.setdefault(r["algorithm_id"], {}).setdefault(cell, {})[
                    p.seed
                ] = r["values"][metric]
            for i, a in enumerate(algorithms):
                for b in algorithms[i + 1 :]:
                    xs, ys = [], []
                    for cell, runs_a in by_alg.get(a, {}).items():
                        runs_b = by_alg.get(b, {}).get(cell, {})
                        for seed, value in runs_a.items():
                            if seed in runs_b:
                                xs.append(value)
                                ys.append(runs_b[seed])
                    if xs:
                        result = wilcoxon_signed_rank(xs, ys)
                        results["wilcoxon"].append(
                            {"pair": [a, b], **result.to_dict()}
                        )
            matrix = table.values_matrix()
            import numpy as np

            if matrix.shape[0] >= 2 and matrix.shape[1] >= 2 and not np.isnan(matrix).any():
                results["friedman"] = friedman(matrix, table.direction).to_dict()
        return jsonable(results)

    # -- mcdm ---------------------------------------------------------------

    @app.post("/api/mcdm/decide")
    def mcdm_decide(request: DecideRequest):
        record = state.get_run(request.run_id)
        if record is None:
            raise ApiError(404, "not_found", f"unknown run '{request.run_id}'")
        if record.status == "running":
            raise ApiError(409, "run_not_finished", "run is still executing")
        if record.status == "failed" or record.payload is None:
            raise ApiError(409, "run_failed", "run did not produce a payload")
        if request.method not in MCDM_METHODS:
            raise ApiError(422, "unknown_method", f"unknown method '{request.method}'")
        try:
            snapshot = decide_and_snapshot(
                record.payload,
                request.method,
                weights=request.weights,
                payload_path=record.path,
            )
        except ConfigurationError as exc:
            raise ApiError(422, "invalid_weights", str(exc))
        except DecisionError as exc:
            raise ApiError(422, "decision_error", str(exc))
        return jsonable(
            {
                "snapshot": snapshot.to_dict(),
                "highlight_index": snapshot.selected_index,
                "front": record.payload.nondominated_front().tolist(),
            }
        )

    # -- formulation -----------------------------------------------------------

    @app.post("/api/formulation/generate")
    def formulation_generate(request: GenerateRequest):
        try:
            source = state.generate_source(request.prompt)
        except ConfigurationError as exc:
            raise ApiError(422, "llm_not_configured", str(exc))
        except TransportError as exc:
            raise ApiError(502, "llm_transport_error", str(exc))
        except ExtractionError as exc:
            raise ApiError(
                422, "llm_extraction_error", str(exc),
                detail={"raw_response": exc.raw_response},
            )
        return {"source": source.to_dict()}

    @app.post("/api/formulation/validate")
    def formulation_validate(request: SourceRequest):
        try:
            source = ProblemSource.from_dict(request.source)
        except ContractViolation as exc:
            raise ApiError(422, "invalid_source", str(exc))
        return {"report": verify(source).to_dict()}

    @app.post("/api/formulation/register")
    def formulation_register(request: SourceRequest):
        try:
            source = ProblemSource.from_dict(request.source)
        except ContractViolation as exc:
            raise ApiError(422, "invalid_source", str(exc))
        report = verify(source)
        if not report.accepted:
            raise ApiError(
                422, "verification_failed", "source failed the verification chain",
                detail={"report": report.to_dict()},
            )
        try:
            problem_id = register(source, report, state.registry)
        except RegistrationError as exc:
            raise ApiError(422, "registration_refused", str(exc))
        return {"problem_id": problem_id, "report": report.to_dict()}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
