"""Shared application state: registry, run records, worker pool, settings."""

from __future__ import annotations

import dataclasses
import math
import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..algorithms import AlgorithmConfig
from ..core import ProblemInstance
from ..errors import RunFailedError
from ..formulation import (
    DEFAULT_API_KEY_ENV,
    LlmClientConfig,
    ProblemRegistry,
    ProblemSource,
    fixture_generate,
    llm_generate,
)
from ..indicators import MetricSpec
from ..orchestrator import (
    PAYLOAD_SUFFIX,
    ExperimentPlan,
    ExperimentResult,
    ProgressEvent,
    RunPayload,
    iso_now,
    persist,
    run_experiment,
    run_single,
)
from .events import RunEventLog


@dataclass(frozen=True)
class ServiceSettings:
    store_dir: Path
    max_workers: int = 4
    llm_mode: str = "fixture"  # "fixture" or "http"
    llm_endpoint: str = ""
    llm_model: str = ""
    llm_api_key_env: str = DEFAULT_API_KEY_ENV

    @classmethod
    def from_env(cls) -> "ServiceSettings":
        return cls(
            store_dir=Path(os.environ.get("EMOLAB_STORE", "./payloads")),
            max_workers=int(os.environ.get("EMOLAB_WORKERS", "4")),
            llm_mode=os.environ.get("EMOLAB_LLM_MODE", "fixture"),
            llm_endpoint=os.environ.get("EMOLAB_LLM_ENDPOINT", ""),
            llm_model=os.environ.get("EMOLAB_LLM_MODEL", ""),
            llm_api_key_env=os.environ.get("EMOLAB_LLM_KEY_ENV", DEFAULT_API_KEY_ENV),
        )


@dataclass
class RunRecord:
    run_id: str
    status: str  # "running" | "finished" | "failed"
    request: dict
    events: RunEventLog
    payload: RunPayload | None = None
    path: Path | None = None
    error: str = ""
    created_at: str = field(default_factory=iso_now)


@dataclass
class ExperimentRecord:
    experiment_id: str
    status: str  # "running" | "finished"
    plan: ExperimentPlan
    result: ExperimentResult | None = None
    error: str = ""
    created_at: str = field(default_factory=iso_now)


class AppState:
    def __init__(self, settings: ServiceSettings):
        self.settings = settings
        self.registry = ProblemRegistry()
        self.executor = ThreadPoolExecutor(max_workers=max(settings.max_workers, 2))
        self.runs: dict[str, RunRecord] = {}
        self.experiments: dict[str, ExperimentRecord] = {}
        self._lock = threading.Lock()
        settings.store_dir.mkdir(parents=True, exist_ok=True)

    def close(self) -> None:
        self.executor.shutdown(wait=False, cancel_futures=True)

    # -- problems ---------------------------------------------------------

    def resolve_problem(
        self,
        problem_id: str,
        n_obj: int | None = None,
        n_var: int | None = None,
        use_reference_front: bool = True,
    ) -> ProblemInstance:
        instance = self.registry.resolve(problem_id, n_obj=n_obj, n_var=n_var)
        if not use_reference_front and instance.reference_front is not None:
            instance = dataclasses.replace(instance, reference_front=None)
        return instance

    # -- runs --------------------------------------------------------------

    def submit_run(
        self,
        problem_id: str,
        config: AlgorithmConfig,
        seed: int,
        fe_budget: int,
        metrics: tuple[MetricSpec, ...],
        n_obj: int | None = None,
        n_var: int | None = None,
        use_reference_front: bool = True,
    ) -> RunRecord:
        run_id = uuid.uuid4().hex
        record = RunRecord(
            run_id=run_id,
            status="running",
            request={
                "problem": problem_id,
                "n_obj": n_obj,
                "n_var": n_var,
                "algorithm": config.algorithm_id,
                "seed": seed,
                "fe_budget": fe_budget,
                "metrics": [m.metric_id for m in metrics],
            },
            events=RunEventLog(run_id),
        )
        with self._lock:
            self.runs[run_id] = record

        def job():
            try:
                problem = self.resolve_problem(
                    problem_id, n_obj, n_var, use_reference_front
                )
                payload = run_single(
                    problem,
                    config,
                    seed,
                    fe_budget,
                    metrics=metrics,
                    event_sink=record.events.append,
                    run_id=run_id,
                )
                path = self.settings.store_dir / f"{run_id}{PAYLOAD_SUFFIX}"
                persist(payload, path)
                record.payload = payload
                record.path = path
                record.status = "finished"
            except RunFailedError as exc:
                record.payload = exc.payload
                record.error = str(exc)
                record.status = "failed"
            except Exception as exc:  # config/resolution errors after submit
                record.error = str(exc)
                record.status = "failed"
                record.events.append(
                    ProgressEvent(run_id, "failed", 0, {"error": str(exc)})
                )

        self.executor.submit(job)
        return record

    def get_run(self, run_id: str) -> RunRecord | None:
        with self._lock:
            return self.runs.get(run_id)

    # -- experiments --------------------------------------------------------

    def submit_experiment(self, plan: ExperimentPlan) -> ExperimentRecord:
        record = ExperimentRecord(
            experiment_id=plan.experiment_id, status="running", plan=plan
        )
        with self._lock:
            self.experiments[plan.experiment_id] = record

        def job():
            try:
                record.result = run_experiment(
                    plan,
                    store_dir=self.settings.store_dir,
                    problem_resolver=self.registry.resolve,
                )
            except Exception as exc:
                record.error = str(exc)
            record.status = "finished"

        self.executor.submit(job)
        return record

    def get_experiment(self, experiment_id: str) -> ExperimentRecord | None:
        with self._lock:
            return self.experiments.get(experiment_id)

    # -- formulation ---------------------------------------------------------

    def generate_source(self, prompt: str) -> ProblemSource:
        if self.settings.llm_mode == "fixture":
            return fixture_generate(prompt)
        config = LlmClientConfig(
            endpoint=self.settings.llm_endpoint,
            model=self.settings.llm_model,
            api_key_env=self.settings.llm_api_key_env,
        )
        return llm_generate(prompt, config)


def jsonable(obj):
    """Recursively prepare an object for strict-JSON responses.

    Non-finite floats become null: browser JSON parsers reject NaN
    literals, and the UI renders null cells distinctly.
    """
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    return obj
