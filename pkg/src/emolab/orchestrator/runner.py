"""Single-run execution: one algorithm, one problem, one seed.

The run is a pure function of (problem, resolved config, seed, fe_budget,
backend label): the seeded generator drives every stochastic choice, and
metric histories are appended once per generation on the current
nondominated front. Progress events go to an optional sink; the sink must
tolerate calls from whichever worker thread owns the run.
"""

from __future__ import annotations

import time
import uuid
from typing import Callable, Sequence

import numpy as np

from ..algorithms import AlgorithmConfig, RunState, init_state, step_state
from ..core import ProblemInstance, nondominated_filter
from ..errors import ConfigurationError, RunFailedError
from ..indicators import (
    HV_MC_SAMPLES,
    HV_MC_SEED,
    MetricHistory,
    MetricSpec,
    make_metric,
)
from .payload import SCHEMA_VERSION, ProgressEvent, RunPayload, iso_now

BACKEND_LABEL = "cpu-batch"

EventSink = Callable[[ProgressEvent], None]


def make_rng(seed: int) -> np.random.Generator:
    """The run-level generator: PCG64 over a per-run SeedSequence."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def bind_metrics(metrics: Sequence[MetricSpec], problem: ProblemInstance) -> list:
    context = {
        "reference_front": problem.reference_front,
        "ref_point": None,
    }
    return [make_metric(spec, context) for spec in metrics]


def _emit(sink: EventSink | None, event: ProgressEvent) -> None:
    if sink is not None:
        sink(event)


def _histories_payload(histories: list[MetricHistory]) -> dict:
    return {h.metric_id: [[fe, v] for fe, v in h.points] for h in histories}


def run_single(
    problem: ProblemInstance,
    config: AlgorithmConfig,
    seed: int,
    fe_budget: int,
    metrics: Sequence[MetricSpec] = (),
    event_sink: EventSink | None = None,
    run_id: str | None = None,
) -> RunPayload:
    """Execute one run to budget exhaustion and assemble its payload.

    Raises RunFailedError (payload attached) when the evaluator produces
    non-finite values; the log is retained for traceability.
    """
    if fe_budget < 1:
        raise ConfigurationError("fe_budget must be positive")
    config = config.resolve(problem)
    if fe_budget < config.pop_size:
        raise ConfigurationError(
            f"fe_budget {fe_budget} is below the population size {config.pop_size}"
        )
    bound_metrics = bind_metrics(metrics, problem)
    run_id = run_id or uuid.uuid4().hex
    rng = make_rng(seed)
    histories = [MetricHistory(m.metric_id) for m in metrics]
    log: list[str] = []
    t0 = time.perf_counter()

    def note(message: str) -> None:
        log.append(f"{iso_now()} {message}")

    def current_front(state: RunState) -> np.ndarray:
        F = state.population.batch.F
        return F[nondominated_filter(F)]

    def record_metrics(state: RunState) -> np.ndarray:
        front = current_front(state)
        for metric, history in zip(bound_metrics, histories):
            value = metric(front)
            history.append(state.fe_used, value)
            _emit(
                event_sink,
                ProgressEvent(
                    run_id,
                    "metric_point",
                    state.fe_used,
                    {"metric_id": metric.metric_id, "fe": state.fe_used, "value": value},
                ),
            )
        return front

    def emit_generation(state: RunState, front: np.ndarray) -> None:
        _emit(
            event_sink,
            ProgressEvent(
                run_id,
                "generation",
                state.fe_used,
                {
                    "generation": state.generation,
                    "fe_used": state.fe_used,
                    "fe_budget": fe_budget,
                    "front": front.tolist(),
                    "histories": _histories_payload(histories),
                },
            ),
        )

    def fail(state: RunState | None, message: str) -> RunPayload:
        note(f"run failed: {message}")
        payload = _assemble(state, status="failed", error=message)
        _emit(
            event_sink,
            ProgressEvent(
                run_id,
                "failed",
                state.fe_used if state else 0,
                {"error": message},
            ),
        )
        raise RunFailedError(message, payload=payload)

    def _assemble(state: RunState | None, status: str, error: str = "") -> RunPayload:
        if state is not None:
            pop = state.population
            final_x, batch = pop.X, pop.batch
            final_f, final_g, final_h = batch.F, batch.G, batch.H
            fe_used = state.fe_used
        else:
            final_x = np.zeros((0, problem.n_var))
            final_f = np.zeros((0, problem.n_obj))
            final_g = np.zeros((0, problem.n_ieq))
            final_h = np.zeros((0, problem.n_eq))
            fe_used = 0
        meta = {
            "status": status,
            "metric_cadence": "per_generation",
            "metric_front": "nondominated",
            "rng": "pcg64-seedsequence",
            "hv_mc_samples": str(HV_MC_SAMPLES),
            "hv_mc_seed": str(HV_MC_SEED),
            "fe_used": str(fe_used),
        }
        if error:
            meta["error"] = error
        nd = nondominated_filter(final_f) if np.isfinite(final_f).all() else []
        return RunPayload(
            schema_version=SCHEMA_VERSION,
            run_id=run_id,
            problem={
                "id": problem.id,
                "n_obj": problem.n_obj,
                "n_var": problem.n_var,
                "overrides": {},
            },
            algorithm={"id": config.algorithm_id, "config": config.to_dict()},
            seed=int(seed),
            backend=BACKEND_LABEL,
            fe_budget=fe_budget,
            metric_histories=histories,
            final_X=final_x,
            final_F=final_f,
            final_G=final_g,
            final_H=final_h,
            nondominated_indices=nd,
            wall_time_ms=int((time.perf_counter() - t0) * 1000),
            log=log,
            meta=meta,
        )

    note(
        f"started problem={problem.id} algorithm={config.algorithm_id} "
        f"seed={seed} budget={fe_budget} backend={BACKEND_LABEL}"
    )
    _emit(
        event_sink,
        ProgressEvent(
            run_id,
            "started",
            0,
            {
                "problem_id": problem.id,
                "algorithm_id": config.algorithm_id,
                "seed": int(seed),
                "fe_budget": fe_budget,
                "pop_size": config.pop_size,
                "backend": BACKEND_LABEL,
                "metrics": [m.metric_id for m in metrics],
            },
        ),
    )

    state: RunState | None = None
    try:
        state = init_state(problem, config, rng, fe_budget)
    except Exception as exc:  # evaluator blew up before the first population
        fail(None, str(exc))

    if not np.isfinite(state.population.batch.F).all():
        fail(state, "evaluator produced non-finite objective values")
    front = record_metrics(state)
    emit_generation(state, front)
    note(f"generation 0 evaluated, fe_used={state.fe_used}")

    while not state.finished:
        try:
            state = step_state(state, config, problem, rng)
        except Exception as exc:
            fail(state, str(exc))
        if not np.isfinite(state.population.batch.F).all():
            fail(state, "evaluator produced non-finite objective values")
        front = record_metrics(state)
        emit_generation(state, front)

    note(f"finished fe_used={state.fe_used}")
    payload = _assemble(state, status="ok")
    _emit(
        event_sink,
        ProgressEvent(
            run_id,
            "finished",
            state.fe_used,
            {"fe_used": state.fe_used, "wall_time_ms": payload.wall_time_ms},
        ),
    )
    return payload
