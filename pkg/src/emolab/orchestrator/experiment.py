"""Campaign execution: algorithms x problem variants x runs under a seed plan.

The run list is a pure function of the plan (algorithm order, then problem
variant order, then run index), and run i of every cell uses seed
realized[i]; results are therefore identical for any worker count, and
paired across algorithms for signed-rank testing. Failures are recorded and
never abort the campaign.
"""

from __future__ import annotations

import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from ..algorithms import AlgorithmConfig
from ..core import ProblemInstance, make_problem
from ..errors import ConfigurationError, UnsupportedProblemError
from ..indicators import MetricSpec, make_metric
from .payload import MANIFEST_SUFFIX, PAYLOAD_SUFFIX, RunPayload, persist
from .runner import EventSink, run_single
from .seeds import SeedPlan, plan_seeds
from .store import read_canonical, write_canonical

# resolves (problem_id, n_obj, n_var) to an instance; defaults to built-ins
ProblemResolver = Callable[[str, int | None, int | None], ProblemInstance]


def default_problem_resolver(
    problem_id: str, n_obj: int | None = None, n_var: int | None = None
) -> ProblemInstance:
    return make_problem(problem_id, n_obj=n_obj, n_var=n_var)


@dataclass(frozen=True)
class ProblemVariant:
    problem_id: str
    n_obj: int | None = None
    n_var: int | None = None
    pop_size: int | None = None

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "n_obj": self.n_obj,
            "n_var": self.n_var,
            "pop_size": self.pop_size,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemVariant":
        return cls(
            problem_id=data["problem_id"],
            n_obj=data.get("n_obj"),
            n_var=data.get("n_var"),
            pop_size=data.get("pop_size"),
        )


@dataclass(frozen=True)
class ExperimentPlan:
    experiment_id: str
    algorithms: tuple[AlgorithmConfig, ...]
    variants: tuple[ProblemVariant, ...]
    n_runs: int
    fe_budget: int
    seed_plan: SeedPlan
    max_workers: int = 1
    metrics: tuple[MetricSpec, ...] = ()

    @property
    def total_runs(self) -> int:
        return len(self.algorithms) * len(self.variants) * self.n_runs

    def validate(self, resolver: ProblemResolver | None = None) -> None:
        resolver = resolver or default_problem_resolver
        if not self.algorithms:
            raise ConfigurationError("plan needs at least one algorithm")
        if not self.variants:
            raise ConfigurationError("plan needs at least one problem variant")
        if self.n_runs < 1 or self.fe_budget < 1 or self.max_workers < 1:
            raise ConfigurationError("n_runs, fe_budget and max_workers must be positive")
        if len(self.seed_plan.realized) != self.n_runs:
            raise ConfigurationError(
                f"seed plan provides {len(self.seed_plan.realized)} seeds "
                f"for {self.n_runs} runs"
            )
        for variant in self.variants:
            try:
                resolver(variant.problem_id, variant.n_obj, variant.n_var)
            except (UnsupportedProblemError, ConfigurationError) as exc:
                raise ConfigurationError(
                    f"invalid variant {variant.problem_id}: {exc}"
                ) from exc
        for config in self.algorithms:
            config.validate()

    def to_dict(self) -> dict:
        return {
            "experiment_id": self.experiment_id,
            "algorithms": [a.to_dict() for a in self.algorithms],
            "problems": _group_variants(self.variants),
            "n_runs": self.n_runs,
            "fe_budget": self.fe_budget,
            "seed_plan": self.seed_plan.to_dict(),
            "max_workers": self.max_workers,
            "metrics": [m.to_dict() for m in self.metrics],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentPlan":
        variants = []
        for problem in data.get("problems", []):
            pid = problem["problem_id"]
            raw_variants = problem.get("variants") or [{}]
            for raw in raw_variants:
                variants.append(
                    ProblemVariant(
                        problem_id=pid,
                        n_obj=raw.get("n_obj"),
                        n_var=raw.get("n_var"),
                        pop_size=raw.get("pop_size"),
                    )
                )
        seed_raw = data.get("seed_plan") or {}
        seed_plan = SeedPlan.from_dict(seed_raw)
        n_runs = int(data.get("n_runs", 1))
        if not seed_plan.realized:
            seed_plan = plan_seeds(seed_plan.policy, seed_plan.base_seed, n_runs)
        return cls(
            experiment_id=data.get("experiment_id") or f"exp-{uuid.uuid4().hex[:12]}",
            algorithms=tuple(
                AlgorithmConfig.from_dict(a) for a in data.get("algorithms", [])
            ),
            variants=tuple(variants),
            n_runs=n_runs,
            fe_budget=int(data.get("fe_budget", 10000)),
            seed_plan=seed_plan,
            max_workers=int(data.get("max_workers", 1)),
            metrics=tuple(MetricSpec.from_dict(m) for m in data.get("metrics", [])),
        )


def _group_variants(variants: Sequence[ProblemVariant]) -> list[dict]:
    grouped: dict[str, list[dict]] = {}
    for v in variants:
        grouped.setdefault(v.problem_id, []).append(
            {"n_obj": v.n_obj, "n_var": v.n_var, "pop_size": v.pop_size}
        )
    return [{"problem_id": pid, "variants": vs} for pid, vs in grouped.items()]


@dataclass(frozen=True)
class RunJob:
    index: int
    algorithm: AlgorithmConfig
    variant: ProblemVariant
    run_index: int
    seed: int


@dataclass
class ExperimentResult:
    experiment_id: str
    payloads: list[RunPayload] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    payload_paths: list[Path] = field(default_factory=list)
    manifest_path: Path | None = None


def enumerate_jobs(plan: ExperimentPlan) -> list[RunJob]:
    jobs = []
    index = 0
    for algorithm in plan.algorithms:
        for variant in plan.variants:
            for run_index in range(plan.n_runs):
                jobs.append(
                    RunJob(
                        index=index,
                        algorithm=algorithm,
                        variant=variant,
                        run_index=run_index,
                        seed=plan.seed_plan.realized[run_index],
                    )
                )
                index += 1
    return jobs


def _job_config(job: RunJob) -> AlgorithmConfig:
    if job.variant.pop_size is None:
        return job.algorithm
    import dataclasses

    return dataclasses.replace(job.algorithm, pop_size=job.variant.pop_size)


def run_experiment(
    plan: ExperimentPlan,
    event_sink: EventSink | None = None,
    store_dir: str | Path | None = None,
    problem_resolver: ProblemResolver | None = None,
) -> ExperimentResult:
    """Execute every run of the plan under bounded parallelism.

    Payloads (and a manifest listing them) are persisted when store_dir is
    given. A failed run becomes a failure record; the rest of the campaign
    proceeds.
    """
    resolver = problem_resolver or default_problem_resolver
    plan.validate(resolver)
    jobs = enumerate_jobs(plan)
    result = ExperimentResult(experiment_id=plan.experiment_id)
    store = Path(store_dir) if store_dir is not None else None

    def execute(job: RunJob):
        problem = resolver(job.variant.problem_id, job.variant.n_obj, job.variant.n_var)
        run_id = f"{plan.experiment_id}-{job.index:04d}"
        payload = run_single(
            problem,
            _job_config(job),
            job.seed,
            plan.fe_budget,
            metrics=plan.metrics,
            event_sink=event_sink,
            run_id=run_id,
        )
        payload.problem["overrides"] = {
            k: v
            for k, v in (
                ("n_obj", job.variant.n_obj),
                ("n_var", job.variant.n_var),
                ("pop_size", job.variant.pop_size),
            )
            if v is not None
        }
        return payload

    # any per-run error (failed evaluator, bad cell configuration) becomes a
    # failure record; a campaign is never aborted by one cell
    outcomes: list[tuple[RunJob, RunPayload | None, str]] = []
    if plan.max_workers == 1:
        for job in jobs:
            try:
                outcomes.append((job, execute(job), ""))
            except Exception as exc:
                outcomes.append((job, None, str(exc)))
    else:
        with ThreadPoolExecutor(max_workers=plan.max_workers) as pool:
            futures = [(job, pool.submit(execute, job)) for job in jobs]
            for job, future in futures:
                try:
                    outcomes.append((job, future.result(), ""))
                except Exception as exc:
                    outcomes.append((job, None, str(exc)))

    manifest_runs = []
    for job, payload, error in outcomes:
        entry = {
            "index": job.index,
            "algorithm_id": job.algorithm.algorithm_id,
            "problem_id": job.variant.problem_id,
            "variant": job.variant.to_dict(),
            "run_index": job.run_index,
            "seed": job.seed,
        }
        if payload is None:
            entry["status"] = "failed"
            entry["error"] = error
            result.failures.append(entry)
        else:
            entry["status"] = "ok"
            entry["run_id"] = payload.run_id
            result.payloads.append(payload)
            if store is not None:
                path = store / f"{payload.run_id}{PAYLOAD_SUFFIX}"
                persist(payload, path)
                entry["path"] = path.name
                result.payload_paths.append(path)
        manifest_runs.append(entry)

    if store is not None:
        manifest = {
            "schema_version": 1,
            "experiment_id": plan.experiment_id,
            "plan": plan.to_dict(),
            "runs": manifest_runs,
        }
        result.manifest_path = write_canonical(
            manifest, store / f"{plan.experiment_id}{MANIFEST_SUFFIX}"
        )
    return result


def load_manifest(path: str | Path) -> dict:
    data = read_canonical(path)
    if not isinstance(data, dict) or "runs" not in data:
        raise ConfigurationError(f"not an experiment manifest: {path}")
    return data


def recompute_metrics(
    payloads: Sequence[RunPayload],
    metrics: Sequence[MetricSpec],
    problem_resolver: ProblemResolver | None = None,
) -> list[dict]:
    """Evaluate metrics on stored final fronts without re-optimization.

    Returns one record per payload with a value per metric; unresolvable
    reference fronts yield NaN (flagged), and per-payload configuration
    errors (e.g. hv without a reference point) are recorded without
    stopping the rest.
    """
    resolver = problem_resolver or default_problem_resolver
    records = []
    for payload in payloads:
        front = payload.nondominated_front()
        values: dict[str, float] = {}
        flags: dict[str, str] = {}
        context: dict = {"reference_front": None, "ref_point": None}
        try:
            problem = resolver(
                payload.problem["id"],
                payload.problem.get("n_obj"),
                payload.problem.get("n_var"),
            )
            context["reference_front"] = problem.reference_front
        except (UnsupportedProblemError, ConfigurationError):
            flags["reference_front"] = "unresolvable_problem"
        for spec in metrics:
            try:
                metric = make_metric(spec, context)
            except ConfigurationError as exc:
                flags[spec.metric_id] = f"configuration_error: {exc}"
                values[spec.metric_id] = float("nan")
                continue
            value = metric(front)
            values[spec.metric_id] = value
            if value != value and spec.requires_reference_front:  # NaN
                flags.setdefault(spec.metric_id, "missing_reference_front")
        records.append(
            {
                "run_id": payload.run_id,
                "problem_id": payload.problem["id"],
                "n_obj": payload.problem.get("n_obj"),
                "n_var": payload.problem.get("n_var"),
                "algorithm_id": payload.algorithm["id"],
                "seed": payload.seed,
                "values": values,
                "flags": flags,
            }
        )
    return records
