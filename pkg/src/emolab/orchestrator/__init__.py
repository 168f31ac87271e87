from .experiment import (
    ExperimentPlan,
    ExperimentResult,
    ProblemVariant,
    RunJob,
    default_problem_resolver,
    enumerate_jobs,
    load_manifest,
    recompute_metrics,
    run_experiment,
)
from .payload import (
    DECISION_SUFFIX,
    MANIFEST_SUFFIX,
    PAYLOAD_SUFFIX,
    SCHEMA_VERSION,
    ProgressEvent,
    RunPayload,
    iso_now,
    load,
    persist,
)
from .runner import BACKEND_LABEL, bind_metrics, make_rng, run_single
from .seeds import SEED_POLICIES, SeedPlan, plan_seeds
from .store import as_float, canonical_dumps, canonical_loads, read_canonical, write_canonical

__all__ = [
    "BACKEND_LABEL",
    "DECISION_SUFFIX",
    "ExperimentPlan",
    "ExperimentResult",
    "MANIFEST_SUFFIX",
    "PAYLOAD_SUFFIX",
    "ProblemVariant",
    "ProgressEvent",
    "RunJob",
    "RunPayload",
    "SCHEMA_VERSION",
    "SEED_POLICIES",
    "SeedPlan",
    "as_float",
    "bind_metrics",
    "canonical_dumps",
    "canonical_loads",
    "default_problem_resolver",
    "enumerate_jobs",
    "iso_now",
    "load",
    "load_manifest",
    "make_rng",
    "persist",
    "plan_seeds",
    "read_canonical",
    "recompute_metrics",
    "run_experiment",
    "run_single",
    "write_canonical",
]
