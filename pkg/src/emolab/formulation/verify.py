"""The staged verification chain: parse -> static check -> trial -> register.

Stages run in order and the first failure stops the chain; a report is
accepted only when every executed stage passed. The register stage is
appended by the registry when a source is actually admitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import static_check
from .compiler import compile_source
from .parser import ParseError, parse_expression
from .source import ProblemSource
from .trial import TRIAL_SEED, trial_evaluate

STAGES = ("parse", "static_check", "trial_eval", "register")


@dataclass
class StageResult:
    stage: str
    passed: bool
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "passed": self.passed,
            "diagnostics": list(self.diagnostics),
        }


@dataclass
class VerificationReport:
    stages: list[StageResult] = field(default_factory=list)
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return bool(self.stages) and all(s.passed for s in self.stages)

    def stage(self, name: str) -> StageResult | None:
        for s in self.stages:
            if s.stage == name:
                return s
        return None

    def to_dict(self) -> dict:
        return {
            "stages": [s.to_dict() for s in self.stages],
            "accepted": self.accepted,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            stages=[
                StageResult(s["stage"], bool(s["passed"]), list(s.get("diagnostics", [])))
                for s in data.get("stages", [])
            ],
            meta=dict(data.get("meta", {})),
        )


def verify(source: ProblemSource, n_trial_samples: int = 64) -> VerificationReport:
    """Run parse, static check and trial evaluation; stop at first failure."""
    report = VerificationReport()

    parse_diags: list[str] = []
    for label, exprs in (
        ("objective", source.objectives),
        ("ieq constraint", source.constraints_ieq),
        ("eq constraint", source.constraints_eq),
    ):
        for k, text in enumerate(exprs, start=1):
            try:
                parse_expression(text)
            except ParseError as exc:
                parse_diags.append(f"{label} {k}: {exc}")
    report.stages.append(StageResult("parse", not parse_diags, parse_diags))
    if parse_diags:
        return report

    static_diags = static_check(source)
    report.stages.append(StageResult("static_check", not static_diags, static_diags))
    if static_diags:
        return report

    try:
        instance = compile_source(source)
        trial_diags = trial_evaluate(instance, n_samples=n_trial_samples)
    except Exception as exc:
        trial_diags = [f"compilation failed: {exc}"]
    report.stages.append(StageResult("trial_eval", not trial_diags, trial_diags))
    report.meta["trial_seed"] = str(TRIAL_SEED)
    report.meta["trial_samples"] = str(n_trial_samples)
    return report
