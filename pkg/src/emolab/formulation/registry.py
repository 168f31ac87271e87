"""Hot-reloadable problem registry with immutable versioning.

Registering a source under an existing name creates the next version; a
versioned id ("name@vK") always resolves to the instance that was admitted
at registration time, so persisted runs stay replayable. Reads are
lock-free snapshots; writes are serialized.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ..core import ProblemInstance, make_problem
from ..core.catalog import builtin_ids, builtin_listing
from ..errors import ConfigurationError, RegistrationError, UnsupportedProblemError
from .compiler import compile_source
from .source import ProblemSource
from .verify import StageResult, VerificationReport


@dataclass(frozen=True)
class RegisteredProblem:
    problem_id: str  # name@vK
    version: int
    source: ProblemSource
    instance: ProblemInstance


class ProblemRegistry:
    """Built-in benchmarks plus verified user/LLM problems."""

    def __init__(self):
        self._lock = threading.Lock()
        self._versions: dict[str, list[RegisteredProblem]] = {}

    def register(self, source: ProblemSource, report: VerificationReport) -> str:
        """Admit a verified source; returns the versioned problem id."""
        if not report.accepted:
            failed = [s.stage for s in report.stages if not s.passed]
            raise RegistrationError(
                f"verification not accepted (failed stages: {failed or 'none run'})"
            )
        name = source.name.strip()
        if name in builtin_ids():
            raise RegistrationError(f"'{name}' is a built-in problem id")
        with self._lock:
            versions = self._versions.setdefault(name, [])
            version = len(versions) + 1
            problem_id = f"{name}@v{version}"
            instance = compile_source(source, problem_id=problem_id)
            versions.append(
                RegisteredProblem(
                    problem_id=problem_id,
                    version=version,
                    source=source,
                    instance=instance,
                )
            )
        report.stages.append(
            StageResult("register", True, [f"registered as {problem_id}"])
        )
        return problem_id

    def resolve(
        self, problem_id: str, n_obj: int | None = None, n_var: int | None = None
    ) -> ProblemInstance:
        """Look up a problem: built-ins first, then registered versions.

        A bare registered name resolves to its latest version. Dimension
        overrides apply to built-ins only; registered problems have fixed
        dimensions.
        """
        try:
            return make_problem(problem_id, n_obj=n_obj, n_var=n_var)
        except UnsupportedProblemError:
            pass
        entry = self._find(problem_id)
        if entry is None:
            raise UnsupportedProblemError(f"unknown problem '{problem_id}'")
        if (n_obj is not None and n_obj != entry.instance.n_obj) or (
            n_var is not None and n_var != entry.instance.n_var
        ):
            raise ConfigurationError(
                f"registered problem '{problem_id}' has fixed dimensions "
                f"M={entry.instance.n_obj}, D={entry.instance.n_var}"
            )
        return entry.instance

    def _find(self, problem_id: str) -> RegisteredProblem | None:
        name, _, version = problem_id.partition("@v")
        versions = self._versions.get(name)
        if not versions:
            return None
        if not version:
            return versions[-1]
        try:
            return versions[int(version) - 1]
        except (ValueError, IndexError):
            return None

    def listing(self) -> list[dict]:
        """Catalog rows: built-ins followed by registered problems."""
        rows = builtin_listing()
        with self._lock:
            snapshot = {name: list(v) for name, v in self._versions.items()}
        for name in sorted(snapshot):
            latest = snapshot[name][-1]
            rows.append(
                {
                    "id": latest.problem_id,
                    "name": name,
                    "n_obj": latest.instance.n_obj,
                    "n_var": latest.instance.n_var,
                    "scalable_obj": False,
                    "tags": sorted(latest.instance.tags),
                    "has_closed_front": False,
                    "versions": [v.problem_id for v in snapshot[name]],
                }
            )
        return rows


def register(
    source: ProblemSource, report: VerificationReport, registry: ProblemRegistry
) -> str:
    return registry.register(source, report)
