"""Problem source documents: the DSL's JSON exchange format."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ContractViolation

PROVENANCES = ("user", "llm")


@dataclass(frozen=True)
class ProblemSource:
    """A problem definition as authored text, before verification."""

    name: str
    n_var: int
    n_obj: int
    objectives: tuple[str, ...]
    n_ieq: int = 0
    n_eq: int = 0
    constraints_ieq: tuple[str, ...] = ()
    constraints_eq: tuple[str, ...] = ()
    lower: float | tuple[float, ...] = 0.0
    upper: float | tuple[float, ...] = 1.0
    provenance: str = "user"
    raw_prompt: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "constraints_ieq", tuple(self.constraints_ieq))
        object.__setattr__(self, "constraints_eq", tuple(self.constraints_eq))
        if isinstance(self.lower, (list, tuple)):
            object.__setattr__(self, "lower", tuple(float(v) for v in self.lower))
        if isinstance(self.upper, (list, tuple)):
            object.__setattr__(self, "upper", tuple(float(v) for v in self.upper))
        if self.provenance not in PROVENANCES:
            raise ContractViolation(f"unknown provenance '{self.provenance}'")

    def bound_vectors(self) -> tuple[list[float], list[float]]:
        """Bounds broadcast to n_var-length lists."""

        def expand(bound) -> list[float]:
            if isinstance(bound, tuple):
                return [float(v) for v in bound]
            return [float(bound)] * self.n_var

        return expand(self.lower), expand(self.upper)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_var": self.n_var,
            "n_obj": self.n_obj,
            "n_ieq": self.n_ieq,
            "n_eq": self.n_eq,
            "lower": list(self.lower) if isinstance(self.lower, tuple) else self.lower,
            "upper": list(self.upper) if isinstance(self.upper, tuple) else self.upper,
            "objectives": list(self.objectives),
            "constraints_ieq": list(self.constraints_ieq),
            "constraints_eq": list(self.constraints_eq),
            "provenance": self.provenance,
            "raw_prompt": self.raw_prompt,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemSource":
        missing = [k for k in ("name", "n_var", "n_obj", "objectives") if k not in data]
        if missing:
            raise ContractViolation(f"source document missing fields: {missing}")
        return cls(
            name=str(data["name"]),
            n_var=int(data["n_var"]),
            n_obj=int(data["n_obj"]),
            n_ieq=int(data.get("n_ieq", 0)),
            n_eq=int(data.get("n_eq", 0)),
            lower=data.get("lower", 0.0),
            upper=data.get("upper", 1.0),
            objectives=tuple(str(s) for s in data["objectives"]),
            constraints_ieq=tuple(str(s) for s in data.get("constraints_ieq", ())),
            constraints_eq=tuple(str(s) for s in data.get("constraints_eq", ())),
            provenance=data.get("provenance", "user"),
            raw_prompt=data.get("raw_prompt"),
        )
