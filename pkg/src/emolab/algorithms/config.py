"""Algorithm configuration and catalog.

Defaults follow the conventional operator settings for both engines:
NSGA-II with N=100, SBX (prob 0.9, eta 15) and polynomial mutation
(prob 1/D, eta 20); MOEA/D with T=20, n_r=2, delta=0.9 and Tchebycheff
scalarization over a simplex-lattice weight set.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from ..core import ProblemInstance, lattice_size
from ..errors import ConfigurationError

ALGORITHM_IDS = ("nsga2", "moead")


@dataclass(frozen=True)
class AlgorithmConfig:
    algorithm_id: str = "nsga2"
    pop_size: int = 100
    crossover_prob: float = 0.9
    crossover_eta: float = 15.0
    mutation_prob: float | None = None  # None resolves to 1/n_var
    mutation_eta: float = 20.0
    moead_neighborhood: int = 20
    moead_max_replacements: int = 2
    moead_delta: float = 0.9

    def validate(self) -> None:
        if self.algorithm_id not in ALGORITHM_IDS:
            raise ConfigurationError(f"unknown algorithm '{self.algorithm_id}'")
        if self.algorithm_id == "nsga2":
            if self.pop_size < 4 or self.pop_size % 2:
                raise ConfigurationError("nsga2 pop_size must be even and >= 4")
        elif self.pop_size < 2:
            raise ConfigurationError("moead pop_size must be >= 2")
        for name in ("crossover_prob", "moead_delta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"{name} must be in [0, 1]")
        if self.mutation_prob is not None and not 0.0 <= self.mutation_prob <= 1.0:
            raise ConfigurationError("mutation_prob must be in [0, 1]")
        if self.crossover_eta <= 0 or self.mutation_eta <= 0:
            raise ConfigurationError("distribution indices must be positive")
        if self.moead_neighborhood < 2:
            raise ConfigurationError("moead_neighborhood must be >= 2")
        if self.moead_max_replacements < 1:
            raise ConfigurationError("moead_max_replacements must be >= 1")

    def resolve(self, problem: ProblemInstance) -> "AlgorithmConfig":
        """Fill in problem-dependent values; idempotent.

        Sets mutation_prob to 1/D when unset. For MOEA/D, pop_size becomes
        the smallest simplex-lattice size >= the requested value and the
        neighborhood is capped at the realized population size.
        """
        self.validate()
        updates: dict = {}
        if self.mutation_prob is None:
            updates["mutation_prob"] = 1.0 / problem.n_var
        if self.algorithm_id == "moead":
            w = moead_lattice_size(problem.n_obj, self.pop_size)
            updates["pop_size"] = w
            updates["moead_neighborhood"] = min(self.moead_neighborhood, w)
        resolved = dataclasses.replace(self, **updates) if updates else self
        resolved.validate()
        return resolved

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AlgorithmConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)


def moead_partitions(n_obj: int, requested_pop: int) -> int:
    """Smallest lattice resolution with at least requested_pop vectors."""
    p = 1
    while lattice_size(n_obj, p) < requested_pop:
        p += 1
    return p


def moead_lattice_size(n_obj: int, requested_pop: int) -> int:
    return lattice_size(n_obj, moead_partitions(n_obj, requested_pop))


def default_config(algorithm_id: str) -> AlgorithmConfig:
    cfg = AlgorithmConfig(algorithm_id=algorithm_id)
    cfg.validate()
    return cfg


def algorithm_listing() -> list[dict]:
    """Catalog rows for trait filtering: id, name, tags, default config."""
    return [
        {
            "id": "nsga2",
            "name": "NSGA-II",
            "tags": ["pareto-dominance", "elitist", "real"],
            "default_config": default_config("nsga2").to_dict(),
        },
        {
            "id": "moead",
            "name": "MOEA/D",
            "tags": ["decomposition", "scalarizing", "real"],
            "default_config": default_config("moead").to_dict(),
        },
    ]
