"""Seed plans: one recorded seed per run index, fixed at plan time."""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field

from ..errors import ConfigurationError

SEED_POLICIES = ("random", "fixed", "sequence")


@dataclass(frozen=True)
class SeedPlan:
    policy: str
    base_seed: int | None = None
    realized: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "realized", tuple(int(s) for s in self.realized))
        if self.policy not in SEED_POLICIES:
            raise ConfigurationError(f"unknown seed policy '{self.policy}'")

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "base_seed": self.base_seed,
            "realized": list(self.realized),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SeedPlan":
        return cls(
            policy=data["policy"],
            base_seed=data.get("base_seed"),
            realized=tuple(data.get("realized") or ()),
        )


def plan_seeds(policy: str, base_seed: int | None, n_runs: int) -> SeedPlan:
    """Realize one seed per run index according to the policy.

    fixed: every run uses base_seed. sequence: run i uses base_seed + i.
    random: seeds are drawn from entropy once, here, and recorded; replays
    rebuild runs from the recorded list, never from fresh entropy.
    """
    if n_runs < 1:
        raise ConfigurationError("n_runs must be positive")
    if policy == "fixed":
        if base_seed is None:
            raise ConfigurationError("fixed seed plan requires base_seed")
        realized = tuple(int(base_seed) for _ in range(n_runs))
    elif policy == "sequence":
        if base_seed is None:
            raise ConfigurationError("sequence seed plan requires base_seed")
        realized = tuple(int(base_seed) + i for i in range(n_runs))
    elif policy == "random":
        realized = tuple(secrets.randbits(64) for _ in range(n_runs))
    else:
        raise ConfigurationError(f"unknown seed policy '{policy}'")
    return SeedPlan(policy=policy, base_seed=base_seed, realized=realized)
