"""Monte Carlo simulation of the adaptive accept/reject process behind the estimator's concentration bound.

Each round a value ``X_i`` in ``(0, B]`` arrives and is accepted with
probability ``p``. ``X_i`` may depend on which earlier rounds were accepted.
Rounds continue until the values seen so far sum to at least ``L``. The
bound under test is ``Pr[sum of accepted < pL/2 - t] <= pB(L + 2B) / (4 t^2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import ConfigError, ContractFault

# (round index from 0, previous round accepted per trial or None in round 0, B, trials) -> values
Schedule = Callable[[int, "np.ndarray | None", float, int], np.ndarray]


def const_schedule(i: int, prev: np.ndarray | None, B: float, size: int) -> np.ndarray:
    return np.full(size, B)


def halving_schedule(i: int, prev: np.ndarray | None, B: float, size: int) -> np.ndarray:
    return np.full(size, B / 2 ** (i % 4))


def adaptive_schedule(i: int, prev: np.ndarray | None, B: float, size: int) -> np.ndarray:
    """Full ``B`` after a rejection, ``0.35 B`` after an acceptance: accepted mass is kept small."""
    if prev is None:
        return np.full(size, B)
    return np.where(prev, 0.35 * B, B)


SCHEDULES = {"const": const_schedule, "halving": halving_schedule, "adaptive": adaptive_schedule}
_MIN_FRACTION = {"const": 1.0, "halving": 1 / 8, "adaptive": 0.35}


def tail_bound(p: float, B: float, L: float, t: float) -> float:
    return p * B * (L + 2 * B) / (4 * t * t)


@dataclass
class ProcessConfig:
    p: float
    B: float
    L: float
    schedule: str = "const"
    max_rounds: int | None = None

    def validate(self) -> None:
        if not 0 <= self.p <= 1:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        if not (self.B > 0 and math.isfinite(self.B)):
            raise ConfigError(f"B must be a positive real, got {self.B}")
        if not (self.L >= 0 and math.isfinite(self.L)):
            raise ConfigError(f"L must be a non-negative real, got {self.L}")
        if self.schedule not in SCHEDULES:
            raise ConfigError(f"unknown schedule {self.schedule!r}; expected one of {sorted(SCHEDULES)}")

    def round_cap(self) -> int:
        """Rounds after which the schedule is guaranteed to have reached ``L``."""
        if self.max_rounds is not None:
            return int(self.max_rounds)
        return max(1, math.ceil(self.L / (self.B * _MIN_FRACTION[self.schedule])) + 1)


@dataclass
class ProcessResult:
    config: ProcessConfig
    trials: int
    accepted_sums: np.ndarray
    rounds: np.ndarray
    tail: list[dict[str, float]] = field(default_factory=list)


def default_t_grid(cfg: ProcessConfig, points: int = 5) -> list[float]:
    """Evenly spaced ``t`` strictly inside ``(0, pL/2]``, or ``1..points`` when that range is empty."""
    top = cfg.p * cfg.L / 2
    if top <= 0:
        return [float(j) for j in range(1, points + 1)]
    return [top * j / points for j in range(1, points + 1)]


def simulate_process(
    cfg: ProcessConfig,
    rng: np.random.Generator,
    trials: int,
    t_grid: list[float] | None = None,
    schedule: Schedule | None = None,
) -> ProcessResult:
    """Simulate ``trials`` independent runs at once and tabulate the lower tail of the accepted sum.

    ``schedule`` overrides the named one (used to exercise the contract checks).
    """
    cfg.validate()
    if trials < 1:
        raise ConfigError(f"trials must be at least 1, got {trials}")
    rule = schedule or SCHEDULES[cfg.schedule]
    cap = cfg.round_cap()
    seen = np.zeros(trials)
    acc_sum = np.zeros(trials)
    rounds = np.zeros(trials, dtype=np.int64)
    active = np.ones(trials, dtype=bool)
    prev: np.ndarray | None = None
    i = 0
    while active.any():
        if i >= cap:
            raise ContractFault(f"schedule did not reach L={cfg.L} within {cap} rounds")
        X = np.asarray(rule(i, prev, cfg.B, trials), dtype=np.float64)
        if X.shape != (trials,):
            raise ContractFault(f"schedule returned shape {X.shape}, expected ({trials},)")
        bad = active & ~((X > 0) & (X <= cfg.B))
        if bad.any():
            raise ContractFault(f"round {i}: value {X[bad][0]} outside (0, {cfg.B}]")
        accept = rng.random(trials) < cfg.p
        acc_sum += np.where(active & accept, X, 0.0)
        seen += np.where(active, X, 0.0)
        rounds += active
        prev = accept
        active &= seen < cfg.L
        i += 1

    result = ProcessResult(cfg, trials, acc_sum, rounds)
    level = cfg.p * cfg.L / 2
    for t in t_grid if t_grid is not None else default_t_grid(cfg):
        freq = float(np.mean(acc_sum < level - t))
        result.tail.append(
            {
                "t": float(t),
                "frequency": freq,
                "std_error": math.sqrt(freq * (1 - freq) / trials),
                "bound": tail_bound(cfg.p, cfg.B, cfg.L, t),
            }
        )
    return result
