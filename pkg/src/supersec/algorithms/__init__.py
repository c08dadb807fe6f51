"""Online selection algorithms, addressable by stable string ids."""
from __future__ import annotations

from typing import Any

import numpy as np

from ..errors import ConfigError
from ..matroid import Matroid, Uniform
from ..stream import ArrivalStream
from ..valuation import Valuation
from .aided_general import run_aided_general
from .aided_uniform import run_aided_uniform_2, run_aided_uniform_alpha
from .common import AidedInput, RunResult, TraceStep, max_marginal
from .estimation import estimation_phase, run_estimation_main, run_offline_w
from .small_rank import is_well_behaved, run_small_rank

ALGORITHM_IDS = (
    "alg1-small-rank",
    "alg2-aided-general",
    "alg3-main",
    "alg4-offline-w",
    "alg5-aided-card2",
    "alg6-aided-card-alpha",
)

_ALLOWED_PARAMS = {
    "alg1-small-rank": {"force_p", "dummy_slots"},
    "alg2-aided-general": {"opt_estimate", "alpha", "force_p"},
    "alg3-main": {"aided_alg", "force_branch", "force_p", "force_x", "d", "estimate_only"},
    "alg4-offline-w": {"force_accept", "d"},
    "alg5-aided-card2": {"opt_estimate", "alpha"},
    "alg6-aided-card-alpha": {"opt_estimate", "alpha", "force_p"},
}


def _uniform_k(M: Matroid, alg_id: str) -> int:
    if not isinstance(M, Uniform):
        raise ConfigError(f"{alg_id} needs a uniform matroid, got {M!r}")
    return M.k


def run_algorithm(
    alg_id: str,
    f: Valuation,
    M: Matroid,
    stream: ArrivalStream,
    rng: np.random.Generator,
    params: dict[str, Any] | None = None,
) -> RunResult:
    """Dispatch to the algorithm named ``alg_id`` with keyword ``params``.

    Aided algorithms need ``opt_estimate`` in ``params``. The offline
    estimation loop ignores ``stream``.
    """
    params = dict(params or {})
    if alg_id not in _ALLOWED_PARAMS:
        raise ConfigError(f"unknown algorithm id {alg_id!r}; expected one of {ALGORITHM_IDS}")
    unknown = set(params) - _ALLOWED_PARAMS[alg_id]
    if unknown:
        raise ConfigError(f"unknown parameters for {alg_id}: {sorted(unknown)}")

    def aided() -> AidedInput:
        if "opt_estimate" not in params:
            raise ConfigError(f"{alg_id} needs an opt_estimate parameter")
        try:
            return AidedInput(float(params.pop("opt_estimate")), float(params.pop("alpha", 1.0)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    if alg_id == "alg1-small-rank":
        return run_small_rank(f, M, stream, rng, **params)
    if alg_id == "alg2-aided-general":
        a = aided()
        return run_aided_general(f, M, stream, rng, a, **params)
    if alg_id == "alg3-main":
        return run_estimation_main(f, M, stream, rng, **params)
    if alg_id == "alg4-offline-w":
        return run_offline_w(f, M, rng, **params)
    if alg_id == "alg5-aided-card2":
        a = aided()
        return run_aided_uniform_2(f, _uniform_k(M, alg_id), stream, a)
    a = aided()
    return run_aided_uniform_alpha(f, _uniform_k(M, alg_id), stream, rng, a, **params)


__all__ = [
    "ALGORITHM_IDS",
    "AidedInput",
    "RunResult",
    "TraceStep",
    "estimation_phase",
    "is_well_behaved",
    "max_marginal",
    "run_aided_general",
    "run_aided_uniform_2",
    "run_aided_uniform_alpha",
    "run_algorithm",
    "run_estimation_main",
    "run_offline_w",
    "run_small_rank",
]
