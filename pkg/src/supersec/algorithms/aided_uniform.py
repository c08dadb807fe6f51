"""Threshold rules for uniform matroids (cardinality constraints) given an optimum estimate."""
from __future__ import annotations

import numpy as np

from .._bits import ceil_log2, iter_bits
from ..errors import ConfigError
from ..stream import ArrivalStream, OnlineOracles
from ..valuation import Valuation
from .common import AidedInput, RunResult, TraceStep, threshold_pass

ALG_ID_2 = "alg5-aided-card2"
ALG_ID_ALPHA = "alg6-aided-card-alpha"


def run_aided_uniform_2(f: Valuation, k: int, stream: ArrivalStream, aided: AidedInput) -> RunResult:
    """Deterministic rule with threshold ``opt / (2k)`` and at most ``k`` selected elements.

    ``aided.opt_estimate`` should be a 2-estimation of the optimum for the
    cardinality bound to apply; ``aided.alpha`` is recorded but not used.
    """
    if k < 0:
        raise ConfigError(f"cardinality bound must be non-negative, got {k}")
    oracles = OnlineOracles(f, stream)
    if k == 0:
        trace = [TraceStep(u, "reject") for u in stream]
        return RunResult(ALG_ID_2, frozenset(), f.value_mask(0), trace, {"tau": None, "k": 0})
    tau = aided.opt_estimate / (2 * k)
    S, trace = threshold_pass(oracles, stream, tau, lambda mask: mask.bit_count() <= k)
    draws = {"tau": tau, "k": k, "opt_estimate": aided.opt_estimate}
    return RunResult(ALG_ID_2, frozenset(iter_bits(S)), f.value_mask(S), trace, draws)


def run_aided_uniform_alpha(
    f: Valuation,
    k: int,
    stream: ArrivalStream,
    rng: np.random.Generator,
    aided: AidedInput,
    *,
    force_p: int | None = None,
) -> RunResult:
    """Guess a power-of-two scaling of an ``alpha``-estimate and run the 2-estimate rule."""
    hi = ceil_log2(aided.alpha)
    if force_p is None:
        p = int(rng.integers(0, hi + 1))
    else:
        if not 0 <= force_p <= hi:
            raise ConfigError(f"forced p={force_p} outside 0..{hi}")
        p = int(force_p)
    inner = run_aided_uniform_2(f, k, stream, AidedInput(2.0**p * aided.opt_estimate, 2.0))
    draws = dict(inner.draws, p=p, alpha=aided.alpha, opt_alpha=aided.opt_estimate)
    if force_p is not None:
        draws["forced_p"] = True
    return RunResult(ALG_ID_ALPHA, inner.accepted, inner.value, inner.trace, draws)
