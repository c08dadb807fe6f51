"""Single random threshold rule for general matroids, given an estimate of the optimum."""
from __future__ import annotations

import numpy as np

from .._bits import ceil_log2, iter_bits
from ..errors import ConfigError
from ..matroid import Matroid
from ..stream import ArrivalStream, OnlineOracles
from ..valuation import Valuation
from .common import AidedInput, RunResult, threshold_pass

ALG_ID = "alg2-aided-general"


def p_range(k: int, alpha: float) -> tuple[int, int]:
    """Inclusive range of the threshold exponent for rank ``k`` and estimate quality ``alpha``."""
    return -ceil_log2(max(k, 1)) - 3, ceil_log2(alpha)


def run_aided_general(
    f: Valuation,
    M: Matroid,
    stream: ArrivalStream,
    rng: np.random.Generator,
    aided: AidedInput,
    *,
    force_p: int | None = None,
) -> RunResult:
    """Accept bundles whose marginal over the current selection clears ``2^p * opt / 2``.

    A bundle is an arriving element plus unrevealed members of its dependency
    set; they are committed at once and count as selected for every later check.
    """
    oracles = OnlineOracles(f, stream)
    lo, hi = p_range(M.rank(), aided.alpha)
    if force_p is None:
        p = int(rng.integers(lo, hi + 1))
    else:
        if not lo <= force_p <= hi:
            raise ConfigError(f"forced p={force_p} outside {lo}..{hi}")
        p = int(force_p)
    tau = 2.0**p * aided.opt_estimate / 2
    S, trace = threshold_pass(oracles, stream, tau, M.indep_mask)
    draws = {"p": p, "tau": tau, "opt_estimate": aided.opt_estimate, "alpha": aided.alpha}
    if force_p is not None:
        draws["forced_p"] = True
    return RunResult(ALG_ID, frozenset(iter_bits(S)), f.value_mask(S), trace, draws)
