"""Estimate the optimum from a random prefix, then hand the rest to an aided rule.

Half the time the small-rank rule runs on a low-rank truncation instead. The
offline coin-flip version of the estimation loop lives here too; it produces
the same distribution of ``W`` and is what the analysis reasons about.
"""
from __future__ import annotations

import numpy as np

from .._bits import iter_bits
from ..errors import ConfigError
from ..matroid import Matroid, Uniform
from ..stream import ArrivalStream, OnlineOracles
from ..valuation import Valuation
from .aided_general import run_aided_general
from .aided_uniform import run_aided_uniform_alpha
from .common import AidedInput, GreedyPairs, RunResult, TraceStep, binomial_draw
from .small_rank import run_small_rank

ALG_ID_MAIN = "alg3-main"
ALG_ID_OFFLINE = "alg4-offline-w"
AIDED_CHOICES = ("alg2", "alg6")


def estimate_alpha(d: int) -> float:
    """Quality of the ``W / 10`` estimate handed to the aided rule."""
    return 80.0 * (d + 2) ** 2


def estimation_phase(oracles, M: Matroid, sample: list[int]) -> tuple[float, int, list[TraceStep]]:
    """Greedy pair loop over the sampled prefix; returns ``(W, A_mask, trace)``.

    Every chosen pair is taken, so this is the offline loop with all coins
    landing on accept, restricted to candidates in ``sample``.
    """
    greedy = GreedyPairs(oracles.marginal_mask, oracles.dep_mask, M.indep_mask, sample)
    W = 0.0
    trace: list[TraceStep] = []
    while (pick := greedy.pop()) is not None:
        u, dmask, val = pick
        W += val
        greedy.accept(u, dmask)
        trace.append(TraceStep(u, "estimate", tuple(iter_bits(dmask))))
    return W, greedy.A, trace


def run_estimation_main(
    f: Valuation,
    M: Matroid,
    stream: ArrivalStream,
    rng: np.random.Generator,
    aided_alg: str = "alg2",
    *,
    d: int | None = None,
    force_branch: str | None = None,
    force_p: int | None = None,
    force_x: int | None = None,
    estimate_only: bool = False,
) -> RunResult:
    """Run the main algorithm; the returned set is whatever the chosen branch selects.

    ``force_branch`` is ``"small-rank"`` or ``"estimate"``; ``force_p`` is
    passed to whichever inner rule runs; ``force_x`` fixes the prefix size.
    ``estimate_only`` stops after computing ``W`` (diagnostics on large
    instances); the result then selects nothing.
    """
    if aided_alg not in AIDED_CHOICES:
        raise ConfigError(f"aided_alg must be one of {AIDED_CHOICES}, got {aided_alg!r}")
    if aided_alg == "alg6" and not isinstance(M, Uniform):
        raise ConfigError("the cardinality aided rule needs a uniform matroid")
    if d is None:
        d = f.supermodular_degree()
    if force_branch is None:
        branch = "small-rank" if rng.random() < 0.5 else "estimate"
    elif force_branch in ("small-rank", "estimate"):
        branch = force_branch
    else:
        raise ConfigError(f"force_branch must be 'small-rank' or 'estimate', got {force_branch!r}")
    draws: dict = {"branch": branch, "d": d}

    if branch == "small-rank":
        k = M.rank()
        inner = run_small_rank(f, M.truncate(min(k, d + 1)), stream, rng, force_p=force_p)
        draws["inner"] = inner.draws
        return RunResult(ALG_ID_MAIN, inner.accepted, inner.value, inner.trace, draws)

    n = f.n
    if force_x is None:
        X = binomial_draw(n, 1.0 / (d + 2), float(rng.random()))
    else:
        if not 0 <= force_x <= n:
            raise ConfigError(f"forced X={force_x} outside 0..{n}")
        X = int(force_x)
    oracles = OnlineOracles(f, stream)
    sample = [stream.next() for _ in range(X)]
    trace = [TraceStep(u, "reject-sample") for u in sample]
    W, A, est_trace = estimation_phase(oracles, M, sample)
    unseen = M.full_mask() & ~stream.revealed_mask
    alpha = estimate_alpha(d)
    aided = AidedInput(W / 10, alpha)
    if estimate_only:
        draws.update(X=X, W=W, opt_estimate=W / 10, alpha=alpha, A=list(iter_bits(A)))
        return RunResult(ALG_ID_MAIN, frozenset(), f.value_mask(0), trace, draws)
    if aided_alg == "alg2":
        inner = run_aided_general(f, M.restrict(unseen), stream, rng, aided, force_p=force_p)
    else:
        inner = run_aided_uniform_alpha(f, M.k, stream, rng, aided, force_p=force_p)
    draws.update(
        X=X,
        W=W,
        opt_estimate=W / 10,
        alpha=alpha,
        A=list(iter_bits(A)),
        unseen=list(iter_bits(unseen)),
        estimation_trace=[s.as_list() for s in est_trace],
        inner=inner.draws,
    )
    return RunResult(ALG_ID_MAIN, inner.accepted, inner.value, trace + inner.trace, draws)


def run_offline_w(
    f: Valuation,
    M: Matroid,
    rng: np.random.Generator,
    *,
    d: int | None = None,
    force_accept: bool | None = None,
) -> RunResult:
    """Offline coin-flip estimation loop.

    ``accepted`` is the final ``A``; ``draws`` holds ``W``, ``L`` (the sum of
    every greedy value, accepted or not) and ``d``. ``force_accept`` replaces
    every coin with the given outcome.
    """
    if d is None:
        d = f.supermodular_degree()
    prob = 1.0 / (d + 2)
    greedy = GreedyPairs(f.marginal_mask, f.dep_mask, M.indep_mask, range(f.n))
    W = L = 0.0
    trace: list[TraceStep] = []
    while (pick := greedy.pop()) is not None:
        u, dmask, val = pick
        L += val
        keep = force_accept if force_accept is not None else bool(rng.random() < prob)
        if keep:
            W += val
            greedy.accept(u, dmask)
            trace.append(TraceStep(u, "accept", tuple(iter_bits(dmask))))
        else:
            trace.append(TraceStep(u, "reject"))
    A = greedy.A
    draws = {"W": W, "L": L, "d": d}
    if force_accept is not None:
        draws["force_accept"] = force_accept
    return RunResult(ALG_ID_OFFLINE, frozenset(iter_bits(A)), f.value_mask(A), trace, draws)
