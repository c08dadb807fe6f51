"""Exact offline quantities: the optimum, per-element weights of the optimum and their buckets.

These are ground truth for the tests and the competitive-ratio reports, so
they favor plain exhaustive search over cleverness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._bits import ceil_log2, from_mask, to_mask
from .algorithms.common import max_marginal
from .errors import CapacityError, ConfigError
from .matroid import Matroid
from .valuation import Valuation

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class OptResult:
    opt_set: frozenset[int]
    opt_value: float
    all_independent_count: int


def brute_force_opt(f: Valuation, M: Matroid, limit: int = BRUTE_FORCE_LIMIT) -> OptResult:
    """Maximum-value independent set by depth-first enumeration.

    Sets are visited in lexicographic order of their sorted element lists, and
    a dependent set is never extended (every superset is dependent too). The
    first set reaching the maximum wins, which makes the tie-break lexicographic.
    """
    n = f.n
    if n > limit:
        raise CapacityError(f"brute-force optimum over n={n} exceeds limit {limit}")
    best_mask, best_val = 0, float("-inf")
    count = 0
    # preorder DFS with ascending extensions visits sets in lexicographic order
    stack = [(0, f.value_mask(0), 0)]
    while stack:
        mask, val, start = stack.pop()
        count += 1
        if val > best_val:
            best_mask, best_val = mask, val
        for u in range(n - 1, start - 1, -1):
            child = mask | (1 << u)
            if M.indep_mask(child):
                stack.append((child, val + f.marginal_mask(u, mask), u + 1))
    return OptResult(from_mask(best_mask), f.value_mask(best_mask), count)


def opt_weights(
    f: Valuation, M: Matroid, order: Sequence[int], opt: Iterable[int] | None = None
) -> dict[int, float]:
    """``w(u) = f(u | OPT minus everything arrived up to and including u)`` for ``u`` in OPT."""
    n = f.n
    if sorted(order) != list(range(n)):
        raise ConfigError("order must be a permutation of the ground set")
    opt_mask = to_mask(brute_force_opt(f, M).opt_set if opt is None else opt, n)
    weights: dict[int, float] = {}
    revealed = 0
    for u in order:
        revealed |= 1 << u
        if (opt_mask >> u) & 1:
            weights[u] = f.marginal_mask(u, opt_mask & ~revealed)
    return dict(sorted(weights.items()))


def in_bucket(w: float, opt_alpha: float, p: int) -> bool:
    """Closed-interval membership ``2^p * opt/2 <= w <= 2^p * opt``."""
    scale = 2.0**p * opt_alpha
    return scale / 2 <= w <= scale


def bucket(weights: Mapping[int, float], opt_alpha: float, p: int) -> frozenset[int]:
    """Elements whose weight lies in bucket ``p``; defined for any integer ``p``."""
    return frozenset(u for u, w in weights.items() if in_bucket(w, opt_alpha, p))


def opt_buckets(
    weights: Mapping[int, float], opt_alpha: float, k: int, alpha: float = 1.0
) -> dict[int, frozenset[int]]:
    """Buckets for ``p`` from ``-ceil(log2 k)`` to ``ceil(log2 alpha)``; endpoint weights may sit in two."""
    lo, hi = -ceil_log2(max(k, 1)), ceil_log2(alpha)
    return {p: bucket(weights, opt_alpha, p) for p in range(lo, hi + 1)}


def m_star(f: Valuation, M: Matroid) -> tuple[float, int | None, frozenset[int]]:
    """Largest single-element max-marginal over the whole ground set, with its element and bundle.

    Ties go to the smallest element. ``(-inf, None, {})`` if every element is a loop.
    """
    best: tuple[float, int | None, frozenset[int]] = (float("-inf"), None, frozenset())
    for u in range(f.n):
        val, S = max_marginal(f, M, u)
        if val > best[0]:
            best = (val, u, S)
    return best


def sample_subset(S: Iterable[int], p: float, rng: np.random.Generator) -> frozenset[int]:
    """Keep each element of ``S`` independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ConfigError(f"probability must lie in [0, 1], got {p}")
    items = sorted(S)
    keep = rng.random(len(items)) < p
    return frozenset(u for u, k in zip(items, keep) if k)

