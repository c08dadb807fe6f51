"""Shared result types and bundle-search primitives for the online algorithms."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from scipy.stats import binom

from .._bits import check_element, from_mask, iter_bits, lex_subsets, to_mask
from ..matroid import Matroid
from ..valuation import Valuation

MarginalFn = Callable[[int, int], float]
DepFn = Callable[[int], int]
IndepFn = Callable[[int], bool]


@dataclass
class TraceStep:
    element: int
    decision: str
    committed: tuple[int, ...] | None = None

    def as_list(self) -> list:
        return [self.element, self.decision, None if self.committed is None else list(self.committed)]


@dataclass
class RunResult:
    """Outcome of one algorithm run.

    ``draws`` records every random choice (and every forced hook) so a run can
    be replayed or audited from the report alone.
    """

    alg_id: str
    accepted: frozenset[int]
    value: float
    trace: list[TraceStep] = field(default_factory=list)
    draws: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class AidedInput:
    """An estimate of the optimum handed to an aided algorithm."""

    opt_estimate: float
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "opt_estimate", float(self.opt_estimate))
        object.__setattr__(self, "alpha", float(self.alpha))
        if self.opt_estimate < 0:
            raise ValueError(f"opt_estimate must be non-negative, got {self.opt_estimate}")
        if self.alpha < 1:
            raise ValueError(f"alpha must be at least 1, got {self.alpha}")

    def is_valid(self, opt_value: float) -> bool:
        """True iff ``opt_value / alpha <= opt_estimate <= opt_value``."""
        return opt_value / self.alpha <= self.opt_estimate <= opt_value


def best_bundle(
    marginal: MarginalFn, indep: IndepFn, u: int, candidates: int, base: int = 0
) -> tuple[float, int] | None:
    """Maximize ``f(u | base | D)`` over ``D <= candidates`` with ``base | D | u`` independent.

    Returns ``(value, D)`` for the lexicographically smallest maximizer, or
    ``None`` when not even ``base + u`` is independent.
    """
    ubit = 1 << u
    best: tuple[float, int] | None = None
    for _, dmask in lex_subsets(tuple(iter_bits(candidates))):
        if not indep(base | dmask | ubit):
            continue
        val = marginal(u, base | dmask)
        if best is None or val > best[0]:
            best = (val, dmask)
    return best


def first_qualifying(
    marginal: MarginalFn, feasible: IndepFn, u: int, candidates: int, base: int, threshold: float
) -> int | None:
    """Lexicographically smallest ``D <= candidates`` with a feasible bundle and ``f(u | base | D) >= threshold``."""
    ubit = 1 << u
    for _, dmask in lex_subsets(tuple(iter_bits(candidates))):
        if feasible(base | dmask | ubit) and marginal(u, base | dmask) >= threshold:
            return dmask
    return None


def max_marginal(
    f: Valuation, M: Matroid, u: int, excluded: Iterable[int] = (), base: Iterable[int] = ()
) -> tuple[float, frozenset[int]]:
    """Best marginal of ``u`` over subsets of its unexcluded dependencies.

    Only ``dep_set(u)`` needs searching: adding any other element never
    raises ``u``'s marginal. Returns ``(-inf, {})`` if ``base + u`` is dependent.
    """
    u = check_element(u, f.n)
    excl = to_mask(excluded, f.n)
    bmask = to_mask(base, f.n)
    cand = f.dep_mask(u) & ~excl & ~bmask
    res = best_bundle(f.marginal_mask, M.indep_mask, u, cand, bmask)
    if res is None:
        return float("-inf"), frozenset()
    return res[0], from_mask(res[1])


def threshold_pass(oracles, stream, tau: float, feasible: IndepFn) -> tuple[int, list[TraceStep]]:
    """Single-threshold selection shared by the aided algorithms.

    For each arrival ``u`` not already committed, look for unrevealed
    dependencies ``D`` with ``f(u | S | D) >= tau`` and ``S | D | u``
    feasible; commit ``D + u`` on success.
    """
    S = 0
    trace: list[TraceStep] = []
    for u in stream:
        ubit = 1 << u
        if S & ubit:
            trace.append(TraceStep(u, "accept-committed"))
            continue
        cand = oracles.dep_mask(u) & ~stream.revealed_mask & ~S
        D = first_qualifying(oracles.marginal_mask, feasible, u, cand, S, tau)
        if D is None:
            trace.append(TraceStep(u, "reject"))
        else:
            S |= D | ubit
            trace.append(TraceStep(u, "accept", tuple(iter_bits(D))))
    return S, trace


def binomial_draw(n: int, p: float, uniform: float) -> int:
    """Inverse-CDF sample of Binomial(n, p) from one uniform in [0, 1)."""
    if n == 0 or p <= 0:
        return 0
    if p >= 1:
        return n
    return max(0, int(binom.ppf(uniform, n, p)))


class GreedyPairs:
    """Repeated greedy choice of an (element, dependency bundle) pair.

    Each :meth:`pop` returns the pair maximizing ``f(u | A | D)`` over live
    ``u`` not in ``A`` and ``D <= dep(u)`` with ``A | D | u`` independent, ties
    broken by smallest ``u`` then lexicographically smallest ``D``.

    Evaluations are cached lazily. When ``A`` grows by elements outside
    ``dep(u)``, ``u``'s best value can only fall (and its feasible bundles only
    shrink), so a stale cached value is an upper bound. Elements whose
    dependencies were just added are re-evaluated eagerly.
    """

    def __init__(self, marginal: MarginalFn, dep: DepFn, indep: IndepFn, candidates: Iterable[int]):
        self.marginal, self.dep, self.indep = marginal, dep, indep
        self.A = 0
        self.version = 0
        self._stamp: dict[int, int] = {}
        self._heap: list = []
        self._live = 0
        self._rdeps: dict[int, list[int]] = {}
        for u in candidates:
            self._live |= 1 << u
            for x in iter_bits(dep(u)):
                self._rdeps.setdefault(x, []).append(u)
            self._push(u)

    def _push(self, u: int) -> None:
        stamp = self._stamp.get(u, -1) + 1
        self._stamp[u] = stamp
        res = best_bundle(self.marginal, self.indep, u, self.dep(u) & ~self.A, self.A)
        if res is None:
            # A + u dependent now, hence forever
            self._live &= ~(1 << u)
            return
        val, dmask = res
        heapq.heappush(self._heap, (-val, u, tuple(iter_bits(dmask)), dmask, stamp, self.version))

    def pop(self) -> tuple[int, int, float] | None:
        """Remove and return the best ``(u, D, value)``, or ``None`` when nothing is feasible."""
        while self._heap:
            negval, u, _, dmask, stamp, version = heapq.heappop(self._heap)
            if stamp != self._stamp[u] or not (self._live >> u) & 1:
                continue
            if version == self.version:
                self._live &= ~(1 << u)
                return u, dmask, -negval
            self._push(u)
        return None

    def accept(self, u: int, dmask: int) -> None:
        """Add ``D + u`` to ``A``."""
        added = (dmask | (1 << u)) & ~self.A
        self.A |= added
        self._live &= ~added
        self.version += 1
        for x in iter_bits(added):
            for v in self._rdeps.get(x, ()):
                if (self._live >> v) & 1:
                    self._push(v)
