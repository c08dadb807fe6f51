"""Random-threshold secretary rule for matroids of small rank.

After a learning prefix of random length, the first arriving element that is
the *top* element of everything seen so far is accepted together with the
unrevealed dependency bundle achieving its max-marginal. Max-marginals of
earlier elements are re-evaluated at the current time, so early arrivals do
not get credit for dependencies that have since gone by.

The ground set is padded with zero-value dummy elements so its size is a
multiple of ``2k``; dummies are interleaved uniformly into the arrivals.
"""
from __future__ import annotations

import numpy as np

from .._bits import ceil_log2, iter_bits
from ..errors import ConfigError
from ..matroid import Matroid, Truncated, WithDummies
from ..stream import ArrivalStream, OnlineOracles
from ..valuation import Valuation
from .common import RunResult, TraceStep, best_bundle

ALG_ID = "alg1-small-rank"
NEG_INF = float("-inf")


class _PaddedView:
    """Oracle access to the dummy-extended instance; dummies have no value and no dependencies."""

    def __init__(self, oracles: OnlineOracles, n_real: int):
        self.oracles = oracles
        self.n_real = n_real
        self.real_mask = (1 << n_real) - 1

    def marginal_mask(self, u: int, mask: int) -> float:
        if u >= self.n_real:
            return 0.0
        return self.oracles.marginal_mask(u, mask & self.real_mask)

    def dep_mask(self, u: int) -> int:
        if u >= self.n_real:
            return 0
        return self.oracles.dep_mask(u)


def padded_size(n: int, k: int) -> int:
    """Least multiple of ``2k`` that is at least ``n``."""
    m = 2 * k
    return -(-n // m) * m


def _m_max(view, M: Matroid, u: int, revealed: int) -> tuple[float, int]:
    res = best_bundle(view.marginal_mask, M.indep_mask, u, view.dep_mask(u) & ~revealed, 0)
    if res is None:
        return NEG_INF, 0
    return res


def run_small_rank(
    f: Valuation,
    M: Matroid,
    stream: ArrivalStream,
    rng: np.random.Generator,
    *,
    force_p: int | None = None,
    dummy_slots: list[int] | None = None,
) -> RunResult:
    """Run the small-rank algorithm on the remaining arrivals of ``stream``.

    ``force_p`` fixes the learning-phase exponent and ``dummy_slots`` fixes
    the 0-based arrival positions of the dummies (test hooks).
    """
    oracles = OnlineOracles(f, stream)
    n = f.n
    k = M.rank()
    if k < 1:
        trace = [TraceStep(u, "reject") for u in stream]
        return RunResult(ALG_ID, frozenset(), f.value_mask(0), trace, {"k": 0})

    p_max = ceil_log2(k)
    if force_p is None:
        p = int(rng.integers(0, p_max + 1))
    else:
        if not 0 <= force_p <= p_max:
            raise ConfigError(f"forced p={force_p} outside 0..{p_max}")
        p = int(force_p)

    n_pad = padded_size(n, k)
    extra = n_pad - n
    if dummy_slots is None:
        slots = sorted(rng.choice(n_pad, size=extra, replace=False).tolist()) if extra else []
        dummy_ids = (n + rng.permutation(extra)).tolist() if extra else []
    else:
        slots = sorted(int(s) for s in dummy_slots)
        if len(slots) != extra or len(set(slots)) != extra or any(not 0 <= s < n_pad for s in slots):
            raise ConfigError(f"dummy_slots must list {extra} distinct positions in 0..{n_pad - 1}")
        dummy_ids = list(range(n, n_pad))

    Mp = Truncated(WithDummies(M, extra), k)
    view = _PaddedView(oracles, n)
    t = (1 << p) * (n_pad // (2 * k))

    slot_set = set(slots)
    dummy_iter = iter(dummy_ids)
    revealed = 0
    arrived: list[int] = []
    order: list[int] = []
    committed: int | None = None
    trace: list[TraceStep] = []
    stop_time = None

    for pos in range(n_pad):
        u = next(dummy_iter) if pos in slot_set else stream.next()
        order.append(u)
        revealed |= 1 << u
        i = pos + 1
        if committed is not None:
            decision = "accept-committed" if (committed >> u) & 1 else "reject"
            trace.append(TraceStep(u, decision))
        elif i <= t:
            trace.append(TraceStep(u, "reject-learning"))
        else:
            m_u, s_u = _m_max(view, Mp, u, revealed)
            top = m_u > NEG_INF
            if top:
                for v in arrived:
                    m_v = _m_max(view, Mp, v, revealed)[0]
                    if not (m_u > m_v or (m_u == m_v and u > v)):
                        top = False
                        break
            if top:
                committed = s_u | (1 << u)
                stop_time = i
                trace.append(TraceStep(u, "accept", tuple(iter_bits(s_u))))
            else:
                trace.append(TraceStep(u, "reject"))
        arrived.append(u)

    accepted = (committed or 0) & view.real_mask
    draws = {
        "p": p,
        "t": t,
        "k": k,
        "n_padded": n_pad,
        "dummy_slots": slots,
        "padded_order": order,
        "stop_time": stop_time,
    }
    return RunResult(ALG_ID, frozenset(iter_bits(accepted)), f.value_mask(accepted), trace, draws)


def is_well_behaved(f: Valuation, M: Matroid, result: RunResult, opt_value: float) -> bool:
    """Check properties A1/A2 for the padded arrival order and ``t`` of a finished run.

    A1: at some time ``i > n'/k`` some revealed element has max-marginal at
    least ``f(OPT)/k``; ``l1`` is the first such time. A2: exactly one time
    ``t < i <= l1`` has its arriving element on top. Uses offline oracles.
    """
    order = result.draws["padded_order"]
    t, k, n_pad = result.draws["t"], result.draws["k"], result.draws["n_padded"]
    extra = n_pad - f.n
    Mp = Truncated(WithDummies(M, extra), k)

    class _Offline:
        real_mask = (1 << f.n) - 1

        @staticmethod
        def marginal_mask(u, mask):
            return 0.0 if u >= f.n else f.marginal_mask(u, mask & _Offline.real_mask)

        @staticmethod
        def dep_mask(u):
            return 0 if u >= f.n else f.dep_mask(u)

    goal = opt_value / k
    revealed = 0
    tops = []
    l1 = None
    for pos, u in enumerate(order):
        revealed |= 1 << u
        i = pos + 1
        values = {v: _m_max(_Offline, Mp, v, revealed)[0] for v in order[:i]}
        m_u = values[u]
        tops.append(m_u > NEG_INF and all(m_u > mv or (m_u == mv and u > v) for v, mv in values.items() if v != u))
        if l1 is None and i * k > n_pad and any(mv >= goal for mv in values.values()):
            l1 = i
            break
    if l1 is None:
        return False
    return sum(1 for i in range(t + 1, l1 + 1) if tops[i - 1]) == 1
