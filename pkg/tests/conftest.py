import itertools

import numpy as np
import pytest

from supersec import HypergraphValuation, Uniform
from supersec.harness.generate import GeneratorSpec, generate_instance

A, B, C = 0, 1, 2


@pytest.fixture
def inst_a():
    """Weights a=1, b=2, c=3 and a bonus of 4 on {a, b}."""
    return HypergraphValuation([1, 2, 3], [([A, B], 4)])


def random_instance(seed, n, d, kind="uniform", k=None):
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        mspec = {"kind": "uniform", "k": k if k is not None else int(rng.integers(1, n + 1))}
    elif kind == "partition":
        mspec = {"kind": "partition", "blocks": int(rng.integers(1, n + 1)), "capacity": int(rng.integers(1, 3))}
    else:
        mspec = {"kind": "graphic", "vertices": int(rng.integers(3, n + 2))}
    spec = GeneratorSpec(n=n, d=d, matroid=mspec, bonus_attempts=2 * n)
    return generate_instance(spec, rng)


def subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)


def naive_opt(f, M):
    """Max value independent set by plain enumeration; ties go to the lexicographically smallest tuple."""
    best = None
    for s in sorted(subsets(f.n)):
        if M.is_independent(s):
            v = f.value(s)
            if best is None or v > best[1]:
                best = (s, v)
    return frozenset(best[0]), best[1]


def naive_greedy(f, M, candidates, accept=lambda i: True):
    """Reference for the greedy pair loop: full rescan every iteration."""
    A, T = set(), set(candidates)
    picks = []
    i = 0
    while True:
        best = None
        for u in sorted(T - A):
            deps = sorted(f.dep_set(u) - A)
            for r in range(len(deps) + 1):
                for D in itertools.combinations(deps, r):
                    if not M.is_independent(A | set(D) | {u}):
                        continue
                    val = f.marginal(u, A | set(D))
                    key = (-val, u, D)
                    if best is None or key < best[0]:
                        best = (key, u, D, val)
        if best is None:
            return picks, A
        _, u, D, val = best
        picks.append((u, D, val))
        if accept(i):
            A |= set(D) | {u}
        else:
            T.discard(u)
        i += 1
