"""Random-order arrival model and the online oracles that enforce it.

An :class:`ArrivalStream` reveals one element per step. :class:`OnlineOracles`
answers marginal and dependency queries only about elements that have already
arrived; anything else raises :class:`~supersec.errors.AccessViolation`.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from ._bits import check_element, from_mask, to_mask
from .errors import AccessViolation, ConfigError, EndOfStream
from .valuation import Valuation

SEED_MASK = (1 << 64) - 1


def fisher_yates(n: int, rng: np.random.Generator) -> list[int]:
    """Uniform permutation of ``range(n)``; draws ``j_i`` in ``[0, i]`` for ``i = n-1 .. 1``."""
    order = list(range(n))
    if n < 2:
        return order
    highs = np.arange(n, 1, -1, dtype=np.int64)
    draws = rng.integers(0, highs).tolist()
    for idx, i in enumerate(range(n - 1, 0, -1)):
        j = draws[idx]
        order[i], order[j] = order[j], order[i]
    return order


class ArrivalStream:
    """A fixed or seeded-uniform arrival order with a cursor over it."""

    def __init__(self, order: Sequence[int], source: str = "fixed", seed: int | None = None):
        order = [int(u) for u in order]
        n = len(order)
        if n < 1 or sorted(order) != list(range(n)):
            raise ConfigError(f"arrival order must be a permutation of 0..{n - 1}")
        self.order = order
        self.n = n
        self.source = source
        self.seed = seed
        self.cursor = 0
        self.revealed_mask = 0

    @classmethod
    def fixed(cls, order: Sequence[int]) -> "ArrivalStream":
        return cls(order, "fixed")

    @classmethod
    def seeded(cls, n: int, seed: int) -> "ArrivalStream":
        if not 0 <= int(seed) <= SEED_MASK:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")
        rng = np.random.Generator(np.random.PCG64(int(seed)))
        return cls(fisher_yates(n, rng), "seeded", int(seed))

    def next(self) -> int:
        if self.cursor >= self.n:
            raise EndOfStream(f"all {self.n} elements have arrived")
        u = self.order[self.cursor]
        self.cursor += 1
        self.revealed_mask |= 1 << u
        return u

    def __iter__(self) -> Iterator[int]:
        while self.cursor < self.n:
            yield self.next()

    @property
    def revealed(self) -> frozenset[int]:
        return from_mask(self.revealed_mask)

    @property
    def remaining(self) -> int:
        return self.n - self.cursor

    def is_revealed(self, u: int) -> bool:
        return bool((self.revealed_mask >> u) & 1)

    def __repr__(self) -> str:
        return f"ArrivalStream(n={self.n}, source={self.source!r}, cursor={self.cursor})"


class OnlineOracles:
    """Marginal and supermodular oracles restricted to revealed query subjects."""

    def __init__(self, valuation: Valuation, stream: ArrivalStream):
        if valuation.n != stream.n:
            raise ConfigError(f"valuation has n={valuation.n} but stream has n={stream.n}")
        self.valuation = valuation
        self.stream = stream
        self.n = valuation.n

    def _guard(self, u: int) -> None:
        if not (self.stream.revealed_mask >> u) & 1:
            raise AccessViolation(f"element {u} has not arrived yet")

    def marginal_mask(self, u: int, mask: int) -> float:
        self._guard(u)
        return self.valuation.marginal_mask(u, mask)

    def dep_mask(self, u: int) -> int:
        self._guard(u)
        return self.valuation.dep_mask(u)

    def online_marginal(self, u: int, S: Iterable[int]) -> float:
        u = check_element(u, self.n)
        return self.marginal_mask(u, to_mask(S, self.n))

    def online_dep_set(self, u: int) -> frozenset[int]:
        u = check_element(u, self.n)
        return from_mask(self.dep_mask(u))
