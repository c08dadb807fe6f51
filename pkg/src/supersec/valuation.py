"""Monotone non-negative set functions and their supermodular dependency structure.

Two representations are provided:

* :class:`HypergraphValuation` -- per-element weights plus positive bonuses on
  hyperedges, ``f(S) = offset + sum(weights[S]) + sum(bonus e for e <= S)``.
  Dependency sets have a closed form (the co-members of every bonus containing
  ``u``), so it scales to large ground sets.
* :class:`TableValuation` -- an explicit value for each of the ``2**n``
  subsets. Dependency sets are found by exhaustive enumeration, which is what
  makes it useful as a cross-check of the closed form.

Subsets are accepted as any iterable of element ids. The ``*_mask`` methods
take an int bitmask instead and are what the algorithms use in their loops.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from ._bits import check_element, from_mask, iter_bits, to_mask
from .errors import CapacityError, ConfigError

EXHAUSTION_LIMIT = 16


@dataclass(frozen=True)
class DependencyMap:
    """Supermodular dependency set of every element, plus the maximum size."""

    deps: tuple[frozenset[int], ...]

    @property
    def degree(self) -> int:
        return max((len(d) for d in self.deps), default=0)

    def __getitem__(self, u: int) -> frozenset[int]:
        return self.deps[u]


class Valuation(ABC):
    """A set function over the ground set ``{0, ..., n-1}``."""

    n: int
    offset: float
    exhaustion_limit: int = EXHAUSTION_LIMIT

    @abstractmethod
    def value_mask(self, mask: int) -> float: ...

    @abstractmethod
    def dep_mask(self, u: int) -> int: ...

    @abstractmethod
    def normalize(self) -> "Valuation": ...

    def marginal_mask(self, u: int, mask: int) -> float:
        bit = 1 << u
        if mask & bit:
            return 0.0
        return self.value_mask(mask | bit) - self.value_mask(mask)

    def value(self, S: Iterable[int]) -> float:
        return self.value_mask(to_mask(S, self.n))

    def marginal(self, u: int, S: Iterable[int]) -> float:
        """``f(S + u) - f(S)``; zero when ``u`` is already in ``S``."""
        u = check_element(u, self.n)
        return self.marginal_mask(u, to_mask(S, self.n))

    def dep_set(self, u: int) -> frozenset[int]:
        return from_mask(self.dep_mask(check_element(u, self.n)))

    def dependency_map(self) -> DependencyMap:
        return DependencyMap(tuple(self.dep_set(u) for u in range(self.n)))

    def supermodular_degree(self) -> int:
        return max((self.dep_mask(u).bit_count() for u in range(self.n)), default=0)

    @abstractmethod
    def verify_monotone(self) -> bool: ...

    @abstractmethod
    def to_table(self) -> "TableValuation": ...


class HypergraphValuation(Valuation):
    """Linear weights plus positive bonuses paid when a whole hyperedge is present."""

    def __init__(
        self,
        weights: Sequence[float],
        bonuses: Iterable[tuple[Iterable[int], float]] = (),
        offset: float = 0.0,
    ):
        n = len(weights)
        if n < 1:
            raise ConfigError("ground set must contain at least one element")
        ws = tuple(float(w) for w in weights)
        for i, w in enumerate(ws):
            if not math.isfinite(w) or w < 0:
                raise ConfigError(f"weight of element {i} must be a finite non-negative real, got {w}")
        offset = float(offset)
        if not math.isfinite(offset) or offset < 0:
            raise ConfigError(f"offset must be a finite non-negative real, got {offset}")

        bs: list[tuple[frozenset[int], float]] = []
        for members, val in bonuses:
            members = list(members)
            mset = frozenset(int(m) for m in members)
            if len(mset) != len(members):
                raise ConfigError(f"bonus {members} repeats an element")
            if len(mset) < 2:
                raise ConfigError(f"bonus {members} has fewer than 2 members")
            val = float(val)
            if not math.isfinite(val) or val <= 0:
                raise ConfigError(f"bonus {sorted(mset)} must have a positive value, got {val}")
            if any(not 0 <= m < n for m in mset):
                raise ConfigError(f"bonus {sorted(mset)} names an element outside 0..{n - 1}")
            bs.append((mset, val))

        self.n = n
        self.weights = ws
        self.bonuses = tuple(bs)
        self.offset = offset

        self._bonus_masks = [(to_mask(m, n), v) for m, v in bs]
        incident: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        deps = [0] * n
        for bmask, v in self._bonus_masks:
            for u in iter_bits(bmask):
                co = bmask & ~(1 << u)
                incident[u].append((co, v))
                deps[u] |= co
        self._incident = [tuple(x) for x in incident]
        self._deps = deps

    def value_mask(self, mask: int) -> float:
        total = self.offset
        w = self.weights
        for u in iter_bits(mask):
            total += w[u]
        for bmask, v in self._bonus_masks:
            if bmask & mask == bmask:
                total += v
        return total

    def marginal_mask(self, u: int, mask: int) -> float:
        if (mask >> u) & 1:
            return 0.0
        total = self.weights[u]
        for co, v in self._incident[u]:
            if co & mask == co:
                total += v
        return total

    def dep_mask(self, u: int) -> int:
        return self._deps[u]

    def normalize(self) -> "HypergraphValuation":
        return HypergraphValuation(self.weights, self.bonuses, 0.0)

    def verify_monotone(self) -> bool:
        # weights >= 0 and bonuses > 0 are enforced at construction
        return True

    def to_table(self) -> "TableValuation":
        if self.n > self.exhaustion_limit:
            raise CapacityError(f"table expansion of n={self.n} exceeds limit {self.exhaustion_limit}")
        masks = np.arange(1 << self.n, dtype=np.int64)
        values = np.full(masks.shape, self.offset, dtype=np.float64)
        for u, w in enumerate(self.weights):
            values += w * ((masks >> u) & 1)
        for bmask, v in self._bonus_masks:
            values += v * ((masks & bmask) == bmask)
        return TableValuation(self.n, values)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "weights": list(self.weights),
            "bonuses": [{"members": sorted(m), "value": v} for m, v in self.bonuses],
            "offset": self.offset,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HypergraphValuation":
        try:
            n = int(data["n"])
            weights = data["weights"]
            bonuses = [(b["members"], b["value"]) for b in data.get("bonuses", [])]
            offset = data.get("offset", 0.0)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed valuation: {exc!r}") from exc
        if len(weights) != n:
            raise ConfigError(f"expected {n} weights, got {len(weights)}")
        return cls(weights, bonuses, offset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HypergraphValuation):
            return NotImplemented
        return (
            self.weights == other.weights
            and self.offset == other.offset
            and sorted((sorted(m), v) for m, v in self.bonuses)
            == sorted((sorted(m), v) for m, v in other.bonuses)
        )

    def __repr__(self) -> str:
        return f"HypergraphValuation(n={self.n}, bonuses={len(self.bonuses)}, offset={self.offset})"


class TableValuation(Valuation):
    """Explicit value table indexed by subset bitmask."""

    def __init__(self, n: int, values: Sequence[float] | np.ndarray):
        if n < 1:
            raise ConfigError("ground set must contain at least one element")
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape != (1 << n,):
            raise ConfigError(f"table for n={n} needs {1 << n} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ConfigError("table values must be finite and non-negative")
        self.n = n
        self.values = arr
        self.offset = float(arr[0])
        self._deps: list[int] | None = None

    @classmethod
    def from_function(cls, n: int, func) -> "TableValuation":
        """Tabulate ``func(frozenset) -> float`` over every subset."""
        return cls(n, [func(from_mask(m)) for m in range(1 << n)])

    def value_mask(self, mask: int) -> float:
        return float(self.values[mask])

    def _check_limit(self) -> None:
        if self.n > self.exhaustion_limit:
            raise CapacityError(f"exhaustive enumeration over n={self.n} exceeds limit {self.exhaustion_limit}")

    def _compute_deps(self) -> list[int]:
        self._check_limit()
        n, f = self.n, self.values
        masks = np.arange(1 << n, dtype=np.int64)
        deps = []
        for u in range(n):
            bu = 1 << u
            without_u = masks[(masks & bu) == 0]
            marg = np.zeros(1 << n)
            marg[without_u] = f[without_u | bu] - f[without_u]
            dmask = 0
            for v in range(n):
                if v == u:
                    continue
                bv = 1 << v
                base = without_u[(without_u & bv) == 0]
                if np.any(marg[base | bv] > marg[base]):
                    dmask |= bv
            deps.append(dmask)
        return deps

    def dep_mask(self, u: int) -> int:
        if self._deps is None:
            self._deps = self._compute_deps()
        return self._deps[u]

    def normalize(self) -> "TableValuation":
        return TableValuation(self.n, self.values - self.values[0])

    def verify_monotone(self) -> bool:
        self._check_limit()
        masks = np.arange(1 << self.n, dtype=np.int64)
        for u in range(self.n):
            bu = 1 << u
            base = masks[(masks & bu) == 0]
            if np.any(self.values[base | bu] < self.values[base]):
                return False
        return True

    def to_table(self) -> "TableValuation":
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TableValuation):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"TableValuation(n={self.n}, offset={self.offset})"
