"""Matroid independence oracles and the wrappers the algorithms need."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Iterable, Sequence

from ._bits import from_mask, iter_bits, to_mask
from .errors import ConfigError


class Matroid(ABC):
    """Independence system over the ground set ``{0, ..., n-1}``."""

    n: int

    @abstractmethod
    def indep_mask(self, mask: int) -> bool: ...

    def is_independent(self, S: Iterable[int]) -> bool:
        return self.indep_mask(to_mask(S, self.n))

    def rank(self) -> int:
        return self._greedy_rank(self.full_mask())

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _greedy_rank(self, allowed: int) -> int:
        # greedy augmentation finds a basis in any matroid
        basis = 0
        for u in iter_bits(allowed):
            if self.indep_mask(basis | (1 << u)):
                basis |= 1 << u
        return basis.bit_count()

    def truncate(self, k: int) -> "Truncated":
        return Truncated(self, k)

    def restrict(self, allowed: Iterable[int] | int) -> "Restricted":
        return Restricted(self, allowed)

    @abstractmethod
    def to_dict(self) -> dict[str, Any]: ...


class Uniform(Matroid):
    def __init__(self, n: int, k: int):
        if n < 1 or k < 0:
            raise ConfigError(f"uniform matroid needs n >= 1 and k >= 0, got n={n}, k={k}")
        self.n, self.k = int(n), int(k)

    def indep_mask(self, mask: int) -> bool:
        return mask.bit_count() <= self.k

    def rank(self) -> int:
        return min(self.k, self.n)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "uniform", "k": self.k}

    def __repr__(self) -> str:
        return f"Uniform(n={self.n}, k={self.k})"


class Partition(Matroid):
    """Blocks partition the ground set; at most ``capacities[j]`` elements from block ``j``."""

    def __init__(self, n: int, blocks: Sequence[Iterable[int]], capacities: Sequence[int]):
        blocks = [sorted(int(u) for u in b) for b in blocks]
        if len(blocks) != len(capacities):
            raise ConfigError("partition matroid needs one capacity per block")
        seen = 0
        masks = []
        for b in blocks:
            m = to_mask(b, n)
            if m & seen:
                raise ConfigError("partition blocks overlap")
            seen |= m
            masks.append(m)
        if seen != (1 << n) - 1:
            raise ConfigError("partition blocks must cover the ground set")
        if any(c < 0 for c in capacities):
            raise ConfigError("capacities must be non-negative")
        self.n = n
        self.blocks = blocks
        self.capacities = [int(c) for c in capacities]
        self._masks = list(zip(masks, self.capacities))

    def indep_mask(self, mask: int) -> bool:
        for bmask, cap in self._masks:
            if (mask & bmask).bit_count() > cap:
                return False
        return True

    def rank(self) -> int:
        return sum(min(cap, len(b)) for b, cap in zip(self.blocks, self.capacities))

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "partition", "blocks": self.blocks, "capacities": self.capacities}

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, blocks={len(self.blocks)})"


class Graphic(Matroid):
    """Edges of a multigraph; a set is independent iff it is a forest."""

    def __init__(self, vertices: int, edges: Sequence[tuple[int, int]]):
        edges = [(int(a), int(b)) for a, b in edges]
        if not edges:
            raise ConfigError("graphic matroid needs at least one edge")
        for a, b in edges:
            if not (0 <= a < vertices and 0 <= b < vertices):
                raise ConfigError(f"edge ({a}, {b}) uses a vertex outside 0..{vertices - 1}")
        self.vertices = int(vertices)
        self.edges = edges
        self.n = len(edges)

    def indep_mask(self, mask: int) -> bool:
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for e in iter_bits(mask):
            a, b = self.edges[e]
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def rank(self) -> int:
        parent = list(range(self.vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = self.vertices
        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                components -= 1
        return self.vertices - components

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "graphic", "vertices": self.vertices, "edges": [list(e) for e in self.edges]}

    def __repr__(self) -> str:
        return f"Graphic(vertices={self.vertices}, edges={self.n})"


class Truncated(Matroid):
    """Independent iff independent in ``inner`` and of size at most ``k``."""

    def __init__(self, inner: Matroid, k: int):
        if k < 0:
            raise ConfigError(f"truncation rank must be non-negative, got {k}")
        self.inner, self.k, self.n = inner, int(k), inner.n

    def indep_mask(self, mask: int) -> bool:
        return mask.bit_count() <= self.k and self.inner.indep_mask(mask)

    def rank(self) -> int:
        return min(self.inner.rank(), self.k)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "truncated", "k": self.k, "inner": self.inner.to_dict()}

    def __repr__(self) -> str:
        return f"Truncated({self.inner!r}, k={self.k})"


class Restricted(Matroid):
    """Independent iff contained in ``allowed`` and independent in ``inner``."""

    def __init__(self, inner: Matroid, allowed: Iterable[int] | int):
        self.inner, self.n = inner, inner.n
        self.allowed = allowed if isinstance(allowed, int) else to_mask(allowed, inner.n)

    def indep_mask(self, mask: int) -> bool:
        return mask & ~self.allowed == 0 and self.inner.indep_mask(mask)

    def rank(self) -> int:
        return self.inner._greedy_rank(self.allowed)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "restricted", "allowed": sorted(from_mask(self.allowed)), "inner": self.inner.to_dict()}

    def __repr__(self) -> str:
        return f"Restricted({self.inner!r}, allowed={sorted(from_mask(self.allowed))})"


class WithDummies(Matroid):
    """Extends ``inner`` by ``extra`` free elements ``inner.n .. inner.n+extra-1``.

    ``S`` is independent iff its non-dummy part is independent in ``inner``.
    Combined with :class:`Truncated` at ``inner.rank()`` this is the padding
    used to make the ground-set size divisible by a chosen modulus.
    """

    def __init__(self, inner: Matroid, extra: int):
        self.inner, self.extra = inner, int(extra)
        self.n = inner.n + self.extra
        self._real = inner.full_mask()

    def indep_mask(self, mask: int) -> bool:
        return self.inner.indep_mask(mask & self._real)

    def rank(self) -> int:
        return self.inner.rank() + self.extra

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "with_dummies", "extra": self.extra, "inner": self.inner.to_dict()}


class ExplicitMatroid(Matroid):
    """Lists every independent set; the matroid axioms are checked on construction."""

    def __init__(self, n: int, independent_sets: Iterable[Iterable[int]]):
        self.n = n
        family = {to_mask(s, n) for s in independent_sets}
        self._family = frozenset(family)
        self._validate()

    def _validate(self) -> None:
        fam = self._family
        if 0 not in fam:
            raise ConfigError("the empty set must be independent")
        for m in fam:
            for u in iter_bits(m):
                if m & ~(1 << u) not in fam:
                    raise ConfigError(f"family is not hereditary at {sorted(from_mask(m))}")
        for big in fam:
            for small in fam:
                if big.bit_count() <= small.bit_count():
                    continue
                if not any(small | (1 << u) in fam for u in iter_bits(big & ~small)):
                    raise ConfigError(
                        f"augmentation fails for {sorted(from_mask(big))} and {sorted(from_mask(small))}"
                    )

    def indep_mask(self, mask: int) -> bool:
        return mask in self._family

    def rank(self) -> int:
        return max(m.bit_count() for m in self._family)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "explicit", "independent_sets": sorted(sorted(from_mask(m)) for m in self._family)}

    @classmethod
    def from_matroid(cls, M: Matroid) -> "ExplicitMatroid":
        """Enumerate every independent set of ``M`` (small ``n`` only)."""
        return cls(M.n, [from_mask(m) for m in range(1 << M.n) if M.indep_mask(m)])

    def __repr__(self) -> str:
        return f"ExplicitMatroid(n={self.n}, sets={len(self._family)})"


def matroid_from_dict(data: dict[str, Any], n: int) -> Matroid:
    """Build a matroid over ``n`` elements from its JSON description."""
    try:
        kind = data["kind"]
        if kind == "uniform":
            return Uniform(n, data["k"])
        if kind == "partition":
            return Partition(n, data["blocks"], data["capacities"])
        if kind == "graphic":
            M = Graphic(data["vertices"], [tuple(e) for e in data["edges"]])
            if M.n != n:
                raise ConfigError(f"graphic matroid has {M.n} edges but the ground set has {n} elements")
            return M
        if kind == "truncated":
            return Truncated(matroid_from_dict(data["inner"], n), data["k"])
        if kind == "restricted":
            return Restricted(matroid_from_dict(data["inner"], n), data["allowed"])
        if kind == "explicit":
            return ExplicitMatroid(n, data["independent_sets"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed matroid description: {exc!r}") from exc
    raise ConfigError(f"unknown matroid kind {data.get('kind')!r}")

