"""Random instance generator with a cap on the supermodular degree."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from ..errors import ConfigError
from ..instance import Instance
from ..matroid import Graphic, Matroid, Partition, Uniform
from ..valuation import HypergraphValuation


@dataclass
class GeneratorSpec:
    """Parameters for :func:`generate_instance`.

    ``matroid`` is ``{"kind": "uniform", "k": ...}``,
    ``{"kind": "partition", "blocks": ..., "capacity": ...}`` or
    ``{"kind": "graphic", "vertices": ...}``. ``bonus_attempts`` random
    hyperedges are proposed and kept only if no element's dependency set
    would exceed ``d``.
    """

    n: int
    d: int
    matroid: dict[str, Any] = field(default_factory=lambda: {"kind": "uniform", "k": 2})
    weight_range: tuple[int, int] = (0, 10)
    bonus_range: tuple[int, int] = (1, 10)
    bonus_attempts: int | None = None

    def validate(self) -> None:
        if self.n < 1:
            raise ConfigError(f"n must be at least 1, got {self.n}")
        if not 0 <= self.d < self.n:
            raise ConfigError(f"degree target d={self.d} must satisfy 0 <= d < n={self.n}")
        lo, hi = self.weight_range
        if not 0 <= lo <= hi:
            raise ConfigError(f"weight_range must satisfy 0 <= lo <= hi, got {self.weight_range}")
        lo, hi = self.bonus_range
        if not 1 <= lo <= hi:
            raise ConfigError(f"bonus_range must satisfy 1 <= lo <= hi, got {self.bonus_range}")
        if "kind" not in self.matroid:
            raise ConfigError("matroid spec needs a 'kind'")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GeneratorSpec":
        try:
            spec = cls(
                n=int(data["n"]),
                d=int(data["d"]),
                matroid=dict(data.get("matroid", {"kind": "uniform", "k": 2})),
                weight_range=tuple(data.get("weight_range", (0, 10))),
                bonus_range=tuple(data.get("bonus_range", (1, 10))),
                bonus_attempts=data.get("bonus_attempts"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed generator spec: {exc!r}") from exc
        spec.validate()
        return spec

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["weight_range"] = list(self.weight_range)
        out["bonus_range"] = list(self.bonus_range)
        return out


def _make_matroid(spec: dict[str, Any], n: int, rng: np.random.Generator) -> Matroid:
    kind = spec["kind"]
    try:
        if kind == "uniform":
            return Uniform(n, int(spec["k"]))
        if kind == "partition":
            blocks = int(spec["blocks"])
            if not 1 <= blocks <= n:
                raise ConfigError(f"partition needs 1 <= blocks <= n, got {blocks}")
            perm = rng.permutation(n).tolist()
            parts = [sorted(perm[j::blocks]) for j in range(blocks)]
            return Partition(n, parts, [int(spec["capacity"])] * blocks)
        if kind == "graphic":
            vertices = int(spec["vertices"])
            if vertices < 2:
                raise ConfigError("graphic matroid generation needs at least 2 vertices")
            a = rng.integers(0, vertices, size=n)
            b = (a + rng.integers(1, vertices, size=n)) % vertices
            return Graphic(vertices, list(zip(a.tolist(), b.tolist())))
    except KeyError as exc:
        raise ConfigError(f"matroid spec for {kind!r} is missing {exc}") from exc
    raise ConfigError(f"cannot generate matroid kind {kind!r}")


def generate_instance(spec: GeneratorSpec, rng: np.random.Generator) -> Instance:
    """Draw a normalized hypergraph valuation of degree at most ``spec.d`` and a matroid."""
    spec.validate()
    n, d = spec.n, spec.d
    wlo, whi = spec.weight_range
    weights = rng.integers(wlo, whi + 1, size=n).tolist()
    bonuses: list[tuple[list[int], int]] = []
    if d > 0:
        blo, bhi = spec.bonus_range
        deps = [0] * n
        seen: set[int] = set()
        attempts = n if spec.bonus_attempts is None else int(spec.bonus_attempts)
        for _ in range(attempts):
            size = int(rng.integers(2, d + 2))
            members = sorted(rng.choice(n, size=size, replace=False).tolist())
            value = int(rng.integers(blo, bhi + 1))
            emask = sum(1 << u for u in members)
            if emask in seen:
                continue
            if all((deps[u] | (emask & ~(1 << u))).bit_count() <= d for u in members):
                for u in members:
                    deps[u] |= emask & ~(1 << u)
                seen.add(emask)
                bonuses.append((members, value))
    f = HypergraphValuation(weights, bonuses)
    if f.supermodular_degree() > d:
        raise AssertionError("generator produced a valuation above its degree target")
    return Instance(f, _make_matroid(spec.matroid, n, rng))
