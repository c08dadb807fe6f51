"""A valuation paired with a matroid, and its JSON file format."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ConfigError
from .matroid import Matroid, matroid_from_dict
from .valuation import HypergraphValuation, TableValuation, Valuation


@dataclass
class Instance:
    valuation: Valuation
    matroid: Matroid

    def __post_init__(self):
        if self.valuation.n != self.matroid.n:
            raise ConfigError(
                f"valuation has n={self.valuation.n} but matroid has n={self.matroid.n}"
            )

    @property
    def n(self) -> int:
        return self.valuation.n

    def to_dict(self) -> dict[str, Any]:
        f = self.valuation
        if isinstance(f, HypergraphValuation):
            val = f.to_dict()
        else:
            val = {"n": f.n, "table": [float(x) for x in f.to_table().values]}
        return {"valuation": val, "matroid": self.matroid.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Instance":
        if not isinstance(data, dict) or "valuation" not in data or "matroid" not in data:
            raise ConfigError("instance needs 'valuation' and 'matroid' entries")
        vd = data["valuation"]
        if "table" in vd:
            f: Valuation = TableValuation(int(vd["n"]), vd["table"])
        else:
            f = HypergraphValuation.from_dict(vd)
        return cls(f, matroid_from_dict(data["matroid"], f.n))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: str | Path) -> "Instance":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read instance {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"instance {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)
