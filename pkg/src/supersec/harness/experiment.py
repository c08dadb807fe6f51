"""Seeded Monte Carlo runs of one algorithm on one instance, with CSV/JSON reports."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..algorithms import ALGORITHM_IDS, AidedInput, run_algorithm
from ..errors import ConfigError, SupersecError
from ..instance import Instance
from ..offline import brute_force_opt
from ..stream import SEED_MASK, ArrivalStream
from .generate import GeneratorSpec, generate_instance

CSV_COLUMNS = ("seed", "alg_id", "alg_value", "opt_value", "p_draw", "x_draw", "valid_estimate")
TOLERANCE_SIGMAS = 3.0


def trial_seed(master: int, index: int) -> int:
    """64-bit seed for trial ``index``, independent of how trials are scheduled."""
    return int(np.random.SeedSequence([master, index]).generate_state(1, np.uint64)[0])


def algorithm_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 1])))


@dataclass
class ExperimentConfig:
    """One experiment: an instance source, an algorithm and its parameters, and a trial count.

    Exactly one of ``instance_path``, ``instance`` (inline dict) and
    ``generator`` (a :class:`GeneratorSpec` dict, drawn with
    ``generator_seed``) must be given. ``order`` fixes the arrival order of
    every trial instead of drawing it from the trial seed.
    """

    algorithm: str
    trials: int = 1
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)
    instance_path: str | None = None
    instance: dict[str, Any] | None = None
    generator: dict[str, Any] | None = None
    generator_seed: int = 0
    order: list[int] | None = None
    out: str | None = None
    trace: bool = False
    workers: int = 1
    compute_opt: bool = True

    def validate(self) -> None:
        if self.algorithm not in ALGORITHM_IDS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHM_IDS}")
        if int(self.trials) < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if not 0 <= int(self.seed) <= SEED_MASK:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        sources = [s is not None for s in (self.instance_path, self.instance, self.generator)]
        if sum(sources) != 1:
            raise ConfigError("give exactly one of instance_path, instance, generator")
        if int(self.workers) < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: str | Path | None = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "algorithm" not in data:
            raise ConfigError("config needs an 'algorithm'")
        cfg = cls(**data)
        if cfg.instance_path is not None and base_dir is not None:
            p = Path(cfg.instance_path)
            if not p.is_absolute():
                cfg.instance_path = str(Path(base_dir) / p)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data, Path(path).parent)

    def load_instance(self) -> Instance:
        if self.instance_path is not None:
            return Instance.load(self.instance_path)
        if self.instance is not None:
            return Instance.from_dict(self.instance)
        spec = GeneratorSpec.from_dict(self.generator)
        return generate_instance(spec, np.random.default_rng(self.generator_seed))


@dataclass
class ExperimentReport:
    config: dict[str, Any]
    opt_value: float | None
    opt_set: list[int] | None
    rows: list[dict[str, Any]]
    aggregate: dict[str, Any]
    fault: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in self.rows:
            w.writerow([_cell(row.get(c)) for c in CSV_COLUMNS])
        for key in sorted(self.aggregate):
            w.writerow(["#aggregate", key, _cell(self.aggregate[key])])
        if self.fault is not None:
            w.writerow(["#fault", self.fault])
        return buf.getvalue()


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _estimate_validity(alg_id: str, params: dict, draws: dict, opt: float | None) -> bool | None:
    if opt is None:
        return None
    if alg_id in ("alg2-aided-general", "alg5-aided-card2", "alg6-aided-card-alpha"):
        return AidedInput(float(params["opt_estimate"]), float(params.get("alpha", 1.0))).is_valid(opt)
    if alg_id == "alg3-main" and draws.get("branch") == "estimate":
        return AidedInput(draws["opt_estimate"], draws["alpha"]).is_valid(opt)
    return None


def _run_trial(instance: Instance, cfg: ExperimentConfig, index: int, opt: float | None) -> dict[str, Any]:
    seed = trial_seed(int(cfg.seed), index)
    f, M = instance.valuation, instance.matroid
    stream = ArrivalStream.fixed(cfg.order) if cfg.order is not None else ArrivalStream.seeded(f.n, seed)
    row: dict[str, Any] = {"seed": seed, "alg_id": cfg.algorithm}
    try:
        res = run_algorithm(cfg.algorithm, f, M, stream, algorithm_rng(seed), cfg.params)
        if not M.is_independent(res.accepted):
            raise SupersecError(f"accepted set {sorted(res.accepted)} is not independent")
    except ConfigError:
        raise
    except SupersecError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    draws = res.draws
    inner = draws.get("inner", {})
    row.update(
        alg_value=res.value,
        opt_value=opt,
        p_draw=draws.get("p", inner.get("p")),
        x_draw=draws.get("X"),
        valid_estimate=_estimate_validity(cfg.algorithm, cfg.params, draws, opt),
        accepted=sorted(res.accepted),
    )
    if cfg.trace:
        row["draws"] = draws
        row["trace"] = [s.as_list() for s in res.trace]
    return row


def _run_chunk(args) -> list[dict[str, Any]]:
    instance, cfg, indices, opt = args
    return [_run_trial(instance, cfg, i, opt) for i in indices]


def _aggregate(rows: list[dict[str, Any]], opt: float | None) -> dict[str, Any]:
    values = np.array([r["alg_value"] for r in rows], dtype=np.float64)
    t = len(values)
    mean = float(values.mean()) if t else None
    std_err = float(values.std(ddof=1) / math.sqrt(t)) if t > 1 else 0.0
    agg: dict[str, Any] = {
        "trials": t,
        "mean_alg_value": mean,
        "std_error": std_err,
        "opt_value": opt,
        "tolerance_sigmas": TOLERANCE_SIGMAS,
    }
    if opt is not None:
        agg["opt_zero"] = opt == 0
        agg["ratio"] = opt / mean if opt > 0 and mean else None
        flags = [r["valid_estimate"] for r in rows if r.get("valid_estimate") is not None]
        agg["valid_fraction"] = sum(flags) / len(flags) if flags else None
    return agg


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run every trial and assemble the report; the first faulting trial stops the run."""
    cfg.validate()
    instance = cfg.load_instance()
    opt_res = brute_force_opt(instance.valuation, instance.matroid) if cfg.compute_opt else None
    opt = opt_res.opt_value if opt_res else None

    trials = int(cfg.trials)
    if cfg.workers > 1 and trials > 1:
        chunks = [list(range(trials))[w :: cfg.workers] for w in range(cfg.workers)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_run_chunk, [(instance, cfg, c, opt) for c in chunks]))
        by_index = {i: r for c, part in zip(chunks, parts) for i, r in zip(c, part)}
        all_rows = [by_index[i] for i in range(trials)]
    else:
        all_rows = _run_chunk((instance, cfg, range(trials), opt))

    rows: list[dict[str, Any]] = []
    fault = None
    for r in all_rows:
        rows.append(r)
        if "error" in r:
            fault = f"trial seed {r['seed']}: {r['error']}"
            break
    good = [r for r in rows if "error" not in r]
    cfg_dict = asdict(cfg)
    cfg_dict.pop("out", None)
    cfg_dict.pop("workers", None)
    return ExperimentReport(
        config=cfg_dict,
        opt_value=opt,
        opt_set=sorted(opt_res.opt_set) if opt_res else None,
        rows=rows,
        aggregate=_aggregate(good, opt),
        fault=fault,
    )


def write_report(report: ExperimentReport, out_dir: str | Path) -> tuple[Path, Path]:
    """Write ``report.csv`` and ``report.json`` under ``out_dir``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = out / "report.csv", out / "report.json"
        csv_path.write_text(report.to_csv())
        json_path.write_text(report.to_json())
    except OSError as exc:
        raise OSError(f"cannot write report under {out}: {exc}") from exc
    return csv_path, json_path
