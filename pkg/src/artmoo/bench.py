"""Config-driven experiment harness: batch runs, persistence, summary statistics."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .indicators import hypervolume, igd_plus, normalize_for_hv, normalize_front
from .problems import make_problem, reference_front
from .rvea import run_rvea_baseline
from .rvea_ca import run_rvea_ca
from .stats import wilcoxon_rank_sum
from .variation import VariationParams

ALGORITHMS = ("rvea-ca", "rvea")

# population sizes and evaluation budgets by objective count
DEFAULT_POPULATION = {5: 210, 8: 240, 10: 230, 13: 182, 15: 240, 20: 230}
DEFAULT_EVALUATIONS = {5: 50190, 8: 80160, 10: 100050, 13: 130130, 15: 150000, 20: 200100}


class ConfigError(ValueError):
    """Invalid experiment configuration; reported before any run starts."""


class RunFailure(RuntimeError):
    """A run raised; carries the offending task for context."""


@dataclass
class ExperimentConfig:
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    problems: list = field(default_factory=list)  # (name, n_obj) pairs
    runs: int = 31
    seed: int = 0
    bandwidth_window: int = 100
    workers: int = 1
    out: str = "results"
    population: dict = field(default_factory=dict)  # n_obj -> pop size overrides
    budget: dict = field(default_factory=dict)  # n_obj -> evaluation overrides
    reference_algorithm: str = "rvea-ca"
    hv_reference: float = 1.5
    hv_samples: int = 10**6
    hv_seed: int = 0
    ref_points: int = 1000
    trace_every: int = 10

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
        cfg = cls(**raw)
        cfg.problems = [(str(name).lower(), int(m)) for name, m in cfg.problems]
        cfg.population = {int(k): int(v) for k, v in cfg.population.items()}
        cfg.budget = {int(k): int(v) for k, v in cfg.budget.items()}
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def validate(self) -> None:
        from .problems import available_problems

        if not self.problems:
            raise ConfigError("no problems configured")
        if not self.algorithms:
            raise ConfigError("no algorithms configured")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {algo!r}; available: {', '.join(ALGORITHMS)}")
        for name, m in self.problems:
            if name not in available_problems():
                raise ConfigError(f"unknown problem {name!r}; available: {', '.join(available_problems())}")
            self.pop_size(m)
            self.evaluations(m)
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    def pop_size(self, n_obj: int) -> int:
        value = self.population.get(n_obj, DEFAULT_POPULATION.get(n_obj))
        if value is None:
            raise ConfigError(f"no population size configured for M={n_obj}")
        return value

    def evaluations(self, n_obj: int) -> int:
        value = self.budget.get(n_obj, DEFAULT_EVALUATIONS.get(n_obj))
        if value is None:
            raise ConfigError(f"no evaluation budget configured for M={n_obj}")
        return value

    def generations(self, n_obj: int) -> int:
        # one initial evaluation pass, then one offspring batch per generation
        t_max = self.evaluations(n_obj) // self.pop_size(n_obj) - 1
        if t_max < 1:
            raise ConfigError(f"budget for M={n_obj} allows no offspring generation")
        return t_max


@dataclass
class RunRecord:
    """Persisted outcome of one run."""

    algorithm: str
    problem: str
    n_obj: int
    seed: int
    pop_size: int
    t_max: int
    hv: float
    igdp: float
    n_evaluations: int
    wall_clock: float
    final_objectives: list
    trace: list
    network: dict | None = None

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_dict(cls, raw: dict) -> "RunRecord":
        return cls(**raw)

    def basename(self) -> str:
        return f"{self.algorithm}_{self.problem}_M{self.n_obj}_s{self.seed}"


def execute_run(task: dict) -> RunRecord:
    """Run one (algorithm, problem, seed) cell; top-level so pools can pickle it."""
    problem = make_problem(task["problem"], task["n_obj"])
    front = reference_front(problem, task["ref_points"])
    q = np.full(task["n_obj"], task["hv_reference"])
    trace: list[dict] = []
    trace_every = task["trace_every"]
    t_max = task["t_max"]

    def hook(t, F, info):
        if trace_every and (t % trace_every == 0 or t == t_max):
            hv = hypervolume(
                normalize_for_hv(F, front), q, samples=task["hv_samples"], seed=task["hv_seed"]
            )
            trace.append(
                {
                    "t": t,
                    "hv": hv.value,
                    "igdp": igd_plus(normalize_front(F, front), front).value,
                    "nodes": info.get("nodes"),
                    "components": info.get("components"),
                    "v": info.get("v"),
                }
            )

    params = VariationParams()
    if task["algorithm"] == "rvea-ca":
        result = run_rvea_ca(
            problem,
            task["pop_size"],
            t_max,
            window=task["bandwidth_window"],
            params=params,
            rng=task["seed"],
            trace_hook=hook,
        )
    else:
        result = run_rvea_baseline(
            problem, task["pop_size"], t_max, params=params, rng=task["seed"], trace_hook=hook
        )
    hv = hypervolume(
        normalize_for_hv(result.objectives, front), q, samples=task["hv_samples"], seed=task["hv_seed"]
    )
    igdp = igd_plus(normalize_front(result.objectives, front), front)
    return RunRecord(
        algorithm=task["algorithm"],
        problem=task["problem"],
        n_obj=task["n_obj"],
        seed=task["seed"],
        pop_size=task["pop_size"],
        t_max=t_max,
        hv=hv.value,
        igdp=igdp.value,
        n_evaluations=result.n_evaluations,
        wall_clock=result.wall_clock,
        final_objectives=result.objectives.tolist(),
        trace=trace,
        network=result.network.to_json_dict() if result.network is not None else None,
    )


def _tasks(config: ExperimentConfig) -> list[dict]:
    tasks = []
    for algorithm in config.algorithms:
        for name, n_obj in config.problems:
            for i in range(config.runs):
                tasks.append(
                    {
                        "algorithm": algorithm,
                        "problem": name,
                        "n_obj": n_obj,
                        "seed": config.seed + i,
                        "pop_size": config.pop_size(n_obj),
                        "t_max": config.generations(n_obj),
                        "bandwidth_window": config.bandwidth_window,
                        "hv_reference": config.hv_reference,
                        "hv_samples": config.hv_samples,
                        "hv_seed": config.hv_seed,
                        "ref_points": config.ref_points,
                        "trace_every": config.trace_every,
                    }
                )
    return tasks


def run_experiment(config: ExperimentConfig, persist: bool = True) -> list[RunRecord]:
    """Execute all configured runs and, by default, write records and the summary.

    Results are canonically ordered by (algorithm, problem, M, seed) so worker
    counts do not affect the outputs.
    """
    config.validate()
    tasks = _tasks(config)
    try:
        if config.workers == 1:
            records = [execute_run(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                records = list(pool.map(execute_run, tasks))
    except ConfigError:
        raise
    except Exception as exc:  # noqa: BLE001 - report which run failed
        raise RunFailure(f"run failed: {exc}") from exc
    records.sort(key=lambda r: (r.algorithm, r.problem, r.n_obj, r.seed))
    if persist:
        persist_records(records, config)
    return records


def persist_records(records: list, config: ExperimentConfig) -> None:
    out = config.out
    os.makedirs(os.path.join(out, "runs"), exist_ok=True)
    os.makedirs(os.path.join(out, "trace"), exist_ok=True)
    for record in records:
        path = os.path.join(out, "runs", record.basename() + ".json")
        with open(path, "w") as fh:
            json.dump(record.to_json_dict(), fh)
        trace_path = os.path.join(out, "trace", record.basename() + ".csv")
        with open(trace_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "hv", "igdp", "nodes", "components", "V"])
            for row in record.trace:
                writer.writerow(
                    [
                        row["t"],
                        _fmt(row["hv"]),
                        _fmt(row["igdp"]),
                        "" if row["nodes"] is None else row["nodes"],
                        "" if row["components"] is None else row["components"],
                        _fmt(row["v"]),
                    ]
                )
    with open(os.path.join(out, "summary.csv"), "w", newline="") as fh:
        fh.write(summary_csv(records, config.reference_algorithm))


def load_records(out_dir) -> list:
    runs_dir = os.path.join(out_dir, "runs")
    records = []
    for name in sorted(os.listdir(runs_dir)):
        if name.endswith(".json"):
            with open(os.path.join(runs_dir, name)) as fh:
                records.append(RunRecord.from_json_dict(json.load(fh)))
    records.sort(key=lambda r: (r.algorithm, r.problem, r.n_obj, r.seed))
    return records


def _fmt(value) -> str:
    return "" if value is None else repr(float(value))


def _cells(records: list) -> dict:
    cells: dict = {}
    for record in records:
        cells.setdefault((record.problem, record.n_obj, record.algorithm), []).append(record)
    return cells


def _median_std(values: list) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return float(np.median(arr)), std


def summarize(records: list, reference_algorithm: str = "rvea-ca") -> list[dict]:
    """Per-cell medians, standard deviations, and marks against the reference."""
    cells = _cells(records)
    rows = []
    for (problem, n_obj, algorithm) in sorted(cells):
        group = cells[(problem, n_obj, algorithm)]
        hv_values = [r.hv for r in group]
        igdp_values = [r.igdp for r in group]
        hv_med, hv_std = _median_std(hv_values)
        igdp_med, igdp_std = _median_std(igdp_values)
        hv_mark = igdp_mark = ""
        ref = cells.get((problem, n_obj, reference_algorithm))
        if ref is not None and algorithm != reference_algorithm:
            ref_hv = [r.hv for r in ref]
            ref_igdp = [r.igdp for r in ref]
            if len(ref_hv) >= 2 and len(hv_values) >= 2:
                # marks follow the reference algorithm's point of view
                hv_mark = wilcoxon_rank_sum(ref_hv, hv_values, higher_better=True).sign
                igdp_mark = wilcoxon_rank_sum(ref_igdp, igdp_values, higher_better=False).sign
        rows.append(
            {
                "problem": problem,
                "M": n_obj,
                "algorithm": algorithm,
                "runs": len(group),
                "hv_median": hv_med,
                "hv_std": hv_std,
                "hv_mark": hv_mark,
                "igdp_median": igdp_med,
                "igdp_std": igdp_std,
                "igdp_mark": igdp_mark,
            }
        )
    return rows


def summary_csv(records: list, reference_algorithm: str = "rvea-ca") -> str:
    rows = summarize(records, reference_algorithm)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [
        "problem",
        "M",
        "algorithm",
        "runs",
        "hv_median",
        "hv_std",
        "hv_mark",
        "igdp_median",
        "igdp_std",
        "igdp_mark",
    ]
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [
                row["problem"],
                row["M"],
                row["algorithm"],
                row["runs"],
                repr(row["hv_median"]),
                repr(row["hv_std"]),
                row["hv_mark"],
                repr(row["igdp_median"]),
                repr(row["igdp_std"]),
                row["igdp_mark"],
            ]
        )
    return buf.getvalue()


def summary_table(records: list, reference_algorithm: str = "rvea-ca") -> str:
    """Aligned text rendering of the summary."""
    rows = summarize(records, reference_algorithm)
    header = ["problem", "M", "algorithm", "runs", "HV median (std)", "", "IGD+ median (std)", ""]
    table = [header]
    for row in rows:
        table.append(
            [
                row["problem"],
                str(row["M"]),
                row["algorithm"],
                str(row["runs"]),
                f"{row['hv_median']:.4e} ({row['hv_std']:.2e})",
                row["hv_mark"],
                f"{row['igdp_median']:.4e} ({row['igdp_std']:.2e})",
                row["igdp_mark"],
            ]
        )
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"
