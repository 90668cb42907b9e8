"""Monte Carlo harness comparing sampled complexes with theory curves.

Every experiment is a grid of parameter points times a number of trials.
Trial ``i`` at point ``j`` draws from ``default_rng(trial_seed)`` where
``trial_seed`` is the first 64-bit word of ``SeedSequence(seed,
spawn_key=(j, i))``; the seed is stored on the record, so any record can be
replayed on its own.  Summaries are pure functions of the records.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import predictions as pred
from .boolean import ArityBudgetError, MAX_ENUMERATION_ARITY, evasive_census
from .complex import (
    ResourceError,
    SimplicialComplex,
    count_induced_copies,
    euler_characteristic,
    full_mask,
    has_complete_skeleton,
    subsets_of_size,
)
from .generators import (
    AdmissiblePair,
    free_sets,
    sample_admissible_pair,
    sample_pure_random,
    sample_uniform_layer,
)
from .homology import verify_lower_bound
from .shellability import (
    h_vector,
    is_shellable,
    shelling_obstruction,
    uniform_layer_obstruction,
)
from .textio import parse_pair, read_complex

EXPERIMENTS = ("skeleton", "euler", "homology", "shell", "subcomplex", "census")


@dataclass
class ExperimentConfig:
    experiment: str
    model: str = "pure"
    n: list[int] = field(default_factory=lambda: [12])
    t: int | str | None = None
    p: list[float] = field(default_factory=lambda: [0.5])
    p_scale: str = "absolute"
    t_prime: int | None = None
    k: int | None = None
    regime: str = "constant"
    q: float = 0.0
    trials: int = 100
    seed: int = 0
    workers: int = 1
    field_char: int = 2
    pair: dict | str | None = None
    pattern: str | None = None
    out: str | None = None
    format: str = "csv"
    mem_budget_mb: int = 512
    node_budget: int = 200_000
    exact_max_facets: int = 12
    obstruction_max_facets: int = 50_000
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if isinstance(self.n, int):
            self.n = [self.n]
        if isinstance(self.p, (int, float)):
            self.p = [float(self.p)]
        if self.model not in ("pure", "uniform"):
            raise ValueError("model must be 'pure' or 'uniform'")
        if self.p_scale not in ("absolute", "threshold", "per_n"):
            raise ValueError("p_scale must be absolute, threshold or per_n")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.n or not self.p:
            raise ValueError("parameter grids must be nonempty")
        if self.seed is None:
            raise ValueError("a seed is required")

    @classmethod
    def from_json(cls, path: str | Path, experiment: str | None = None,
                  **overrides) -> "ExperimentConfig":
        """Load a config; ``experiment`` only fills in a missing tag."""
        data = json.loads(Path(path).read_text())
        if experiment is not None:
            data.setdefault("experiment", experiment)
        data.update({k: v for k, v in overrides.items() if v is not None})
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config fields {sorted(unknown)}")
        return cls(**data)

    @property
    def mem_budget_entries(self) -> int:
        return self.mem_budget_mb * 1024 * 1024 // 8

    def tolerance(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))


DEFAULT_TOLERANCES = {
    "skeleton_high": 0.9,
    "skeleton_low": 0.1,
    "euler_point_mass": 0.05,
    "euler_spread_p99": 10.0,
    "h_sign_fraction": 0.95,
    "copies_present": 0.9,
    "copies_absent": 0.99,
    "holes_z": 3.0,
}


# -- seeding ---------------------------------------------------------------------

def trial_seed(seed: int, point: int, trial: int) -> int:
    ss = np.random.SeedSequence(seed, spawn_key=(point, trial))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _pair_rng(seed: int, point: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(point,)))


# -- grid ------------------------------------------------------------------------------

@dataclass(frozen=True)
class GridPoint:
    index: int
    n: int
    t: int
    p: float
    p_input: float
    t_prime: int | None


def _layer(config: ExperimentConfig, n: int) -> int:
    t = config.t
    if t is None or t == "floor":
        return n // 2
    if t == "ceil":
        return (n + 1) // 2
    return int(t)


def _t_prime(config: ExperimentConfig, t: int) -> int | None:
    if config.t_prime is not None:
        return config.t_prime
    if config.k is not None:
        return t - config.k
    return None


def skeleton_prediction(n: int, t: int, t_prime: int, regime: str, q: float = 0.0) -> float:
    if regime == "linear":
        upper, _ = pred.skeleton_threshold_linear(pred.ThresholdSpec(n, t / n, t - t_prime, q))
        return upper.value
    return pred.skeleton_threshold_constant_t(n, t, t_prime, 0.0)


def grid_points(config: ExperimentConfig) -> list[GridPoint]:
    points = []
    for n in config.n:
        t = _layer(config, n)
        tp = _t_prime(config, t)
        for p_in in config.p:
            if config.model == "uniform":
                p = 0.5
            elif config.p_scale == "per_n":
                p = p_in / n
            elif config.p_scale == "threshold":
                if tp is None:
                    raise ValueError("threshold-relative p needs t_prime or k")
                p = p_in * skeleton_prediction(n, t, tp, config.regime, config.q)
            else:
                p = p_in
            if not 0 <= p <= 1:
                raise ValueError(f"grid point n={n}, p={p_in} gives p={p} outside [0, 1]")
            points.append(GridPoint(len(points), n, t, p, p_in, tp))
    return points


# -- sampling -----------------------------------------------------------------------

@lru_cache(maxsize=16)
def _free(pair: AdmissiblePair) -> tuple[int, ...]:
    return tuple(free_sets(pair))


def _pair_for(config: ExperimentConfig, point: GridPoint) -> AdmissiblePair:
    spec = config.pair
    if spec is None:
        return AdmissiblePair(point.n, point.t)
    if isinstance(spec, str):
        n, t, a, b = parse_pair(Path(spec).read_text())
        if (n, t) != (point.n, point.t):
            raise ValueError(f"pair file is for n={n}, t={t}, grid point has n={point.n}, t={point.t}")
        return AdmissiblePair(n, t, tuple(sorted(a)), tuple(sorted(b)))
    return sample_admissible_pair(point.n, point.t, rng=_pair_rng(config.seed, point.index),
                                  **spec)


def sample_for(config: ExperimentConfig, point: GridPoint,
               rng: np.random.Generator) -> tuple[SimplicialComplex, AdmissiblePair | None]:
    if config.model == "uniform":
        pair = _pair_for(config, point)
        return sample_uniform_layer(pair, rng, list(_free(pair))), pair
    return sample_pure_random(point.n, point.t, point.p, rng), None


def hole_candidates(pair: AdmissiblePair) -> list[int]:
    """(t+1)-sets whose t-subsets are all free."""
    free = set(_free(pair))
    everything = full_mask(pair.n)
    pool = {f | b for f in free for b in _bits(everything & ~f)}
    return sorted(x for x in pool if all(x ^ b in free for b in _bits(x)))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


# -- trials ------------------------------------------------------------------------

def _trial_skeleton(config, point, rng):
    cx, _ = sample_for(config, point, rng)
    tp = point.t_prime if point.t_prime is not None else point.t - 1
    row = {"t_prime": tp, "facets": cx.facet_count, "max_face_size": cx.dim_size,
           "complete": int(has_complete_skeleton(cx, tp))}
    if config.model == "pure" and tp < point.t:
        row["p_threshold"] = skeleton_prediction(point.n, point.t, tp, config.regime, config.q)
    return row


def _trial_euler(config, point, rng):
    cx, _ = sample_for(config, point, rng)
    chi = euler_characteristic(cx)
    return {"chi": chi, "facets": cx.facet_count,
            "chi_scaled": chi / pred.euler_scale(point.n),
            "chi_center": pred.euler_center(point.n, point.t)}


def _trial_homology(config, point, rng):
    cx, pair = sample_for(config, point, rng)
    s = point.t + 1
    cands = hole_candidates(pair) if pair is not None and (pair.A or pair.B) else None
    report = verify_lower_bound(cx, s, config.field_char, cands, budget=config.mem_budget_entries)
    cert = report.certificate
    p = 0.5 if config.model == "uniform" else point.p
    return {"betti_top": report.betti, "X": cert.holes, "Y": cert.shared,
            "lower_bound": cert.lower_bound, "applicable": int(report.applicable),
            "bound_holds": int(report.betti >= cert.lower_bound),
            "expected_X": pred.expected_holes(point.n, point.t, p)}


def _trial_shell(config, point, rng):
    cx, pair = sample_for(config, point, rng)
    row: dict[str, Any] = {"facets": cx.facet_count}
    if cx.is_pure():
        h = h_vector(cx)
        row["h_top"] = h.h_top
        row["h_sign"] = (h.h_top > 0) - (h.h_top < 0)
    else:
        row["h_top"] = None
        row["h_sign"] = None
    row["h_threshold"] = pred.h_t_sign_threshold(point.n, point.t) if point.t >= 2 else None
    verdict = None
    obstruction = None
    if pair is not None and uniform_layer_obstruction(cx, point.t):
        verdict = "not-shellable"
        obstruction = "two bundles in layer t+1"
    if cx.is_pure() and cx.facet_count <= config.obstruction_max_facets:
        obs = shelling_obstruction(cx)
        row["gx_obstruction"] = int(obs is not None)
        if obs is not None and verdict is None:
            verdict = "not-shellable"
            obstruction = obs.describe()
    else:
        row["gx_obstruction"] = None
    if verdict is None and cx.facet_count <= config.exact_max_facets:
        result = is_shellable(cx, config.node_budget)
        verdict = result.verdict
        if verdict == "budget-exceeded":
            raise ResourceError("shellability search exceeded its node budget")
    row["verdict"] = verdict
    row["obstruction"] = obstruction
    return row


def named_pattern(name: str, t: int) -> SimplicialComplex:
    """Built-in patterns on t+1 or t+2 vertices, made of t-sets."""
    if name == "ridge-minus-one":
        m = t + 1
        sets = list(subsets_of_size(full_mask(m), t))[1:]
        return SimplicialComplex(m, sets)
    if name == "full-layer-plus-two":
        m = t + 2
        return SimplicialComplex(m, subsets_of_size(full_mask(m), t))
    if name == "single-facet":
        return SimplicialComplex(t, [full_mask(t)])
    raise ValueError(f"unknown pattern {name!r}")


def _pattern_for(config: ExperimentConfig, point: GridPoint) -> SimplicialComplex:
    spec = config.pattern or "ridge-minus-one"
    if Path(spec).suffix or "/" in spec:
        return read_complex(spec)
    return named_pattern(spec, point.t)


def _trial_subcomplex(config, point, rng):
    cx, _ = sample_for(config, point, rng)
    pattern = _pattern_for(config, point)
    copies = count_induced_copies(cx, pattern)
    row = {"pattern_vertices": pattern.n, "copies": copies, "present": int(copies > 0)}
    if pattern.n == point.t + 1:
        row["copy_scale"] = pred.induced_copy_scale(point.n)
    return row


TRIALS: dict[str, Callable] = {
    "skeleton": _trial_skeleton,
    "euler": _trial_euler,
    "homology": _trial_homology,
    "shell": _trial_shell,
    "subcomplex": _trial_subcomplex,
}


# -- running ---------------------------------------------------------------------

def run_trial(config: ExperimentConfig, point: GridPoint, trial: int) -> dict:
    ts = trial_seed(config.seed, point.index, trial)
    record: dict[str, Any] = {
        "experiment": config.experiment, "model": config.model, "point": point.index,
        "n": point.n, "t": point.t, "p": point.p, "trial": trial,
        "seed": config.seed, "trial_seed": ts, "status": "ok",
    }
    try:
        record.update(TRIALS[config.experiment](config, point, np.random.default_rng(ts)))
    except ResourceError as exc:
        record["status"] = "budget-exceeded"
        record["message"] = str(exc)
    return record


def _run_task(args):
    config, point, trial = args
    return run_trial(config, point, trial)


def run_experiment(config: ExperimentConfig) -> list[dict]:
    if config.experiment == "census":
        return run_evasive_census(config)
    tasks = [(config, point, i) for point in grid_points(config) for i in range(config.trials)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * config.workers))))
    else:
        records = [_run_task(task) for task in tasks]
    records.sort(key=lambda r: (r["point"], r["trial"]))
    return records


def replay_record(config: ExperimentConfig, point_index: int, trial: int) -> dict:
    point = grid_points(config)[point_index]
    return run_trial(config, point, trial)


def _with(experiment: str, config: ExperimentConfig) -> ExperimentConfig:
    if config.experiment != experiment:
        raise ValueError(f"config is for {config.experiment!r}, not {experiment!r}")
    return config


def run_skeleton_scan(config: ExperimentConfig) -> list[dict]:
    return run_experiment(_with("skeleton", config))


def run_euler_experiment(config: ExperimentConfig) -> list[dict]:
    return run_experiment(_with("euler", config))


def run_homology_experiment(config: ExperimentConfig) -> list[dict]:
    return run_experiment(_with("homology", config))


def run_shellability_scan(config: ExperimentConfig) -> list[dict]:
    return run_experiment(_with("shell", config))


def run_subcomplex_experiment(config: ExperimentConfig) -> list[dict]:
    return run_experiment(_with("subcomplex", config))


def run_evasive_census(config: ExperimentConfig) -> list[dict]:
    _with("census", config)
    rows = []
    for n in config.n:
        if n > MAX_ENUMERATION_ARITY:
            raise ArityBudgetError(
                f"census refused for n={n}: exact enumeration is limited to "
                f"n <= {MAX_ENUMERATION_ARITY} (n=6 already has 7,828,354 functions)")
        rows.append({"experiment": "census", "status": "ok", **evasive_census(n).as_dict()})
    return rows


# -- summaries ------------------------------------------------------------------------

def _by_point(records: list[dict]) -> dict[int, list[dict]]:
    groups: dict[int, list[dict]] = {}
    for r in records:
        if r.get("status") == "ok":
            groups.setdefault(r["point"], []).append(r)
    return groups


def _head(rows: list[dict]) -> dict:
    r = rows[0]
    return {"point": r["point"], "n": r["n"], "t": r["t"], "p": r["p"], "trials": len(rows)}


def summarize_skeleton(records):
    out = []
    for rows in _by_point(records).values():
        s = _head(rows)
        s["t_prime"] = rows[0]["t_prime"]
        s["complete_fraction"] = sum(r["complete"] for r in rows) / len(rows)
        s["max_face_size"] = max(r["max_face_size"] for r in rows)
        if "p_threshold" in rows[0]:
            s["p_threshold"] = rows[0]["p_threshold"]
            s["p_over_threshold"] = rows[0]["p"] / rows[0]["p_threshold"]
        out.append(s)
    return out


def summarize_euler(records):
    out = []
    for rows in _by_point(records).values():
        chis = [r["chi"] for r in rows]
        n = rows[0]["n"]
        s = _head(rows)
        counts = Counter(chis)
        median = statistics.median(chis)
        spread = sorted(abs(c - median) / pred.euler_scale(n) for c in chis)
        s.update({
            "mean": statistics.fmean(chis),
            "median": median,
            "stdev": statistics.pstdev(chis),
            "max_point_mass": max(counts.values()) / len(chis),
            "point_mass_scaled": max(counts.values()) / len(chis) / pred.point_mass_scale(n),
            "spread_p99": float(np.percentile(spread, 99)),
            "max_abs_chi_scaled": max(abs(c) for c in chis) / pred.euler_scale(n),
            "chi_center": rows[0]["chi_center"],
        })
        out.append(s)
    return out


def summarize_homology(records):
    out = []
    for rows in _by_point(records).values():
        xs = [r["X"] for r in rows]
        s = _head(rows)
        mean = statistics.fmean(xs)
        se = statistics.stdev(xs) / math.sqrt(len(xs)) if len(xs) > 1 else float("nan")
        expected = rows[0]["expected_X"]
        s.update({
            "mean_X": mean, "se_X": se, "expected_X": expected,
            "z": (mean - expected) / se if se and se > 0 else float("nan"),
            "mean_Y": statistics.fmean(r["Y"] for r in rows),
            "mean_betti_top": statistics.fmean(r["betti_top"] for r in rows),
            "bound_holds_all": all(r["bound_holds"] for r in rows if r["applicable"]),
            "applicable_fraction": sum(r["applicable"] for r in rows) / len(rows),
        })
        out.append(s)
    return out


def summarize_shell(records):
    out = []
    for rows in _by_point(records).values():
        s = _head(rows)
        signs = [r["h_sign"] for r in rows if r["h_sign"] is not None]
        obs = [r["gx_obstruction"] for r in rows if r["gx_obstruction"] is not None]
        s.update({
            "h_negative_fraction": sum(x < 0 for x in signs) / len(signs) if signs else None,
            "h_positive_fraction": sum(x > 0 for x in signs) / len(signs) if signs else None,
            "h_threshold": rows[0]["h_threshold"],
            "obstruction_fraction": sum(obs) / len(obs) if obs else None,
            "verdicts": dict(Counter(str(r["verdict"]) for r in rows)),
        })
        out.append(s)
    return out


def summarize_subcomplex(records):
    out = []
    for rows in _by_point(records).values():
        s = _head(rows)
        s.update({
            "present_fraction": sum(r["present"] for r in rows) / len(rows),
            "mean_copies": statistics.fmean(r["copies"] for r in rows),
            "copy_scale": rows[0].get("copy_scale"),
        })
        out.append(s)
    return out


def summarize_census(records):
    return [{k: r[k] for k in ("n", "total", "evasive", "fraction", "kss_violations")}
            for r in records]


SUMMARIES = {
    "skeleton": summarize_skeleton,
    "euler": summarize_euler,
    "homology": summarize_homology,
    "shell": summarize_shell,
    "subcomplex": summarize_subcomplex,
    "census": summarize_census,
}


def summarize(config: ExperimentConfig, records: list[dict]) -> list[dict]:
    return SUMMARIES[config.experiment](records)


# -- output ------------------------------------------------------------------------

_BASE = ["experiment", "model", "point", "n", "t", "p", "trial", "seed", "trial_seed", "status"]
COLUMNS = {
    "skeleton": _BASE + ["t_prime", "facets", "max_face_size", "complete", "p_threshold"],
    "euler": _BASE + ["chi", "facets", "chi_scaled", "chi_center"],
    "homology": _BASE + ["betti_top", "X", "Y", "lower_bound", "applicable", "bound_holds",
                         "expected_X"],
    "shell": _BASE + ["facets", "h_top", "h_sign", "h_threshold", "gx_obstruction", "verdict",
                      "obstruction"],
    "subcomplex": _BASE + ["pattern_vertices", "copies", "present", "copy_scale"],
    "census": ["experiment", "status", "n", "total", "constants", "evasive", "fraction",
               "nontrivial_homology", "kss_violations"],
}


def to_csv(config: ExperimentConfig, records: list[dict]) -> str:
    buf = io.StringIO()
    cols = COLUMNS[config.experiment] + ["message"]
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow({c: "" if r.get(c) is None else r.get(c) for c in cols})
    return buf.getvalue()


def to_json(config: ExperimentConfig, records: list[dict]) -> str:
    tol = {**DEFAULT_TOLERANCES, **config.tolerances}
    payload = {"config": asdict(config), "tolerances": tol, "records": records,
               "summary": summarize(config, records)}
    return json.dumps(payload, indent=2, default=str)


def write_results(config: ExperimentConfig, records: list[dict]) -> str:
    text = to_json(config, records) if config.format == "json" else to_csv(config, records)
    if config.out:
        Path(config.out).write_text(text)
    return text


def any_budget_exceeded(records: list[dict]) -> bool:
    return any(r.get("status") == "budget-exceeded" for r in records)


__all__ = [
    "ExperimentConfig",
    "grid_points",
    "replay_record",
    "run_euler_experiment",
    "run_evasive_census",
    "run_experiment",
    "run_homology_experiment",
    "run_shellability_scan",
    "run_skeleton_scan",
    "run_subcomplex_experiment",
    "summarize",
    "trial_seed",
    "write_results",
]

