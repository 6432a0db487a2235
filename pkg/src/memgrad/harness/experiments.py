"""Registry of the benchmark experiments and their default settings."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .. import analysis, objectives
from ..algorithms import SolveResult, SolverConfig, solve
from .traces import fmt, write_rows, write_trace

log = logging.getLogger(__name__)

NAMES = ("ex1", "ex2", "nesterov", "rosenbrock", "rastrigin", "rastrigin-grid", "rho-sweep")

SUMMARY_COLUMNS = ("experiment", "algorithm", "start", "x0", "iterations", "status",
                   "f_min", "f_final", "tol_metric", "tol", "iters_to_tol", "fevals")

DEFAULTS: dict[str, dict[str, Any]] = {
    "ex1": dict(dim=1000, mu=1.0, lip=1e4, x0=["zeros"], max_iter=10_000,
                restart=[1, 2, 3, 4, 5, 6], multileg=[6], plain=[6], scaling="half",
                tol_metric="rel_err", tol=1e-6),
    "ex2": dict(dim=1000, mu=None, lip=None, x0=["zeros"], max_iter=10_000,
                restart=[1, 2, 3, 4, 5, 6], multileg=[6], plain=[6],
                tol_metric="rel_err", tol=1e-6),
    "nesterov": dict(dim=1000, mu=1.0, lip=None, qf=1e6, x0=["zeros"], max_iter=10_000,
                     restart=[], multileg=[6], plain=[], boundary="free",
                     tol_metric="rel_err", tol=1e-6),
    "rosenbrock": dict(mu=1e-5, lip=900.0, x0=[(-1.0, 1.0)], max_iter=1000,
                       restart=[], multileg=[3, 4, 5, 6, 7, 8, 9], plain=[1, 2],
                       literal=False, tol_metric="f", tol=1e-10),
    "rastrigin": dict(dim=2, mu=1.0, lip=140.0, x0=[(5.0, 5.0), (-5.0, -3.0)],
                      max_iter=1000, restart=[], multileg=[6], plain=[1, 2],
                      tol_metric="f", tol=1e-6),
    "rastrigin-grid": dict(mu=1.0, lip=140.0, memory=6, max_iter=1000,
                           grid_n=61, grid_lo=-6.0, grid_hi=6.0),
    "rho-sweep": dict(memories=[1, 2, 3, 4, 5], kappa=0.01, grid=2001),
}


@dataclass
class ExperimentSpec:
    name: str
    overrides: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in NAMES:
            raise ValueError(f"unknown experiment {self.name!r}; choose from {', '.join(NAMES)}")
        unknown = set(self.overrides) - set(DEFAULTS[self.name])
        if unknown:
            raise ValueError(f"unknown overrides for {self.name}: {sorted(unknown)}")

    @property
    def settings(self) -> dict[str, Any]:
        s = dict(DEFAULTS[self.name])
        s.update({k: v for k, v in self.overrides.items() if v is not None})
        return s


def build_objective(name: str, s: dict[str, Any]) -> objectives.Objective:
    if name == "ex1":
        return objectives.make_ex1(s["dim"], s["lip"], mu=s["mu"], scaling=s["scaling"])
    if name == "ex2":
        return objectives.make_ex2(s["dim"], mu=s["mu"], lip=s["lip"])
    if name == "nesterov":
        obj = objectives.make_nesterov_truncated(s["dim"], s["mu"], s["qf"], boundary=s["boundary"])
        return obj if s["lip"] is None else obj.with_class(s["mu"], s["lip"])
    if name == "rosenbrock":
        return objectives.make_rosenbrock(s["mu"], s["lip"], literal=s["literal"])
    if name in ("rastrigin", "rastrigin-grid"):
        return objectives.make_rastrigin(s.get("dim", 2), s["mu"], s["lip"])
    raise ValueError(name)


def start_points(obj: objectives.Objective, specs) -> list[np.ndarray]:
    out = []
    for x in specs:
        if isinstance(x, str):
            if x != "zeros":
                raise ValueError(f"unknown start preset {x!r}")
            out.append(np.zeros(obj.dim))
        else:
            out.append(np.asarray(x, dtype=np.float64))
    return out


def algorithm_configs(obj, s) -> list[tuple[str, SolverConfig]]:
    c = obj.claimed_class
    runs = []
    for mode, key in (("restart", "restart"), ("multileg", "multileg"), ("plain", "plain")):
        for N in s[key]:
            cfg = SolverConfig(N, c.mu, c.lip, mode, max_iter=s["max_iter"])
            name = cfg.name
            if mode == "plain" and N in (1, 2):
                name = {1: "gd", 2: "fg"}[N]
            runs.append((name, cfg))
    return runs


def start_label(spec, x0) -> str:
    """Preset keyword, or the point itself as ``;``-separated values."""
    return spec if isinstance(spec, str) else ";".join(fmt(float(v)) for v in x0)


def summary_row(experiment: str, res: SolveResult, start: int, label: str, s) -> tuple:
    metric = s["tol_metric"]
    values = res.rel_err if metric == "rel_err" else res.f_value
    f = res.f_value
    return (experiment, res.algorithm, start, label,
            res.iterations, res.status,
            float(np.min(f)) if f.size else res.f0,
            float(f[-1]) if f.size else res.f0,
            metric, s["tol"], res.first_below(values, s["tol"]), res.total_fevals)


def run_trajectories(name: str, s: dict[str, Any], out: Path | None) -> list[tuple]:
    obj = build_objective(name, s)
    starts = start_points(obj, s["x0"])
    xstar = objectives.exact_minimiser(obj)
    rows, results = [], []
    for algo, cfg in algorithm_configs(obj, s):
        for i, x0 in enumerate(starts):
            res = solve(obj, cfg, x0, xstar=xstar, name=algo)
            log.info("%s %s start=%d: %d iterations, %s", name, algo, i, res.iterations, res.status)
            results.append(res)
            rows.append(summary_row(name, res, i, start_label(s["x0"][i], x0), s))
            if out is not None:
                tag = algo if len(starts) == 1 else f"{algo}_s{i}"
                write_trace(out / f"{name}_{tag}.csv", res)
    if out is not None:
        write_rows(out / f"{name}_summary.csv", SUMMARY_COLUMNS, rows)
        if name == "nesterov":
            write_nesterov_bound(out, s, results)
    return rows


def nesterov_bound_rows(qf: float, res: SolveResult):
    """``(k, rel_err, q^(2k))`` per accepted iterate."""
    q = objectives.nesterov_rate(qf)
    rel = res.rel_err
    k = np.arange(1, res.iterations + 1)
    return k, rel, q ** (2.0 * k)


def write_nesterov_bound(out: Path, s, results) -> None:
    header = ("algorithm", "k", "rel_err", "bound", "violated")
    rows, summary = [], []
    for res in results:
        k, rel, bound = nesterov_bound_rows(s["qf"], res)
        viol = rel < bound
        rows.extend((res.algorithm, int(kk), float(r), float(b), bool(v))
                    for kk, r, b, v in zip(k, rel, bound, viol))
        first = int(k[viol][0]) if viol.any() else None
        summary.append((res.algorithm, first, int(viol.sum()), float(np.min(rel / bound))))
    write_rows(out / "nesterov_bound.csv", header, rows)
    write_rows(out / "nesterov_bound_summary.csv",
               ("algorithm", "first_violation_k", "violations", "min_ratio_to_bound"), summary)


def rastrigin_grid(s: dict[str, Any]):
    """Minimum ``f`` over ``max_iter`` multileg steps for each grid start."""
    obj = objectives.make_rastrigin(2, s["mu"], s["lip"])
    cfg = SolverConfig(s["memory"], s["mu"], s["lip"], "multileg", max_iter=s["max_iter"])
    axis = np.linspace(s["grid_lo"], s["grid_hi"], s["grid_n"])
    fmin = np.empty((axis.size, axis.size))
    fevals = np.empty((axis.size, axis.size), dtype=np.int64)
    for i, x1 in enumerate(axis):
        for j, x2 in enumerate(axis):
            res = solve(obj, cfg, np.array([x1, x2]), xstar=None)
            fmin[i, j] = min(res.f0, float(np.min(res.f_value)))
            fevals[i, j] = res.total_fevals
    return axis, fmin, fevals


def run_rastrigin_grid(name, s, out: Path | None):
    axis, fmin, fevals = rastrigin_grid(s)
    if out is not None:
        with np.errstate(divide="ignore"):
            logf = np.log10(fmin)
        rows = ((float(axis[i]), float(axis[j]), float(fmin[i, j]), float(logf[i, j]))
                for i in range(axis.size) for j in range(axis.size))
        write_rows(out / "rastrigin-grid.csv", ("x1", "x2", "min_f", "log10_min_f"), rows)
        write_rows(out / "rastrigin-grid_summary.csv",
                   ("experiment", "grid_n", "starts", "best_min_f", "median_min_f", "fevals"),
                   [(name, s["grid_n"], int(fmin.size), float(fmin.min()),
                     float(np.median(fmin)), int(fevals.sum()))])
    return [(name, int(fmin.size), float(fmin.min()), float(np.median(fmin)))]


def run_rho(name, s, out: Path | None):
    rows = []
    for N in s["memories"]:
        sweep = analysis.rho_sweep(N, s["kappa"], s["grid"])
        band = analysis.instability_interval(sweep)
        rmax = max(r.rho for r in sweep)
        rows.append((N, s["kappa"], s["grid"], rmax,
                     None if band is None else band[0], None if band is None else band[1]))
        if out is not None:
            write_rows(out / f"rho-sweep_N{N}.csv", ("m", "rho"),
                       ((r.m_value, r.rho) for r in sweep))
    if out is not None:
        write_rows(out / "rho-sweep_summary.csv",
                   ("memory", "kappa", "grid", "max_rho", "unstable_m_lo", "unstable_m_hi"), rows)
    return rows


RUNNERS: dict[str, Callable] = {
    "ex1": run_trajectories,
    "ex2": run_trajectories,
    "nesterov": run_trajectories,
    "rosenbrock": run_trajectories,
    "rastrigin": run_trajectories,
    "rastrigin-grid": run_rastrigin_grid,
    "rho-sweep": run_rho,
}


def run_experiment(spec: ExperimentSpec, out: Path | None = None) -> list[tuple]:
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
    return RUNNERS[spec.name](spec.name, spec.settings, out)
