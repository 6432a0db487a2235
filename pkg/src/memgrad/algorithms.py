"""Gradient methods with memory and their restart-based controllers.

Three drivers share one compiled state machine (:func:`memgrad.kernels.drive`):

* ``plain``    -- the memory-``N`` update on its own, may diverge;
* ``restart``  -- try levels ``N, N-1, ..., 2`` and keep the first one that
  does not increase ``f``; otherwise take a gradient step;
* ``multileg`` -- evaluate every level ``1..N`` and keep the best.

The history starts as ``N`` copies of ``x0``, so the first step of every
driver is a gradient step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterator, Literal

import numpy as np

from . import kernels
from .errors import InputError, NumericalError
from .objectives import Objective, exact_minimiser
from .tuning import theta_table

Mode = Literal["plain", "restart", "multileg"]
_MODE_CODES = {"plain": kernels.PLAIN, "restart": kernels.RESTART, "multileg": kernels.MULTILEG}
STATUS_NAMES = {
    kernels.ST_MAX_ITER: "max_iter",
    kernels.ST_GRAD_TOL: "grad_tol",
    kernels.ST_STALL: "stalled",
    kernels.ST_DIVERGED: "diverged",
}


class HistoryBuffer:
    """The last ``N`` accepted iterates, newest first."""

    def __init__(self, x0, memory: int):
        if memory < 1:
            raise InputError(f"memory must be >= 1, got {memory}")
        x0 = np.array(x0, dtype=np.float64)
        self._entries = deque((x0.copy() for _ in range(memory)), maxlen=memory)

    def __len__(self):
        return len(self._entries)

    def __getitem__(self, j):
        return self._entries[j]

    @property
    def entries(self) -> list[np.ndarray]:
        return list(self._entries)

    def top(self, level: int) -> list[np.ndarray]:
        return list(self._entries)[:level]

    def push(self, x) -> None:
        self._entries.appendleft(np.array(x, dtype=np.float64))


def step_T(theta, lip: float, obj: Objective, history) -> np.ndarray:
    """One memory step ``y - grad f(y) / lip`` with ``y = sum_j theta[j] history[j]``.

    ``history`` may be a :class:`HistoryBuffer` or a newest-first sequence
    of at least ``len(theta)`` points; only the first ``len(theta)`` are
    used. The candidate is not pushed.
    """
    theta = np.asarray(theta, dtype=np.float64)
    level = theta.size
    entries = list(history)[:level] if not isinstance(history, HistoryBuffer) else history.top(level)
    if len(entries) != level:
        raise InputError(f"need {level} history entries, got {len(entries)}")
    stack = np.empty((level, obj.dim))
    for j, e in enumerate(entries):
        e = np.asarray(e, dtype=np.float64)
        if e.shape != (obj.dim,):
            raise InputError(f"history entry {j} has shape {e.shape}, expected ({obj.dim},)")
        stack[j] = e
    y = kernels.combine(stack, 0, theta, level)
    g = obj.grad(y)
    if not np.all(np.isfinite(g)):
        raise NumericalError("non-finite gradient in memory step")
    return y - g / lip


@dataclass(frozen=True)
class SolverConfig:
    memory: int
    mu: float
    lip: float
    mode: Mode = "plain"
    max_iter: int = 10_000
    grad_tol: float = 0.0
    f_tol: float = 0.0
    stall_window: int = 50
    div_factor: float = 1e6

    def __post_init__(self):
        if self.memory < 1:
            raise InputError(f"memory must be >= 1, got {self.memory}")
        if not (0.0 < self.mu < self.lip):
            raise InputError(f"need 0 < mu < lip, got mu={self.mu}, lip={self.lip}")
        if self.max_iter < 1:
            raise InputError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.mode not in _MODE_CODES:
            raise InputError(f"unknown mode {self.mode!r}")
        if self.grad_tol < 0 or self.f_tol < 0:
            raise InputError("tolerances must be nonnegative")

    @classmethod
    def for_objective(cls, obj: Objective, memory: int, mode: Mode = "plain", **kw):
        """Config using the objective's claimed ``(mu, lip)``."""
        c = obj.claimed_class
        return cls(memory, kw.pop("mu", c.mu), kw.pop("lip", c.lip), mode, **kw)

    @property
    def kappa(self) -> float:
        return self.mu / self.lip

    @property
    def name(self) -> str:
        suffix = {"plain": "", "restart": "-re", "multileg": "-ml"}[self.mode]
        return f"sigma{self.memory}{suffix}"


@dataclass(frozen=True)
class TraceRecord:
    k: int
    level: int
    f_value: float
    grad_norm: float
    err_sq: float | None
    restarted: bool
    fevals: int


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Trace of one run. Row ``i`` describes iterate ``x_{i+1}``."""

    config: SolverConfig
    algorithm: str
    f_value: np.ndarray
    grad_norm: np.ndarray
    err_sq: np.ndarray
    level: np.ndarray
    fevals: np.ndarray
    status: str
    x: np.ndarray
    f0: float
    grad_norm0: float
    err_sq0: float | None
    x0: np.ndarray | None = field(default=None)
    path: np.ndarray | None = field(default=None)

    @property
    def iterations(self) -> int:
        return int(self.f_value.size)

    @property
    def diverged(self) -> bool:
        return self.status == "diverged"

    @property
    def restarted(self) -> np.ndarray:
        if self.config.mode == "plain":
            return np.zeros(self.iterations, dtype=bool)
        return self.level < self.config.memory

    @property
    def total_fevals(self) -> int:
        return int(self.fevals[-1]) if self.iterations else 1

    @property
    def rel_err(self) -> np.ndarray | None:
        """``|x_k - x*|^2 / |x_0 - x*|^2`` per row, if ``x*`` was given."""
        if self.err_sq0 is None:
            return None
        return self.err_sq / self.err_sq0

    def records(self) -> Iterator[TraceRecord]:
        restarted = self.restarted
        has_err = self.err_sq0 is not None
        for i in range(self.iterations):
            yield TraceRecord(
                k=i + 1,
                level=int(self.level[i]),
                f_value=float(self.f_value[i]),
                grad_norm=float(self.grad_norm[i]),
                err_sq=float(self.err_sq[i]) if has_err else None,
                restarted=bool(restarted[i]),
                fevals=int(self.fevals[i]),
            )

    def first_below(self, values: np.ndarray | None, tol: float) -> int | None:
        """First 1-based iteration index at which ``values <= tol``."""
        if values is None:
            return None
        hit = np.flatnonzero(values <= tol)
        return int(hit[0]) + 1 if hit.size else None


def solve(obj: Objective, config: SolverConfig, x0, xstar="auto",
          record_path: bool = False, name: str | None = None) -> SolveResult:
    """Run the driver selected by ``config.mode``.

    ``xstar="auto"`` uses :func:`exact_minimiser` (quadratics only);
    pass an array to override or ``None`` to skip error tracking.
    """
    x0 = np.ascontiguousarray(x0, dtype=np.float64)
    if x0.shape != (obj.dim,):
        raise InputError(f"x0 has shape {x0.shape}, expected ({obj.dim},)")
    if isinstance(xstar, str):
        if xstar != "auto":
            raise InputError(f"xstar must be 'auto', None or an array, got {xstar!r}")
        xstar = exact_minimiser(obj)
    star = np.zeros(0) if xstar is None else np.ascontiguousarray(xstar, dtype=np.float64)
    if xstar is not None and star.shape != (obj.dim,):
        raise InputError(f"xstar has shape {star.shape}, expected ({obj.dim},)")

    thetas = theta_table(config.memory, config.kappa)
    with np.errstate(all="ignore"):
        (rows, f, g, e, lvl, fev, status, x, f0, g0, e0, path) = kernels.drive(
            *obj.kernel_args(), x0, thetas, float(config.lip),
            _MODE_CODES[config.mode], int(config.max_iter), float(config.grad_tol),
            float(config.f_tol), int(config.stall_window), float(config.div_factor),
            star, bool(record_path))
    return SolveResult(
        config=config,
        algorithm=name or config.name,
        f_value=f, grad_norm=g, err_sq=e, level=lvl, fevals=fev,
        status=STATUS_NAMES[int(status)], x=x,
        f0=float(f0), grad_norm0=float(g0),
        err_sq0=None if xstar is None else float(e0),
        x0=x0,
        path=path if record_path else None,
    )


def _require(config: SolverConfig, mode: str) -> None:
    if config.mode != mode:
        raise InputError(f"config.mode is {config.mode!r}, expected {mode!r}")


def run_plain(obj, config, x0, **kw) -> SolveResult:
    _require(config, "plain")
    return solve(obj, config, x0, **kw)


def run_restart(obj, config, x0, **kw) -> SolveResult:
    _require(config, "restart")
    return solve(obj, config, x0, **kw)


def run_multileg(obj, config, x0, **kw) -> SolveResult:
    _require(config, "multileg")
    return solve(obj, config, x0, **kw)


def run_gd(obj, config, x0, **kw) -> SolveResult:
    """Gradient descent with step ``1/lip``."""
    return solve(obj, replace(config, memory=1, mode="plain"), x0, name="gd", **kw)


def run_fg(obj, config, x0, restart: bool = False, **kw) -> SolveResult:
    """Fast gradient method, optionally with function-value restarting."""
    cfg = replace(config, memory=2, mode="restart" if restart else "plain")
    return solve(obj, cfg, x0, name="fg-re" if restart else "fg", **kw)
