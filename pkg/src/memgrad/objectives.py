"""Objective functions with analytic gradients.

Every objective carries the problem class ``(mu, lip, dim)`` it is *claimed*
to belong to. The claim is an input to the solvers and is never checked
against the function: the non-convex benchmarks are deliberately run with
constants that do not bound their curvature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
import scipy.linalg

from . import kernels
from .errors import InputError, NumericalError

IDENTIFIERS = (
    "quadratic-general",
    "ex1",
    "ex2",
    "nesterov-truncated",
    "rosenbrock",
    "rastrigin",
)

_EMPTY_MAT = np.zeros((0, 0))
_EMPTY_VEC = np.zeros(0)


@dataclass(frozen=True)
class ProblemClass:
    """Bounds ``mu <= curvature <= lip`` on ``R^dim``."""

    mu: float
    lip: float
    dim: int

    def __post_init__(self):
        if not (0.0 < self.mu < self.lip):
            raise InputError(f"need 0 < mu < lip, got mu={self.mu}, lip={self.lip}")
        if self.dim < 1:
            raise InputError(f"dim must be >= 1, got {self.dim}")

    @property
    def kappa(self) -> float:
        """Reciprocal condition number ``mu / lip``."""
        return self.mu / self.lip


@dataclass(frozen=True)
class QuadraticForm:
    """``f(x) = 0.5 x'Hx + h'x`` with a dense symmetric Hessian."""

    hessian: np.ndarray
    linear: np.ndarray

    def value(self, x):
        return 0.5 * x @ (self.hessian @ x) + self.linear @ x

    def grad(self, x):
        return self.hessian @ x + self.linear


@dataclass(frozen=True, eq=False)
class Objective:
    """A smooth function ``R^dim -> R`` evaluated by the compiled kernels.

    ``kind``/``par``/``mat``/``a``/``b`` are the kernel encoding; see
    :mod:`memgrad.kernels` for their meaning per kind.
    """

    identifier: str
    parameters: dict[str, Any]
    claimed_class: ProblemClass
    kind: int
    par: np.ndarray = field(default_factory=lambda: _EMPTY_VEC)
    mat: np.ndarray = field(default_factory=lambda: _EMPTY_MAT)
    a: np.ndarray = field(default_factory=lambda: _EMPTY_VEC)
    b: np.ndarray = field(default_factory=lambda: _EMPTY_VEC)

    def __post_init__(self):
        for name in ("par", "mat", "a", "b"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def dim(self) -> int:
        return self.claimed_class.dim

    @property
    def is_quadratic(self) -> bool:
        return self.kind in (kernels.DENSE, kernels.DIAG, kernels.ONES_DIAG, kernels.TRIDIAG)

    def _point(self, x):
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.ndim != 1 or x.size != self.dim:
            raise InputError(f"{self.identifier} expects a vector of length {self.dim}, "
                             f"got shape {x.shape}")
        return x

    def value(self, x) -> float:
        x = self._point(x)
        return float(kernels.value(self.kind, self.par, self.mat, self.a, self.b, x))

    def grad(self, x) -> np.ndarray:
        x = self._point(x)
        return kernels.grad(self.kind, self.par, self.mat, self.a, self.b, x)

    def kernel_args(self):
        """Positional arguments ``(kind, par, mat, a, b)`` for the kernels."""
        return self.kind, self.par, self.mat, self.a, self.b

    def quadratic_form(self) -> QuadraticForm | None:
        """Dense ``(H, h)`` for quadratic objectives, ``None`` otherwise."""
        if not self.is_quadratic:
            return None
        return QuadraticForm(hessian_matrix(self), self.b.copy())

    def with_class(self, mu: float, lip: float) -> "Objective":
        """Same function, different claimed constants."""
        return Objective(self.identifier, dict(self.parameters),
                         ProblemClass(mu, lip, self.dim), self.kind,
                         self.par, self.mat, self.a, self.b)


def hessian_matrix(obj: Objective) -> np.ndarray:
    """Dense Hessian of a quadratic objective."""
    n = obj.dim
    if obj.kind == kernels.DENSE:
        return obj.mat.copy()
    if obj.kind == kernels.DIAG:
        return np.diag(obj.a)
    if obj.kind == kernels.ONES_DIAG:
        return np.ones((n, n)) + np.diag(obj.a)
    if obj.kind == kernels.TRIDIAG:
        off = np.full(n - 1, obj.par[0])
        return np.diag(obj.a) + np.diag(off, 1) + np.diag(off, -1)
    raise InputError(f"{obj.identifier} is not quadratic")


def make_quadratic(hessian, linear, mu: float, lip: float) -> Objective:
    """General quadratic ``0.5 x'Hx + h'x``; ``H`` is symmetrised."""
    H = np.asarray(hessian, dtype=np.float64)
    h = np.asarray(linear, dtype=np.float64)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or h.shape != (H.shape[0],):
        raise InputError(f"incompatible shapes {H.shape} and {h.shape}")
    H = 0.5 * (H + H.T)
    return Objective("quadratic-general", {}, ProblemClass(mu, lip, h.size),
                     kernels.DENSE, mat=H, b=h)


def make_ex1(n: int, lip: float, mu: float = 1.0, scaling: str = "half") -> Objective:
    """Quadratic whose Hessian eigenvalues cluster at ``lip``.

    ``scaling="literal"`` gives ``x1^2 + 1'x + sum_j (lip - j) x_{j+2}^2``
    (Hessian ``diag(2, 2 lip, 2(lip-1), ...)``). ``scaling="half"`` halves
    the quadratic part so the Hessian is ``diag(1, lip, lip-1, ...)`` and
    lies inside the claimed interval ``[mu, lip]`` for ``mu <= 1``.
    """
    if n < 2:
        raise InputError(f"ex1 needs n >= 2, got {n}")
    if lip <= n:
        raise InputError(f"ex1 needs lip > n, got lip={lip}, n={n}")
    if scaling not in ("half", "literal"):
        raise InputError(f"unknown ex1 scaling {scaling!r}")
    diag = np.concatenate(([1.0], lip - np.arange(n - 1, dtype=np.float64)))
    if scaling == "literal":
        diag = 2.0 * diag
    return Objective("ex1", {"n": n, "lip": lip, "scaling": scaling},
                     ProblemClass(mu, lip, n), kernels.DIAG, a=diag, b=np.ones(n))


def ex2_spectrum(n: int) -> np.ndarray:
    """Ascending eigenvalues of the ex2 Hessian."""
    H = np.ones((n, n)) + np.diag(np.arange(n, dtype=np.float64))
    return np.linalg.eigvalsh(H)


def make_ex2(n: int, mu: float | None = None, lip: float | None = None) -> Objective:
    """``0.5 x'Hx + h'x`` with ``H = 11' + diag(0, ..., n-1)``, ``h = (1, ..., n)``.

    Missing class constants default to the extreme eigenvalues of ``H``.
    """
    if n < 2:
        raise InputError(f"ex2 needs n >= 2, got {n}")
    if mu is None or lip is None:
        ev = ex2_spectrum(n)
        mu = float(ev[0]) if mu is None else mu
        lip = float(ev[-1]) if lip is None else lip
    return Objective("ex2", {"n": n}, ProblemClass(mu, lip, n), kernels.ONES_DIAG,
                     a=np.arange(n, dtype=np.float64),
                     b=np.arange(1, n + 1, dtype=np.float64))


def make_nesterov_truncated(n: int, mu: float, qf: float,
                            boundary: str = "free") -> Objective:
    """Truncated worst-case function of Nesterov,

        0.5 mu |x|^2 + mu (qf - 1) / 4 * (0.5 [x1^2 + sum_{i=1}^n (x_i - x_{i+1})^2] - x1).

    ``boundary="free"`` keeps ``x_{n+1}`` as a variable (dimension ``n + 1``);
    ``boundary="zero"`` pins ``x_{n+1} = 0`` (dimension ``n``), the classical
    finite-dimensional truncation. The claimed class is ``[mu, mu * qf]``.
    """
    if n < 1:
        raise InputError(f"nesterov needs n >= 1, got {n}")
    if qf <= 1.0:
        raise InputError(f"nesterov needs qf > 1, got {qf}")
    if mu <= 0.0:
        raise InputError(f"nesterov needs mu > 0, got {mu}")
    if boundary not in ("free", "zero"):
        raise InputError(f"unknown boundary {boundary!r}")
    c = mu * (qf - 1.0) / 4.0
    dim = n + 1 if boundary == "free" else n
    lap = np.full(dim, 2.0)
    if boundary == "free":
        lap[-1] = 1.0
    b = np.zeros(dim)
    b[0] = -c
    return Objective("nesterov-truncated", {"n": n, "mu": mu, "qf": qf, "boundary": boundary},
                     ProblemClass(mu, mu * qf, dim), kernels.TRIDIAG,
                     par=np.array([-c]), a=mu + c * lap, b=b)


def nesterov_rate(qf: float) -> float:
    """``q = (sqrt(qf) - 1) / (sqrt(qf) + 1)``; the infinite minimiser is ``q^k``."""
    s = np.sqrt(qf)
    return float((s - 1.0) / (s + 1.0))


def make_rosenbrock(mu: float = 1e-5, lip: float = 900.0, literal: bool = False) -> Objective:
    """Banana function ``(1 - x1)^2 + 100 (x2 - x1^2)^2``.

    ``literal=True`` swaps in ``(1 - x1)^2 + 100 (x2 - x1)^2``, a convex
    quadratic kept only for comparison.
    """
    return Objective("rosenbrock", {"literal": literal}, ProblemClass(mu, lip, 2),
                     kernels.ROSENBROCK, par=np.array([1.0 if literal else 0.0]))


def make_rastrigin(n: int, mu: float = 1.0, lip: float = 140.0) -> Objective:
    """``10 n + sum_j (x_j^2 - 10 cos(2 pi x_j))``."""
    if n < 1:
        raise InputError(f"rastrigin needs n >= 1, got {n}")
    return Objective("rastrigin", {"n": n}, ProblemClass(mu, lip, n), kernels.RASTRIGIN)


def exact_minimiser(obj: Objective) -> np.ndarray | None:
    """Solve ``H x* = -h`` for quadratic objectives; ``None`` otherwise."""
    if not obj.is_quadratic:
        return None
    h = obj.b
    try:
        if obj.kind == kernels.DIAG:
            if np.any(obj.a == 0.0):
                raise NumericalError("singular diagonal Hessian")
            xs = -h / obj.a
        elif obj.kind == kernels.TRIDIAG:
            n = obj.dim
            ab = np.zeros((3, n))
            ab[0, 1:] = obj.par[0]
            ab[1] = obj.a
            ab[2, :-1] = obj.par[0]
            xs = scipy.linalg.solve_banded((1, 1), ab, -h)
        else:
            xs = np.linalg.solve(hessian_matrix(obj), -h)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"cannot solve for the minimiser of {obj.identifier}: {exc}") from exc
    resid = np.max(np.abs(obj.grad(xs)))
    scale = max(np.max(np.abs(h)), np.finfo(float).tiny)
    if not np.isfinite(resid) or resid > 1e-8 * scale:
        raise NumericalError(f"minimiser residual {resid:.3e} too large for {obj.identifier}")
    return xs


def make(identifier: str, **kw) -> Objective:
    """Factory by identifier, used by the CLI."""
    builders = {
        "ex1": make_ex1,
        "ex2": make_ex2,
        "nesterov-truncated": make_nesterov_truncated,
        "nesterov": make_nesterov_truncated,
        "rosenbrock": make_rosenbrock,
        "rastrigin": make_rastrigin,
    }
    if identifier not in builders:
        raise InputError(f"unknown function {identifier!r}")
    return builders[identifier](**kw)
