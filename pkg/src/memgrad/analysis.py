"""Characteristic polynomials, root radius and robustness sweeps.

On a quadratic, the error component along a Hessian eigenvector with
eigenvalue ``lam`` follows ``w_{k+1} = sum_j theta[j] m w_{k-j}`` with
``m = 1 - lam/L``. Its characteristic polynomial is

    p(r; m) = r^N - sum_j theta[j] m r^(N-1-j),

and the mode converges iff the root radius of ``p`` is below one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg

from . import kernels
from .errors import InputError, NumericalError
from .tuning import m_of, theta


@dataclass(frozen=True)
class PolynomialSpec:
    """Monic real polynomial, coefficients highest power first."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.float64)
        if c.ndim != 1 or c.size < 1 or c[0] != 1.0:
            raise InputError("PolynomialSpec needs a monic coefficient vector")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, r):
        return np.polyval(self.coeffs, r)


@dataclass(frozen=True)
class RhoSweepRow:
    m_value: float
    rho: float


@dataclass(frozen=True)
class TransferFunction:
    """Ratio of polynomials in ``z``, highest power first."""

    numerator: np.ndarray
    denominator: np.ndarray

    def __call__(self, z):
        return np.polyval(self.numerator, z) / np.polyval(self.denominator, z)

    def poles(self) -> np.ndarray:
        return np.roots(self.denominator)


def char_poly(theta_vec, m: float) -> PolynomialSpec:
    theta_vec = np.asarray(theta_vec, dtype=np.float64)
    if not (0.0 <= m <= 1.0):
        raise InputError(f"m must lie in [0, 1], got {m}")
    return PolynomialSpec(np.concatenate(([1.0], -theta_vec * m)))


def root_radius(p: PolynomialSpec) -> float:
    """Largest root modulus, from the eigenvalues of the companion matrix.

    LAPACK balances the matrix first. For an ``N``-fold root the computed
    radius is only accurate to about ``eps**(1/N)``.
    """
    if p.degree < 1:
        raise InputError("root radius needs degree >= 1")
    c = p.coeffs
    if not np.any(c[1:]):
        return 0.0
    try:
        ev = np.linalg.eigvals(scipy.linalg.companion(c))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue solver failed: {exc}") from exc
    return float(np.max(np.abs(ev)))


def rho_sweep(memory: int, kappa: float, grid: int) -> list[RhoSweepRow]:
    """Root radius of ``p(r; m)`` for ``m`` uniform on ``[0, 1 - kappa]``."""
    if grid < 2:
        raise InputError(f"grid must be >= 2, got {grid}")
    th = theta(memory, kappa)
    ms = np.linspace(0.0, m_of(kappa), grid)
    return [RhoSweepRow(float(m), root_radius(char_poly(th, float(m)))) for m in ms]


def instability_interval(rows: list[RhoSweepRow]) -> tuple[float, float] | None:
    """``[m_lo, m_hi]`` spanning the grid points with ``rho > 1``."""
    bad = [r.m_value for r in rows if r.rho > 1.0]
    if not bad:
        return None
    return min(bad), max(bad)


def transfer_function(memory: int, kappa: float,
                      variant: Literal["printed", "char"] = "printed") -> TransferFunction:
    """Linear part ``G_N(z)`` of the loop-transformed algorithm.

    ``G_N(z) = -(1 - kappa) S(z) / (z + S(z))`` with
    ``S(z) = sum_j m(kappa) theta[j] z^-j``, multiplied through by
    ``z^(N-1)``. ``variant="char"`` flips the sign of ``S`` in the
    denominator, which places the poles at the designed root ``gamma``.
    """
    if variant not in ("printed", "char"):
        raise InputError(f"unknown variant {variant!r}")
    s = m_of(kappa) * theta(memory, kappa)
    num = -(1.0 - kappa) * s
    den = np.concatenate(([1.0], s if variant == "printed" else -s))
    return TransferFunction(num, den)


def mode_decay(memory: int, kappa: float, lambda_ratio: float, steps: int) -> np.ndarray:
    """``|w_k|, k = 0..steps`` of one error mode from an all-ones history."""
    if steps < memory:
        raise InputError(f"steps must be >= memory, got {steps}")
    if not (kappa <= lambda_ratio <= 1.0):
        raise InputError(f"lambda_ratio must lie in [kappa, 1], got {lambda_ratio}")
    coeffs = theta(memory, kappa) * m_of(lambda_ratio)
    with np.errstate(all="ignore"):
        return kernels.mode_recursion(coeffs, np.ones(memory), int(steps))

