"""Closed-form parameters for gradient methods with memory.

For memory ``N`` the coefficients ``theta`` are chosen so that the slowest
mode of a quadratic (Hessian eigenvalue ``mu``) has characteristic
polynomial ``(r - gamma)^N`` with ``gamma = 1 - kappa**(1/N)``. Matching
coefficients gives

    theta[j] = (-1)**j * C(N, j+1) * gamma**(j+1) / (1 - kappa),

where ``theta[j]`` multiplies the iterate ``x_{k-j}``. ``N = 1`` is gradient
descent and ``N = 2`` is Nesterov's fast gradient method.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .errors import InputError


def _check(memory: int, kappa: float) -> None:
    if int(memory) != memory or memory < 1:
        raise InputError(f"memory must be a positive integer, got {memory}")
    if not (0.0 < kappa < 1.0):
        raise InputError(f"kappa must lie in (0, 1), got {kappa}")


def m_of(s):
    """Mode gain ``m(s) = 1 - s`` for an eigenvalue ratio ``s = lambda / L``."""
    return 1.0 - s


def gamma(memory: int, kappa: float) -> float:
    """Common root ``1 - kappa**(1/memory)``."""
    _check(memory, kappa)
    return 1.0 - kappa ** (1.0 / memory)


def theta(memory: int, kappa: float) -> np.ndarray:
    """Coefficient vector of length ``memory``; newest iterate first."""
    _check(memory, kappa)
    g = gamma(memory, kappa)
    m = m_of(kappa)
    return np.array([(-1) ** j * comb(memory, j + 1) * g ** (j + 1) / m
                     for j in range(memory)])


def fg_beta(kappa: float) -> float:
    """Momentum of the fast gradient method, ``(1 - sqrt k) / (1 + sqrt k)``."""
    _check(1, kappa)
    s = sqrt(kappa)
    return (1.0 - s) / (1.0 + s)


def rate_bound(memory: int, kappa: float, k: int) -> float:
    """Contraction ``gamma**k`` of the slowest mode after ``k`` steps."""
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    return gamma(memory, kappa) ** k


def theta_table(memory: int, kappa: float) -> np.ndarray:
    """``(memory, memory)`` array whose row ``j-1`` is ``theta(j)`` zero-padded."""
    out = np.zeros((memory, memory))
    for j in range(1, memory + 1):
        out[j - 1, :j] = theta(j, kappa)
    return out


@dataclass(frozen=True)
class TuningParams:
    memory: int
    kappa: float
    gamma: float
    theta: np.ndarray

    @classmethod
    def synthesise(cls, memory: int, kappa: float) -> "TuningParams":
        return cls(memory, kappa, gamma(memory, kappa), theta(memory, kappa))

    @property
    def m(self) -> float:
        return m_of(self.kappa)

    @property
    def beta(self) -> float | None:
        """FG momentum when ``memory == 2``."""
        return fg_beta(self.kappa) if self.memory == 2 else None
