"""Accelerated first-order methods that combine several past iterates.

Memory ``N`` generalises gradient descent (``N = 1``) and the fast gradient
method (``N = 2``); restart and multi-leg controllers keep the faster but
fragile higher-memory updates monotone.
"""

from ._jit import BACKEND, USE_NUMBA
from .algorithms import (
    HistoryBuffer,
    SolveResult,
    SolverConfig,
    TraceRecord,
    run_fg,
    run_gd,
    run_multileg,
    run_plain,
    run_restart,
    solve,
    step_T,
)
from .analysis import (
    PolynomialSpec,
    RhoSweepRow,
    TransferFunction,
    char_poly,
    mode_decay,
    rho_sweep,
    root_radius,
    transfer_function,
)
from .errors import InputError, NumericalError
from .objectives import (
    Objective,
    ProblemClass,
    QuadraticForm,
    exact_minimiser,
    make_ex1,
    make_ex2,
    make_nesterov_truncated,
    make_quadratic,
    make_rastrigin,
    make_rosenbrock,
)
from .tuning import TuningParams, fg_beta, gamma, rate_bound, theta

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "char_poly",
    "exact_minimiser",
    "fg_beta",
    "gamma",
    "HistoryBuffer",
    "InputError",
    "make_ex1",
    "make_ex2",
    "make_nesterov_truncated",
    "make_quadratic",
    "make_rastrigin",
    "make_rosenbrock",
    "mode_decay",
    "NumericalError",
    "Objective",
    "PolynomialSpec",
    "ProblemClass",
    "QuadraticForm",
    "rate_bound",
    "rho_sweep",
    "RhoSweepRow",
    "root_radius",
    "run_fg",
    "run_gd",
    "run_multileg",
    "run_plain",
    "run_restart",
    "solve",
    "SolverConfig",
    "SolveResult",
    "step_T",
    "theta",
    "TraceRecord",
    "transfer_function",
    "TransferFunction",
    "TuningParams",
    "USE_NUMBA",
]

