"""Hot loops: objective value/gradient kernels and the solver state machine.

Everything here is compiled with numba unless ``MEMGRAD_DISABLE_NUMBA`` is
set, in which case the identical source runs under numpy. Objectives are
described by an integer kind plus arrays so that one compiled driver serves
all of them.
"""

import math

import numpy as np

from ._jit import njit

# objective kinds
DENSE = 0  # 0.5 x'Mx + b'x
DIAG = 1  # 0.5 sum(a x^2) + b'x
ONES_DIAG = 2  # H = 11' + diag(a)
TRIDIAG = 3  # H = diag(a) + par[0] * (sub + super diagonal)
ROSENBROCK = 4  # par[0] == 1 selects the literal (quadratic) variant
RASTRIGIN = 5

# driver modes
PLAIN = 0
RESTART = 1
MULTILEG = 2

# termination status
ST_MAX_ITER = 0
ST_GRAD_TOL = 1
ST_STALL = 2
ST_DIVERGED = 3


@njit
def hess_vec(kind, par, mat, a, x):
    if kind == DENSE:
        return np.dot(mat, x)
    if kind == DIAG:
        return a * x
    if kind == ONES_DIAG:
        return np.sum(x) + a * x
    # TRIDIAG
    out = a * x
    out[:-1] += par[0] * x[1:]
    out[1:] += par[0] * x[:-1]
    return out


@njit
def value(kind, par, mat, a, b, x):
    if kind == ROSENBROCK:
        if par[0] == 1.0:
            r = x[1] - x[0]
        else:
            r = x[1] - x[0] * x[0]
        s = 1.0 - x[0]
        return s * s + 100.0 * r * r
    if kind == RASTRIGIN:
        return 10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x))
    return 0.5 * np.dot(x, hess_vec(kind, par, mat, a, x)) + np.dot(b, x)


@njit
def grad(kind, par, mat, a, b, x):
    if kind == ROSENBROCK:
        g = np.empty(2)
        if par[0] == 1.0:
            r = x[1] - x[0]
            g[0] = -2.0 * (1.0 - x[0]) - 200.0 * r
        else:
            r = x[1] - x[0] * x[0]
            g[0] = -2.0 * (1.0 - x[0]) - 400.0 * x[0] * r
        g[1] = 200.0 * r
        return g
    if kind == RASTRIGIN:
        return 2.0 * x + 20.0 * np.pi * np.sin(2.0 * np.pi * x)
    return hess_vec(kind, par, mat, a, x) + b


@njit
def combine(hist, head, theta, level):
    """y = sum_j theta[j] * hist[newest - j] for j < level, newest first."""
    depth = hist.shape[0]
    y = theta[0] * hist[head]
    for j in range(1, level):
        y = y + theta[j] * hist[(head + j) % depth]
    return y


@njit
def _all_finite(v):
    for i in range(v.size):
        if not math.isfinite(v[i]):
            return False
    return True


@njit
def _sqdist(x, xstar):
    d = x - xstar
    return np.dot(d, d)


@njit
def drive(kind, par, mat, a, b, x0, thetas, lip, mode, max_iter,
          grad_tol, f_tol, stall_window, div_factor, xstar, record_path):
    """Run one solver to termination.

    ``thetas[j - 1, :j]`` holds the coefficients for memory level ``j``;
    the deepest level is ``thetas.shape[0]``. ``xstar`` of size zero means
    the minimiser is unknown (squared errors come back as NaN).

    Returns ``(rows, f, gnorm, err, level, fevals, status, x_final, f0,
    g0, e0, path)`` where the per-step arrays hold ``rows`` entries and
    ``fevals`` is cumulative.
    """
    depth = thetas.shape[0]
    n = x0.size
    has_star = xstar.size == n

    hist = np.empty((depth, n))
    for i in range(depth):
        hist[i] = x0
    head = 0

    f_out = np.empty(max_iter)
    g_out = np.empty(max_iter)
    e_out = np.full(max_iter, np.nan)
    lvl_out = np.zeros(max_iter, dtype=np.int64)
    fev_out = np.zeros(max_iter, dtype=np.int64)
    best_out = np.empty(max_iter)
    path = np.empty((max_iter if record_path else 0, n))

    xk = x0.copy()
    fx = value(kind, par, mat, a, b, xk)
    gx = grad(kind, par, mat, a, b, xk)
    gn = math.sqrt(np.dot(gx, gx))
    f0 = fx
    g0 = gn
    e0 = _sqdist(xk, xstar) if has_star else np.nan
    fevals = 1
    f_best = fx
    ceiling = f0 + div_factor * max(1.0, abs(f0))

    status = ST_MAX_ITER
    rows = 0
    for k in range(max_iter):
        if grad_tol > 0.0 and gn <= grad_tol:
            status = ST_GRAD_TOL
            break

        if mode == PLAIN:
            y = combine(hist, head, thetas[depth - 1], depth)
            xn = y - grad(kind, par, mat, a, b, y) / lip
            fn = value(kind, par, mat, a, b, xn)
            fevals += 1
            lvl = depth
        elif mode == RESTART:
            lvl = 1
            xn = xk
            fn = fx
            for j in range(depth, 1, -1):
                y = combine(hist, head, thetas[j - 1], j)
                cand = y - grad(kind, par, mat, a, b, y) / lip
                fc = value(kind, par, mat, a, b, cand)
                fevals += 1
                if math.isfinite(fc) and fc - fx <= 0.0:
                    xn = cand
                    fn = fc
                    lvl = j
                    break
            if lvl == 1:
                # innermost fallback: gradient step, accepted unconditionally
                xn = xk - gx / lip
                fn = value(kind, par, mat, a, b, xn)
                fevals += 1
        else:
            xn = xk - gx / lip
            fn = value(kind, par, mat, a, b, xn)
            fevals += 1
            lvl = 1
            if not math.isfinite(fn):
                fn = np.inf
            for j in range(2, depth + 1):
                y = combine(hist, head, thetas[j - 1], j)
                cand = y - grad(kind, par, mat, a, b, y) / lip
                fc = value(kind, par, mat, a, b, cand)
                fevals += 1
                if math.isfinite(fc) and fc < fn:
                    xn = cand
                    fn = fc
                    lvl = j

        head = (head - 1) % depth
        hist[head] = xn
        xk = hist[head]
        fx = fn
        gx = grad(kind, par, mat, a, b, xk)
        gn = math.sqrt(np.dot(gx, gx))

        f_out[k] = fx
        g_out[k] = gn
        if has_star:
            e_out[k] = _sqdist(xk, xstar)
        lvl_out[k] = lvl
        fev_out[k] = fevals
        if record_path:
            path[k] = xk
        rows = k + 1

        if not (math.isfinite(fx) and math.isfinite(gn) and _all_finite(xk)) \
                or fx > ceiling:
            status = ST_DIVERGED
            break

        if fx < f_best:
            f_best = fx
        best_out[k] = f_best
        if f_tol > 0.0 and k >= stall_window:
            if best_out[k - stall_window] - f_best <= f_tol:
                status = ST_STALL
                break

    return (rows, f_out[:rows], g_out[:rows], e_out[:rows], lvl_out[:rows],
            fev_out[:rows], status, xk.copy(), f0, g0, e0,
            path[:rows] if record_path else path)


@njit
def mode_recursion(coeffs, w_init, steps):
    """|w_k| for w_{k+1} = sum_j coeffs[j] * w_{k-j}, newest-first history.

    Entry 0 of the result is |w_init[0]|.
    """
    depth = coeffs.size
    hist = w_init.copy()
    out = np.empty(steps + 1)
    out[0] = abs(hist[0])
    for k in range(steps):
        nxt = 0.0
        for j in range(depth):
            nxt += coeffs[j] * hist[j]
        for j in range(depth - 1, 0, -1):
            hist[j] = hist[j - 1]
        hist[0] = nxt
        out[k + 1] = abs(nxt)
    return out
