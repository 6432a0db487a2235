"""``memgrad`` command line interface.

Exit codes: 0 success, 1 usage error, 2 numerical error, 3 divergence.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .. import analysis, objectives, tuning
from .._jit import BACKEND
from ..algorithms import SolverConfig, solve
from ..errors import InputError, NumericalError
from . import experiments
from .traces import TRACE_COLUMNS, fmt, trace_rows, write_rows

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_DIVERGED = 0, 1, 2, 3

ALGORITHMS = {
    "gd": (1, "plain"),
    "fg": (2, "plain"),
    "fg-re": (2, "restart"),
    "sigma": (None, "plain"),
    "sigma-re": (None, "restart"),
    "sigma-ml": (None, "multileg"),
}

DEFAULT_X0 = {"rosenbrock": (-1.0, 1.0), "rastrigin": (5.0, 5.0)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _points(text: str):
    out = []
    for part in text.split(";"):
        part = part.strip()
        out.append(part if part == "zeros" else tuple(_floats(part)))
    return out


def cmd_params(args) -> int:
    if args.kappa is not None:
        kappa = args.kappa
    elif args.mu is not None and args.lip is not None:
        if not (0 < args.mu < args.lip):
            raise InputError("need 0 < mu < lip")
        kappa = args.mu / args.lip
    else:
        raise InputError("give --kappa or both --mu and --lip")
    p = tuning.TuningParams.synthesise(args.memory, kappa)
    print(f"memory = {p.memory}")
    print(f"kappa = {fmt(p.kappa)}")
    print(f"gamma = {fmt(p.gamma)}")
    for j, t in enumerate(p.theta):
        print(f"theta[{j}] = {fmt(float(t))}")
    print(f"sum_theta = {fmt(float(np.sum(p.theta)))}")
    if p.memory == 2:
        print(f"beta = {fmt(p.beta)}")
    return EXIT_OK


def _objective(args) -> objectives.Objective:
    f = args.function
    if f == "ex1":
        if args.dim is None or args.lip is None:
            raise InputError("ex1 needs --dim and --lip")
        return objectives.make_ex1(args.dim, args.lip, mu=args.mu or 1.0, scaling=args.scaling)
    if f == "ex2":
        if args.dim is None:
            raise InputError("ex2 needs --dim")
        return objectives.make_ex2(args.dim, mu=args.mu, lip=args.lip)
    if f == "nesterov":
        if args.dim is None:
            raise InputError("nesterov needs --dim")
        return objectives.make_nesterov_truncated(args.dim, args.mu or 1.0, args.qf,
                                                  boundary=args.boundary)
    if f == "rosenbrock":
        return objectives.make_rosenbrock(literal=args.literal)
    if f == "rastrigin":
        return objectives.make_rastrigin(args.dim or 2)
    raise InputError(f"unknown function {f!r}")


def cmd_solve(args) -> int:
    obj = _objective(args)
    c = obj.claimed_class
    mu = c.mu if args.mu is None else args.mu
    lip = c.lip if args.lip is None else args.lip
    memory, mode = ALGORITHMS[args.algorithm]
    if memory is None:
        if args.memory is None:
            raise InputError(f"--algorithm {args.algorithm} needs --memory")
        memory = args.memory
    cfg = SolverConfig(memory, mu, lip, mode, max_iter=args.max_iter,
                       grad_tol=args.grad_tol, f_tol=args.f_tol)
    x0 = args.x0
    if x0 in ("zeros", "paper-default"):
        x0 = DEFAULT_X0.get(args.function) if x0 == "paper-default" else None
        x0 = np.zeros(obj.dim) if x0 is None else np.array(x0)
    else:
        x0 = np.array(_floats(x0))
    name = args.algorithm if args.algorithm in ("gd", "fg", "fg-re") else cfg.name
    res = solve(obj, cfg, x0, name=name)
    if args.out:
        write_rows(Path(args.out), TRACE_COLUMNS, trace_rows(res))
    else:
        write_rows_stdout(res)
    f = res.f_value
    fmin = float(np.min(f)) if f.size else res.f0
    print(f"# {res.algorithm}: {res.iterations} iterations, status {res.status}, "
          f"min f {fmt(fmin)}, fevals {res.total_fevals}", file=sys.stderr)
    return EXIT_DIVERGED if res.diverged else EXIT_OK


def write_rows_stdout(res) -> None:
    import csv
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for row in trace_rows(res):
        w.writerow([fmt(v) for v in row])


def cmd_bench(args) -> int:
    overrides = {}
    for key in ("dim", "mu", "lip", "max_iter", "qf", "boundary", "scaling",
                "restart", "multileg", "plain", "grid_n", "grid_lo", "grid_hi",
                "memories", "kappa", "grid"):
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = v
    if args.x0 is not None:
        overrides["x0"] = _points(args.x0)
    allowed = experiments.DEFAULTS[args.experiment]
    dropped = sorted(set(overrides) - set(allowed))
    if dropped:
        raise InputError(f"options {dropped} do not apply to experiment {args.experiment}")
    spec = experiments.ExperimentSpec(args.experiment, overrides)
    out = Path(args.out) if args.out else Path("bench_out") / args.experiment
    rows = experiments.run_experiment(spec, out)
    print(f"# backend {BACKEND}; wrote {args.experiment} results to {out}")
    for row in rows:
        print(",".join(fmt(v) for v in row))
    return EXIT_OK


def cmd_rho_sweep(args) -> int:
    rows = analysis.rho_sweep(args.memory, args.kappa, args.grid)
    header, body = ("m", "rho"), [(r.m_value, r.rho) for r in rows]
    if args.out:
        write_rows(Path(args.out), header, body)
    else:
        print(",".join(header))
        for r in body:
            print(",".join(fmt(v) for v in r))
    band = analysis.instability_interval(rows)
    rmax = max(r.rho for r in rows)
    summary = f"max_rho = {fmt(rmax)}; unstable_interval = "
    summary += "none" if band is None else f"[{fmt(band[0])}, {fmt(band[1])}]"
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="memgrad", description="Gradient methods with memory.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("params", help="print gamma, theta and beta")
    q.add_argument("--memory", type=int, required=True)
    q.add_argument("--mu", type=float)
    q.add_argument("--lip", type=float)
    q.add_argument("--kappa", type=float)
    q.set_defaults(func=cmd_params)

    s = sub.add_parser("solve", help="run one solver and write its trace")
    s.add_argument("--function", required=True,
                   choices=("ex1", "ex2", "nesterov", "rosenbrock", "rastrigin"))
    s.add_argument("--algorithm", required=True, choices=tuple(ALGORITHMS))
    s.add_argument("--memory", type=int)
    s.add_argument("--mu", type=float)
    s.add_argument("--lip", type=float)
    s.add_argument("--dim", type=int)
    s.add_argument("--qf", type=float, default=1e6)
    s.add_argument("--boundary", choices=("free", "zero"), default="free")
    s.add_argument("--scaling", choices=("half", "literal"), default="half")
    s.add_argument("--literal", action="store_true", help="quadratic Rosenbrock variant")
    s.add_argument("--x0", default="paper-default",
                   help="comma-separated point, 'zeros' or 'paper-default'")
    s.add_argument("--max-iter", type=int, default=10_000)
    s.add_argument("--grad-tol", type=float, default=0.0)
    s.add_argument("--f-tol", type=float, default=0.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run a registered experiment")
    b.add_argument("--experiment", required=True, choices=experiments.NAMES)
    b.add_argument("--out")
    b.add_argument("--dim", type=int)
    b.add_argument("--mu", type=float)
    b.add_argument("--lip", type=float)
    b.add_argument("--qf", type=float)
    b.add_argument("--boundary", choices=("free", "zero"))
    b.add_argument("--scaling", choices=("half", "literal"))
    b.add_argument("--x0", help="';'-separated start points, each comma-separated or 'zeros'")
    b.add_argument("--max-iter", type=int)
    b.add_argument("--restart", type=_ints, help="memories run with restarting")
    b.add_argument("--multileg", type=_ints, help="memories run multi-legged")
    b.add_argument("--plain", type=_ints, help="memories run without control")
    b.add_argument("--grid-n", type=int)
    b.add_argument("--grid-lo", type=float)
    b.add_argument("--grid-hi", type=float)
    b.add_argument("--memories", type=_ints, help="rho-sweep memories")
    b.add_argument("--kappa", type=float)
    b.add_argument("--grid", type=int)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("rho-sweep", help="root radius over the mode gain m")
    r.add_argument("--memory", type=int, required=True)
    r.add_argument("--kappa", type=float, required=True)
    r.add_argument("--grid", type=int, default=2001)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rho_sweep)
    return p


def _join_negative_points(argv):
    """Rewrite ``--x0 -1,1`` as ``--x0=-1,1`` so argparse keeps the value."""
    out = list(argv)
    i = 0
    while i < len(out) - 1:
        if out[i] == "--x0" and out[i + 1].startswith("-"):
            out[i:i + 2] = [f"--x0={out[i + 1]}"]
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_points(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"memgrad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"memgrad: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
