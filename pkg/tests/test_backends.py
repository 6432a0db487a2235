import json
import os
import subprocess
import sys

import numpy as np
import pytest

import memgrad as mg
from memgrad.algorithms import SolverConfig, solve

SCRIPT = """
import json, sys
import numpy as np
import memgrad as mg
from memgrad.algorithms import SolverConfig, solve
out = {"backend": mg.BACKEND}
for mode in ("plain", "restart", "multileg"):
    obj = mg.make_rosenbrock()
    res = solve(obj, SolverConfig(5, 1e-5, 900.0, mode, max_iter=150), np.array([-1.0, 1.0]),
                xstar=None)
    out[mode] = [res.f_value.tolist(), res.level.tolist(), res.x.tolist()]
json.dump(out, sys.stdout)
"""


def in_process():
    out = {}
    for mode in ("plain", "restart", "multileg"):
        res = solve(mg.make_rosenbrock(), SolverConfig(5, 1e-5, 900.0, mode, max_iter=150),
                    np.array([-1.0, 1.0]), xstar=None)
        out[mode] = [res.f_value.tolist(), res.level.tolist(), res.x.tolist()]
    return out


@pytest.mark.parametrize("flag,backend", [("1", "numpy"), ("yes", "numpy"), ("0", "numba")])
def test_env_flag_selects_backend(flag, backend):
    env = dict(os.environ, MEMGRAD_DISABLE_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                          text=True, check=True)
    got = json.loads(proc.stdout)
    assert got.pop("backend") == backend
    # Rosenbrock involves no reductions, so both backends agree bit for bit
    assert got == in_process()


def test_backend_constant():
    assert mg.BACKEND in ("numba", "numpy")
