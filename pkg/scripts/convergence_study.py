"""Error against exact solutions as the grid is refined.

Two problems with known solutions:

* ``relaxation``: cD^a u = -u, u(0) = 1, exact u = E_a(-t^a);
* ``sin-forced``: cD^a u = u + cD^a sin - sin, u(0) = 0, exact u = sin.

The second one amplifies every local error roughly like E_a(t^a), so the
error at a fixed horizon is large unless h is very small. The table shows
both the error and the observed order.

    python scripts/convergence_study.py --problem sin-forced --t-end 12.566 --n 1024 2048 4096
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from fracperiod import fodesolve, specfun
from fracperiod.fracops import UniformGrid


def exact(problem: str, alpha: float, t: np.ndarray) -> np.ndarray:
    if problem == "relaxation":
        return np.array([specfun.mittag_leffler(alpha, 1.0, -(x**alpha)).value for x in t])
    return np.sin(t)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--problem", choices=("relaxation", "sin-forced"), default="relaxation")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--n", type=int, nargs="+", default=[256, 512, 1024, 2048, 4096])
    p.add_argument("--sweeps", type=int, default=2)
    args = p.parse_args(argv)

    if args.problem == "relaxation":
        rhs, u0 = fodesolve.linear_rhs(-1.0), 1.0
    else:
        rhs, u0 = fodesolve.paper_example_rhs(args.alpha), 0.0

    print("n,h,max_error,order,max_residual")
    prev = None
    for n in sorted(args.n):
        res = fodesolve.solve_caputo(rhs, args.alpha, u0, UniformGrid(args.t_end, n), args.sweeps)
        traj = res.trajectory
        err = float(np.max(np.abs(traj.values - exact(args.problem, args.alpha, traj.t))))
        order = math.log2(prev / err) if prev else float("nan")
        print(f"{n},{traj.grid.h:.6g},{err:.6g},{order:.3f},{res.max_residual:.3g}")
        sys.stdout.flush()
        prev = err
    return 0


if __name__ == "__main__":
    sys.exit(main())
