"""Walk through the non-periodicity argument for one periodic signal.

Prints the kernel moments, the psi values against their bounds, the first
nonzero polynomial moment, and a defect scan of the sampled fractional
integral. Any nonzero entry in the first three blocks already rules out a
periodic fractional primitive.

    python scripts/nonperiodicity_demo.py --alpha 0.5 --period 6.283185307179586
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from fracperiod import laplace, periodicity
from fracperiod.fracops import GridFunction, UniformGrid, frac_integral


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--period", type=float, default=2 * math.pi)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--periods", type=int, default=4, help="length of the sampled window in periods")
    p.add_argument("--samples-per-period", type=int, default=1000)
    args = p.parse_args(argv)

    f = periodicity.PeriodicSignal.sine(args.period)
    T, a = f.period, args.alpha

    print(f"signal: {f.description}, alpha = {a}")
    print("\nkernel moments  int_0^T (nT - s)^(a-1) f(s) ds")
    for n in range(1, args.n_max + 1):
        print(f"  n = {n:2d}  {periodicity.kernel_moment(f, a, n): .12f}")

    parts = periodicity.mean_abs_parts(f)
    print(f"\nmean {parts[0]:.3g}, c+ = {parts[1]:.12f}, c- = {parts[2]:.12f}")
    print("\npsi(t) and its bounds")
    for t in (0.0, 1.0, 10.0, 100.0, 1e4, 1e6):
        lo, hi = periodicity.psi_bound(f, a, t, parts=parts)
        print(f"  t = {t:>9g}  {lo: .6e} <= {periodicity.psi_integral(f, a, t): .6e} <= {hi: .6e}")

    print("\n" + laplace.moment_extraction_demo(f, 3).verdict)

    grid = UniformGrid(args.periods * T, args.periods * args.samples_per_period)
    g = frac_integral(GridFunction.from_callable(lambda t: np.array([f(x) for x in t]), grid), a)
    reports = periodicity.defect_scan(g, 0.1 * T, (args.periods - 1) * T, 400)
    best = reports[0]
    print(
        f"\ndefect scan of I^a f over [{0.1 * T:.4g}, {(args.periods - 1) * T:.4g}]: "
        f"smallest sup defect {best.sup_defect:.4g} at T~ = {best.T_tilde:.6g}"
    )
    print(f"defect at the signal period: {periodicity.defect(g, T).sup_defect:.4g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
