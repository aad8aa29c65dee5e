"""The twelve acceptance criteria as runnable checks.

Each check returns a :class:`CriterionResult` with the measured quantities
in ``detail``. Thresholds are fixed here and are not configurable; only the
numerical settings in :class:`~fracperiod.config.Config` flow through.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from fracperiod import closedforms, fodesolve, laplace, periodicity, specfun
from fracperiod.config import Config
from fracperiod.fracops import (
    GridFunction,
    UniformGrid,
    compose_check,
    frac_integral,
    rl_derivative,
)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _sin_grid(t_end: float, n: int) -> GridFunction:
    return GridFunction.from_callable(np.sin, UniformGrid(t_end, n))


def representation_equality(cfg: Config) -> CriterionResult:
    ts = np.round(np.arange(1, 201) * 0.1, 12)
    worst = max(
        abs(closedforms.caputo_sin_1f2(a, t) - closedforms.caputo_sin_ml(a, t, radius=max(cfg.ml_radius, 20.0)))
        for a in (0.25, 0.5, 0.75)
        for t in ts
    )
    return CriterionResult(1, "representation equality", worst <= 1e-9, f"max diff {worst:.3g} (limit 1e-9)")


def composition_identities(cfg: Config) -> CriterionResult:
    f = _sin_grid(20.0, 20_000)
    left = compose_check(f, 0.5)
    back = rl_derivative(frac_integral(f, 0.5), 0.5)
    right = float(np.max(np.abs(back.values[1:] - f.values[1:])))
    ok = left <= 5e-3 and right <= 5e-3
    return CriterionResult(2, "composition identities", ok, f"I(cD f) {left:.3g}, D(I f) {right:.3g} (limit 5e-3)")


def semigroup(cfg: Config) -> CriterionResult:
    f = _sin_grid(10.0, 10_000)
    err = float(np.max(np.abs(frac_integral(frac_integral(f, 0.4), 0.3).values - frac_integral(f, 0.7).values)))
    return CriterionResult(3, "semigroup", err <= 1e-3, f"max diff {err:.3g} (limit 1e-3)")


def kernel_moment_contrapositive(cfg: Config) -> CriterionResult:
    f = periodicity.PeriodicSignal.sine()
    v = periodicity.kernel_moment(f, 0.5, 1, atol=cfg.quadrature_tol)
    w = periodicity.kernel_moment_composite(f, 0.5, 1)
    ok = abs(v - w) <= 1e-8 and abs(v) > 0.1
    return CriterionResult(4, "kernel moment", ok, f"V1 = {v:.12g}, routes differ by {abs(v - w):.3g}")


def psi_sandwich(cfg: Config) -> CriterionResult:
    f = periodicity.PeriodicSignal.sine()
    parts = periodicity.mean_abs_parts(f, atol=cfg.quadrature_tol)
    inside = True
    for t in (0.0, 1.0, 10.0, 100.0, 1e4):
        lo, hi = periodicity.psi_bound(f, 0.5, t, parts=parts)
        inside &= lo <= periodicity.psi_integral(f, 0.5, t, atol=cfg.quadrature_tol) <= hi
    psi_far = periodicity.psi_integral(f, 0.5, 1e4, atol=cfg.quadrature_tol)
    bound = 2 * ((TWO_PI + 1e4) ** 0.5 - 1e4**0.5)
    ok = inside and abs(psi_far) <= bound <= 0.07
    return CriterionResult(5, "psi sandwich", ok, f"inside={inside}, |psi(1e4)| {abs(psi_far):.4g} <= {bound:.4g}")


def laplace_closed_form(cfg: Config) -> CriterionResult:
    worst, lowest = 0.0, math.inf
    for a in (0.25, 0.5, 0.75):
        for s in (0.5, 1.0, 2.0, 5.0):
            closed = laplace.varphi_transform_closed(a, TWO_PI, s)
            num = laplace.laplace_numeric(
                lambda t, a=a: (TWO_PI + t) ** a, s, 40.0 / s, laplace.PowerTail(1.0, TWO_PI, a), cfg.quadrature_tol
            )
            worst = max(worst, abs(num - closed))
            lowest = min(lowest, closed)
    ok = worst <= 1e-6 and lowest > 0
    return CriterionResult(6, "Laplace closed form", ok, f"max diff {worst:.3g}, min value {lowest:.4g}")


def ratio_limit(cfg: Config) -> CriterionResult:
    errs = [abs(laplace.ratio_limit_check(T, Tt, [1e-8])[0] - T / Tt) for T, Tt in ((TWO_PI, math.pi), (1.0, 3.0))]
    return CriterionResult(7, "ratio limit", max(errs) <= 1e-6, f"errors {errs[0]:.3g}, {errs[1]:.3g}")


def moment_certificate(cfg: Config) -> CriterionResult:
    m = periodicity.moment_sequence(periodicity.PeriodicSignal.sine(), 1, atol=cfg.quadrature_tol)
    ok = abs(m[0]) <= 1e-10 and abs(m[1] + TWO_PI) <= 1e-8
    return CriterionResult(8, "moment certificate", ok, f"m0 {m[0]:.3g}, m1 + 2pi {m[1] + TWO_PI:.3g}")


def nonperiodicity_ratio(cfg: Config) -> CriterionResult:
    r1 = closedforms.nonperiodicity_ratio(0.5, math.pi, TWO_PI)
    r2 = closedforms.nonperiodicity_ratio(0.5, math.pi / 2, TWO_PI)
    ok = abs(r1 - 1) > 0.05 and abs(r2 - 1) > 0.05
    return CriterionResult(
        9, "non-periodicity ratio", ok, f"|r(pi) - 1| = {abs(r1 - 1):.4g}, |r(pi/2) - 1| = {abs(r2 - 1):.4g} (need > 0.05)"
    )


def solver_exactness(cfg: Config) -> CriterionResult:
    rhs = fodesolve.paper_example_rhs(0.5)
    runs = [
        fodesolve.solve_caputo(rhs, 0.5, 0.0, UniformGrid(4 * math.pi, n), cfg.corrector_sweeps) for n in (4096, 8192)
    ]
    errs = [float(np.max(np.abs(r.trajectory.values - np.sin(r.trajectory.t)))) for r in runs]
    d = periodicity.defect(runs[0].trajectory, TWO_PI).sup_defect
    ok = errs[0] <= 1e-2 and errs[0] / errs[1] >= 2 and d <= 2e-2
    return CriterionResult(
        10,
        "solver exactness",
        ok,
        f"max|u - sin| {errs[0]:.4g} (limit 1e-2), halving gain {errs[0] / errs[1]:.3g} (need 2), defect {d:.4g} (limit 2e-2)",
    )


def autonomous_certificate(cfg: Config) -> CriterionResult:
    res = fodesolve.solve_caputo(fodesolve.linear_rhs(-1.0), 0.5, 1.0, UniformGrid(10.0, 4096), cfg.corrector_sweeps)
    traj = res.trajectory
    exact = np.array([specfun.mittag_leffler(0.5, 1.0, -math.sqrt(t), radius=cfg.ml_radius).value for t in traj.t])
    err = float(np.max(np.abs(traj.values - exact)))
    margin = fodesolve.nonperiodicity_certificate(res, 0.5, 5.0, 200)[0].sup_defect
    eq = fodesolve.solve_caputo(fodesolve.linear_rhs(-1.0), 0.5, 0.0, UniformGrid(10.0, 1000), cfg.corrector_sweeps)
    eq_max = max(r.sup_defect for r in fodesolve.nonperiodicity_certificate(eq, 0.5, 5.0, 200))
    ok = err <= 1e-3 and margin > 0.05 and eq_max == 0
    return CriterionResult(
        11, "autonomous certificate", ok, f"ML error {err:.3g}, min defect {margin:.4g}, equilibrium defect {eq_max:g}"
    )


def defect_sanity(cfg: Config) -> CriterionResult:
    g = _sin_grid(8 * math.pi, 8000)
    d = periodicity.defect(g, TWO_PI).sup_defect
    steps = 1000
    best = periodicity.defect_scan(g, 1.0, 10.0, steps)[0].T_tilde
    scan_step = 9.0 / (steps - 1)
    ok = d <= 1e-9 and abs(best - TWO_PI) <= scan_step
    return CriterionResult(12, "defect sanity", ok, f"defect at 2pi {d:.3g}, scan minimum at {best:.6g}")


CRITERIA: tuple[Callable[[Config], CriterionResult], ...] = (
    representation_equality,
    composition_identities,
    semigroup,
    kernel_moment_contrapositive,
    psi_sandwich,
    laplace_closed_form,
    ratio_limit,
    moment_certificate,
    nonperiodicity_ratio,
    solver_exactness,
    autonomous_certificate,
    defect_sanity,
)


def run_all(cfg: Config | None = None) -> list[CriterionResult]:
    cfg = cfg or Config()
    return [check(cfg) for check in CRITERIA]
