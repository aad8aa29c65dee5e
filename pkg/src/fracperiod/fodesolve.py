r"""Caputo initial value problems :math:`{}^cD^\alpha u = F(t, u)`, :math:`u(0) = u_0`.

The problem is solved in its Volterra form
:math:`u(t) = u_0 + I^\alpha[F(\cdot, u(\cdot))](t)` by the fractional
Adams-Bashforth-Moulton predictor-corrector. The predictor is the product
rectangle rule, the corrector is the same product-trapezoid rule that
:func:`fracperiod.fracops.frac_integral` uses, with shared weights.

For autonomous right-hand sides :func:`nonperiodicity_certificate` scans
the trajectory for any approximate period. Only equilibria pass; see
:func:`equilibrium_check`.
"""

from __future__ import annotations

import json
import math
import os
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fracperiod import closedforms
from fracperiod.errors import DomainError
from fracperiod.fracops import (
    FracOrder,
    GridFunction,
    UniformGrid,
    as_order,
    frac_integral,
    product_trapezoid_weights,
    rectangle_weights,
)
from fracperiod.periodicity import DefectReport, defect_scan

Rhs = Callable[[float, float], float]

SCHEME = "fractional-abm"
DEFAULT_CORRECTOR_SWEEPS = 2
BLOWUP_THRESHOLD = 1e12
EQUILIBRIUM_TOL = 1e-12


@dataclass(frozen=True)
class SolveResult:
    trajectory: GridFunction
    alpha: FracOrder
    corrector_iterations: int
    #: max over nodes of |u - u0 - I^a F(., u)| with the discrete integral.
    max_residual: float
    scheme: str = SCHEME
    #: True if the solve stopped early because |u| exceeded the blow-up threshold.
    blew_up: bool = False

    @property
    def h(self) -> float:
        return self.trajectory.grid.h

    def metadata(self) -> dict:
        return {
            "alpha": self.alpha.alpha,
            "scheme": self.scheme,
            "h": self.h,
            "corrector_iterations": self.corrector_iterations,
            "max_residual": self.max_residual,
            "blew_up": self.blew_up,
        }

    def to_csv(self, path: str | os.PathLike) -> str:
        """Write ``t,u`` rows to ``path`` and the metadata to ``path`` + ``.json``; returns the sidecar path."""
        with open(path, "w", newline="") as fh:
            fh.write("t,u\n")
            for t, v in zip(self.trajectory.t, self.trajectory.values):
                fh.write(f"{t:.17g},{v:.17g}\n")
        sidecar = os.fspath(path) + ".json"
        with open(sidecar, "w") as fh:
            json.dump(self.metadata(), fh, indent=2)
            fh.write("\n")
        return sidecar


def solve_caputo(
    rhs: Rhs,
    alpha: FracOrder | float,
    u0: float,
    grid: UniformGrid,
    corrector_sweeps: int = DEFAULT_CORRECTOR_SWEEPS,
) -> SolveResult:
    """Fractional ABM with ``corrector_sweeps`` corrector passes per step.

    If ``|u|`` exceeds :data:`BLOWUP_THRESHOLD` (or stops being finite) the
    trajectory is cut before the offending node and flagged ``blew_up``.
    """
    order = as_order(alpha)
    if corrector_sweeps < 1:
        raise DomainError(f"need at least one corrector sweep, got {corrector_sweeps}")
    n, h = grid.n, grid.h
    t = grid.nodes
    w = product_trapezoid_weights(order, n, h)
    rect_scale, rect = rectangle_weights(order, n, h)

    u = np.empty(n + 1)
    F = np.empty(n + 1)
    u[0] = u0
    F[0] = rhs(t[0], u0)
    stop = n + 1
    for k in range(1, n + 1):
        # predictor: sum_{j<k} b_{k-1-j} F_j
        pred = u0 + rect_scale * np.dot(rect[k - 1 :: -1], F[:k])
        # corrector history: start_k F_0 + sum_{j=1}^{k-1} conv_{k-j} F_j
        hist = u0 + w.scale * (w.start[k] * F[0] + np.dot(w.conv[k - 1 : 0 : -1], F[1:k]))
        uk = pred
        for _ in range(corrector_sweeps):
            uk = hist + w.scale * w.conv[0] * rhs(t[k], uk)
        if not (math.isfinite(uk) and abs(uk) <= BLOWUP_THRESHOLD):
            stop = k
            break
        u[k] = uk
        F[k] = rhs(t[k], uk)

    blew_up = stop <= n
    if blew_up:
        m = max(stop - 1, 2)
        if stop - 1 < 2:
            raise DomainError(f"solution blew up within the first {stop} steps")
        grid = UniformGrid(m * h, m)
        u, F = u[: m + 1], F[: m + 1]
    traj = GridFunction(grid, u)
    residual = u - u0 - frac_integral(GridFunction(grid, F), order).values
    return SolveResult(
        trajectory=traj,
        alpha=order,
        corrector_iterations=corrector_sweeps,
        max_residual=float(np.max(np.abs(residual))),
        blew_up=blew_up,
    )


def equilibrium_check(phi: Callable[[float], float], u0: float, alpha: FracOrder | float = 0.5) -> bool:
    """True iff ``|phi(u0)| <= 1e-12``.

    When true, a short solve is run to confirm the trajectory is the constant
    ``u0`` bit for bit; a violation raises ``RuntimeError``.
    """
    if abs(phi(u0)) > EQUILIBRIUM_TOL:
        return False
    res = solve_caputo(lambda t, u: phi(u), alpha, u0, UniformGrid(1.0, 64))
    if not np.all(res.trajectory.values == u0):
        raise RuntimeError(f"equilibrium {u0} was not preserved by the solver")
    return True


def nonperiodicity_certificate(result: SolveResult, T_lo: float, T_hi: float, steps: int) -> list[DefectReport]:
    """Defect scan of the solved trajectory over candidate periods in ``[T_lo, T_hi]``.

    The first report carries the smallest defect, i.e. the certified margin
    for this scan range. Nothing is claimed outside the range.
    """
    return defect_scan(result.trajectory, T_lo, T_hi, steps)


# {{{ right-hand sides


def linear_rhs(k: float) -> Rhs:
    return lambda t, u: k * u


def logistic_rhs(t: float, u: float) -> float:
    return u * (1.0 - u)


def paper_example_rhs(alpha: FracOrder | float) -> Rhs:
    r""":math:`F(t, u) = u + {}^cD^\alpha \sin(t) - \sin(t)`, for which ``sin`` is an exact solution.

    The Caputo derivative of ``sin`` is evaluated by its closed form and
    cached per node.
    """
    a = as_order(alpha).alpha

    @lru_cache(maxsize=None)
    def forcing(t: float) -> float:
        return closedforms.caputo_sin_1f2(a, t) - math.sin(t)

    return lambda t, u: u + forcing(float(t))


def rhs_from_name(name: str, alpha: FracOrder | float) -> Rhs:
    """``linear:K`` (``K u``), ``logistic`` (``u (1 - u)``) or ``paper-example``."""
    if name.startswith("linear:"):
        try:
            return linear_rhs(float(name.split(":", 1)[1]))
        except ValueError as exc:
            raise DomainError(f"bad linear coefficient in {name!r}") from exc
    if name == "logistic":
        return logistic_rhs
    if name == "paper-example":
        return paper_example_rhs(alpha)
    raise DomainError(f"unknown right-hand side {name!r}")


# }}}
