r"""Why fractional images of periodic signals are not periodic, checked numerically.

Suppose :math:`I^\alpha f` were :math:`T`-periodic for a :math:`T`-periodic
``f``. Then a chain of integrals would all have to vanish:

* kernel moments :math:`\int_0^T (nT - s)^{\alpha-1} f(s)\,ds` for every ``n``
  (:func:`kernel_moment`);
* the mean :math:`\int_0^T f` (:func:`mean_abs_parts`);
* the shifted kernel integral :math:`\varphi(t)` for every ``t >= 0``
  (:func:`shifted_kernel_integral`);
* :math:`\psi(t) = \int_0^T (T - s + t)^\alpha f(s)\,ds`, which would then be
  constant and squeezed to zero (:func:`psi_integral`, :func:`psi_bound`);
* every polynomial moment :math:`\int_0^T f(t) t^i\,dt` (:func:`moment_sequence`).

A single nonzero value breaks the chain. :func:`defect` and
:func:`defect_scan` measure non-periodicity of sampled data directly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass
from typing import IO

import numpy as np
from scipy.optimize import brentq

from fracperiod import quadrature
from fracperiod.errors import DomainError, MeanNotZeroError, WindowTooShortError
from fracperiod.fracops import FracOrder, GridFunction, as_order

#: Periodicity is validated to this absolute tolerance when a signal is built.
PERIOD_CHECK_TOL = 1e-12
#: |mean| above which the psi bound refuses to apply.
MEAN_ZERO_TOL = 1e-10
_ROOT_SAMPLES = 2048


@dataclass(frozen=True)
class PeriodicSignal:
    """A scalar function together with a period it is known to have."""

    evaluator: Callable[[float], float]
    period: float
    description: str = ""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.period) and self.period > 0):
            raise DomainError(f"period must be positive, got {self.period}")
        T = self.period
        for t in np.linspace(0.0, 3 * T, 61)[:-1]:
            gap = abs(self(t + T) - self(t))
            if not gap <= PERIOD_CHECK_TOL:
                raise DomainError(f"{self.description or 'signal'} is not {T:g}-periodic: gap {gap:.3g} at t={t:.6g}")

    def __call__(self, t: float) -> float:
        return float(self.evaluator(t))

    @classmethod
    def sine(cls, period: float = 2 * math.pi) -> PeriodicSignal:
        """``sin(2 pi t / period)``; exactly ``sin`` for the default period."""
        if period == 2 * math.pi:
            return cls(np.sin, period, "sin(t)")
        w = 2 * math.pi / period
        return cls(lambda t: np.sin(w * t), period, f"sin(2 pi t / {period:g})")

    @classmethod
    def cosine(cls, period: float = 2 * math.pi) -> PeriodicSignal:
        if period == 2 * math.pi:
            return cls(np.cos, period, "cos(t)")
        w = 2 * math.pi / period
        return cls(lambda t: np.cos(w * t), period, f"cos(2 pi t / {period:g})")

    @classmethod
    def constant(cls, c: float, period: float = 1.0) -> PeriodicSignal:
        return cls(lambda t: c + 0 * t, period, f"const {c:g}")


# {{{ sign structure


def _sign_changes(f: PeriodicSignal) -> list[float]:
    """Zeros of ``f`` in (0, T), located from a uniform sample and refined by Brent."""
    T = f.period
    ts = np.linspace(0.0, T, _ROOT_SAMPLES + 1)
    vs = np.array([f(t) for t in ts])
    roots = []
    for i in range(_ROOT_SAMPLES):
        if vs[i] == 0.0 and 0 < i:
            roots.append(float(ts[i]))
        elif vs[i] * vs[i + 1] < 0:
            roots.append(brentq(f, ts[i], ts[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    return roots


def mean_abs_parts(f: PeriodicSignal, atol: float = quadrature.DEFAULT_ATOL) -> tuple[float, float, float]:
    r"""``(mean, c_plus, c_minus)`` with :math:`\int_0^T f`, :math:`\int_0^T f^+`, :math:`\int_0^T f^-`.

    The period is cut at the sign changes of ``f`` so every piece has a
    smooth integrand. ``mean`` is returned as ``c_plus - c_minus``.
    """
    T = f.period
    breaks = [0.0, *_sign_changes(f), T]
    c_plus = c_minus = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        part = quadrature.adaptive(f, lo, hi, atol=atol)
        if part >= 0:
            c_plus += part
        else:
            c_minus -= part
    return c_plus - c_minus, c_plus, c_minus


# }}}

# {{{ kernel integrals


def kernel_moment(
    f: PeriodicSignal, alpha: FracOrder | float, n: int, atol: float = quadrature.DEFAULT_ATOL
) -> float:
    r""":math:`\int_0^T (nT - s)^{\alpha - 1} f(s)\,ds`.

    For ``n = 1`` the kernel blows up at ``s = T``; the substitution
    :math:`u = (T - s)^\alpha` turns the integral into the smooth
    :math:`\frac{1}{\alpha}\int_0^{T^\alpha} f(T - u^{1/\alpha})\,du`.
    For ``n >= 2`` the integrand is smooth and is integrated directly.
    """
    a = as_order(alpha).alpha
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    T = f.period
    if n == 1:
        inv = 1.0 / a
        return quadrature.adaptive(lambda u: f(T - u**inv), 0.0, T**a, atol=atol * a) / a
    nT = n * T
    return quadrature.adaptive(lambda s: (nT - s) ** (a - 1.0) * f(s), 0.0, T, atol=atol)


def kernel_moment_composite(f: PeriodicSignal, alpha: FracOrder | float, n: int = 1) -> float:
    """Same integral as :func:`kernel_moment` by graded composite Gauss-Legendre.

    No substitution and no adaptivity. Used as the independent second route.
    Scalar-only evaluators are vectorized with :func:`numpy.vectorize`.
    """
    a = as_order(alpha).alpha
    T = f.period
    shift = (n - 1) * T
    ev = _vectorized(f.evaluator)
    return quadrature.graded_gauss_legendre(lambda r: (shift + r) ** (a - 1.0) * ev(T - r), T)


def _vectorized(func: Callable) -> Callable[[np.ndarray], np.ndarray]:
    try:
        out = np.asarray(func(np.zeros(2)), dtype=float)
        if out.shape == (2,):
            return func
    except TypeError:
        pass
    return np.vectorize(func, otypes=[float])


def shifted_kernel_integral(
    f: PeriodicSignal, alpha: FracOrder | float, t: float, atol: float = quadrature.DEFAULT_ATOL
) -> float:
    r""":math:`\varphi(t) = \int_0^T (T + t - s)^{\alpha - 1} f(s)\,ds` for ``t >= 0``.

    Always computed through :math:`u = (T + t - s)^\alpha`, which is smooth
    for every ``t >= 0`` including the singular case ``t = 0``:
    :math:`\varphi(t) = \frac{1}{\alpha}\int_{t^\alpha}^{(T+t)^\alpha} f(T + t - u^{1/\alpha})\,du`.
    """
    a = as_order(alpha).alpha
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    T = f.period
    inv = 1.0 / a
    top = T + t
    return quadrature.adaptive(lambda u: f(top - u**inv), t**a, top**a, atol=atol * a) / a


def psi_integral(
    f: PeriodicSignal, alpha: FracOrder | float, t: float, atol: float = quadrature.DEFAULT_ATOL
) -> float:
    r""":math:`\psi(t) = \int_0^T (T - s + t)^\alpha f(s)\,ds`."""
    a = as_order(alpha).alpha
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    T = f.period
    return quadrature.adaptive(lambda s: (T - s + t) ** a * f(s), 0.0, T, atol=atol)


def psi_bound(
    f: PeriodicSignal,
    alpha: FracOrder | float,
    t: float,
    parts: tuple[float, float, float] | None = None,
) -> tuple[float, float]:
    r"""Lower and upper bound :math:`\mp c\,((T+t)^\alpha - t^\alpha)` on :func:`psi_integral`.

    ``c`` is the common value of :math:`\int f^+` and :math:`\int f^-`, so
    ``f`` must have zero mean. Precomputed :func:`mean_abs_parts` output can
    be passed as ``parts``.
    """
    a = as_order(alpha).alpha
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    mean, c_plus, c_minus = parts if parts is not None else mean_abs_parts(f)
    if abs(mean) > MEAN_ZERO_TOL:
        raise MeanNotZeroError(f"signal mean {mean:.3g} is not zero; the psi bound does not apply")
    c = 0.5 * (c_plus + c_minus)
    T = f.period
    # (T+t)^a - t^a without cancellation for large t
    gap = t**a * math.expm1(a * math.log1p(T / t)) if t > 0 else T**a
    return -c * gap, c * gap


def moment_sequence(f: PeriodicSignal, k_max: int, atol: float = quadrature.DEFAULT_ATOL) -> np.ndarray:
    r"""``[\int_0^T f(t) t^i dt for i = 0..k_max]``."""
    if k_max < 0:
        raise DomainError(f"k_max must be nonnegative, got {k_max}")
    T = f.period
    points = _sign_changes(f)
    return np.array(
        [quadrature.adaptive(lambda t, i=i: f(t) * t**i, 0.0, T, atol=atol, points=points) for i in range(k_max + 1)]
    )


# }}}

# {{{ defect


@dataclass(frozen=True)
class DefectReport:
    """How far sampled data is from being periodic with a candidate period."""

    #: Requested candidate period.
    T_tilde: float
    #: Candidate actually used: the nearest positive multiple of the grid step.
    snapped_period: float
    snap_distance: float
    #: max |g(t + T) - g(t)| over the window.
    sup_defect: float
    #: L2 norm of the same difference over the window (trapezoid rule).
    l2_defect: float
    window: tuple[float, float]
    samples: int

    def row(self) -> dict[str, float]:
        return {
            "T_tilde": self.T_tilde,
            "sup_defect": self.sup_defect,
            "l2_defect": self.l2_defect,
            "window_lo": self.window[0],
            "window_hi": self.window[1],
        }


REPORT_COLUMNS = ("T_tilde", "sup_defect", "l2_defect", "window_lo", "window_hi")


def defect(g: GridFunction, T_tilde: float) -> DefectReport:
    """Sup and L2 size of ``t -> g(t + T) - g(t)`` on the largest window ``[0, t_end - T]``.

    ``T_tilde`` is snapped to the nearest multiple ``m h`` of the grid step
    (``m >= 1``) and the snap distance is reported.
    """
    grid = g.grid
    if not T_tilde > 0:
        raise DomainError(f"candidate period must be positive, got {T_tilde}")
    if T_tilde >= grid.t_end:
        raise WindowTooShortError(f"candidate period {T_tilde:g} does not fit in [0, {grid.t_end:g}]")
    m = max(1, int(round(T_tilde / grid.h)))
    if m >= grid.n:
        raise WindowTooShortError(f"candidate period {T_tilde:g} leaves no window on [0, {grid.t_end:g}]")
    snapped = m * grid.h
    v = g.values
    start = 1 if g.singular_at_origin else 0
    diff = v[start + m :] - v[start : grid.n + 1 - m]
    sup = float(np.max(np.abs(diff)))
    l2 = float(math.sqrt(np.trapezoid(diff * diff, dx=grid.h))) if len(diff) > 1 else 0.0
    lo = start * grid.h
    return DefectReport(
        T_tilde=float(T_tilde),
        snapped_period=snapped,
        snap_distance=abs(snapped - T_tilde),
        sup_defect=sup,
        l2_defect=l2,
        window=(lo, grid.t_end - snapped),
        samples=len(diff),
    )


def defect_scan(g: GridFunction, T_lo: float, T_hi: float, steps: int) -> list[DefectReport]:
    """:func:`defect` on ``steps`` equally spaced candidates in ``[T_lo, T_hi]``.

    Reports are sorted by ``sup_defect`` ascending, ties broken by candidate.
    ``T_lo == T_hi`` gives a single report.
    """
    if not T_lo > 0:
        raise DomainError(f"T_lo must be positive, got {T_lo}")
    if T_hi < T_lo:
        raise DomainError(f"empty scan range [{T_lo}, {T_hi}]")
    if T_hi >= g.grid.t_end:
        raise WindowTooShortError(f"T_hi = {T_hi:g} must be below t_end = {g.grid.t_end:g}")
    candidates = [float(T_lo)] if T_hi == T_lo else np.linspace(T_lo, T_hi, max(int(steps), 1)).tolist()
    reports = [defect(g, T) for T in candidates]
    reports.sort(key=lambda r: (r.sup_defect, r.T_tilde))
    return reports


def reports_to_csv(reports: Sequence[DefectReport], dest: IO[str] | str | os.PathLike) -> None:
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", newline="") as fh:
            reports_to_csv(reports, fh)
        return
    dest.write(",".join(REPORT_COLUMNS) + "\n")
    for r in reports:
        dest.write(",".join(f"{r.row()[c]:.17g}" for c in REPORT_COLUMNS) + "\n")


def reports_to_json(reports: Sequence[DefectReport]) -> str:
    return json.dumps([r.row() for r in reports], indent=2)


def reports_from_csv(src: IO[str] | str) -> list[dict[str, float]]:
    """Parse a report CSV back into rows (used for round-trip checks)."""
    if isinstance(src, str) and "\n" in src:
        src = io.StringIO(src)
    if isinstance(src, str):
        with open(src, newline="") as fh:
            return reports_from_csv(fh)
    return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(src)]


def report_dict(report: DefectReport) -> dict:
    """Full report including the snap information, for diagnostics."""
    d = asdict(report)
    d["window"] = list(report.window)
    return d


# }}}
