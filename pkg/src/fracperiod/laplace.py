r"""Forward Laplace transforms used in the non-periodicity arguments.

* :func:`laplace_numeric` -- truncated transform by quadrature, optionally
  completed with the exact transform of a power-law tail.
* :func:`varphi_transform_closed` -- :math:`\mathcal{L}[(T + t)^\alpha](s)
  = s^{-\alpha-1} e^{sT} \Gamma(\alpha + 1, sT)`, which never vanishes.
* :func:`periodic_laplace` -- one-period formula for periodic inputs.
* :func:`ratio_limit_check` -- :math:`(1 - e^{-\lambda T}) / (1 - e^{-\lambda \tilde T}) \to T / \tilde T`.
* :func:`moment_extraction_demo` -- first nonzero polynomial moment of ``f``.

There is no inverse transform here.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from fracperiod import quadrature
from fracperiod.errors import DomainError
from fracperiod.fracops import FracOrder, as_order
from fracperiod.periodicity import PeriodicSignal, moment_sequence
from fracperiod.specfun import gamma, log_upper_incomplete_gamma, upper_incomplete_gamma

#: Above this value of ``s T`` the closed form is evaluated in log space.
LOG_SPACE_THRESHOLD = 700.0
#: Moments below ``zero_tol * max(1, T)^(i+1)`` count as zero.
DEFAULT_ZERO_TOL = 1e-8


def _check_positive(name: str, x: float) -> None:
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be positive, got {x}")


@dataclass(frozen=True)
class PowerTail:
    """Describes ``g(t) = coefficient * (shift + t)^power`` for ``t >= horizon``."""

    coefficient: float
    shift: float
    power: float

    def __post_init__(self) -> None:
        if self.power <= -1 and self.shift <= 0:
            raise DomainError("tail would not be integrable at the origin")

    def transform_beyond(self, horizon: float, s: float) -> float:
        r""":math:`\int_H^\infty c (a + t)^p e^{-st} dt = c e^{sa} s^{-p-1} \Gamma(p + 1, s(a + H))`."""
        if self.coefficient == 0:
            return 0.0
        a, p = self.shift, self.power
        log_mag = s * a - (p + 1.0) * math.log(s) + log_upper_incomplete_gamma(p + 1.0, s * (a + horizon))
        return self.coefficient * math.exp(log_mag)


def laplace_numeric(
    g: Callable[[float], float],
    s: float,
    horizon: float,
    tail: PowerTail | None = None,
    atol: float = quadrature.DEFAULT_ATOL,
) -> float:
    r""":math:`\int_0^H g(t) e^{-st} dt`, plus the exact tail transform if ``tail`` is given."""
    _check_positive("s", s)
    _check_positive("horizon", horizon)
    head = quadrature.adaptive(lambda t: g(t) * math.exp(-s * t), 0.0, horizon, atol=atol)
    return head + (tail.transform_beyond(horizon, s) if tail is not None else 0.0)


def varphi_transform_closed(alpha: FracOrder | float, T: float, s: float) -> float:
    r""":math:`s^{-\alpha-1} e^{sT} \Gamma(\alpha+1, sT)`, the transform of :math:`(T + t)^\alpha`.

    Positive for all ``s > 0``. When ``s T > 700`` the factor :math:`e^{sT}`
    would overflow, so the product is formed in log space.
    """
    a = as_order(alpha).alpha
    _check_positive("T", T)
    _check_positive("s", s)
    x = s * T
    if x > LOG_SPACE_THRESHOLD:
        return math.exp(x - (a + 1.0) * math.log(s) + log_upper_incomplete_gamma(a + 1.0, x))
    return s ** (-a - 1.0) * math.exp(x) * upper_incomplete_gamma(a + 1.0, x)


def varphi_transform_limit(alpha: FracOrder | float, s: float) -> float:
    r"""The ``s T -> 0`` limit :math:`\Gamma(\alpha + 1) / s^{\alpha + 1}`."""
    a = as_order(alpha).alpha
    _check_positive("s", s)
    return gamma(a + 1.0) / s ** (a + 1.0)


def periodic_laplace(u: PeriodicSignal, lam: float, atol: float = quadrature.DEFAULT_ATOL) -> float:
    r""":math:`\int_0^T u(t) e^{-\lambda t} dt \,/\, (1 - e^{-\lambda T})`.

    The denominator is ``-expm1(-lam T)`` so small ``lam T`` loses nothing.
    """
    _check_positive("lambda", lam)
    T = u.period
    num = quadrature.adaptive(lambda t: u(t) * math.exp(-lam * t), 0.0, T, atol=atol)
    return num / -math.expm1(-lam * T)


def ratio_limit_check(T: float, T_tilde: float, lambdas: Sequence[float]) -> np.ndarray:
    r""":math:`(1 - e^{-\lambda T}) / (1 - e^{-\lambda \tilde T})` for each ``lambda``."""
    _check_positive("T", T)
    _check_positive("T_tilde", T_tilde)
    lam = np.asarray(lambdas, dtype=float)
    if np.any(~(lam > 0)):
        raise DomainError("all lambdas must be positive")
    return np.expm1(-lam * T) / np.expm1(-lam * T_tilde)


@dataclass(frozen=True)
class MomentReport:
    moments: tuple[float, ...]
    first_nonzero_index: int | None
    verdict: str

    def to_dict(self) -> dict:
        return {
            "moments": list(self.moments),
            "first_nonzero_index": self.first_nonzero_index,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def moment_extraction_demo(f: PeriodicSignal, k_max: int, zero_tol: float = DEFAULT_ZERO_TOL) -> MomentReport:
    r"""Moments :math:`\int_0^T f t^i dt` for ``i <= k_max`` and the first one that is nonzero.

    Moment ``i`` is compared with ``zero_tol * max(1, T)^(i+1)``, the natural
    scale of :math:`\int_0^T t^i dt` up to a factor ``i + 1``. A nonzero moment
    certifies that ``f`` has no periodic fractional primitive.
    """
    moments = moment_sequence(f, k_max)
    scale = max(1.0, f.period)
    first = next(
        (i for i, m in enumerate(moments) if abs(m) > zero_tol * scale ** (i + 1)),
        None,
    )
    if first is None:
        verdict = f"all zero up to k_max = {k_max}"
    else:
        verdict = f"moment {first} is nonzero ({moments[first]:.12g}): no periodic fractional primitive"
    return MomentReport(tuple(float(m) for m in moments), first, verdict)
