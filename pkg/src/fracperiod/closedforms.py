"""Closed-form Caputo derivative of sin and power-function fractional integrals."""

from __future__ import annotations

from fracperiod import specfun
from fracperiod.errors import DomainError, InconclusiveRatio
from fracperiod.fracops import FracOrder, as_order

#: |imag| allowed before the symmetrized Mittag-Leffler sum is declared broken.
IMAG_TOL = 1e-10


def caputo_sin_1f2(alpha: FracOrder | float, t: float, tol: float = 1e-16) -> float:
    r"""Caputo derivative of sin via 1F2.

    .. math::

        {}^cD^\alpha \sin t = \frac{t^{1-\alpha}}{\Gamma(2-\alpha)}
            \,{}_1F_2\Big(1; \frac{3-\alpha}{2}, 1 - \frac{\alpha}{2}; -\frac{t^2}{4}\Big)
    """
    a = as_order(alpha).alpha
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if t == 0:
        return 0.0
    r = specfun.hyp1f2(1.0, (3.0 - a) / 2.0, 1.0 - a / 2.0, -t * t / 4.0, tol)
    if not r.converged:
        raise ArithmeticError(f"1F2 series did not converge at t={t} (tail bound {r.tail_bound:g})")
    return t ** (1.0 - a) / specfun.gamma(2.0 - a) * r.value


def caputo_sin_ml(
    alpha: FracOrder | float,
    t: float,
    tol: float = 1e-16,
    radius: float = specfun.DEFAULT_ML_RADIUS,
) -> float:
    r"""Caputo derivative of sin via :math:`\frac12 t^{1-\alpha}[E_{1,2-\alpha}(it) + E_{1,2-\alpha}(-it)]`.

    Evaluated in complex arithmetic; the imaginary parts must cancel to
    :data:`IMAG_TOL` or an ``ArithmeticError`` is raised.
    """
    a = as_order(alpha).alpha
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if t == 0:
        return 0.0
    plus = specfun.mittag_leffler(1.0, 2.0 - a, complex(0.0, t), tol, radius)
    minus = specfun.mittag_leffler(1.0, 2.0 - a, complex(0.0, -t), tol, radius)
    if not (plus.converged and minus.converged):
        raise ArithmeticError(f"Mittag-Leffler series did not converge at t={t}")
    s = 0.5 * t ** (1.0 - a) * (plus.value + minus.value)
    if abs(s.imag) > IMAG_TOL:
        raise ArithmeticError(f"conjugate terms failed to cancel: imag part {s.imag:g}")
    return s.real


def nonperiodicity_ratio(alpha: FracOrder | float, t0: float, T_tilde: float) -> float:
    """``cD^a sin(t0) / cD^a sin(t0 + T_tilde)``.

    Any value other than 1 shows that the Caputo derivative of sin is not
    ``T_tilde``-periodic. Raises :class:`InconclusiveRatio` when the
    denominator is below 1e-12 in magnitude.
    """
    if T_tilde < 0:
        raise DomainError(f"T_tilde must be nonnegative, got {T_tilde}")
    num = caputo_sin_1f2(alpha, t0)
    den = caputo_sin_1f2(alpha, t0 + T_tilde)
    if abs(den) < 1e-12:
        raise InconclusiveRatio(f"cD^a sin({t0 + T_tilde}) = {den:g} is too close to zero")
    return num / den


def frac_integral_power(alpha: FracOrder | float, p: float, t: float) -> float:
    """``I^a t^p = Gamma(p+1) / Gamma(p+1+a) t^(p+a)`` for ``p > -1``."""
    a = as_order(alpha).alpha
    if not p > -1:
        raise DomainError(f"power must exceed -1, got {p}")
    if t == 0:
        return 0.0
    return specfun.gamma(p + 1.0) / specfun.gamma(p + 1.0 + a) * t ** (p + a)
