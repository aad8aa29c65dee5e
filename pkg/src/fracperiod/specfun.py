"""Special functions: gamma, upper incomplete gamma, 1F2 and Mittag-Leffler.

The two series (``hyp1f2`` and ``mittag_leffler``) return a
:class:`SeriesResult` carrying a rigorous bound on the discarded tail. The
bound is a geometric majorant that is only applied once the term ratios
are provably nonincreasing and below 1/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from fracperiod import _dd
from fracperiod.errors import DomainError, PoleError, SeriesRadiusError

#: Largest argument for which Gamma(x) is representable as a double.
GAMMA_OVERFLOW = 171.6243769563027

DEFAULT_SERIES_TOL = 1e-15
DEFAULT_ML_RADIUS = 50.0
DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated power series and what is known about the tail."""

    value: float | complex
    terms_used: int
    #: Upper bound on the sum of absolute values of the discarded terms.
    tail_bound: float
    converged: bool


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function for real ``x``.

    Raises :class:`PoleError` at nonpositive integers and :class:`OverflowError`
    above :data:`GAMMA_OVERFLOW`.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma of nan")
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"gamma({x}) overflows a double")
    return math.gamma(x)


def rgamma(x: float) -> float:
    """Reciprocal gamma, an entire function: zero at the poles of gamma."""
    if _is_pole(x):
        return 0.0
    if x > GAMMA_OVERFLOW:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


# {{{ incomplete gamma

_IGAMMA_EPS = 1e-16
_IGAMMA_MAX_ITER = 10_000


def _lower_series(a: float, z: float) -> float:
    """Sum z^n / (a (a+1) ... (a+n)); gamma(a, z) = e^-z z^a times this."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_IGAMMA_MAX_ITER):
        ap += 1.0
        term *= z / ap
        total += term
        if abs(term) < abs(total) * _IGAMMA_EPS:
            return total
    raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, z={z})")


def _upper_cf(a: float, z: float) -> float:
    """Legendre continued fraction for e^z z^-a Gamma(a, z), by modified Lentz."""
    tiny = 1e-300
    b = z + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _IGAMMA_MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _IGAMMA_EPS:
            return h
    raise ArithmeticError(f"incomplete gamma fraction did not converge (a={a}, z={z})")


def _check_igamma_args(a: float, z: float) -> None:
    if not a > 0:
        raise DomainError(f"upper incomplete gamma needs a > 0, got a={a}")
    if not z >= 0:
        raise DomainError(f"upper incomplete gamma needs z >= 0, got z={z}")


def log_upper_incomplete_gamma(a: float, z: float) -> float:
    """Natural log of Gamma(a, z); finite even where Gamma(a, z) underflows."""
    _check_igamma_args(a, z)
    if z == 0.0:
        return math.lgamma(a)
    if z < a + 1.0:
        # regularized lower part P(a, z), then log(Gamma(a) * (1 - P))
        p = math.exp(-z + a * math.log(z) - math.lgamma(a)) * _lower_series(a, z)
        return math.lgamma(a) + math.log1p(-p)
    return -z + a * math.log(z) + math.log(_upper_cf(a, z))


def upper_incomplete_gamma(a: float, z: float) -> float:
    r"""Gamma(a, z) = \int_z^\infty s^{a-1} e^{-s} ds for a > 0, z >= 0."""
    _check_igamma_args(a, z)
    if z == 0.0:
        return gamma(a)
    if z < a + 1.0:
        return gamma(a) - math.exp(-z + a * math.log(z)) * _lower_series(a, z)
    return math.exp(-z + a * math.log(z)) * _upper_cf(a, z)


# }}}

# {{{ 1F2


def _hyp1f2_ratio_bound(a: float, b: float, c: float, z: float, j: int) -> float:
    """Bound on |t_{k+1} / t_k| valid for every k >= j (needs a+j, b+j, c+j > 0).

    (a+k)/(b+k) moves monotonically towards 1 and 1/((k+1)(c+k)) decreases.
    """
    return abs(z) * max(1.0, (a + j) / (b + j)) / ((j + 1) * (c + j))


def hyp1f2(
    a: float,
    b: float,
    c: float,
    z: float,
    tol: float = DEFAULT_SERIES_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Generalized hypergeometric 1F2(a; b, c; z) for real arguments.

    Terms are generated by their rational ratio and summed in double-double
    precision, so alternating arguments like ``z = -100`` keep full double
    accuracy.
    """
    if _is_pole(b) or _is_pole(c):
        raise PoleError(f"1F2 lower parameters must not be nonpositive integers (b={b}, c={c})")
    if not tol > 0:
        raise DomainError("tol must be positive")
    a, b, c, z = float(a), float(b), float(c), float(z)

    term: _dd.DD = (1.0, 0.0)
    total: _dd.DD = (1.0, 0.0)
    if z == 0.0:
        return SeriesResult(1.0, 1, 0.0, True)

    j0 = max(0, math.ceil(-min(a, b, c)) + 1)
    tail = math.inf
    for j in range(max_terms - 1):
        # terms_used counts terms 0..j included so far
        if j >= j0:
            rho = _hyp1f2_ratio_bound(a, b, c, z, j)
            if rho < 0.5:
                tail = abs(term[0]) * rho / (1.0 - rho)
                if tail <= tol:
                    return SeriesResult(_dd.to_float(total), j + 1, tail, True)
        num = _dd.two_sum(a, float(j))
        if num[0] == 0.0 and num[1] == 0.0:
            # a is a nonpositive integer: the series is a polynomial
            return SeriesResult(_dd.to_float(total), j + 1, 0.0, True)
        den = _dd.mul(_dd.two_sum(b, float(j)), _dd.two_sum(c, float(j)))
        den = _dd.mul_float(den, float(j + 1))
        term = _dd.div(_dd.mul_float(_dd.mul(term, num), z), den)
        total = _dd.add(total, term)

    j = max_terms - 1
    if j >= j0:
        rho = _hyp1f2_ratio_bound(a, b, c, z, j)
        tail = abs(term[0]) * rho / (1.0 - rho) if rho < 0.5 else math.inf
    return SeriesResult(_dd.to_float(total), max_terms, tail, tail <= tol)


# }}}

# {{{ Mittag-Leffler


def _ml_unit_alpha(beta: float, z: complex, tol: float, max_terms: int) -> SeriesResult:
    # E_{1,beta}(z) = (1/Gamma(beta)) * sum z^k / (beta)_k, in complex double-double
    zr, zi = z.real, z.imag
    g = rgamma(beta)
    tr: _dd.DD = (g, 0.0)
    ti: _dd.DD = (0.0, 0.0)
    sr, si = tr, ti
    absz = abs(z)
    if g == 0.0:
        # 1/Gamma(beta) vanishes; restart from the first nonzero term
        k_start = int(-beta) + 1
        tr = (rgamma(beta + k_start), 0.0)
        w = z**k_start
        tr, ti = _dd.mul_float(tr, w.real), _dd.mul_float(tr, w.imag)
        sr, si = tr, ti
    else:
        k_start = 0
    tail = math.inf
    for k in range(k_start, max_terms - 1):
        x = beta + k
        if x > 0:
            rho = absz / x
            if rho < 0.5:
                tail = math.hypot(tr[0], ti[0]) * rho / (1.0 - rho)
                if tail <= tol:
                    return SeriesResult(complex(_dd.to_float(sr), _dd.to_float(si)), k + 1, tail, True)
        den = _dd.two_sum(beta, float(k))
        nr = _dd.add(_dd.mul_float(tr, zr), _dd.neg(_dd.mul_float(ti, zi)))
        ni = _dd.add(_dd.mul_float(tr, zi), _dd.mul_float(ti, zr))
        tr, ti = _dd.div(nr, den), _dd.div(ni, den)
        sr, si = _dd.add(sr, tr), _dd.add(si, ti)
    return SeriesResult(complex(_dd.to_float(sr), _dd.to_float(si)), max_terms, tail, False)


def _ml_general(alpha: float, beta: float, z: complex, tol: float, max_terms: int) -> SeriesResult:
    re_terms: list[float] = []
    im_terms: list[float] = []
    absz = abs(z)
    logz = cmath.log(z)
    tail = math.inf
    zk = complex(1.0)
    for k in range(max_terms):
        x = alpha * k + beta
        if zk is not None and x <= GAMMA_OVERFLOW and abs(zk) < 1e300:
            term = zk * rgamma(x)
            zk *= z
        else:
            # past double range for z^k or Gamma(x); x > 0 here so Gamma(x) > 0
            zk = None
            try:
                term = cmath.exp(k * logz - math.lgamma(x))
            except OverflowError:
                raise OverflowError(f"Mittag-Leffler term {k} overflows for z={z}") from None
        if not (math.isfinite(term.real) and math.isfinite(term.imag)):
            raise OverflowError(f"Mittag-Leffler term {k} overflows for z={z}")
        re_terms.append(term.real)
        im_terms.append(term.imag)
        if x > 0:
            # log-convexity of Gamma: the ratios |z| Gamma(x)/Gamma(x+alpha) never increase
            rho = absz * math.exp(math.lgamma(x) - math.lgamma(x + alpha))
            if rho < 0.5:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= tol:
                    value = complex(math.fsum(re_terms), math.fsum(im_terms))
                    return SeriesResult(value, k + 1, tail, True)
    value = complex(math.fsum(re_terms), math.fsum(im_terms))
    return SeriesResult(value, max_terms, tail, False)


def mittag_leffler(
    alpha: float,
    beta: float,
    z: float | complex,
    tol: float = DEFAULT_SERIES_TOL,
    radius: float = DEFAULT_ML_RADIUS,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    r"""Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = \sum z^k / Gamma(alpha k + beta).

    Only the defining power series is used, so ``|z|`` is capped at ``radius``.
    For ``alpha == 1`` the terms follow an exact rational recursion and are
    summed in double-double precision. Otherwise each term uses its own gamma
    value and the real and imaginary parts are summed with :func:`math.fsum`.

    Real ``z`` gives a real ``value``; complex ``z`` gives a complex one.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    is_real = not isinstance(z, complex)
    zc = complex(z)
    if abs(zc) > radius:
        raise SeriesRadiusError(f"|z| = {abs(zc):g} exceeds the series radius cap {radius:g}")

    if zc == 0:
        result = SeriesResult(complex(rgamma(beta)), 1, 0.0, True)
    elif alpha == 1.0:
        result = _ml_unit_alpha(float(beta), zc, tol, max_terms)
    else:
        result = _ml_general(float(alpha), float(beta), zc, tol, max_terms)

    if is_real:
        return SeriesResult(result.value.real, result.terms_used, result.tail_bound, result.converged)
    return result


# }}}
