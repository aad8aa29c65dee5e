"""Quadrature helpers: adaptive Gauss-Kronrod and a graded composite Gauss-Legendre rule.

:func:`adaptive` wraps QUADPACK (``scipy.integrate.quad``) and turns every
failure flag into a :class:`~fracperiod.errors.QuadratureError` instead of a
warning.

:func:`graded_gauss_legendre` is deliberately unrelated to it. It uses a
fixed geometric mesh towards a singular endpoint and is meant as a second,
independent route for cross-checking weakly singular integrals.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence

import numpy as np
import scipy.integrate

from fracperiod.errors import QuadratureError

DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-12
MAX_EVALUATIONS = 10**6
_KRONROD_POINTS = 21


def adaptive(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    points: Sequence[float] | None = None,
    max_evaluations: int = MAX_EVALUATIONS,
) -> float:
    """Integrate ``func`` over ``[a, b]`` to ``max(atol, rtol |I|)``.

    ``points`` are interior breakpoints (kinks, sign changes).
    """
    if a == b:
        return 0.0
    limit = max(50, max_evaluations // (2 * _KRONROD_POINTS))
    if points is not None:
        points = [p for p in points if min(a, b) < p < max(a, b)] or None
    out = scipy.integrate.quad(
        func, a, b, epsabs=atol, epsrel=rtol, limit=limit, points=points, full_output=1
    )
    value, abserr, info = out[:3]
    if len(out) > 3:
        # QUADPACK returns a message only when ier != 0
        raise QuadratureError(f"quadrature over [{a}, {b}] failed: {out[3].strip()} (error estimate {abserr:.3g})")
    if info["neval"] > max_evaluations:
        raise QuadratureError(f"quadrature over [{a}, {b}] used {info['neval']} evaluations")
    return float(value)


def graded_gauss_legendre(
    func: Callable[[np.ndarray], np.ndarray],
    length: float,
    *,
    ratio: float = 0.5,
    levels: int = 100,
    order: int = 20,
    uniform_cells: int = 16,
) -> float:
    """Integrate ``func(r)`` over ``[0, length]`` with a mesh graded towards ``r = 0``.

    ``r`` is the distance to the singular endpoint. Write the integrand in
    terms of it so the cells can shrink far below machine epsilon relative to
    the endpoint, e.g. ``r**(alpha - 1) * f(T - r)`` for a singularity at
    ``s = T``.

    Cells are ``[L q^{k+1}, L q^k]`` for ``k = 0..levels-1``, with the
    leading cell split into ``uniform_cells`` equal pieces. Each cell gets an
    ``order``-point Gauss-Legendre rule. The untouched remainder ``[0, L q^levels]``
    is dropped. ``func`` must accept numpy arrays.
    """
    x, w = np.polynomial.legendre.leggauss(order)
    edges = length * ratio ** np.arange(levels + 1)
    first = np.linspace(edges[0], edges[1], uniform_cells + 1)
    breaks = np.concatenate([first, edges[2:]])
    pieces = []
    for hi, lo in zip(breaks[:-1], breaks[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        pieces.append(half * float(np.dot(w, func(mid + half * x))))
    return math.fsum(pieces)
