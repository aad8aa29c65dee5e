r"""Discrete fractional operators on uniformly sampled functions.

All operators work on a :class:`GridFunction` and return a new one on the
same grid:

* :func:`frac_integral` -- Riemann-Liouville integral :math:`I^\alpha`, by
  product integration of the piecewise-linear interpolant (exact kernel
  moments on each subinterval).
* :func:`caputo_derivative` -- Caputo derivative by the L1 scheme.
* :func:`rl_derivative` -- Riemann-Liouville derivative, obtained from the
  Caputo one plus the analytic :math:`f(0) t^{-\alpha} / \Gamma(1 - \alpha)`
  term.

The convolution weights are shared with :mod:`fracperiod.fodesolve`.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from fracperiod.specfun import gamma

# {{{ types


@dataclass(frozen=True)
class FracOrder:
    """Fractional order strictly inside (0, 1)."""

    alpha: float

    def __post_init__(self) -> None:
        a = float(self.alpha)
        if not 0.0 < a < 1.0:
            raise ValueError(f"fractional order must lie strictly in (0, 1), got {self.alpha}")
        object.__setattr__(self, "alpha", a)

    def __float__(self) -> float:
        return self.alpha


def as_order(alpha: FracOrder | float) -> FracOrder:
    return alpha if isinstance(alpha, FracOrder) else FracOrder(alpha)


@dataclass(frozen=True)
class UniformGrid:
    """Nodes ``t_k = k h`` for ``k = 0..n`` with ``h = t_end / n``."""

    t_end: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"need at least 2 intervals, got n={self.n}")
        object.__setattr__(self, "t_end", float(self.t_end))
        object.__setattr__(self, "n", int(self.n))

    @property
    def h(self) -> float:
        return self.t_end / self.n

    @property
    def nodes(self) -> np.ndarray:
        # linspace keeps the last node exactly at t_end
        return np.linspace(0.0, self.t_end, self.n + 1)

    @classmethod
    def from_step(cls, t_end: float, h: float) -> UniformGrid:
        return cls(t_end, int(round(t_end / h)))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real function sampled on a :class:`UniformGrid`.

    ``singular_at_origin`` marks operator outputs whose value at ``t = 0`` is
    undefined (the Riemann-Liouville derivative when ``f(0) != 0``). The
    node-0 sample is then ``nan`` and :meth:`max_abs` skips it.
    """

    grid: UniformGrid
    values: np.ndarray
    singular_at_origin: bool = field(default=False)

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.n + 1,):
            raise ValueError(f"expected {self.grid.n + 1} samples, got shape {v.shape}")
        check = v[1:] if self.singular_at_origin else v
        if not np.all(np.isfinite(check)):
            raise ValueError("grid function values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], grid: UniformGrid) -> GridFunction:
        values = np.asarray(func(grid.nodes), dtype=float)
        if values.ndim == 0:
            values = np.full(grid.n + 1, float(values))
        return cls(grid, values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    def __len__(self) -> int:
        return self.grid.n + 1

    def _binary(self, other: GridFunction | float, op) -> GridFunction:
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise ValueError("grid functions live on different grids")
            other = other.values
        return GridFunction(self.grid, op(self.values, other))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    __radd__ = __add__
    __rmul__ = __mul__

    def max_abs(self, start: int = 0) -> float:
        """Max norm over nodes ``k >= start``; node 0 is skipped if singular."""
        if self.singular_at_origin:
            start = max(start, 1)
        return float(np.max(np.abs(self.values[start:])))

    # {{{ csv

    def to_csv(self, dest: str | os.PathLike | IO[str]) -> None:
        """Write ``t,value`` rows with 17 significant digits."""
        if isinstance(dest, (str, os.PathLike)):
            with open(dest, "w", newline="") as fh:
                self.to_csv(fh)
            return
        dest.write("t,value\n")
        for t, v in zip(self.t, self.values):
            dest.write(f"{t:.17g},{v:.17g}\n")

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, src: str | os.PathLike | IO[str]) -> GridFunction:
        """Read a two-column ``t,<name>`` file (``t,value`` or ``t,u``); nodes must start at 0 and be uniform."""
        if isinstance(src, (str, os.PathLike)):
            with open(src, newline="") as fh:
                return cls.from_csv(fh)
        reader = csv.reader(src)
        header = [h.strip() for h in next(reader)]
        if len(header) != 2 or header[0] != "t":
            raise ValueError(f"expected a two-column header 't,<name>', got {','.join(header)}")
        rows = [(float(r[0]), float(r[1])) for r in reader if r]
        t = np.array([r[0] for r in rows])
        v = np.array([r[1] for r in rows])
        if len(t) < 3 or t[0] != 0.0:
            raise ValueError("need at least 3 samples starting at t = 0")
        grid = UniformGrid(float(t[-1]), len(t) - 1)
        if not np.allclose(t, grid.nodes, rtol=0, atol=1e-9 * grid.h + 1e-12 * grid.t_end):
            raise ValueError("sample times are not uniformly spaced")
        singular = not math.isfinite(v[0])
        return cls(grid, v, singular_at_origin=singular)

    # }}}


# }}}

# {{{ weights


def _forward_power_differences(p: float, m_max: int) -> np.ndarray:
    """``D[m] = (m + 1)**p - m**p`` for ``m = 0..m_max``, without cancellation."""
    m = np.arange(1, m_max + 1, dtype=float)
    d = np.empty(m_max + 1)
    d[0] = 1.0
    d[1:] = m**p * np.expm1(p * np.log1p(1.0 / m))
    return d


@dataclass(frozen=True)
class ProductTrapezoidWeights:
    r"""Weights of piecewise-linear product integration for :math:`I^\alpha`.

    For node ``k >= 1``

    .. math::

        I^\alpha f(t_k) \approx \text{scale}
            \Big( \text{start}_k f_0 + \sum_{j=1}^{k} \text{conv}_{k-j} f_j \Big),

    with ``scale = h**alpha / Gamma(alpha + 2)``.
    """

    scale: float
    #: ``start[k]`` multiplies ``f_0`` at node ``k`` (``start[0]`` unused).
    start: np.ndarray
    #: ``conv[m] = (m+1)^{a+1} - 2 m^{a+1} + (m-1)^{a+1}``, ``conv[0] = 1``.
    conv: np.ndarray


def product_trapezoid_weights(alpha: FracOrder | float, n: int, h: float) -> ProductTrapezoidWeights:
    a = float(as_order(alpha).alpha)
    p = a + 1.0
    d = _forward_power_differences(p, n)
    conv = np.empty(n + 1)
    conv[0] = 1.0
    conv[1:] = d[1:] - d[:-1]

    # start_k = (k-1)^p - (k - a - 1) k^a = k^a (p + expm1(p log1p(-1/k)) * k)
    k = np.arange(1, n + 1, dtype=float)
    start = np.zeros(n + 1)
    with np.errstate(divide="ignore"):
        start[1:] = k**a * (p + np.expm1(p * np.log1p(-1.0 / k)) * k)
    start[1] = a
    return ProductTrapezoidWeights(h**a / gamma(a + 2.0), start, conv)


def rectangle_weights(alpha: FracOrder | float, n: int, h: float) -> tuple[float, np.ndarray]:
    """Product-rectangle weights ``b[m] = (m+1)^a - m^a`` and their scale ``h^a / Gamma(a+1)``."""
    a = float(as_order(alpha).alpha)
    return h**a / gamma(a + 1.0), _forward_power_differences(a, n)


# }}}

# {{{ operators


def frac_integral(f: GridFunction, alpha: FracOrder | float) -> GridFunction:
    r"""Riemann-Liouville fractional integral :math:`I^\alpha f` at every node.

    ``f`` is replaced by its piecewise-linear interpolant and the kernel
    :math:`(t_k - s)^{\alpha - 1}` is integrated exactly against it, which
    absorbs the endpoint singularity. Accuracy is :math:`O(h^2)` for smooth
    ``f``. The result vanishes at ``t = 0``.
    """
    grid = f.grid
    n = grid.n
    w = product_trapezoid_weights(alpha, n, grid.h)
    v = f.values
    # sum_{j=1}^{k} conv[k-j] f_j for k = 1..n, fixed summation order
    hist = np.convolve(w.conv[:n], v[1:])[:n]
    out = np.zeros(n + 1)
    out[1:] = w.scale * (w.start[1:] * v[0] + hist)
    return GridFunction(grid, out)


def caputo_derivative(f: GridFunction, alpha: FracOrder | float) -> GridFunction:
    r"""Caputo derivative :math:`{}^cD^\alpha f` by the L1 scheme.

    The derivative of ``f`` is taken piecewise constant (difference quotients)
    and convolved with the exact moments of :math:`(t - s)^{-\alpha}`. The
    caller is responsible for ``f`` having an integrable derivative. Node 0 is
    set to 0.
    """
    a = as_order(alpha).alpha
    grid = f.grid
    n = grid.n
    b = _forward_power_differences(1.0 - a, n - 1)
    df = np.diff(f.values)
    out = np.zeros(n + 1)
    out[1:] = np.convolve(b, df)[:n] * (grid.h**-a / gamma(2.0 - a))
    return GridFunction(grid, out)


def rl_derivative(f: GridFunction, alpha: FracOrder | float) -> GridFunction:
    r"""Riemann-Liouville derivative :math:`D^\alpha f`.

    Uses :math:`D^\alpha f = {}^cD^\alpha f + f(0) t^{-\alpha} / \Gamma(1-\alpha)`
    with the second term evaluated exactly at each node. When ``f(0) != 0``
    the value at ``t = 0`` is undefined; it is stored as ``nan`` and the
    result is flagged ``singular_at_origin``.
    """
    a = as_order(alpha).alpha
    cap = caputo_derivative(f, a)
    f0 = float(f.values[0])
    if f0 == 0.0:
        return cap
    out = np.array(cap.values)
    out[1:] += f0 * f.t[1:] ** -a / gamma(1.0 - a)
    out[0] = np.nan
    return GridFunction(f.grid, out, singular_at_origin=True)


def compose_check(f: GridFunction, alpha: FracOrder | float) -> float:
    r"""Max-norm residual of :math:`I^\alpha({}^cD^\alpha f) = f - f(0)` over nodes ``k >= 1``."""
    lhs = frac_integral(caputo_derivative(f, alpha), alpha)
    target = f.values - f.values[0]
    return float(np.max(np.abs(lhs.values[1:] - target[1:])))


# }}}
