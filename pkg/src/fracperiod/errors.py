"""Exception types raised by the library."""

from __future__ import annotations


class FracPeriodError(Exception):
    """Base class for library errors."""


class PoleError(FracPeriodError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""


class DomainError(FracPeriodError, ValueError):
    """Argument outside the domain of a function."""


class SeriesRadiusError(FracPeriodError, ValueError):
    """Power-series argument beyond the configured radius cap."""


class QuadratureError(FracPeriodError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class MeanNotZeroError(FracPeriodError, ValueError):
    """A bound that presumes a mean-zero signal was given a signal with nonzero mean."""


class WindowTooShortError(FracPeriodError, ValueError):
    """Sampled interval is too short to compare values one candidate period apart."""


class InconclusiveRatio(FracPeriodError, ArithmeticError):
    """Ratio denominator too close to zero to decide anything at this point."""
