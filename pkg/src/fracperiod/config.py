"""Numerical settings shared by the CLI and the acceptance suite.

Precedence is command-line flags, then a TOML file, then the defaults below.
The file is either passed explicitly or found as ``./fracperiod.toml``::

    quadrature_tol = 1e-10
    series_tol = 1e-15
    ml_radius = 50.0
    default_n = 1000
    corrector_sweeps = 2

Unknown keys are an error so that typos do not pass silently.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

DEFAULT_CONFIG_NAME = "fracperiod.toml"


@dataclass(frozen=True)
class Config:
    quadrature_tol: float = 1e-10
    series_tol: float = 1e-15
    ml_radius: float = 50.0
    default_n: int = 1000
    corrector_sweeps: int = 2

    def __post_init__(self) -> None:
        for name in ("quadrature_tol", "series_tol", "ml_radius"):
            value = float(getattr(self, name))
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        for name in ("default_n", "corrector_sweeps"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}")
            object.__setattr__(self, name, int(value))

    def merged(self, **overrides) -> Config:
        """Copy with every non-``None`` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(path: str | os.PathLike | None = None, cwd: str | os.PathLike = ".") -> Config:
    """Defaults overlaid with ``path``, or with ``cwd/fracperiod.toml`` if it exists."""
    if path is None:
        candidate = Path(cwd) / DEFAULT_CONFIG_NAME
        if not candidate.is_file():
            return Config()
        path = candidate
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    known = {f.name for f in fields(Config)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown config keys in {os.fspath(path)}: {', '.join(unknown)}")
    return Config(**data)
