"""Fractional integrals and derivatives of periodic functions: numerics and checks."""
