"""Free nilpotent Lie algebras, invariant forms and quadratic quotients."""

__version__ = "0.1.0"
