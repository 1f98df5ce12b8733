"""Exception taxonomy shared across the package.

Two failure families matter to callers (and map to distinct CLI exit
codes): bad mathematical inputs (domain problems, including divergent
integrals) and numerical routines that ran out of budget before reaching
the requested tolerance.
"""


class DomainError(ValueError):
    """Inputs outside the mathematical domain of an operation."""


class DivergenceError(DomainError):
    """An integral that provably (or detectably) fails to converge."""


class ConvergenceError(RuntimeError):
    """A numerical routine exhausted its budget before the tolerance."""
