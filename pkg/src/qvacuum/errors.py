from __future__ import annotations


class LandauPoleError(ArithmeticError):
    """1 - delta_pi vanished (to 1e-9): the coupling diverges and eps0(k^2) is zero."""

    def __init__(self, message: str, delta_pi: complex | None = None):
        super().__init__(message)
        self.delta_pi = delta_pi


class ConvergenceError(ArithmeticError):
    """A quadrature or series failed to reach the requested accuracy."""

    def __init__(self, message: str, abserr: float | None = None):
        super().__init__(message)
        self.abserr = abserr


class SeriesDivergenceError(ArithmeticError):
    """Geometric series in delta_pi requested with |delta_pi| >= 1."""


class TruncationWarning(RuntimeWarning):
    """An oscillatory integral was cut off before its extrapolation settled."""
