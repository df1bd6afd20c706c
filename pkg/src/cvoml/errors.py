class ParameterError(ValueError):
    """Invalid physical or numerical parameter."""


class DegenerateCouplingError(ParameterError):
    """G and Ga coincide; the closed-form solutions diverge there."""


class RegimeError(ParameterError):
    """Operation not defined in the active coupling regime."""


class AccuracyError(RuntimeError):
    """Numerical quadrature failed its convergence check."""
