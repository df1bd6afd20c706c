"""Pulsed cavity-mirror-atom optomechanics as a three-mode Gaussian system.

Submodules:

- ``gaussian``: covariance-matrix algebra (variances, conditioning, photon numbers)
- ``model``: couplings, regimes, transfer matrices and closed forms
- ``criteria``: entanglement and steering witnesses
- ``oracle``: independent quadrature-based output covariance
- ``cli``: the ``cvoml`` command
"""

from cvoml.errors import AccuracyError, DegenerateCouplingError, ParameterError, RegimeError
from cvoml.model import (
    DerivedParams,
    Regime,
    SystemParams,
    derive,
    output_covariance,
    superposition_mode,
    transfer_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "DegenerateCouplingError",
    "DerivedParams",
    "ParameterError",
    "Regime",
    "RegimeError",
    "SystemParams",
    "derive",
    "output_covariance",
    "superposition_mode",
    "transfer_matrix",
]
