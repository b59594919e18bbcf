"""Zero mean curvature surfaces in the 3-dimensional light cone.

Boundary-data validation, Weierstrass data extraction, SL(2,C) frame
integration, closed-form catenoids, curvature diagnostics, and mesh export.
"""

from . import bjorling, catenoids, diagnostics, expr, frame, lorentz
from .errors import (
    BranchCutWarning, DataInconsistencyError, DegenerateInputError,
    DegenerateMetricError, DomainError, EvalError, IntegrationError,
    LightconeError, ParseError, StiffnessError, ValidationError,
)

__version__ = "0.1.0"
