"""delta-almost Yamabe solitons and the identity suite."""

from .core import (NotConformalError, NotContactTransformationError, ProportionalityError,
                   SigmaResult, SolitonData, SolitonDataError, classify_soliton,
                   conformal_coefficient, contact_transformation_sigma, gl1_residual,
                   gl2_residual, gradient_soliton_residual, is_constant, solve_lambda,
                   soliton_residual)
from .identities import (DESCRIPTIONS, IDENTITIES, PrerequisiteError, UnknownIdentityError,
                         identity_check, run_identity_suite)

__all__ = [
    "DESCRIPTIONS", "IDENTITIES", "NotConformalError", "NotContactTransformationError",
    "PrerequisiteError", "ProportionalityError", "SigmaResult", "SolitonData", "SolitonDataError",
    "UnknownIdentityError", "classify_soliton", "conformal_coefficient",
    "contact_transformation_sigma", "gl1_residual", "gl2_residual", "gradient_soliton_residual",
    "identity_check", "is_constant", "run_identity_suite", "solve_lambda", "soliton_residual",
]
