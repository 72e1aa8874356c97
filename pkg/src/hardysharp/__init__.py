"""Sharp weak-type bounds for Hardy type operators with power weights.

Radial profiles are kept in closed form (piecewise sums of ``c r^a (ln r)^k``),
so the operators, weighted norms and weak quasi-norms are evaluated exactly
and the sharp constants can be compared against extremizing families.
"""

from .errors import (AdjointConstraintError, DegenerateSubstitutionError, DimensionError,
                     DivergenceError, DomainError, ForwardConstraintError, HardySharpError,
                     RangeError, SamplingError, ScalingError, UnsupportedError,
                     UnsupportedExponentError, ValidationError)
from .limiting import LimitTrace, limiting_weak, mass_concentration_check, scaling_identity_check
from .operators import (OperatorKind, dilate, hardy_adjoint, hardy_forward, hardy_forward_p,
                        pairing)
from .oracle import McEstimate, lemma21_check, mc_adjoint, mc_hardy
from .params import (GeomConstants, SpaceParams, conjugate, geom, validate_adjoint,
                     validate_forward, validate_limiting)
from .profile import (PowerLogPiece, RadialProfile, ScalarField, evaluate, indicator,
                      lp_weighted_norm, power, radialize)
from .reduction import (ReducedParams, reduced_params_adjoint, reduced_params_forward,
                        substitute_adjoint, substitute_forward, transform_profile_adjoint,
                        transform_profile_forward)
from .sharpness import (SharpnessReport, c_sharp, c_sharp_adjoint, extremizer_adjoint,
                        extremizer_forward, ratio, sharpness_sweep)
from .weaknorm import WeakNormResult, strong_norm, superlevel_measure, weak_norm

__version__ = "0.1.0"

__all__ = [
    "AdjointConstraintError",
    "DegenerateSubstitutionError",
    "DimensionError",
    "DivergenceError",
    "DomainError",
    "ForwardConstraintError",
    "GeomConstants",
    "HardySharpError",
    "LimitTrace",
    "McEstimate",
    "OperatorKind",
    "PowerLogPiece",
    "RadialProfile",
    "RangeError",
    "ReducedParams",
    "SamplingError",
    "ScalarField",
    "ScalingError",
    "SharpnessReport",
    "SpaceParams",
    "UnsupportedError",
    "UnsupportedExponentError",
    "ValidationError",
    "WeakNormResult",
    "c_sharp",
    "c_sharp_adjoint",
    "conjugate",
    "dilate",
    "evaluate",
    "extremizer_adjoint",
    "extremizer_forward",
    "geom",
    "hardy_adjoint",
    "hardy_forward",
    "hardy_forward_p",
    "indicator",
    "lemma21_check",
    "limiting_weak",
    "lp_weighted_norm",
    "mass_concentration_check",
    "mc_adjoint",
    "mc_hardy",
    "pairing",
    "power",
    "radialize",
    "ratio",
    "reduced_params_adjoint",
    "reduced_params_forward",
    "scaling_identity_check",
    "sharpness_sweep",
    "strong_norm",
    "substitute_adjoint",
    "substitute_forward",
    "superlevel_measure",
    "transform_profile_adjoint",
    "transform_profile_forward",
    "validate_adjoint",
    "validate_forward",
    "validate_limiting",
    "weak_norm",
]
