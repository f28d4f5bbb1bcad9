"""Mixed-norm Lebesgue and mixed Morrey-type norms and operators."""

from .conditions import (ALL_CONDITIONS, CASE_CONDITIONS, ConditionReport, ExponentCase, classify_exponents,
                         evaluate_case, evaluate_condition, necessity_exponent, sigma, theorem_case,
                         weight_transforms)
from .core import (Annulus, Cube, CubeComplement, ExponentVector, Generator, GridFunction, GridSpec, Weight,
                   constant, dilate, indicator, power, restrict, sample, tensor_power, translate)
from .estimators import FractionalIntegral, FractionalMaximal, HardyOperator
from .exceptions import HypothesisError, InsufficientSupportError, UnderResolvedError
from .mixed_norm import (holder_margin, lebesgue_differentiation_profile, minkowski_margin, mixed_norm,
                         three_factor_holder)
from .morrey import (MorreySpaceSpec, classify_weight, global_morrey_norm, local_morrey_norm, mixed_morrey_norm,
                     shell_profile)
from .operators import (FractionalKernelSpec, fractional_integral, fractional_maximal, hardy, layer_cake_pair,
                        partial_inner, partial_outer)
from .radial import RadialGrid, doubling_verdict
from .verify import NormSpec, OperatorSpec, TestFamily, make_family, ratio_sup, scaling_slope, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "ALL_CONDITIONS", "CASE_CONDITIONS", "ConditionReport", "ExponentCase", "classify_exponents",
    "evaluate_case", "evaluate_condition", "necessity_exponent", "sigma", "theorem_case", "weight_transforms",
    "Annulus", "Cube", "CubeComplement", "ExponentVector", "Generator", "GridFunction", "GridSpec", "Weight",
    "constant", "dilate", "indicator", "power", "restrict", "sample", "tensor_power", "translate",
    "FractionalIntegral", "FractionalMaximal", "HardyOperator",
    "HypothesisError", "InsufficientSupportError", "UnderResolvedError",
    "holder_margin", "lebesgue_differentiation_profile", "minkowski_margin", "mixed_norm", "three_factor_holder",
    "MorreySpaceSpec", "classify_weight", "global_morrey_norm", "local_morrey_norm", "mixed_morrey_norm",
    "shell_profile",
    "FractionalKernelSpec", "fractional_integral", "fractional_maximal", "hardy", "layer_cake_pair",
    "partial_inner", "partial_outer",
    "RadialGrid", "doubling_verdict",
    "NormSpec", "OperatorSpec", "TestFamily", "make_family", "ratio_sup", "scaling_slope", "verify_theorem",
]
