"""Ultrafunction calculus on finite trigonometric spaces.

A level ``n`` fixes the lattice ``Sigma_n`` (spacing ``sqrt(pi)/n``) and the
space ``V_n`` of trigonometric polynomials with frequencies in it. Deltas,
derivatives, a unitary Fourier transform and the projection of functions and
distributions are all exact linear algebra on coefficient arrays; families
over a ladder of levels stand in for hyperreal quantities.
"""
from .delta import canonical_basis, delta, delta_offgrid, gram_matrix, realness_defect
from .errors import (DivisionByZero, DivisionByZeroAtLevel, EvaluationFailure, ExprSyntaxError,
                     FrequencyNotOnGrid, GridVariantError, GrowthWarning, LevelMismatch,
                     NotDifferentiable, NotOnGrid, PrecisionWarning, UltrafunError,
                     UnknownFunction)
from .exprlang import eval_expr, parse, symbolic_derivative, to_string
from .fourier import check_intertwining, fourier, fourier_direct, inverse_fourier
from .grid import GridParams, SigmaGrid, hyperfinite_sum, index_of, sigma_grid
from .levels import (DEFAULT_LADDER, Growth, HyperScalar, Infinity, LevelLadder,
                     classify_growth, infinitely_close, shadow)
from .projection import (CATALOG, DistributionSpec, QuadratureConfig, SlowFunction,
                         distributional_fourier, integral_check, pair, project_distribution,
                         project_function, trig_coefficients)
from .vspace import (GridSamples, TrigElement, UltraFunction, constant, derivative, evaluate,
                     exp_wave, from_samples, grid_pow, grid_sqrt, inner, integral,
                     integral_of_product, norm, pointwise_product, project_to_level,
                     random_element, to_samples)

__version__ = "0.1.0"
