"""Nonlinear optimization over matroid bases.

Minimizes f(W(B)) over the bases B of a matroid given by an independence
oracle, where W is a small integer weight matrix and f is accessible only
through comparisons. Two exact solvers are provided (combinatorial, via
matroid intersection; algebraic, via determinant interpolation for
vectorial matroids) plus minimum-aberration model fitting.
"""

__version__ = "0.1.0"

from .errors import BudgetError, ContractError, InfeasibleError, InputError, NlmoptError  # noqa: E402
from .config import Budget, DEFAULT_BUDGET  # noqa: E402
from .matroids import (DirectSum, GraphicMatroid, Matroid, PartitionMatroid, Restriction,  # noqa: E402
                       UniformMatroid, VectorialMatroid, WeightMatrix, make_mrk)
from .objectives import Objective  # noqa: E402
from .intersection import max_common_independent  # noqa: E402
from .combinatorial import optimal_value_combinatorial, Solution  # noqa: E402
from .algebraic import interpolate_coefficients, optimal_value_algebraic  # noqa: E402
from .expdesign import AberrationSpec, fit_minimum_aberration, staircase_exponents  # noqa: E402

__all__ = [
    "AberrationSpec", "Budget", "BudgetError", "ContractError", "DEFAULT_BUDGET", "DirectSum",
    "GraphicMatroid", "InfeasibleError", "InputError", "Matroid", "NlmoptError", "Objective",
    "PartitionMatroid", "Restriction", "Solution", "UniformMatroid", "VectorialMatroid", "WeightMatrix",
    "fit_minimum_aberration", "interpolate_coefficients", "make_mrk", "max_common_independent",
    "optimal_value_algebraic", "optimal_value_combinatorial", "staircase_exponents",
]
