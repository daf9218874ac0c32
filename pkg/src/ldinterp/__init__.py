"""Bivariate polynomial interpolation on the nodes of degenerate Lissajous curves."""

from ._backend import available_backends, kernels
from .analysis import (
    EvaluationGrid,
    ExperimentResult,
    Schedule,
    TestFunction,
    lebesgue_constant,
    max_error_experiment,
    pn_schedule,
    test_function,
)
from .chebyshev import cgl_point, cheb_t, cheb_t_hat, eval_series
from .domain import AffineMap, Rect, affine_map
from .errors import DomainError, NodeConstructionError, ValidationError
from .interp import (
    Interpolant,
    coefficient_matrix,
    evaluate,
    interpolate,
    lagrange_basis,
    mask,
    reproducing_kernel,
    trig_lagrange_oracle,
)
from .nodes import (
    IndexVariant,
    LissajousParams,
    NodeSet,
    generate_nodes,
    generate_nodes_by_sampling,
    index_set,
)
from .quadrature import QuadratureRule, integrate

__all__ = [
    "AffineMap",
    "DomainError",
    "EvaluationGrid",
    "ExperimentResult",
    "IndexVariant",
    "Interpolant",
    "LissajousParams",
    "NodeConstructionError",
    "NodeSet",
    "QuadratureRule",
    "Rect",
    "Schedule",
    "TestFunction",
    "ValidationError",
    "affine_map",
    "available_backends",
    "cgl_point",
    "cheb_t",
    "cheb_t_hat",
    "coefficient_matrix",
    "eval_series",
    "evaluate",
    "generate_nodes",
    "generate_nodes_by_sampling",
    "index_set",
    "integrate",
    "interpolate",
    "kernels",
    "lagrange_basis",
    "lebesgue_constant",
    "mask",
    "max_error_experiment",
    "pn_schedule",
    "reproducing_kernel",
    "test_function",
    "trig_lagrange_oracle",
]
