"""Quadrature on ``LD_{n,p}`` for the normalized product Chebyshev weight.

The rule ``sum_A w_A f(A)`` reproduces

    (1 / pi^2) ∫∫ f(x, y) / (sqrt(1 - x^2) sqrt(1 - y^2)) dx dy

for every polynomial spanned by ``T_i(x) T_j(y)`` with
``i / (2(n+p)) + j / (2n) < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chebyshev import cheb_t_hat_matrix
from .errors import DomainError
from .nodes import LissajousParams, NodeSet, curve_point, gamma_pairs, generate_nodes

#: Constant of the forward quadrature-sum inequality for ``r = 2``.
FORWARD_BOUND_C2 = 9.0 * math.e**2 * (1.0 + 1.0 / (4.0 * math.pi)) ** 2


def forward_bound_constant(r: float) -> float:
    """``(r + 1)^2 e^2 (1 + 1/(4 pi))^2``, the forward quadrature-sum constant."""
    return (r + 1.0) ** 2 * math.e**2 * (1.0 + 1.0 / (4.0 * math.pi)) ** 2


@dataclass(frozen=True)
class QuadratureRule:
    nodes: NodeSet

    @classmethod
    def for_params(cls, params: LissajousParams) -> "QuadratureRule":
        return cls(generate_nodes(params))

    @property
    def params(self) -> LissajousParams:
        return self.nodes.params

    @property
    def weights(self) -> np.ndarray:
        return self.nodes.weights


def _as_rule(rule) -> QuadratureRule:
    if isinstance(rule, QuadratureRule):
        return rule
    if isinstance(rule, NodeSet):
        return QuadratureRule(rule)
    if isinstance(rule, LissajousParams):
        return QuadratureRule.for_params(rule)
    raise TypeError(f"expected QuadratureRule, NodeSet or LissajousParams, got {type(rule).__name__}")


def _values(f, x, y):
    values = np.asarray(f(x, y), dtype=float)
    return np.broadcast_to(values, x.shape)


def integrate(rule, f: Callable) -> float:
    """Quadrature sum ``sum_A w_A f(A)``.

    ``f`` is called once with the arrays of node coordinates and may return a
    scalar (constant functions) or an array.
    """
    rule = _as_rule(rule)
    nodes = rule.nodes
    return float(np.dot(nodes.weights, _values(f, nodes.x, nodes.y)))


def exact_cheb_integral(i: int, j: int) -> float:
    """Weighted integral of ``T_i(x) T_j(y)``: 1 for ``i = j = 0``, else 0."""
    if i < 0 or j < 0:
        raise DomainError(f"degrees must be nonnegative, got ({i}, {j})")
    return 1.0 if i == 0 and j == 0 else 0.0


def exact_integral(coefficients) -> float:
    """Weighted integral of a series given by normalized coefficients."""
    return float(np.asarray(coefficients, dtype=float)[0, 0])


def inner_product(c1, c2) -> float:
    """``<P, Q>`` of two normalized-coefficient series (zero-padded to a common shape)."""
    a = np.asarray(c1, dtype=float)
    b = np.asarray(c2, dtype=float)
    rows, cols = min(a.shape[0], b.shape[0]), min(a.shape[1], b.shape[1])
    return float(np.sum(a[:rows, :cols] * b[:rows, :cols]))


def exactness_pairs(params: LissajousParams) -> list:
    """Basis pairs ``(i, j)`` the rule is exact on: ``i/(2(n+p)) + j/(2n) < 1``."""
    return gamma_pairs(2 * params.n, 2 * params.m)


def quadrature_moments(rule, shape) -> np.ndarray:
    """Quadrature sums of ``T̂_i(x) T̂_j(y)`` for all ``(i, j)`` below ``shape``."""
    rule = _as_rule(rule)
    nodes = rule.nodes
    vx = cheb_t_hat_matrix(nodes.x, shape[0] - 1)
    vy = cheb_t_hat_matrix(nodes.y, shape[1] - 1)
    return (vx * nodes.weights[:, None]).T @ vy


@dataclass(frozen=True)
class TrigRestriction:
    """Trace ``t -> f(gamma(t))`` of a bivariate function along the curve."""

    params: LissajousParams
    f: Callable

    def __call__(self, t):
        x, y = curve_point(self.params, np.asarray(t, dtype=float))
        return np.asarray(self.f(x, y), dtype=float) * np.ones_like(np.asarray(x, dtype=float))


def trapezoid_times(m: int) -> tuple:
    """Nodes ``pi k / m`` and weights of the composite trapezoid rule for ``(1/pi) ∫_0^pi``."""
    if m < 1:
        raise DomainError(f"number of panels must be >= 1, got {m}")
    t = np.pi * np.arange(m + 1) / m
    w = np.full(m + 1, 1.0 / m)
    w[0] = w[-1] = 0.5 / m
    return t, w


def line_integral(restriction: TrigRestriction, m: int) -> float:
    """Composite trapezoid approximation of ``(1/pi) ∫_0^pi f(gamma(t)) dt`` on ``m`` panels.

    Exact for even trigonometric polynomials of degree at most ``2m - 1``.
    """
    t, w = trapezoid_times(m)
    return float(np.dot(w, restriction(t)))
