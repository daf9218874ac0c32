import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as npcheb

from ldinterp.chebyshev import cheb_t, eval_series
from ldinterp.errors import DomainError
from ldinterp.nodes import IndexVariant, LissajousParams, generate_nodes, index_set
from ldinterp.quadrature import (
    FORWARD_BOUND_C2,
    QuadratureRule,
    TrigRestriction,
    exact_cheb_integral,
    exact_integral,
    exactness_pairs,
    forward_bound_constant,
    integrate,
    line_integral,
    quadrature_moments,
    trapezoid_times,
)

EXACTNESS_CASES = [(2, 1), (3, 2), (4, 3), (5, 2), (7, 4)]


def test_integrate_constant():
    assert integrate(LissajousParams(3, 2), lambda x, y: 1.0) == pytest.approx(1.0, abs=1e-15)


def test_integrate_t2():
    assert abs(integrate(LissajousParams(3, 2), lambda x, y: cheb_t(2, x))) <= 1e-14


def test_boundary_counterexample():
    params = LissajousParams(3, 2)
    value = integrate(params, lambda x, y: cheb_t(5, x) * cheb_t(3, y))
    assert value == pytest.approx(1.0, abs=1e-13)
    assert exact_cheb_integral(5, 3) == 0.0
    assert (5, 3) not in set(exactness_pairs(params))


@pytest.mark.parametrize("i, j, expected", [(0, 0, 1.0), (3, 0, 0.0), (2, 2, 0.0)])
def test_exact_cheb_integral(i, j, expected):
    assert exact_cheb_integral(i, j) == expected


def test_exact_cheb_integral_rejects_negative():
    with pytest.raises(DomainError):
        exact_cheb_integral(-1, 0)


@pytest.mark.parametrize("n, p", EXACTNESS_CASES)
def test_exactness_exhaustive(n, p):
    params = LissajousParams(n, p)
    rule = QuadratureRule.for_params(params)
    pairs = exactness_pairs(params)
    assert set(pairs) == {(i, j) for i in range(2 * (n + p)) for j in range(2 * n) if i * n + j * (n + p) < 2 * n * (n + p)}
    for i, j in pairs:
        value = integrate(rule, lambda x, y: cheb_t(i, x) * cheb_t(j, y))
        assert abs(value - exact_cheb_integral(i, j)) <= 1e-13, (i, j)


def test_moments_match_pointwise():
    params = LissajousParams(4, 3)
    mom = quadrature_moments(params, (3, 3))
    assert mom[0, 0] == pytest.approx(1.0)
    assert np.max(np.abs(mom - np.eye(3)[:, :1] @ np.eye(3)[:1, :])) <= 1e-14


def test_forward_bound_constant():
    assert FORWARD_BOUND_C2 == pytest.approx(9 * math.e**2 * (1 + 1 / (4 * math.pi)) ** 2)
    assert forward_bound_constant(2) == FORWARD_BOUND_C2


def test_trapezoid_weights():
    t, w = trapezoid_times(4)
    assert t[0] == 0.0 and t[-1] == pytest.approx(math.pi)
    assert w.sum() == pytest.approx(1.0)
    with pytest.raises(DomainError):
        trapezoid_times(0)


@pytest.mark.parametrize("m", [1, 3, 17])
def test_line_integral_constant(m):
    assert line_integral(TrigRestriction(LissajousParams(3, 2), lambda x, y: 1.0), m) == pytest.approx(1.0)


def test_line_integral_t1():
    params = LissajousParams(3, 2)
    assert abs(line_integral(TrigRestriction(params, lambda x, y: x), params.period)) <= 1e-14


def test_line_integral_matches_quadrature_space(rng):
    params = LissajousParams(3, 2)
    n, m = params.n, params.m
    c = np.zeros((2 * m, 2 * n))
    for i, j in exactness_pairs(params):
        c[i, j] = rng.standard_normal()
    assert c[m, n] == 0.0
    value = line_integral(TrigRestriction(params, lambda x, y: eval_series(c, x, y)), params.period)
    assert value == pytest.approx(exact_integral(c), abs=1e-12)


# the trace identity needs the aliasing frequency 4n(n+p) out of reach, i.e. p <= n
LINE_CASES = [(2, 1), (3, 2), (4, 3), (5, 2), (7, 4), (6, 5)]


@pytest.mark.parametrize("n, p", LINE_CASES)
def test_double_integral_equals_curve_average(n, p, rng):
    params = LissajousParams(n, p)
    deg = 2 * n + 2 * p - 2
    for _ in range(10):
        c = np.zeros((deg + 1, deg + 1))
        for i in range(deg + 1):
            for j in range(deg + 1 - i):
                c[i, j] = rng.standard_normal()
        k = 1
        while k * (n + p) <= deg and k * n <= deg:
            c[k * (n + p), k * n] = 0.0
            k += 1

        def f(x, y, c=c):
            return npcheb.chebval2d(x, y, c)

        value = line_integral(TrigRestriction(params, f), 2 * params.period)
        assert value == pytest.approx(c[0, 0], abs=1e-11)


@pytest.mark.parametrize("n, p", [(3, 2), (5, 2), (9, 2), (8, 5), (12, 7)])
def test_forward_quadrature_sum_bound(n, p, rng):
    params = LissajousParams(n, p)
    nodes = generate_nodes(params)
    pairs = list(index_set(params, IndexVariant.GAMMA_L))
    violations = 0
    for _ in range(200):
        c = np.zeros((n + p, n + 1))
        coef = rng.standard_normal(len(pairs))
        coef /= np.linalg.norm(coef)
        for (i, j), v in zip(pairs, coef):
            c[i, j] = v
        lhs = float(np.dot(nodes.weights, eval_series(c, nodes.x, nodes.y) ** 2))
        violations += lhs > FORWARD_BOUND_C2 * float(np.sum(c**2))
    assert violations == 0


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(EXACTNESS_CASES), st.integers(0, 2**32 - 1))
def test_exactness_on_random_polynomials(case, seed):
    params = LissajousParams(*case)
    r = np.random.default_rng(seed)
    c = np.zeros((2 * params.m, 2 * params.n))
    for i, j in exactness_pairs(params):
        c[i, j] = r.uniform(-1, 1)
    value = integrate(params, lambda x, y: npcheb.chebval2d(x, y, c))
    assert abs(value - c[0, 0]) <= 1e-12
