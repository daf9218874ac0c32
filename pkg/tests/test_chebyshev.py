import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldinterp.chebyshev import (
    cgl_point,
    cgl_points,
    cheb_t,
    cheb_t_hat,
    cheb_t_hat_matrix,
    eval_series,
    eval_series_grid,
    normalized_to_plain,
)
from ldinterp.errors import DomainError


@pytest.mark.parametrize(
    "k, n, expected",
    [(0, 5, 1.0), (5, 5, -1.0), (1, 4, math.sqrt(2) / 2)],
)
def test_cgl_point_values(k, n, expected):
    assert cgl_point(k, n) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("k, n", [(-1, 3), (4, 3), (0, 0), (0, -2), (1.5, 3)])
def test_cgl_point_rejects_bad_input(k, n):
    with pytest.raises(DomainError):
        cgl_point(k, n)


@pytest.mark.parametrize("n", range(1, 41))
def test_cgl_symmetry(n):
    z = cgl_points(n)
    mirrored = -z[::-1]
    if n % 2 == 0:
        assert np.array_equal(z, mirrored)
        assert z[n // 2] == 0.0
    else:
        assert np.max(np.abs(z - mirrored)) <= 1e-15


@pytest.mark.parametrize(
    "i, x, expected",
    [(0, 0.37, 1.0), (2, 0.5, -0.5), (7, math.cos(0.3), math.cos(2.1))],
)
def test_cheb_t_values(i, x, expected):
    assert cheb_t(i, x) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize(
    "i, x, expected",
    [(0, -0.9, 1.0), (1, 1.0, math.sqrt(2)), (3, 0.2, math.sqrt(2) * (4 * 0.008 - 0.6))],
)
def test_cheb_t_hat_values(i, x, expected):
    assert cheb_t_hat(i, x) == pytest.approx(expected, abs=1e-14)


def test_cheb_t_outside_interval_follows_recurrence():
    assert cheb_t(3, 2.0) == pytest.approx(4 * 8 - 6)


def test_cheb_t_rejects_negative_degree():
    with pytest.raises(DomainError):
        cheb_t(-1, 0.3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 200), st.floats(0.0, math.pi))
def test_cheb_t_matches_cosine_identity(i, theta):
    assert abs(cheb_t(i, math.cos(theta)) - math.cos(i * theta)) <= 1e-12 * (1 + i)


def test_cheb_t_hat_matrix_shapes():
    assert cheb_t_hat_matrix(0.5, 4).shape == (5,)
    assert cheb_t_hat_matrix(np.zeros((3, 2)), 4).shape == (3, 2, 5)


def test_eval_series_constant_and_single_term():
    c = np.zeros((3, 4))
    c[0, 0] = 1.0
    assert eval_series(c, 0.3, -0.8) == pytest.approx(1.0)
    c = np.zeros((3, 4))
    c[1, 0] = 1.0
    assert eval_series(c, 0.5, 0.123) == pytest.approx(math.sqrt(2) * 0.5, abs=1e-15)


def _term_sum(c, x, y):
    total = 0.0
    for i in range(c.shape[0]):
        for j in range(c.shape[1]):
            total += c[i, j] * cheb_t_hat(i, x) * cheb_t_hat(j, y)
    return total


def test_eval_series_sparse_matches_term_sum(rng):
    c = np.where(rng.random((6, 5)) < 0.3, rng.uniform(-1, 1, (6, 5)), 0.0)
    assert eval_series(c, 0.3, -0.7) == pytest.approx(_term_sum(c, 0.3, -0.7), abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 64),
    st.integers(1, 64),
    st.integers(0, 2**32 - 1),
)
def test_eval_series_matches_double_sum(rows, cols, seed):
    r = np.random.default_rng(seed)
    c = r.uniform(-1, 1, (rows, cols))
    x, y = r.uniform(-1, 1, (2, 5))
    vx = np.cos(np.outer(np.arccos(x), np.arange(rows))) * np.where(np.arange(rows) > 0, math.sqrt(2), 1.0)
    vy = np.cos(np.outer(np.arccos(y), np.arange(cols))) * np.where(np.arange(cols) > 0, math.sqrt(2), 1.0)
    brute = np.einsum("ki,ij,kj->k", vx, c, vy)
    assert np.max(np.abs(eval_series(c, x, y) - brute)) <= 1e-12 * max(1.0, np.abs(c).sum())


def test_eval_series_shape_check():
    with pytest.raises(DomainError):
        eval_series(np.ones((2, 3)), 0.0, 0.0, shape=(3, 3))
    with pytest.raises(DomainError):
        eval_series(np.ones(3), 0.0, 0.0)


def test_eval_series_broadcasts(rng):
    c = rng.standard_normal((4, 3))
    x = rng.uniform(-1, 1, (2, 3))
    out = eval_series(c, x, 0.25)
    assert out.shape == (2, 3)
    assert out[1, 2] == pytest.approx(eval_series(c, x[1, 2], 0.25))


def test_grid_evaluation_matches_pointwise(rng):
    c = rng.standard_normal((5, 4))
    xs, ys = rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 3)
    grid = eval_series_grid(c, xs, ys)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    assert np.allclose(grid, eval_series(c, gx, gy), atol=1e-13)


def test_normalized_to_plain():
    c = np.ones((2, 2))
    assert np.allclose(normalized_to_plain(c), [[1, math.sqrt(2)], [math.sqrt(2), 2]])
