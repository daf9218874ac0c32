"""Univariate Chebyshev primitives and bivariate series evaluation.

The normalized polynomials ``T̂_0 = 1`` and ``T̂_i = sqrt(2) T_i`` form an
orthonormal system for the product Chebyshev weight
``1 / (pi^2 sqrt(1 - x^2) sqrt(1 - y^2))`` on ``[-1, 1]^2``.  Coefficient
matrices throughout the package are expressed in this normalized basis.
"""

from __future__ import annotations

import math
import numbers

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from ._backend import kernels
from .errors import DomainError

SQRT2 = math.sqrt(2.0)


def _check_int(value, name, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def cgl_point(k: int, n: int) -> float:
    """Return the Chebyshev-Gauss-Lobatto point ``cos(k pi / n)``.

    The value is symmetrized so that ``cgl_point(k, n) == -cgl_point(n - k, n)``
    holds exactly and the midpoint of an even grid is exactly zero.
    """
    n = _check_int(n, "n", 1)
    k = _check_int(k, "k", 0)
    if k > n:
        raise DomainError(f"k must satisfy 0 <= k <= n, got k={k}, n={n}")
    return _cgl(k, n)


def _cgl(k, n):
    if 2 * k == n:
        return 0.0
    if 2 * k > n:
        return -math.cos((n - k) * math.pi / n)
    return math.cos(k * math.pi / n)


def cgl_points(n: int) -> np.ndarray:
    """All ``n + 1`` points ``cgl_point(k, n)``, ``k = 0..n`` (decreasing)."""
    n = _check_int(n, "n", 1)
    return np.array([_cgl(k, n) for k in range(n + 1)])


def hat_scale(degree: int) -> np.ndarray:
    """Scale factors taking ``T_i`` to ``T̂_i`` for ``i = 0..degree``."""
    s = np.full(degree + 1, SQRT2)
    s[0] = 1.0
    return s


def cheb_t(i: int, x):
    """First-kind Chebyshev polynomial ``T_i(x)`` by the three-term recurrence.

    Arguments outside ``[-1, 1]`` are accepted; the recurrence is exact
    algebra there too, it just grows like ``|x|^i``.
    """
    i = _check_int(i, "i", 0)
    x = np.asarray(x, dtype=float)
    value = npcheb.chebvander(x, i)[..., i].reshape(x.shape)
    return float(value) if value.ndim == 0 else value


def cheb_t_hat(i: int, x):
    """Normalized Chebyshev polynomial ``T̂_i(x)``."""
    value = cheb_t(i, x)
    return value if i == 0 else SQRT2 * value


def cheb_t_hat_matrix(x, degree: int) -> np.ndarray:
    """Values ``T̂_i(x)`` for ``i = 0..degree``; shape ``x.shape + (degree + 1,)``."""
    degree = _check_int(degree, "degree", 0)
    x = np.asarray(x, dtype=float)
    return (npcheb.chebvander(x, degree) * hat_scale(degree)).reshape(x.shape + (degree + 1,))


def normalized_to_plain(coefficients: np.ndarray) -> np.ndarray:
    """Convert a ``T̂_i T̂_j`` coefficient matrix to the plain ``T_i T_j`` basis."""
    c = np.asarray(coefficients, dtype=float)
    return c * hat_scale(c.shape[0] - 1)[:, None] * hat_scale(c.shape[1] - 1)[None, :]


def _as_matrix(coefficients) -> np.ndarray:
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 2 or 0 in c.shape:
        raise DomainError(f"coefficient matrix must be a non-empty 2-D array, got shape {c.shape}")
    return c


def eval_series(coefficients, x, y, shape=None):
    """Evaluate ``sum_ij c_ij T̂_i(x) T̂_j(y)`` at paired points.

    Parameters
    ----------
    coefficients : array_like, shape (rows, cols)
        Coefficients in the normalized basis.
    x, y : float or array_like
        Evaluation points; broadcast against each other.
    shape : tuple of int, optional
        Expected shape of ``coefficients``; a mismatch raises `DomainError`.

    Returns
    -------
    float or ndarray
        Series values, computed by a Clenshaw recurrence in each direction.
    """
    c = _as_matrix(coefficients)
    if shape is not None and tuple(shape) != c.shape:
        raise DomainError(f"coefficient matrix has shape {c.shape}, expected {tuple(shape)}")
    xb, yb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out_shape = xb.shape
    xs = np.ascontiguousarray(xb.ravel())
    ys = np.ascontiguousarray(yb.ravel())
    values = kernels.clenshaw2d(np.ascontiguousarray(normalized_to_plain(c)), xs, ys)
    if not out_shape:
        return float(values[0])
    return values.reshape(out_shape)


def eval_series_grid(coefficients, xs, ys) -> np.ndarray:
    """Evaluate the series on the tensor grid ``xs x ys``; returns ``(len(xs), len(ys))``."""
    c = _as_matrix(coefficients)
    vx = cheb_t_hat_matrix(np.ravel(xs), c.shape[0] - 1)
    vy = cheb_t_hat_matrix(np.ravel(ys), c.shape[1] - 1)
    return vx @ c @ vy.T
