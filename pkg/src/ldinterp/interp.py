"""Polynomial interpolation on ``LD_{n,p}``.

The interpolant of data ``f_A`` is

    L f(x, y) = sum_{(i,j)} c_ij T̂_i(x) T̂_j(y),
    C = (T_x diag(w_A f_A) T_y^T) ⊙ M,

where ``M`` is 1 on ``Gamma_{n,p}``, 1/2 on the augmenting index and 0
elsewhere.  Evaluation goes through the coefficient matrix; the Lagrange
basis ``L_A = w_A (K + 1/2 T̂ ⊗ T̂)`` is kept as an independent route.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chebyshev import cheb_t_hat_matrix, eval_series, eval_series_grid
from .domain import UNIT_SQUARE, AffineMap, Rect
from .errors import DomainError, ValidationError
from .nodes import (
    IndexVariant,
    LissajousParams,
    Node,
    NodeSet,
    format_real,
    generate_nodes,
    index_set,
)

_SINGULAR_EPS = 1e-6


def coefficient_shape(params: LissajousParams, variant=IndexVariant.GAMMA_L) -> tuple:
    """Shape of the coefficient matrix: ``(n+p, n+1)``, or ``(n+p+1, n)`` for ``GAMMA_L_TILDE``."""
    if IndexVariant(variant) is IndexVariant.GAMMA_L_TILDE:
        return (params.m + 1, params.n)
    return (params.m, params.n + 1)


def indicator(params: LissajousParams, variant=IndexVariant.GAMMA_L) -> np.ndarray:
    """0/1 matrix of the index set ``variant`` in the coefficient layout."""
    out = np.zeros(coefficient_shape(params, variant))
    for i, j in index_set(params, variant):
        out[i, j] = 1.0
    return out


def mask(params: LissajousParams, variant=IndexVariant.GAMMA_L) -> np.ndarray:
    """The mask ``M``: 1 on ``Gamma``, 1/2 at the augmenting index, 0 elsewhere."""
    variant = IndexVariant(variant)
    if variant is IndexVariant.GAMMA:
        raise DomainError("the basic index set has no interpolation mask; use GAMMA_L or GAMMA_L_TILDE")
    out = indicator(params, variant)
    if variant is IndexVariant.GAMMA_L:
        out[0, params.n] = 0.5
    else:
        out[params.m, 0] = 0.5
    return out


def _hat_pair(x, degree):
    return cheb_t_hat_matrix(x, degree)


def reproducing_kernel(params: LissajousParams, variant, P, Q):
    """``sum_{(i,j) in Gamma} T̂_i(x_P) T̂_i(x_Q) T̂_j(y_P) T̂_j(y_Q)``.

    ``P`` and ``Q`` are ``(x, y)`` pairs of floats or broadcastable arrays.
    """
    ind = indicator(params, variant)
    rows, cols = ind.shape
    xp, yp, xq, yq = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (*P, *Q)))
    gx = _hat_pair(xp, rows - 1) * _hat_pair(xq, rows - 1)
    gy = _hat_pair(yp, cols - 1) * _hat_pair(yq, cols - 1)
    value = np.einsum("...i,ij,...j->...", gx, ind, gy)
    return float(value) if value.ndim == 0 else value


def _augment_term(params, variant, x, y, node: Node):
    """``T̂ ⊗ T̂`` product of the augmenting index, evaluated at ``(x, y)`` and ``node``."""
    if IndexVariant(variant) is IndexVariant.GAMMA_L_TILDE:
        deg, u, ua = params.m, x, node.x
    else:
        deg, u, ua = params.n, y, node.y
    return _hat_pair(u, deg)[..., deg] * _hat_pair(ua, deg)[..., deg]


def lagrange_basis(nodeset: NodeSet, node, x, y, variant=IndexVariant.GAMMA_L, form: str = "augmented"):
    """Fundamental Lagrange polynomial ``L_A(x, y)`` of ``node``.

    ``form="augmented"`` uses ``w_A (K^L - 1/2 T̂ T̂)`` with the kernel of the
    full interpolation space; ``form="basic"`` uses ``w_A (K + 1/2 T̂ T̂)``
    with the kernel of ``Gamma_{n,p}``.  Both are the same polynomial.
    """
    params = nodeset.params
    variant = IndexVariant(variant)
    if variant is IndexVariant.GAMMA:
        raise DomainError("Lagrange basis requires GAMMA_L or GAMMA_L_TILDE")
    a = nodeset[nodeset.index_of(node)]
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    extra = _augment_term(params, variant, x, y, a)
    if form == "augmented":
        value = a.weight * (reproducing_kernel(params, variant, (x, y), (a.x, a.y)) - 0.5 * extra)
    elif form == "basic":
        value = a.weight * (reproducing_kernel(params, IndexVariant.GAMMA, (x, y), (a.x, a.y)) + 0.5 * extra)
    else:
        raise ValueError(f"unknown form {form!r}")
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value


def lagrange_matrix(nodeset: NodeSet, x, y, variant=IndexVariant.GAMMA_L) -> np.ndarray:
    """Matrix ``L[k, A] = L_A(x_k, y_k)`` for paired points; shape ``(npoints, |LD|)``."""
    params = nodeset.params
    m = mask(params, variant)
    rows, cols = m.shape
    ii, jj = np.nonzero(m)
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    y = np.atleast_1d(np.asarray(y, dtype=float)).ravel()
    if x.shape != y.shape:
        raise DomainError("x and y must have the same number of points")
    feat_p = _hat_pair(x, rows - 1)[:, ii] * _hat_pair(y, cols - 1)[:, jj]
    feat_a = _hat_pair(nodeset.x, rows - 1)[:, ii] * _hat_pair(nodeset.y, cols - 1)[:, jj]
    return (feat_p * m[ii, jj]) @ feat_a.T * nodeset.weights


def coefficient_matrix(nodeset: NodeSet, data, variant=IndexVariant.GAMMA_L) -> np.ndarray:
    """Fourier-Lagrange coefficients ``C = (T_x D_f T_y^T) ⊙ M`` of the interpolant.

    ``data`` holds one value per node in ``nodeset`` order.  Entries outside
    the active index set are exactly zero.
    """
    params = nodeset.params
    f = np.asarray(data, dtype=float)
    if f.shape != (len(nodeset),):
        raise DomainError(f"expected {len(nodeset)} data values, got shape {f.shape}")
    m = mask(params, variant)
    rows, cols = m.shape
    tx = _hat_pair(nodeset.x, rows - 1)
    ty = _hat_pair(nodeset.y, cols - 1)
    c = (tx * (nodeset.weights * f)[:, None]).T @ ty
    return c * m


@dataclass(frozen=True)
class Interpolant:
    """Interpolating polynomial stored by its coefficient matrix."""

    params: LissajousParams
    coefficients: np.ndarray = field(repr=False)
    variant: IndexVariant = IndexVariant.GAMMA_L
    rect: Rect = UNIT_SQUARE

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        expected = coefficient_shape(self.params, self.variant)
        if c.shape != expected:
            raise DomainError(f"coefficient matrix has shape {c.shape}, expected {expected}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "variant", IndexVariant(self.variant))

    @property
    def domain_map(self) -> AffineMap:
        return AffineMap(self.rect)

    def __call__(self, x, y, extrapolate: bool = False):
        if not extrapolate and not np.all(self.rect.contains(x, y)):
            raise DomainError("evaluation point outside the interpolation rectangle")
        u, v = self.domain_map.to_unit(x, y)
        return eval_series(self.coefficients, u, v)

    def on_grid(self, xs, ys) -> np.ndarray:
        """Values on the tensor grid ``xs x ys`` (source coordinates), shape ``(len(xs), len(ys))``."""
        u, _ = self.domain_map.to_unit(np.asarray(xs, dtype=float), 0.0)
        _, v = self.domain_map.to_unit(0.0, np.asarray(ys, dtype=float))
        return eval_series_grid(self.coefficients, u, v)

    def active_entries(self) -> list:
        """``(i, j, c_ij)`` for every index in the active set, sorted by ``(i, j)``."""
        return [(i, j, float(self.coefficients[i, j])) for i, j in index_set(self.params, self.variant)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "c"])
        for i, j, c in self.active_entries():
            writer.writerow([i, j, format_real(c)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "n": self.params.n,
            "p": self.params.p,
            "variant": self.variant.value,
            "rect": list(self.rect.as_tuple()),
            "shape": list(self.coefficients.shape),
            "coefficients": [{"i": i, "j": j, "c": c} for i, j, c in self.active_entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "Interpolant":
        params = LissajousParams(int(doc["n"]), int(doc["p"]))
        variant = IndexVariant(doc.get("variant", IndexVariant.GAMMA_L.value))
        c = np.zeros(coefficient_shape(params, variant))
        for entry in doc["coefficients"]:
            c[int(entry["i"]), int(entry["j"])] = float(entry["c"])
        rect = Rect(*doc.get("rect", UNIT_SQUARE.as_tuple()))
        return cls(params, c, variant, rect)

    @classmethod
    def from_json(cls, text: str) -> "Interpolant":
        return cls.from_dict(json.loads(text))


def interpolate(params: LissajousParams, f, domain: Rect | None = None,
                variant=IndexVariant.GAMMA_L, nodeset: NodeSet | None = None) -> Interpolant:
    """Interpolate ``f`` on the nodes of ``LD_{n,p}`` mapped to ``domain``.

    Parameters
    ----------
    params : LissajousParams
    f : callable or array_like
        Either ``f(x, y)`` evaluated (vectorized) at the mapped nodes, or the
        data values themselves in node order.
    domain : Rect, optional
        Source rectangle; defaults to ``[-1, 1]^2``.
    variant : IndexVariant
        ``GAMMA_L`` (default) or ``GAMMA_L_TILDE``.
    nodeset : NodeSet, optional
        Precomputed ``generate_nodes(params)``.
    """
    rect = domain if domain is not None else UNIT_SQUARE
    if not isinstance(rect, Rect):
        rect = Rect(*rect)
    if nodeset is None:
        nodeset = generate_nodes(params)
    elif nodeset.params != params:
        raise DomainError(f"node set belongs to LD{nodeset.params}, not LD{params}")
    if callable(f):
        x, y = AffineMap(rect).from_unit(nodeset.x, nodeset.y)
        data = np.broadcast_to(np.asarray(f(x, y), dtype=float), x.shape)
    else:
        data = np.asarray(f, dtype=float)
        if data.shape != (len(nodeset),):
            raise ValidationError(f"expected {len(nodeset)} data values, got shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise ValidationError("interpolation data contains NaN or infinite values")
    return Interpolant(params, coefficient_matrix(nodeset, data, variant), variant, rect)


def evaluate(interpolant: Interpolant, points, extrapolate: bool = False) -> np.ndarray:
    """Evaluate at a list of ``(x, y)`` points in the source rectangle; order is preserved."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return np.empty(0)
    pts = pts.reshape(-1, 2)
    return np.atleast_1d(interpolant(pts[:, 0], pts[:, 1], extrapolate=extrapolate))


def dirichlet_kernel(N: int, t):
    """``D_N(t) = 1 + 2 sum_{k<N} cos(k t) + cos(N t) = sin(N t) cos(t/2) / sin(t/2)``.

    The closed form is used away from ``t = 0 mod 2 pi``; close to those
    removable singularities the cosine sum is evaluated directly.
    """
    t = np.asarray(t, dtype=float)
    half = np.sin(0.5 * t)
    near = np.abs(half) < _SINGULAR_EPS
    safe = np.where(near, 1.0, half)
    out = np.sin(N * t) * np.cos(0.5 * t) / safe
    if np.any(near):
        ts = t[near] if t.ndim else t
        k = np.arange(1, N)
        series = 1.0 + 2.0 * np.cos(np.multiply.outer(ts, k)).sum(axis=-1) + np.cos(N * ts)
        if t.ndim:
            out[near] = series
        else:
            out = series
    return float(out) if out.ndim == 0 else out


def trig_fundamental(params: LissajousParams, k: int, t):
    """Even trigonometric Lagrange basis ``D^k`` for the samples ``t_k``; ``D^k(t_l) = delta_kl``."""
    N = params.period
    if not 0 <= k <= N:
        raise DomainError(f"sample index must lie in 0..{N}, got {k}")
    t = np.asarray(t, dtype=float)
    if k == 0:
        value = dirichlet_kernel(N, t)
    elif k == N:
        value = dirichlet_kernel(N, t - math.pi)
    else:
        tk = math.pi * k / N
        value = dirichlet_kernel(N, t + tk) + dirichlet_kernel(N, t - tk)
    return np.asarray(value) / (2.0 * N)


def trig_lagrange_oracle(params: LissajousParams, node, t):
    """``l_A(t) = sum_{k in [A]} D^k(t)``, the trace of ``L_A`` along the curve."""
    if isinstance(node, Node):
        ks = node.sample_indices
    else:
        from .nodes import equivalence_class

        ks = equivalence_class(params, node)
    value = sum(trig_fundamental(params, k, t) for k in ks)
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value
