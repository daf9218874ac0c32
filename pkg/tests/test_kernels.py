import numpy as np
import pytest
from numpy.polynomial import chebyshev as npcheb

from ldinterp import _backend, _kernels_py
from ldinterp._backend import available_backends, get_kernels


def test_python_backend_always_available():
    assert "python" in available_backends()
    assert get_kernels("python") is _kernels_py
    with pytest.raises(ValueError):
        get_kernels("fortran")


def test_backend_names(backend):
    assert get_kernels(backend).NAME == backend


def test_selected_backend_is_known():
    assert _backend.kernels.NAME in available_backends()


@pytest.mark.parametrize("shape", [(1, 1), (3, 7), (12, 4), (40, 41)])
def test_clenshaw_matches_reference(backend, shape, rng):
    c = rng.standard_normal(shape)
    x, y = rng.uniform(-1, 1, (2, 50))
    got = get_kernels(backend).clenshaw2d(c, x, y)
    assert np.allclose(got, npcheb.chebval2d(x, y, c), atol=1e-12 * np.abs(c).sum())


def test_clenshaw_empty(backend):
    out = get_kernels(backend).clenshaw2d(np.ones((2, 2)), np.empty(0), np.empty(0))
    assert out.shape == (0,)


def _reference(S, Q, W, nb, n_v):
    n_u, _, na = S.shape
    out = np.zeros((n_u, n_v))
    for u in range(n_u):
        K = np.abs(Q @ S[u]).reshape(n_v, nb * na)
        out[u] = K @ W
    return out


@pytest.mark.parametrize("n_u, n_v, J, nb, na", [(1, 1, 1, 1, 1), (5, 7, 4, 3, 6), (9, 300, 11, 5, 120)])
def test_lebesgue_tensor_matches_reference(backend, n_u, n_v, J, nb, na, rng):
    S = rng.standard_normal((n_u, J, na))
    Q = rng.standard_normal((n_v * nb, J))
    W = rng.uniform(0, 1, nb * na)
    out = np.full((n_u, n_v), 0.5)
    get_kernels(backend).lebesgue_tensor(S, Q, W, out, nb)
    assert np.allclose(out, 0.5 + _reference(S, Q, W, nb, n_v), rtol=1e-12, atol=1e-12)


def test_backends_agree(rng):
    if len(available_backends()) < 2:
        pytest.skip("compiled extension not built")
    S = rng.standard_normal((13, 9, 40))
    Q = rng.standard_normal((70 * 4, 9))
    W = rng.uniform(0, 1, 160)
    a, b = np.zeros((13, 70)), np.zeros((13, 70))
    get_kernels("compiled").lebesgue_tensor(S, Q, W, a, 4)
    get_kernels("python").lebesgue_tensor(S, Q, W, b, 4)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.abs(b).max()


def test_compiled_rejects_bad_shapes():
    if "compiled" not in available_backends():
        pytest.skip("compiled extension not built")
    k = get_kernels("compiled")
    with pytest.raises(ValueError):
        k.lebesgue_tensor(np.zeros((2, 3, 4)), np.zeros((5, 2)), np.zeros(4), np.zeros((2, 5)), 1)
    with pytest.raises(ValueError):
        k.clenshaw2d(np.ones((2, 2)), np.zeros(3), np.zeros(2))
