"""Pure numpy implementations of the hot kernels.

Signatures match the compiled ``ldinterp._kernels`` module exactly.
"""

import numpy as np
from numpy.polynomial import chebyshev as npcheb

NAME = "python"

# target size (in doubles) of one block of kernel values; keeps it in L2
_BLOCK_DOUBLES = 1 << 17


def clenshaw2d(c, x, y):
    """Values of ``sum_ij c[i, j] T_i(x_k) T_j(y_k)`` for each point ``k``."""
    return npcheb.chebval2d(x, y, c)


def lebesgue_tensor(S, Q, W, out, nb):
    """Accumulate weighted absolute kernel sums into ``out``.

    ``out[u, v] += sum_{b, a} W[b * na + a] * |sum_j Q[v * nb + b, j] * S[u, j, a]|``

    S has shape (U, J, na), Q has shape (V * nb, J), W has length nb * na
    and out has shape (U, V).
    """
    n_u, _, na = S.shape
    n_v = out.shape[1]
    vb = max(1, min(n_v, _BLOCK_DOUBLES // max(1, nb * na)))
    buf = np.empty(vb * nb * na)
    for u in range(n_u):
        Su = S[u]
        for v0 in range(0, n_v, vb):
            v1 = min(n_v, v0 + vb)
            rows = (v1 - v0) * nb
            block = buf[: rows * na].reshape(rows, na)
            np.matmul(Q[v0 * nb : v1 * nb], Su, out=block)
            np.abs(block, out=block)
            out[u, v0:v1] += block.reshape(v1 - v0, nb * na) @ W
    return out
