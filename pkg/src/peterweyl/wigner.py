"""Wigner matrices for SU(2) in the z-y-z Euler angle convention.

The irreducible of highest weight n (spin j = n/2, dimension n+1) is
evaluated as

    D^j_{m'm}(alpha, beta, gamma) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma),

rows and columns ordered by descending m = j, j-1, ..., -j, so that for
n = 1 the matrix coincides with the defining representation

    exp(-i alpha sigma_3 / 2) exp(-i beta sigma_2 / 2) exp(-i gamma sigma_3 / 2).

The little-d matrix is evaluated by the standard finite sum written with
log-factorials, which is stable at the sizes supported here (n <= 64);
no asymptotic regime is attempted.
"""

from __future__ import annotations

import math

import numpy as np

MAX_WEIGHT = 64


def m_values(n):
    """Row/column m labels, descending: j, j-1, ..., -j with j = n/2."""
    return (n - 2 * np.arange(n + 1)) / 2.0


def little_d(n, beta):
    """Wigner d^j(beta) for j = n/2, vectorized over beta.

    Parameters
    ----------
    n : int
        Highest weight, 0 <= n <= 64.
    beta : float or array
        Second Euler angle.

    Returns
    -------
    d : array, shape beta.shape + (n+1, n+1)
        Real rotation matrices about the y axis.
    """
    if not 0 <= n <= MAX_WEIGHT:
        raise ValueError(f"weight {n} outside supported range 0..{MAX_WEIGHT}")
    beta = np.asarray(beta, dtype=float)
    shape = beta.shape
    beta = np.atleast_1d(beta).ravel()
    cos_half = np.cos(beta / 2.0)
    sin_half = np.sin(beta / 2.0)

    lf = [math.lgamma(k + 1) for k in range(n + 1)]
    d = np.zeros((beta.size, n + 1, n + 1))
    # Row r holds m' = j - r, column q holds m = j - q.
    for r in range(n + 1):
        for q in range(n + 1):
            prefac = 0.5 * (lf[n - r] + lf[r] + lf[n - q] + lf[q])
            acc = np.zeros(beta.size)
            for s in range(max(0, r - q), min(n - q, r) + 1):
                ln_mag = prefac - lf[n - q - s] - lf[s] - lf[q - r + s] - lf[r - s]
                sign = -1.0 if (q - r + s) % 2 else 1.0
                acc += (
                    sign
                    * np.exp(ln_mag)
                    * cos_half ** (r + n - q - 2 * s)
                    * sin_half ** (q - r + 2 * s)
                )
            d[:, r, q] = acc
    return d.reshape(shape + (n + 1, n + 1))


def wigner_matrix(n, alpha, beta, gamma):
    """Full Wigner matrix D^{n/2}(alpha, beta, gamma), vectorized.

    alpha/beta/gamma may be scalars or arrays of a common shape; the
    result has that shape plus trailing (n+1, n+1) axes.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    m = m_values(n)
    d = little_d(n, beta)
    row_phase = np.exp(-1j * alpha[..., None] * m)
    col_phase = np.exp(-1j * gamma[..., None] * m)
    return row_phase[..., :, None] * d * col_phase[..., None, :]
