"""Shared random-matrix generators for the test suite.

Everything is driven by explicitly seeded numpy generators so the suite is
deterministic run to run.
"""

import numpy as np

from sympspec.symplectic import williamson


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_spd(rng, dim, kappa, scale=1.0):
    """SPD matrix with eigenvalues geomspaced to an exact condition number."""
    lam = np.geomspace(1.0, kappa, dim) * scale
    q = random_orthogonal(rng, dim)
    m = (q * lam) @ q.T
    return (m + m.T) / 2.0


def random_spd_generic(rng, dim, max_log_kappa=3.0):
    kappa = 10.0 ** rng.uniform(0.0, max_log_kappa)
    scale = 10.0 ** rng.uniform(-1.0, 1.0)
    return random_spd(rng, dim, kappa, scale)


def random_symmetric_unit(rng, dim):
    g = rng.standard_normal((dim, dim))
    g = (g + g.T) / 2.0
    return g / np.linalg.norm(g, 2)


def random_symplectic(rng, n_modes):
    """A random symplectic matrix, as the diagonalizer of a random SPD matrix."""
    return williamson(random_spd_generic(rng, 2 * n_modes)).S


def williamson_form(rng, d_values):
    """SPD matrix with prescribed symplectic spectrum d_values."""
    n = len(d_values)
    s = random_symplectic(rng, n)
    d_full = np.concatenate([d_values, d_values])
    s_inv = np.linalg.inv(s)
    m = s_inv.T @ np.diag(d_full) @ s_inv
    return (m + m.T) / 2.0
