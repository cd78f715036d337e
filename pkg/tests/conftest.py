"""Shared finite-difference oracles for the test suite.

These are deliberately independent of the package's own derivative code:
central differences with curvature-appropriate step sizes, nothing else.
"""

import numpy as np
import pytest


def fd_gradient(f, x, eps=None):
    x = np.asarray(x, dtype=float)
    if eps is None:
        eps = np.finfo(float).eps ** (1.0 / 3.0) * max(1.0, float(np.linalg.norm(x)))
    out = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = eps
        out[i] = (f(x + e) - f(x - e)) / (2.0 * eps)
    return out


def fd_hessian(f, x, eps=None):
    x = np.asarray(x, dtype=float)
    if eps is None:
        eps = np.finfo(float).eps ** 0.25 * max(1.0, float(np.linalg.norm(x)))
    n = x.size
    out = np.zeros((n, n))
    f0 = f(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = eps
        out[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / eps ** 2
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = eps
            out[i, j] = out[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * eps ** 2)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
