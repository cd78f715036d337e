"""Compact Lie algebras presented by structure constants.

An algebra of dimension n is stored as the tensor ``c`` with
``[e_i, e_j] = sum_k c[i, j, k] e_k``.  The Killing form
``B(x, y) = tr(ad x . ad y)`` and the bi-invariant inner product
``Q = -B`` are computed once at construction; Q must be positive
definite, which restricts the class to compact semisimple algebras.
All vectors are 1-d coordinate arrays in the defining basis.
"""

from __future__ import annotations

import numpy as np

from . import _linalg
from .errors import (
    DependentBasisError,
    DimensionMismatchError,
    NonClosedError,
    NonCompactError,
)


def _antisymmetrize(c):
    # keep the i<j entries and reflect, so c[i,j] == -c[j,i] holds exactly
    n = c.shape[0]
    out = np.zeros_like(c)
    iu, ju = np.triu_indices(n, k=1)
    out[iu, ju, :] = 0.5 * (c[iu, ju, :] - c[ju, iu, :])
    out[ju, iu, :] = -out[iu, ju, :]
    return out


class LieAlgebra:
    """A real compact Lie algebra given by its structure-constant tensor.

    Parameters
    ----------
    structure : (n, n, n) array_like
        ``structure[i, j, k]`` is the ``e_k`` coefficient of ``[e_i, e_j]``.
        The tensor is antisymmetrized in its first two indices on input.
    check_compact : bool
        Verify that ``Q = -B`` is positive definite (raises
        :class:`NonCompactError` otherwise).  Disable only for diagnostics.
    """

    def __init__(self, structure, check_compact=True):
        c = np.asarray(structure, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatchError(
                f"structure tensor must be cubic, got shape {c.shape}")
        c = _antisymmetrize(c)
        n = c.shape[0]
        b = np.einsum("imk,jkm->ij", c, c)
        b = 0.5 * (b + b.T)
        q = -b
        if check_compact:
            w = np.linalg.eigvalsh(q)
            if n == 0 or w[0] <= n * _linalg.EPS * max(abs(w[-1]), 1.0):
                raise NonCompactError(
                    "negative Killing form is not positive definite "
                    f"(eigenvalue range [{w[0] if n else 0.0:.3e}, "
                    f"{w[-1] if n else 0.0:.3e}])")
        for a in (c, b, q):
            a.setflags(write=False)
        self.dim = n
        self.structure = c
        self.killing = b
        self.q_form = q

    def _check_vec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected vector of length {self.dim}, got shape {x.shape}")
        return x

    def bracket(self, x, y):
        """[x, y] in basis coordinates."""
        x = self._check_vec(x)
        y = self._check_vec(y)
        return np.einsum("ijk,i,j->k", self.structure, x, y)

    def ad(self, x):
        """Matrix of ad(x): y -> [x, y]."""
        x = self._check_vec(x)
        return np.einsum("ijk,i->kj", self.structure, x)

    def q(self, x, y):
        """Bi-invariant inner product Q(x, y) = -B(x, y)."""
        return float(self._check_vec(x) @ self.q_form @ self._check_vec(y))

    def q_norm(self, x):
        return float(np.sqrt(max(self.q(x, x), 0.0)))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim})"


def from_matrices(matrices, tol=1e-8, check_compact=True):
    """Build a :class:`LieAlgebra` from a list of matrices closed under commutators.

    Complex matrices are converted to their real form first (see
    :func:`realify`).  Raises :class:`DependentBasisError` if the matrices are
    linearly dependent and :class:`NonClosedError` if some commutator leaves
    their span (relative residual above ``tol``).
    """
    mats = [np.asarray(m) for m in matrices]
    if any(np.iscomplexobj(m) for m in mats):
        mats = [realify(m) for m in mats]
    mats = [np.asarray(m, dtype=float) for m in mats]
    n = len(mats)
    if n == 0:
        raise DependentBasisError("empty matrix list")
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise DimensionMismatchError("matrices must share a square shape")
    flat = np.array([m.ravel() for m in mats])           # (n, d*d)
    sigma = np.linalg.svd(flat, compute_uv=False)
    if _linalg.svd_rank(sigma, flat.shape) < n:
        raise DependentBasisError(
            f"matrices span only {_linalg.svd_rank(sigma, flat.shape)} "
            f"of {n} dimensions")
    c = np.zeros((n, n, n))
    pinv = np.linalg.pinv(flat.T)
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            w = comm.ravel()
            a = pinv @ w
            resid = np.linalg.norm(flat.T @ a - w)
            scale = np.linalg.norm(mats[i]) * np.linalg.norm(mats[j])
            if resid > tol * max(scale, 1.0):
                raise NonClosedError(
                    f"commutator of matrices {i}, {j} leaves the span "
                    f"(relative residual {resid / max(scale, 1.0):.3e})")
            c[i, j, :] = a
            c[j, i, :] = -a
    return LieAlgebra(c, check_compact=check_compact)


def matrix_coords(matrices, target, tol=1e-8):
    """Coordinates of ``target`` in the span of ``matrices`` (complex allowed)."""
    mats = [np.asarray(m) for m in matrices]
    tgt = np.asarray(target)
    if any(np.iscomplexobj(m) for m in mats):
        mats = [realify(m) for m in mats]
    if np.iscomplexobj(tgt):
        tgt = realify(tgt)
    flat = np.array([np.asarray(m, dtype=float).ravel() for m in mats])
    w = np.asarray(tgt, dtype=float).ravel()
    a, resid = _linalg.lstsq_min_norm(flat.T, w)
    if np.linalg.norm(resid) > tol * max(np.linalg.norm(w), 1.0):
        raise DimensionMismatchError(
            "target matrix is not in the span of the basis "
            f"(relative residual {np.linalg.norm(resid) / max(np.linalg.norm(w), 1.0):.3e})")
    return a


def direct_sum(*algebras):
    """Direct sum of compact algebras; structure and Killing are block diagonal."""
    dims = [g.dim for g in algebras]
    n = sum(dims)
    c = np.zeros((n, n, n))
    off = 0
    for g, d in zip(algebras, dims):
        c[off:off + d, off:off + d, off:off + d] = g.structure
        off += d
    return LieAlgebra(c)


def jacobi_residual(g, trials=100, seed=0):
    """Max norm of the Jacobi cyclic sum over seeded random unit triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x, y, z = rng.standard_normal((3, g.dim))
        for v in (x, y, z):
            v /= np.linalg.norm(v)
        j = (g.bracket(x, g.bracket(y, z))
             + g.bracket(y, g.bracket(z, x))
             + g.bracket(z, g.bracket(x, y)))
        worst = max(worst, float(np.linalg.norm(j)))
    return worst


def q_invariance_residual(g, trials=100, seed=0):
    """Max |Q([x,y],z) + Q(y,[x,z])| over seeded random unit triples.

    Zero in exact arithmetic: Q is invariant under the adjoint action.
    """
    rng = np.random.default_rng(seed)
    scale = max(float(np.linalg.norm(g.q_form, 2)), 1.0)
    worst = 0.0
    for _ in range(trials):
        x, y, z = rng.standard_normal((3, g.dim))
        for v in (x, y, z):
            v /= np.linalg.norm(v)
        worst = max(worst, abs(g.q(g.bracket(x, y), z) + g.q(y, g.bracket(x, z))))
    return worst / scale


# ---------------------------------------------------------------------------
# matrix realizations


def realify(m):
    """Real form of a complex matrix: z = x + iy acting on stacked (x, y).

    A d x d complex matrix becomes the 2d x 2d real matrix
    [[Re, -Im], [Im, Re]]; commutators are preserved.
    """
    m = np.asarray(m)
    re, im = m.real.astype(float), m.imag.astype(float)
    return np.block([[re, -im], [im, re]])


def quaternionify(a, b):
    """Complex 2n x 2n form of the quaternionic matrix A + Bj.

    ``a`` must be anti-Hermitian and ``b`` symmetric for the result to lie in
    the compact symplectic algebra.  Returns [[A, B], [-conj(B), conj(A)]].
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.block([[a, b], [-b.conj(), a.conj()]])


def so_matrices(n):
    """Standard basis of real antisymmetric n x n matrices, pairs (i, j) with i < j."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            m[i, j], m[j, i] = 1.0, -1.0
            out.append(m)
    return out


def su_matrices(n):
    """Standard basis of traceless anti-Hermitian n x n complex matrices."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[i, j], m[j, i] = 1.0, -1.0
            out.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[i, j] = m[j, i] = 1.0j
            out.append(m)
    for k in range(n - 1):
        m = np.zeros((n, n), dtype=complex)
        m[k, k], m[k + 1, k + 1] = 1.0j, -1.0j
        out.append(m)
    return out


def sp_matrices(n):
    """Basis of the compact symplectic algebra as complex 2n x 2n matrices.

    Elements are ``quaternionify(a, b)`` with ``a`` running over a u(n) basis
    and ``b`` over complex symmetric matrices; dimension n(2n + 1).
    """
    zero = np.zeros((n, n), dtype=complex)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[i, j], a[j, i] = 1.0, -1.0
            out.append(quaternionify(a, zero))
            a = np.zeros((n, n), dtype=complex)
            a[i, j] = a[j, i] = 1.0j
            out.append(quaternionify(a, zero))
    for k in range(n):
        a = np.zeros((n, n), dtype=complex)
        a[k, k] = 1.0j
        out.append(quaternionify(a, zero))
    for i in range(n):
        for j in range(i, n):
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = b[j, i] = 1.0
            out.append(quaternionify(zero, b))
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = b[j, i] = 1.0j
            out.append(quaternionify(zero, b))
    return out
