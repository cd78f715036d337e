"""Reductive homogeneous structure on a compact Lie algebra.

Given a compact algebra g and a subalgebra h, the Q-orthogonal complement m
is an invariant complement (reductive: [h, m] in m).  This module builds
Q-orthonormal bases for h and m, precomputes all bracket tables in those
coordinates, splits m into invariant summands, and computes the centralizer
subspaces used by the geodesic-orbit checks.

Invariance here always means invariance under the identity component of the
isotropy group; disconnected isotropy is not modeled.  Vectors come in two
flavors: "g-coords" (length dim g, defining basis of g) and "m-coords" /
"h-coords" (coefficients in the orthonormal bases below).  In m-coords and
h-coords the inner product Q is the Euclidean dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _linalg
from .errors import DimensionMismatchError, NotSubalgebraError, ReductivityError
from .liealg import LieAlgebra


class HomogeneousSpace:
    """Bracket tables of a compact homogeneous space in orthonormal coordinates.

    Attributes
    ----------
    g : LieAlgebra
    h_basis, m_basis : arrays of shape (dim_h, dim_g), (dim_m, dim_g)
        Rows are Q-orthonormal; m is the Q-orthogonal complement of h.
    bracket_hh : (dim_h, dim_h, dim_h)
        [h_i, h_j] in h-coords.
    bracket_hm : (dim_h, dim_m, dim_m)
        [h_i, m_a] in m-coords (the h-part vanishes by reductivity).
    bracket_mm_h : (dim_m, dim_m, dim_h) and bracket_mm_m : (dim_m, dim_m, dim_m)
        h- and m-parts of [m_a, m_b].
    """

    def __init__(self, g, h_basis, m_basis, tables, residuals):
        self.g = g
        self.h_basis = h_basis
        self.m_basis = m_basis
        self.bracket_hh, self.bracket_hm, self.bracket_mm_h, self.bracket_mm_m = tables
        self.closure_residual, self.reductivity_residual = residuals
        for a in (h_basis, m_basis, *tables):
            a.setflags(write=False)

    @property
    def dim_h(self):
        return self.h_basis.shape[0]

    @property
    def dim_m(self):
        return self.m_basis.shape[0]

    def lift_m(self, u):
        """g-coords of an m-coords vector."""
        return np.asarray(u, dtype=float) @ self.m_basis

    def lift_h(self, w):
        return np.asarray(w, dtype=float) @ self.h_basis

    def proj_m(self, x):
        """m-coords of the m-component of a g-coords vector."""
        return self.m_basis @ (self.g.q_form @ np.asarray(x, dtype=float))

    def proj_h(self, x):
        return self.h_basis @ (self.g.q_form @ np.asarray(x, dtype=float))

    def _vec(self, v, size, name):
        v = np.asarray(v, dtype=float)
        if v.shape != (size,):
            raise DimensionMismatchError(
                f"expected {name}-coords vector of length {size}, got {v.shape}")
        return v

    def bracket_mm(self, x, y):
        """(h-part, m-part) of [x, y] for x, y in m-coords."""
        x = self._vec(x, self.dim_m, "m")
        y = self._vec(y, self.dim_m, "m")
        return (np.einsum("abk,a,b->k", self.bracket_mm_h, x, y),
                np.einsum("abk,a,b->k", self.bracket_mm_m, x, y))

    def bracket_hm_vec(self, w, x):
        """[w, x] in m-coords for w in h-coords, x in m-coords."""
        w = self._vec(w, self.dim_h, "h")
        x = self._vec(x, self.dim_m, "m")
        return np.einsum("iab,i,a->b", self.bracket_hm, w, x)

    def ad_h_on_m(self, w):
        """Matrix of x -> [w, x] acting on m-coords."""
        w = self._vec(w, self.dim_h, "h")
        return np.einsum("iab,i->ba", self.bracket_hm, w)

    def hm_columns(self, x):
        """Matrix whose j-th column is [h_j, x] in m-coords."""
        x = self._vec(x, self.dim_m, "m")
        return np.einsum("jab,a->bj", self.bracket_hm, x)

    def __repr__(self):
        return f"HomogeneousSpace(dim_g={self.g.dim}, dim_h={self.dim_h}, dim_m={self.dim_m})"


def build(g, h_span, tol=1e-8):
    """Construct the reductive structure for the subalgebra spanned by ``h_span``.

    ``h_span`` holds spanning vectors of h in g-coords (rows).  Raises
    :class:`NotSubalgebraError` if the span is not bracket-closed and
    :class:`ReductivityError` if the complement fails invariance (both with
    relative residual above ``tol``).
    """
    if not isinstance(g, LieAlgebra):
        raise DimensionMismatchError("first argument must be a LieAlgebra")
    h_span = np.atleast_2d(np.asarray(h_span, dtype=float))
    if h_span.size and h_span.shape[1] != g.dim:
        raise DimensionMismatchError(
            f"h vectors must have length {g.dim}, got {h_span.shape[1]}")
    if h_span.size == 0:
        h_basis = np.zeros((0, g.dim))
    else:
        h_basis = _linalg.gram_schmidt(h_span, inner=g.q_form)
    # m = Q-orthocomplement: kernel of x -> h_basis @ Q @ x, orthonormal in Q
    m_basis = _linalg.null_space(h_basis @ g.q_form if h_basis.size else
                                 np.zeros((0, g.dim)))
    m_basis = _linalg.gram_schmidt(m_basis, inner=g.q_form)
    if m_basis.shape[0] + h_basis.shape[0] != g.dim:
        raise ReductivityError("h and its complement do not fill the algebra")

    c = g.structure
    proj_h = h_basis @ g.q_form                          # g-coords -> h-coords
    proj_m = m_basis @ g.q_form

    hh_g = np.einsum("pqk,ip,jq->ijk", c, h_basis, h_basis)
    hh_h = np.einsum("ijk,wk->ijw", hh_g, proj_h)
    hh_m = np.einsum("ijk,ak->ija", hh_g, proj_m)
    closure_residual = float(np.max(np.abs(hh_m))) if hh_m.size else 0.0
    if closure_residual > tol:
        raise NotSubalgebraError(
            f"[h, h] leaves h (max m-component {closure_residual:.3e})")

    hm_g = np.einsum("pqk,ip,aq->iak", c, h_basis, m_basis)
    hm_m = np.einsum("iak,bk->iab", hm_g, proj_m)
    hm_h = np.einsum("iak,jk->iaj", hm_g, proj_h)
    reductivity_residual = float(np.max(np.abs(hm_h))) if hm_h.size else 0.0
    if reductivity_residual > tol:
        raise ReductivityError(
            f"[h, m] leaves m (max h-component {reductivity_residual:.3e})")

    mm_g = np.einsum("pqk,ap,bq->abk", c, m_basis, m_basis)
    mm_h = np.einsum("abk,jk->abj", mm_g, proj_h)
    mm_m = np.einsum("abk,ck->abc", mm_g, proj_m)

    return HomogeneousSpace(g, h_basis, m_basis,
                            (hh_h, hm_m, mm_h, mm_m),
                            (closure_residual, reductivity_residual))


# ---------------------------------------------------------------------------
# invariant decompositions of m


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal invariant splitting of m into summands.

    ``summands[i]`` holds orthonormal rows in m-coords spanning the i-th
    summand.  ``commutant_dim`` is the dimension of the symmetric commutant
    of the isotropy action (None when it was never computed); when it
    exceeds the number of summands, other invariant splittings exist and
    the given one is marked non-unique.
    """

    summands: tuple
    commutant_dim: int | None = None

    @property
    def dims(self):
        return tuple(s.shape[0] for s in self.summands)

    @property
    def arity(self):
        return len(self.summands)

    @property
    def non_unique(self):
        return self.commutant_dim is not None and self.commutant_dim > len(self.summands)

    @classmethod
    def from_dims(cls, dims):
        """Coordinate-block splitting of R^n, n = sum(dims); no space needed."""
        n = int(sum(dims))
        eye = np.eye(n)
        out, off = [], 0
        for d in dims:
            out.append(eye[off:off + d])
            off += d
        return cls(summands=tuple(out))

    def split(self, u):
        """Components of an m-coords vector, each still in m-coords."""
        u = np.asarray(u, dtype=float)
        return [s.T @ (s @ u) for s in self.summands]

    def theta(self, u):
        """Squared component norms (theta_1, ..., theta_s)."""
        u = np.asarray(u, dtype=float)
        return np.array([float(su @ su) for su in (s @ u for s in self.summands)])

    def completeness_residual(self):
        stack = np.vstack(self.summands)
        gram = stack @ stack.T
        return float(np.max(np.abs(gram - np.eye(stack.shape[0]))))


def invariance_residual(space, dec):
    """Max leakage of [h, m_i] outside m_i over the h basis (orthonormal rows)."""
    worst = 0.0
    for i in range(space.dim_h):
        w = np.zeros(space.dim_h)
        w[i] = 1.0
        a = space.ad_h_on_m(w)
        for s in dec.summands:
            img = a @ s.T
            out = img - s.T @ (s @ img)
            if out.size:
                worst = max(worst, float(np.max(np.abs(out))))
    return worst


def _symmetric_basis(n):
    out = []
    for p in range(n):
        for q in range(p, n):
            e = np.zeros((n, n))
            e[p, q] = e[q, p] = 1.0
            out.append(e)
    return np.array(out)


def _commutant_coeffs(space, sym):
    """Coefficient rows (in the sym basis) of the symmetric ad(h)-commutant."""
    if space.dim_h == 0:
        return np.eye(sym.shape[0])
    ads = np.array([space.ad_h_on_m(w) for w in np.eye(space.dim_h)])
    comm = np.einsum("wij,djk->dwik", ads, sym) - np.einsum("dij,wjk->dwik", sym, ads)
    return _linalg.null_space(comm.reshape(sym.shape[0], -1).T)


def symmetric_commutant_dim(space):
    """Dimension of {S symmetric on m : S commutes with every ad(h)|_m}.

    Equals the summand count when the invariant splitting is unique;
    anything larger signals equivalent summands or a finer splitting.
    """
    if space.dim_m == 0:
        return 0
    return int(_commutant_coeffs(space, _symmetric_basis(space.dim_m)).shape[0])


def isotropy_decompose(space, seed=0, cluster_rtol=1e-6):
    """Split m into invariant summands via the symmetric commutant.

    Solves for all symmetric matrices commuting with every ad(h)|_m, draws a
    seeded random element of that space, and groups its eigenvectors by
    eigenvalue clusters (relative gap ``cluster_rtol``).  Summand order
    follows ascending eigenvalue of the sampled element; the multiset of
    dimensions is seed-independent.
    """
    n = space.dim_m
    if n == 0:
        return Decomposition(summands=(), commutant_dim=0)
    sym = _symmetric_basis(n)
    coeffs = _commutant_coeffs(space, sym)
    k = coeffs.shape[0]
    rng = np.random.default_rng(seed)
    s = np.einsum("c,cd,dpq->pq", rng.standard_normal(k), coeffs, sym)
    s = 0.5 * (s + s.T)
    w, v = np.linalg.eigh(s)
    scale = max(1.0, float(np.max(np.abs(w))))
    groups, start = [], 0
    for i in range(1, n + 1):
        if i == n or w[i] - w[i - 1] > cluster_rtol * scale:
            groups.append(v[:, start:i].T.copy())
            start = i
    return Decomposition(summands=tuple(groups), commutant_dim=k)


# ---------------------------------------------------------------------------
# centralizer subspaces in h


def centralizer_in_h(space, u, rtol=None):
    """Orthonormal h-coords rows spanning {w in h : [w, u] = 0}, u in m-coords."""
    u = np.asarray(u, dtype=float)
    cols = space.hm_columns(u)                # (dim_m, dim_h)
    # absolute floor: [w, u] that is rounding noise on the scale of |u| times
    # the bracket table must count as zero, or C(u) shrinks spuriously
    scale = float(np.linalg.norm(u)) * float(np.linalg.norm(space.bracket_hm.ravel()))
    atol = max(cols.shape, default=1) * _linalg.EPS * scale
    return _linalg.null_space(cols, rtol, atol)


def normalizer_of_in_h(space, c_rows, rtol=None):
    """Orthonormal rows spanning {w in h : [w, C] in C} for a subalgebra C of h."""
    c_rows = np.atleast_2d(np.asarray(c_rows, dtype=float))
    nh = space.dim_h
    if c_rows.shape[0] == 0 or c_rows.shape[0] == nh:
        return np.eye(nh)
    off_c = np.eye(nh) - c_rows.T @ c_rows
    blocks = []
    for cj in c_rows:
        # row w ->  off_c @ [w, c_j]; [w, c_j]_k = sum_i w_i bracket_hh[i, j', k]
        adj = np.einsum("ijk,j->ki", space.bracket_hh, cj)   # (nh, nh): col i = [h_i, c_j]
        blocks.append(off_c @ adj)
    stacked = np.vstack(blocks)
    atol = max(stacked.shape) * _linalg.EPS * float(np.linalg.norm(space.bracket_hh.ravel()))
    return _linalg.null_space(stacked, rtol, atol)


def tilde_centralizer(space, u, rtol=None):
    """Q-orthocomplement of the centralizer of u inside its normalizer in h.

    Returns orthonormal h-coords rows.  Equals all of h when the centralizer
    is trivial and is empty when the centralizer is all of h.
    """
    c = centralizer_in_h(space, u, rtol)
    if c.shape[0] == 0:
        return np.eye(space.dim_h)
    if c.shape[0] == space.dim_h:
        return np.zeros((0, space.dim_h))
    n = normalizer_of_in_h(space, c, rtol)
    # vectors in N orthogonal to C: solve (C @ N^T) alpha = 0 within N;
    # both factors have orthonormal rows so unit scale sets the noise floor
    mat = c @ n.T
    alpha = _linalg.null_space(mat, rtol, atol=max(mat.shape, default=1) * _linalg.EPS)
    return alpha @ n if alpha.size else np.zeros((0, space.dim_h))
