"""Block-diagonal Minkowski norms and their fundamental tensors.

A norm on m = m_1 + ... + m_s is encoded by a function L of the squared
block norms theta_i = |y_i|^2, positively 1-homogeneous, with
F(y) = sqrt(L(theta)).  Three kinds are supported:

* ``linear``: L = sum(lambda_i * theta_i), the Riemannian diagonal case;
* ``phi``: s = 2 with L = (theta_1 + theta_2) * phi(sqrt(theta_2 / sum))^2
  for a polynomial profile phi;
* ``pert3``: s = 3 linear plus the symmetric cubic perturbation
  eps * theta_1 theta_2 theta_3 / sum^2.

The fundamental tensor at y (Hessian of F^2/2 in orthonormal m-coords) is
assembled from the gradient and Hessian of L; it equals the metric operator
of the norm, which is what every geodesic-orbit criterion consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    BoundaryNondifferentiableError,
    DimensionMismatchError,
    InvalidProfileError,
    NonPositiveCoefficientError,
    NotPositiveDefiniteError,
    NotStronglyConvexError,
    SingularOperatorError,
    SpecFormatError,
    ZeroVectorError,
)
from . import _linalg
from .homspace import Decomposition

_ODD_COEFF_TOL = 1e-12


@dataclass(frozen=True)
class LFunction:
    """Positively 1-homogeneous function of the squared block norms.

    ``boundary_ok[i]`` records whether the face theta_i = 0 admits a C^2
    evaluation; the gradient and Hessian callables raise
    :class:`BoundaryNondifferentiableError` on inadmissible faces.
    """

    arity: int
    kind: str
    value: callable = field(repr=False)
    grad: callable = field(repr=False)
    hess: callable = field(repr=False)
    boundary_ok: tuple
    spec_string: str

    def theta_check(self, theta):
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.arity,):
            raise DimensionMismatchError(
                f"expected {self.arity} block norms, got shape {theta.shape}")
        if np.any(theta < 0.0):
            raise ZeroVectorError("squared block norms must be nonnegative")
        return theta


def _format_floats(vals):
    return ",".join(format(v, "g") for v in vals)


def l_linear(lambdas):
    """Diagonal Riemannian kind: L(theta) = sum(lambda_i theta_i), lambda_i > 0."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 1:
        raise DimensionMismatchError("need a 1-d list of coefficients")
    if np.any(lam <= 0.0):
        raise NonPositiveCoefficientError(f"coefficients must be positive, got {lam.tolist()}")
    lam.setflags(write=False)
    s = lam.size
    zeros = np.zeros((s, s))
    zeros.setflags(write=False)

    def value(theta):
        return float(lam @ np.asarray(theta, dtype=float))

    def grad(theta):
        return lam.copy()

    def hess(theta):
        return zeros.copy()

    return LFunction(arity=s, kind="linear", value=value, grad=grad, hess=hess,
                     boundary_ok=(True,) * s,
                     spec_string="linear:" + _format_floats(lam))


@dataclass(frozen=True)
class PhiProfile:
    """Polynomial profile phi(theta) = c0 + c1 theta + ... on [0, 1].

    Validation samples a dense grid and requires phi > 0 together with the
    two coefficient-positivity conditions phi - theta phi' > 0 and
    phi - (theta - 1/theta) phi' > 0; these are exactly positivity of the
    L-gradient for the induced two-block norm.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(float(c) for c in self.coeffs)
        if len(cs) == 0 or len(cs) > 9:
            raise InvalidProfileError("profile degree must be between 0 and 8")
        object.__setattr__(self, "coeffs", cs)

    def value(self, theta):
        return npoly.polyval(theta, self.coeffs)

    def d1(self, theta):
        return npoly.polyval(theta, npoly.polyder(self.coeffs))

    def d2(self, theta):
        return npoly.polyval(theta, npoly.polyder(self.coeffs, 2))

    def validate(self, grid=2001):
        t = np.linspace(0.0, 1.0, grid)
        v = self.value(t)
        if np.any(v <= 0.0):
            bad = t[int(np.argmin(v))]
            raise InvalidProfileError(f"phi is not positive on [0,1] (phi({bad:.4f}) <= 0)")
        d = self.d1(t)
        p1 = v - t * d
        if np.any(p1 <= 0.0):
            bad = t[int(np.argmin(p1))]
            raise InvalidProfileError(
                f"phi - theta*phi' is not positive on [0,1] (fails at theta={bad:.4f})")
        ti, vi, di = t[1:], v[1:], d[1:]
        p2 = vi - (ti - 1.0 / ti) * di
        if np.any(p2 <= 0.0):
            bad = ti[int(np.argmin(p2))]
            raise InvalidProfileError(
                f"phi - (theta - 1/theta)*phi' is not positive on (0,1] "
                f"(fails at theta={bad:.4f})")
        return self


def l_from_phi(phi, check=True):
    """Two-block kind L = (theta_1 + theta_2) phi(sqrt(theta_2/sum))^2.

    ``check=True`` validates the profile and screens strong convexity at
    block dims (2, 2); the fundamental-tensor spectrum does not depend on
    block dims beyond multiplicities, so that screen is exhaustive.
    The theta_2 = 0 face is C^2 only when the odd low-order coefficients of
    phi^2 vanish (in particular phi'(0) = 0).
    """
    if not isinstance(phi, PhiProfile):
        phi = PhiProfile(tuple(phi))
    if check:
        phi.validate()
    psi = npoly.polymul(phi.coeffs, phi.coeffs)
    psi = np.concatenate([psi, np.zeros(max(0, 5 - psi.size))])
    dpsi = npoly.polyder(psi)
    d2psi = npoly.polyder(psi, 2)
    scale = max(1.0, float(np.max(np.abs(psi))))
    face2_ok = bool(abs(psi[1]) <= _ODD_COEFF_TOL * scale
                    and abs(psi[3]) <= _ODD_COEFF_TOL * scale)

    def _split(theta):
        t1, t2 = float(theta[0]), float(theta[1])
        total = t1 + t2
        if total <= 0.0:
            raise ZeroVectorError("norm data requested at the zero vector")
        x = t2 / total
        return total, x, np.sqrt(x)

    def value(theta):
        t1, t2 = float(theta[0]), float(theta[1])
        total = t1 + t2
        if total == 0.0:
            return 0.0
        th = np.sqrt(t2 / total)
        return float(total * npoly.polyval(th, psi))

    def _phi_derivs(theta, need_second):
        total, x, th = _split(theta)
        if th == 0.0:
            if not face2_ok:
                raise BoundaryNondifferentiableError(
                    "theta_2 = 0 face is not C^2 for this profile "
                    "(phi^2 has odd low-order terms)")
            big_phi = float(psi[0])
            dbig = float(psi[2])
            d2big = 2.0 * float(psi[4])
        else:
            big_phi = float(npoly.polyval(th, psi))
            pd = float(npoly.polyval(th, dpsi))
            dbig = pd / (2.0 * th)
            d2big = (th * float(npoly.polyval(th, d2psi)) - pd) / (4.0 * th ** 3)
        if not need_second:
            d2big = 0.0
        return total, x, big_phi, dbig, d2big

    def grad(theta):
        _, x, big_phi, dbig, _ = _phi_derivs(theta, need_second=False)
        return np.array([big_phi - x * dbig, big_phi + (1.0 - x) * dbig])

    def hess(theta):
        total, x, _, _, d2big = _phi_derivs(theta, need_second=True)
        a = d2big / total
        return np.array([[a * x * x, -a * x * (1.0 - x)],
                         [-a * x * (1.0 - x), a * (1.0 - x) ** 2]])

    fn = LFunction(arity=2, kind="phi", value=value, grad=grad, hess=hess,
                   boundary_ok=(True, face2_ok),
                   spec_string="phi:" + _format_floats(phi.coeffs))
    if check:
        report = strong_convexity_check(fn, (2, 2))
        if not report.ok:
            raise NotStronglyConvexError(
                f"fundamental tensor has eigenvalue {report.min_eigenvalue:.3e} "
                f"at block norms {np.round(report.witness_theta, 6).tolist()}")
    return fn


def l_pert3(lambdas, eps, check=True):
    """Three-block kind L = sum(lambda_i theta_i) + eps * theta_1 theta_2 theta_3 / sum^2."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (3,):
        raise DimensionMismatchError("pert3 needs exactly three coefficients")
    if np.any(lam <= 0.0):
        raise NonPositiveCoefficientError(f"coefficients must be positive, got {lam.tolist()}")
    eps = float(eps)
    if abs(eps) >= 27.0 * float(np.min(lam)):
        raise NonPositiveCoefficientError(
            "perturbation too large for positivity: need |eps| < 27*min(lambda)")
    lam.setflags(write=False)

    def _pieces(theta):
        th = np.asarray(theta, dtype=float)
        total = float(np.sum(th))
        if total <= 0.0:
            raise ZeroVectorError("norm data requested at the zero vector")
        prod = float(np.prod(th))
        partials = np.array([th[1] * th[2], th[0] * th[2], th[0] * th[1]])
        return th, total, prod, partials

    def value(theta):
        th = np.asarray(theta, dtype=float)
        total = float(np.sum(th))
        if total == 0.0:
            return 0.0
        return float(lam @ th + eps * np.prod(th) / total ** 2)

    def grad(theta):
        th, total, prod, partials = _pieces(theta)
        return lam + eps * (partials / total ** 2 - 2.0 * prod / total ** 3)

    def hess(theta):
        th, total, prod, partials = _pieces(theta)
        cross = np.array([[0.0, th[2], th[1]],
                          [th[2], 0.0, th[0]],
                          [th[1], th[0], 0.0]])
        h = (cross / total ** 2
             - 2.0 * (partials[:, None] + partials[None, :]) / total ** 3
             + 6.0 * prod / total ** 4)
        return eps * h

    fn = LFunction(arity=3, kind="pert3", value=value, grad=grad, hess=hess,
                   boundary_ok=(True, True, True),
                   spec_string=f"pert3:{_format_floats(lam)},{format(eps, 'g')}")
    if check and eps != 0.0:
        report = strong_convexity_check(fn, (2, 2, 2))
        if not report.ok:
            raise NotStronglyConvexError(
                f"fundamental tensor has eigenvalue {report.min_eigenvalue:.3e} "
                f"at block norms {np.round(report.witness_theta, 6).tolist()}")
    return fn


# ---------------------------------------------------------------------------
# fundamental tensor and friends


def _components(fn, dec, y):
    y = np.asarray(y, dtype=float)
    if dec.arity != fn.arity:
        raise DimensionMismatchError(
            f"norm has {fn.arity} blocks but decomposition has {dec.arity}")
    n = int(sum(dec.dims))
    if y.shape != (n,):
        raise DimensionMismatchError(f"expected m-coords vector of length {n}")
    nrm2 = float(y @ y)
    if nrm2 == 0.0:
        raise ZeroVectorError("norm data requested at the zero vector")
    comps = dec.split(y)
    theta = dec.theta(y)
    for i, t in enumerate(theta):
        if t == 0.0 and not fn.boundary_ok[i]:
            raise BoundaryNondifferentiableError(
                f"block {i + 1} vanishes but that face is not C^2 for this norm")
    return y, comps, theta


def fundamental_tensor(fn, dec, y):
    """Hessian of F^2/2 at y in orthonormal m-coords (symmetric matrix).

    Equals grad_a(L) on each summand plus rank-one couplings from the
    L-Hessian; this matrix is the metric operator A_y of the norm.
    """
    y, comps, theta = _components(fn, dec, y)
    g1 = fn.grad(theta)
    h2 = fn.hess(theta)
    n = y.size
    out = np.zeros((n, n))
    for a, s in enumerate(dec.summands):
        out += g1[a] * (s.T @ s)
    for a in range(dec.arity):
        for b in range(dec.arity):
            if h2[a, b] != 0.0:
                out += 2.0 * h2[a, b] * np.outer(comps[a], comps[b])
    return 0.5 * (out + out.T)


def metric_operator(fn, dec, y):
    """Fundamental tensor with a positive-definiteness guard."""
    g = fundamental_tensor(fn, dec, y)
    w = np.linalg.eigvalsh(g)
    if w[0] <= g.shape[0] * _linalg.EPS * max(abs(w[-1]), 1.0):
        raise NotPositiveDefiniteError(
            f"fundamental tensor not positive definite (min eigenvalue {w[0]:.3e})")
    return g


def a_u_of_u(fn, dec, u):
    """A_u(u) = sum_i dL/dtheta_i * u_i, the metric operator applied to u itself."""
    u, comps, theta = _components(fn, dec, u)
    g1 = fn.grad(theta)
    out = np.zeros_like(u)
    for a, c in enumerate(comps):
        out += g1[a] * c
    return out


def f_squared(fn, dec, y):
    """F(y)^2 = L(theta(y)); accepts y = 0."""
    y = np.asarray(y, dtype=float)
    return fn.value(dec.theta(y))


def spray_vector(space, dec, fn, y):
    """Spray vector eta(y): solves g_y(eta, .) = g_y(y, [., y]_m) on m.

    The right side is assembled from the bracket table and A_y(y); the left
    side inverts the metric operator.
    """
    y = np.asarray(y, dtype=float)
    a = fundamental_tensor(fn, dec, y)
    auu = a_u_of_u(fn, dec, y)
    rhs = np.einsum("ibk,b,k->i", space.bracket_mm_m, y, auu)
    try:
        eta = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularOperatorError(f"metric operator is singular at this vector: {exc}")
    if not np.all(np.isfinite(eta)):
        raise SingularOperatorError("metric operator solve produced non-finite values")
    return eta


@dataclass(frozen=True)
class ConvexityReport:
    ok: bool
    min_eigenvalue: float
    witness: np.ndarray
    witness_theta: np.ndarray
    samples: int


def strong_convexity_check(fn, dims, samples=64, seed=0):
    """Scan unit vectors (interior plus admissible degenerate-block patterns)
    for the smallest fundamental-tensor eigenvalue.

    Returns a :class:`ConvexityReport`; ``ok`` means every sampled tensor was
    positive definite.  This is a sampled certificate of failure, not a proof
    of convexity.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != fn.arity:
        raise DimensionMismatchError(
            f"norm has {fn.arity} blocks but {len(dims)} dims were given")
    dec = Decomposition.from_dims(dims)
    n = int(sum(dims))
    rng = np.random.default_rng(seed)
    patterns = [tuple(True for _ in dims)]
    for mask in range(1, 2 ** len(dims) - 1):
        keep = tuple(bool(mask >> i & 1) for i in range(len(dims)))
        if all(fn.boundary_ok[i] for i, k in enumerate(keep) if not k):
            patterns.append(keep)
    best = (np.inf, None, None)
    checked = 0
    for it in range(samples):
        keep = patterns[it % len(patterns)]
        u = np.zeros(n)
        off = 0
        for i, d in enumerate(dims):
            if keep[i]:
                u[off:off + d] = rng.standard_normal(d)
            off += d
        u /= np.linalg.norm(u)
        w = np.linalg.eigvalsh(fundamental_tensor(fn, dec, u))
        checked += 1
        if w[0] < best[0]:
            best = (float(w[0]), u, dec.theta(u))
    ok = bool(best[0] > 1e-10)
    return ConvexityReport(ok=ok, min_eigenvalue=best[0], witness=best[1],
                           witness_theta=best[2], samples=checked)


# ---------------------------------------------------------------------------
# metric grammar


def parse_metric(text, arity=None, check=True):
    """Parse ``linear:...``, ``phi:...`` or ``pert3:...`` into an LFunction.

    ``arity`` (when given) must match the block count of the parsed norm.
    The original text is kept as the norm's ``spec_string`` so reports echo
    the user's input.
    """
    text = text.strip()
    if ":" not in text:
        raise SpecFormatError(f"metric must look like kind:args, got {text!r}",
                              column=len(text))
    kind, _, args = text.partition(":")
    kind = kind.strip()
    vals = []
    col = len(kind) + 2
    for tok in args.split(","):
        try:
            vals.append(float(tok))
        except ValueError:
            raise SpecFormatError(f"bad number {tok.strip()!r} in metric", column=col)
        col += len(tok) + 1
    if kind == "linear":
        if len(vals) < 2:
            raise SpecFormatError("linear needs at least two coefficients",
                                  column=len(kind) + 2)
        fn = l_linear(vals)
    elif kind == "phi":
        fn = l_from_phi(PhiProfile(tuple(vals)), check=check)
    elif kind == "pert3":
        if len(vals) != 4:
            raise SpecFormatError("pert3 needs lambda1,lambda2,lambda3,eps",
                                  column=len(kind) + 2)
        fn = l_pert3(vals[:3], vals[3], check=check)
    else:
        raise SpecFormatError(f"unknown metric kind {kind!r}", column=1)
    if arity is not None and fn.arity != arity:
        raise SpecFormatError(
            f"metric has {fn.arity} blocks but the space decomposition has {arity}")
    return LFunction(arity=fn.arity, kind=fn.kind, value=fn.value, grad=fn.grad,
                     hess=fn.hess, boundary_ok=fn.boundary_ok, spec_string=text)
