import numpy as np
import numpy.testing as npt
import pytest

from conftest import fd_gradient, fd_hessian
from gospace import catalog, finsler
from gospace.errors import (BoundaryNondifferentiableError,
                            DimensionMismatchError, InvalidProfileError,
                            NonPositiveCoefficientError,
                            NotStronglyConvexError, SpecFormatError,
                            ZeroVectorError)


# --------------------------------------------------------------------------
# L functions


def test_linear_value_grad_hess():
    fn = finsler.l_linear([2.0, 3.0])
    th = np.array([0.7, 1.1])
    assert fn.value(th) == pytest.approx(2.0 * 0.7 + 3.0 * 1.1)
    npt.assert_allclose(fn.grad(th), [2.0, 3.0])
    npt.assert_allclose(fn.hess(th), np.zeros((2, 2)))
    with pytest.raises(NonPositiveCoefficientError):
        finsler.l_linear([1.0, -1.0])


@pytest.mark.parametrize("mk", [
    lambda: finsler.l_linear([1.0, 2.5]),
    lambda: finsler.parse_metric("phi:1,0,0.25"),
    lambda: finsler.parse_metric("phi:1,0.1"),
])
def test_two_block_grad_hess_vs_fd(mk, rng):
    fn = mk()
    for _ in range(10):
        th = rng.uniform(0.2, 2.0, size=2)
        npt.assert_allclose(fn.grad(th), fd_gradient(fn.value, th),
                            rtol=1e-6, atol=1e-8)
        npt.assert_allclose(fn.hess(th), fd_hessian(fn.value, th),
                            rtol=2e-4, atol=1e-6)


def test_pert3_grad_hess_vs_fd(rng):
    fn = finsler.l_pert3([1.0, 2.0, 1.5], 0.8)
    for _ in range(10):
        th = rng.uniform(0.2, 2.0, size=3)
        npt.assert_allclose(fn.grad(th), fd_gradient(fn.value, th),
                            rtol=1e-6, atol=1e-8)
        npt.assert_allclose(fn.hess(th), fd_hessian(fn.value, th),
                            rtol=2e-4, atol=1e-6)


def test_l_homogeneity(rng):
    for fn in (finsler.parse_metric("phi:1,0,0.25"),
               finsler.l_pert3([1.0, 1.0, 1.0], 0.5)):
        th = rng.uniform(0.2, 2.0, size=fn.arity)
        # positive 1-homogeneity and the Euler identity
        assert fn.value(3.7 * th) == pytest.approx(3.7 * fn.value(th))
        assert float(fn.grad(th) @ th) == pytest.approx(fn.value(th))


def test_pert3_guards():
    with pytest.raises(NonPositiveCoefficientError):
        finsler.l_pert3([1.0, 1.0, 1.0], 27.0)      # too large a perturbation
    with pytest.raises(DimensionMismatchError):
        finsler.l_pert3([1.0, 1.0], 0.1)


# --------------------------------------------------------------------------
# profiles and their admissibility


def test_profile_validation():
    with pytest.raises(InvalidProfileError):
        finsler.PhiProfile((1.0, -2.0)).validate()   # phi(1) < 0
    with pytest.raises(InvalidProfileError):
        finsler.parse_metric("phi:1,0,5")            # phi - t phi' < 0 inside
    finsler.PhiProfile((1.0, 0.0, 0.25)).validate()  # fine


def test_convexity_screen_rejects():
    # skip profile validation to reach the fundamental-tensor screen
    bad = finsler.l_from_phi(finsler.PhiProfile((1.0, 0.0, 5.0)), check=False)
    report = finsler.strong_convexity_check(bad, (2, 2))
    assert not report.ok
    assert report.min_eigenvalue < 0


def test_boundary_dispatch():
    even = finsler.parse_metric("phi:1,0,0.25")
    assert even.boundary_ok == (True, True)
    odd = finsler.parse_metric("phi:1,0.1")
    assert odd.boundary_ok == (True, False)
    th0 = np.array([1.0, 0.0])
    npt.assert_allclose(even.grad(th0), [1.0, 1.5])  # psi = 1 + .5 t^2 + ...
    with pytest.raises(BoundaryNondifferentiableError):
        odd.grad(th0)


def test_boundary_matches_interior_limit():
    fn = finsler.parse_metric("phi:1,0,0.25")
    g0 = fn.grad(np.array([1.0, 0.0]))
    g_eps = fn.grad(np.array([1.0, 1e-10]))
    npt.assert_allclose(g0, g_eps, rtol=1e-6)


# --------------------------------------------------------------------------
# fundamental tensor on catalog spaces


@pytest.mark.parametrize("spec,mtext", [
    ("so5/u2", "linear:1,2"),
    ("so5/u2", "phi:1,0,0.25"),
    ("su3/t2", "pert3:1,1,1,0.5"),
])
def test_fundamental_tensor_is_hessian_of_half_f_squared(spec, mtext, rng):
    space, dec, _ = catalog.make_space(spec)
    fn = finsler.parse_metric(mtext)

    def half_f2(y):
        return 0.5 * finsler.f_squared(fn, dec, y)

    for _ in range(5):
        y = rng.standard_normal(space.dim_m)
        y /= np.linalg.norm(y)
        got = finsler.fundamental_tensor(fn, dec, y)
        want = fd_hessian(half_f2, y)
        npt.assert_allclose(got, want, rtol=1e-5, atol=1e-6)


def test_a_u_of_u_matches_operator(rng):
    space, dec, _ = catalog.make_space("su3/t2")
    fn = finsler.parse_metric("pert3:1,1,1,0.5")
    for _ in range(10):
        u = rng.standard_normal(space.dim_m)
        a = finsler.metric_operator(fn, dec, u)
        npt.assert_allclose(finsler.a_u_of_u(fn, dec, u), a @ u,
                            rtol=1e-12, atol=1e-12)


def test_tensor_zero_homogeneity(rng):
    space, dec, _ = catalog.make_space("so5/u2")
    fn = finsler.parse_metric("phi:1,0,0.25")
    y = rng.standard_normal(space.dim_m)
    a1 = finsler.fundamental_tensor(fn, dec, y)
    a2 = finsler.fundamental_tensor(fn, dec, 4.2 * y)
    npt.assert_allclose(a1, a2, atol=1e-12)


def test_f_squared_euler_identity(rng):
    space, dec, _ = catalog.make_space("so5/u2")
    fn = finsler.parse_metric("phi:1,0,0.25")
    y = rng.standard_normal(space.dim_m)
    g = finsler.fundamental_tensor(fn, dec, y)
    assert float(y @ g @ y) == pytest.approx(finsler.f_squared(fn, dec, y))


def test_spray_vector_solves_metric_equation(rng):
    space, dec, _ = catalog.make_space("su3/t2")
    fn = finsler.parse_metric("linear:1,2,3")
    y = rng.standard_normal(space.dim_m)
    eta = finsler.spray_vector(space, dec, fn, y)
    a = finsler.fundamental_tensor(fn, dec, y)
    auu = finsler.a_u_of_u(fn, dec, y)
    rhs = np.einsum("ibk,b,k->i", space.bracket_mm_m, y, auu)
    npt.assert_allclose(a @ eta, rhs, atol=1e-10)


def test_zero_vector_guards():
    space, dec, _ = catalog.make_space("so5/u2")
    fn = finsler.parse_metric("linear:1,2")
    assert finsler.f_squared(fn, dec, np.zeros(space.dim_m)) == 0.0
    with pytest.raises(ZeroVectorError):
        finsler.fundamental_tensor(fn, dec, np.zeros(space.dim_m))


def test_strong_convexity_report_fields():
    fn = finsler.parse_metric("pert3:1,1,1,0.5")
    report = finsler.strong_convexity_check(fn, (2, 2, 2))
    assert report.ok
    assert report.min_eigenvalue > 0
    assert report.samples > 0


# --------------------------------------------------------------------------
# metric spec parsing


def test_parse_metric_kinds():
    assert finsler.parse_metric("linear:1,2").kind == "linear"
    assert finsler.parse_metric("phi:1,0,0.25").kind == "phi"
    assert finsler.parse_metric("pert3:1,1,1,0.5").kind == "pert3"
    assert finsler.parse_metric(" linear:1,2 ").spec_string == "linear:1,2"


@pytest.mark.parametrize("bad", [
    "linear",            # no colon
    "linear:1",          # too few coefficients
    "phi:a,b",           # not numbers
    "pert3:1,1,1",       # missing eps
    "cubic:1,2",         # unknown kind
])
def test_parse_metric_rejects(bad):
    with pytest.raises(SpecFormatError):
        finsler.parse_metric(bad)


def test_parse_metric_error_column():
    with pytest.raises(SpecFormatError) as exc:
        finsler.parse_metric("linear:1,x")
    assert exc.value.column == 10


def test_parse_metric_arity_guard():
    with pytest.raises(SpecFormatError):
        finsler.parse_metric("linear:1,2", arity=3)
