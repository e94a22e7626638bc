from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paracontact.geometry import Curvature, divergence, gradient
from paracontact.soliton import (IDENTITIES, NotConformalError, SolitonData,
                                 SolitonDataError, UnknownIdentityError, classify_soliton,
                                 conformal_coefficient, contact_transformation_sigma,
                                 gradient_soliton_residual, identity_check, run_identity_suite,
                                 solve_lambda, soliton_residual)
from paracontact.structures import builtin
from paracontact.symbolic import Expr

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
nonzero = small.filter(bool)


def flat():
    m, s = builtin("flat_para_cosymplectic")
    return m, s


def flat_conformal_field(m, c, p, q, w, b):
    """c * position + a Killing field of diag(1, -1, 1); L_Z g = 2 c g."""
    x, y, z = (m.parse(t) for t in "xyz")
    Z = [c * x + p * y + q * z + b[0],
         p * x + c * y + w * z + b[1],
         -q * x + w * y + c * z + b[2]]
    return m.vector(Z)


conformal_params = st.tuples(small, small, small, small, st.tuples(small, small, small))


@settings(max_examples=40)
@given(conformal_params, nonzero)
def test_flat_conformal_fields(params, delta):
    c, p, q, w, b = params
    m, s = flat()
    Z = flat_conformal_field(m, c, p, q, w, b)
    assert conformal_coefficient(m, Z) == Expr.const(c)
    lam = solve_lambda(m, Z, delta)
    assert lam == Expr.const(-delta * c)
    data = SolitonData(Z=Z, lam=lam, delta=Expr.const(delta))
    assert soliton_residual(m, data, s).passed
    for report in run_identity_suite(m, s, data):
        assert report.acceptable, report.to_dict()
    assert identity_check(m, s, data, "T9").passed


@settings(max_examples=40)
@given(conformal_params, nonzero, nonzero)
def test_scaling_covariance(params, delta, scale):
    """(Z, delta) and (scale Z, delta / scale) give the same lambda."""
    m, _ = flat()
    Z = flat_conformal_field(m, *params)
    assert solve_lambda(m, Z * scale, Expr.const(delta) / scale) == solve_lambda(m, Z, delta)


def _trace_identity(m, data):
    div = divergence(m, Curvature.cached(m).connection, data.field(m))
    r = Curvature.cached(m).scalar
    return div - m.dimension * (r - data.lam) / data.delta


@settings(max_examples=30)
@given(conformal_params, nonzero)
def test_trace_identity_flat(params, delta):
    m, _ = flat()
    Z = flat_conformal_field(m, *params)
    data = SolitonData(Z=Z, lam=solve_lambda(m, Z, delta), delta=Expr.const(delta))
    assert _trace_identity(m, data).is_zero()


@pytest.mark.parametrize("u", [None, 0, 3])
def test_trace_identity_example_5_1(u):
    m, s = builtin("example_5_1", **({} if u is None else {"u": u}))
    m.spec.add_constant("delta")
    delta = m.parse("delta")
    data = SolitonData(Z=s.xi, lam=solve_lambda(m, s.xi, delta), delta=delta)
    assert soliton_residual(m, data, s).passed
    assert _trace_identity(m, data).is_zero()


def test_non_constant_conformal_factor():
    m, s = flat()
    m.spec.add_constant("delta")
    Z = m.vector(["2*x*z", "2*y*z", "z^2 - x^2 + y^2"])
    rho = conformal_coefficient(m, Z)
    assert rho == m.parse("2*z")
    delta = m.parse("delta")
    data = SolitonData(Z=Z, lam=solve_lambda(m, Z, delta), delta=delta)
    rep = soliton_residual(m, data, s)
    assert rep.passed and not rep.derived["lambda_constant"]
    assert _trace_identity(m, data).is_zero()
    assert identity_check(m, s, data, "T9").passed


@settings(max_examples=30)
@given(nonzero, small, small, small, nonzero)
def test_gradient_consistency(c, b1, b2, b3, delta):
    m, s = flat()
    u = m.parse(f"({c})*(x^2 - y^2 + z^2)/2 + ({b1})*x + ({b2})*y + ({b3})*z")
    lam = Expr.const(-c * delta)
    grad = gradient_soliton_residual(m, u, lam, Expr.const(delta))
    assert grad.passed
    by_field = soliton_residual(m, SolitonData(Z=gradient(m, u), lam=lam, delta=Expr.const(delta)))
    by_potential = soliton_residual(m, SolitonData(u=u, lam=lam, delta=Expr.const(delta)))
    assert by_field.passed and by_potential.passed
    data = SolitonData(u=u, lam=lam, delta=Expr.const(delta))
    for ident in ("GL1", "GL2", "T6"):
        assert identity_check(m, s, data, ident).acceptable


def test_gradient_failure_has_witness():
    m, _ = flat()
    rep = gradient_soliton_residual(m, m.parse("x^3"), Expr.const(-1), Expr.const(1))
    assert not rep.passed
    assert rep.failures()


def test_example_5_1_lambda_equals_r():
    m, s = builtin("example_5_1")
    m.spec.add_constant("lambda")
    r = Curvature.cached(m).scalar
    assert solve_lambda(m, s.xi, m.parse("lambda")) == r
    assert solve_lambda(m, s.xi, 7) == r
    m0, s0 = builtin("example_5_1", u=0)
    lam = solve_lambda(m0, s0.xi, -2)
    assert lam == Expr.const(-2)
    assert classify_soliton(lam) == "shrinking"


def test_example_5_1_e1_is_not_conformal():
    m, _ = builtin("example_5_1", u=0)
    with pytest.raises(NotConformalError) as info:
        conformal_coefficient(m, m.basis_vector(0))
    assert info.value.pair == (1, 2)
    assert info.value.witness == Expr.const(1)


def test_wrong_lambda_fails():
    m, s = builtin("example_5_1", u=0)
    rep = soliton_residual(m, SolitonData(Z=s.xi, lam=Expr.const(5), delta=Expr.const(1)), s)
    assert not rep.passed
    assert all(not w.is_zero() for _, _, w in rep.failures())


def test_soliton_data_validation():
    m, s = flat()
    with pytest.raises(SolitonDataError):
        SolitonData(Z=s.xi, u=m.parse("x"), lam=Expr.const(0), delta=Expr.const(1))
    with pytest.raises(SolitonDataError):
        SolitonData(Z=s.xi, lam=Expr.const(0), delta=Expr.const(0))
    with pytest.raises(SolitonDataError):
        SolitonData(lam=Expr.const(0), delta=Expr.const(1))


@pytest.mark.parametrize("lam, expected", [(Fraction(3), "expanding"), (0, "steady"),
                                            (Fraction(-1, 2), "shrinking")])
def test_classify_numeric(lam, expected):
    assert classify_soliton(lam) == expected


def test_classify_symbolic_is_indefinite():
    m, _ = builtin("example_5_1")
    assert classify_soliton(m.parse("-4*u - 2")) == "indefinite"


def test_contact_transformation_sigma():
    m, s = builtin("example_5_1")
    assert contact_transformation_sigma(s, s.xi).sigma.is_zero()
    assert contact_transformation_sigma(s, m.vector([0, 0, 0])).sigma.is_zero()
    fm, fs = flat()
    res = contact_transformation_sigma(fs, fm.vector(["0", "0", "z"]))
    assert res.sigma == Expr.const(1)


def test_identity_suite_example_5_1():
    m, s = builtin("example_5_1")
    m.spec.add_constant("delta")
    delta = m.parse("delta")
    data = SolitonData(Z=s.xi, lam=solve_lambda(m, s.xi, delta), delta=delta)
    reports = run_identity_suite(m, s, data)
    assert [r.identity for r in reports] == list(IDENTITIES)
    assert all(r.acceptable for r in reports)
    assert {r.identity for r in reports if r.passed} >= {"L1a", "L1b", "L1c", "T2", "T3", "T4", "T5"}


def test_identity_prerequisites():
    m, s = flat()
    data = SolitonData(Z=m.vector(["x", "y", "z"]), lam=Expr.const(-1), delta=Expr.const(1))
    assert identity_check(m, s, data, "GL1").status == "hypothesis_not_satisfied"
    with pytest.raises(UnknownIdentityError):
        identity_check(m, s, data, "T99")
    suite = {r.identity: r.status for r in run_identity_suite(m, s, data)}
    assert suite["GL1"] == "hypothesis_not_satisfied"
    assert suite["T9"] == "pass"
