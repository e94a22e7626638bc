"""The identity suite: residuals of relations implied by soliton hypotheses.

Each identity is an implication. When the model, structure or potential does
not meet its hypotheses the check is reported as ``hypothesis_not_satisfied``;
when the soliton equation itself fails, :class:`PrerequisiteError` is raised
(the suite runner turns that into a vacuous report with a note).
"""

from ..checks import CheckReport
from ..geometry import (Curvature, TensorField, apply, compose, divergence, exterior_derivative,
                        gradient, lie_derivative, lie_derivative_connection, wedge)
from ..structures.classify import INDETERMINATE, classify
from ..structures.structure import contact_form_differential, h_operator
from ..symbolic import ZERO, Expr
from .core import (NotConformalError, NotContactTransformationError, SolitonDataError,
                   classify_soliton, conformal_coefficient, contact_transformation_sigma,
                   gl1_residual, gl2_residual, gradient_soliton_residual, is_constant,
                   soliton_residual)

IDENTITIES = ("L1a", "L1b", "L1c", "T2", "T3", "T4", "T5", "GL1", "GL2", "T6", "T7", "T8", "T9")

DESCRIPTIONS = {
    "L1a": "eta(L_Z xi) = (lambda - r)/delta",
    "L1b": "(L_Z eta) xi = (r - lambda)/delta",
    "L1c": "(L_Z eta)(X) - g(X, L_Z xi) = 2 (r - lambda)/delta eta(X)",
    "T2": "contact-transformation potential on a paracontact metric manifold is Killing",
    "T3": "potential f xi on a paracontact metric manifold forces K-paracontact",
    "T4": "K-paracontact, Z parallel to xi, constant r: Jacobi condition along xi",
    "T5": "K-paracontact, Z = sigma xi: sigma is constant",
    "GL1": "R(X, Y) grad u = X(q) Y - Y(q) X with q = (r - lambda)/delta",
    "GL2": "S(Y, grad u) = -(dim - 1) Y(q)",
    "T6": "K-paracontact gradient soliton: q - u is constant",
    "T7": "(k, mu) gradient soliton: xi-component relation; Z parallel to xi",
    "T8": "para-Sasakian gradient soliton: u is constant",
    "T9": "para-cosymplectic with conformal Z: r = lambda + rho delta",
}


class PrerequisiteError(ValueError):
    """The soliton equation the identity is conditioned on does not hold."""

    def __init__(self, identity, report):
        self.identity = identity
        self.report = report
        super().__init__(f"{identity}: soliton equation fails, identity does not apply")


class UnknownIdentityError(KeyError):
    def __str__(self):
        return f"unknown identity {self.args[0]!r}; known: {', '.join(IDENTITIES)}"


class _Context:
    """Lazily computed quantities shared by the identities of one input."""

    def __init__(self, model, structure, data, jacobi):
        if data.lam is None:
            raise SolitonDataError("identity checks need lambda")
        self.model = model
        self.structure = structure
        self.data = data
        self.jacobi = jacobi
        self.curv = Curvature.cached(model)
        self.r = self.curv.scalar
        self.q = (self.r - data.lam) / data.delta
        self.Z = data.field(model)
        self._cache = {}

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def n(self):
        return self.model.dimension

    @property
    def classes(self):
        return self.get("classes", lambda: classify(self.structure))

    def flag(self, name):
        return self.structure is not None and self.classes.flags[name]

    def soliton(self):
        return self.get("soliton", lambda: soliton_residual(self.model, self.data, self.structure))

    def gradient_soliton(self):
        d = self.data
        return self.get("gradient", lambda: gradient_soliton_residual(
            self.model, d.u, d.lam, d.delta))

    def eta_of(self, X):
        eta = self.structure.eta
        return sum((eta[i] * X[i] for i in range(self.n)), ZERO)

    def xi_of(self, f):
        return self.model.along(self.structure.xi, f)


def _require(ctx, identity, gradient=False):
    report = ctx.gradient_soliton() if gradient else ctx.soliton()
    if not report.passed:
        raise PrerequisiteError(identity, report)


def _needs_structure(ctx, identity, flag, label):
    if ctx.structure is None:
        return CheckReport.vacuous(identity, "no structure given")
    if not ctx.flag(flag):
        return CheckReport.vacuous(identity, f"structure is not {label}")
    return None


def _collinear_factor(ctx):
    """``f`` with ``Z = f xi``, or ``None``."""
    f = ctx.eta_of(ctx.Z)
    xi = ctx.structure.xi
    if f.is_zero() or not (ctx.Z - xi * f).is_zero():
        return None
    return f


def _lie_xi_eta(ctx, identity):
    vac = _needs_structure(ctx, identity, "almost_paracontact_metric", "almost paracontact metric")
    if vac:
        return vac
    _require(ctx, identity)
    m, s = ctx.model, ctx.structure
    lie_xi = ctx.get("lie_xi", lambda: lie_derivative(m, ctx.Z, s.xi))
    lie_eta = ctx.get("lie_eta", lambda: lie_derivative(m, ctx.Z, s.eta))
    lam, r, delta, q = ctx.data.lam, ctx.r, ctx.data.delta, ctx.q
    if identity == "L1a":
        res = {"eta(L_Z xi) - (lambda-r)/delta": ctx.eta_of(lie_xi) - (lam - r) / delta}
    elif identity == "L1b":
        value = sum((lie_eta[i] * s.xi[i] for i in range(ctx.n)), ZERO)
        res = {"(L_Z eta)(xi) - (r-lambda)/delta": value - q}
    else:
        low = m.lower(lie_xi)
        res = {"(L_Z eta)(X) - g(X, L_Z xi) - 2q eta(X)": TensorField(m, (0, 1), [
            lie_eta[i] - low[i] - 2 * q * s.eta[i] for i in range(ctx.n)])}
    return CheckReport.from_residuals(identity, res, {"q": q})


def _t2(ctx):
    vac = _needs_structure(ctx, "T2", "paracontact_metric", "paracontact metric")
    if vac:
        return vac
    _require(ctx, "T2")
    try:
        sigma, div_res = contact_transformation_sigma(ctx.structure, ctx.Z)
    except NotContactTransformationError as exc:
        return CheckReport.vacuous("T2", f"Z is not an infinitesimal contact transformation: {exc}")
    m = ctx.model
    div = divergence(m, ctx.curv.connection, ctx.Z)
    res = {
        "sigma - q": sigma - ctx.q,
        "div Z - n q": div - ctx.n * ctx.q,
        "div Z - (m+1) sigma": div_res,
        "r - lambda": ctx.r - ctx.data.lam,
        "L_Z g": lie_derivative(m, ctx.Z, m.metric),
    }
    return CheckReport.from_residuals("T2", res, {"sigma": sigma, "killing": res["L_Z g"].is_zero()})


def _t3(ctx):
    vac = _needs_structure(ctx, "T3", "paracontact_metric", "paracontact metric")
    if vac:
        return vac
    f = _collinear_factor(ctx)
    if f is None:
        return CheckReport.vacuous("T3", "Z is not a nonzero multiple of xi")
    _require(ctx, "T3")
    m, s = ctx.model, ctx.structure
    n, g, eta = ctx.n, m.metric, s.eta
    h = h_operator(s)
    phih = compose(s.phi, h)
    df = [m.d(f, i) for i in range(n)]
    delta, rl = ctx.data.delta, ctx.r - ctx.data.lam

    def eq(a, b):
        gphih = sum((g[c, b] * phih[c, a] for c in range(n)), ZERO)
        return delta * (df[a] * eta[b] + df[b] * eta[a] + 2 * f * gphih) - 2 * rl * g[a, b]
    grad_f = gradient(m, f)
    res = {
        "collinear soliton equation": TensorField.from_function(m, (0, 2), eq),
        "phi grad f": apply(s.phi, grad_f),
        "grad f - (xi f) xi": grad_f - s.xi * ctx.xi_of(f),
        "h": h,
    }
    return CheckReport.from_residuals("T3", res, {"f": f})


def _t4(ctx):
    vac = _needs_structure(ctx, "T4", "K_paracontact", "K-paracontact")
    if vac:
        return vac
    if _collinear_factor(ctx) is None:
        return CheckReport.vacuous("T4", "Z is not a nonzero multiple of xi")
    m, s = ctx.model, ctx.structure
    if not is_constant(m, ctx.r):
        return CheckReport.vacuous("T4", "scalar curvature is not constant")
    _require(ctx, "T4")
    n, g, xi = ctx.n, m.metric, s.xi
    conn = ctx.curv.connection
    lam, delta, q = ctx.data.lam, ctx.data.delta, ctx.q
    dlam = [m.d(lam, i) for i in range(n)]
    ddel = [m.d(delta, i) for i in range(n)]

    LN = lie_derivative_connection(m, conn, ctx.curv, ctx.Z)

    def variation(i, j, k):
        lhs = delta * sum((g[a, k] * LN[a, i, j] for a in range(n)), ZERO)
        rhs = (dlam[k] * g[i, j] - dlam[i] * g[j, k] - dlam[j] * g[k, i]
               - q * (ddel[i] * g[j, k] + ddel[j] * g[k, i] - ddel[k] * g[i, j]))
        return lhs - rhs

    second = conn.covariant(xi, conn.covariant(xi, ctx.Z))
    jac = second + ctx.curv.apply(ctx.Z, xi, xi)
    along = jac - conn.covariant(conn.covariant(xi, xi), ctx.Z)
    xi_lam, xi_del = ctx.xi_of(lam), ctx.xi_of(delta)
    res = {
        "connection variation": TensorField.from_function(m, (0, 3), variation),
        "xi component": delta * m.inner(along, xi) + xi_lam + q * xi_del,
    }
    computed = jac.is_zero()
    jacobi = computed if ctx.jacobi is None else bool(ctx.jacobi)
    derived = {"jacobi_along_xi": computed, "jacobi_assumed": ctx.jacobi is not None}
    if jacobi:
        res["(xi lambda) + q (xi delta)"] = xi_lam + q * xi_del
        if (lam - delta).is_zero():
            res["r (xi lambda)"] = ctx.r * xi_lam
            derived["r_zero_or_lambda_constant"] = ctx.r.is_zero() or xi_lam.is_zero()
    return CheckReport.from_residuals("T4", res, derived)


def _t5(ctx):
    vac = _needs_structure(ctx, "T5", "K_paracontact", "K-paracontact")
    if vac:
        return vac
    sigma = _collinear_factor(ctx)
    if sigma is None:
        return CheckReport.vacuous("T5", "Z is not a nonzero multiple of xi")
    _require(ctx, "T5")
    m, s = ctx.model, ctx.structure
    n, eta = ctx.n, s.eta
    ds = exterior_derivative(m, sigma)
    lie_g = lie_derivative(m, ctx.Z, m.metric)
    xs = ctx.xi_of(sigma)
    volume = wedge(eta, contact_form_differential(s))
    res = {
        "L_Z g - (d sigma (x) eta + eta (x) d sigma)": TensorField.from_function(
            m, (0, 2), lambda a, b: lie_g[a, b] - ds[a] * eta[b] - ds[b] * eta[a]),
        "grad sigma - (xi sigma) xi": gradient(m, sigma) - s.xi * xs,
        "delta (xi sigma) - (r - lambda)": ctx.data.delta * xs - (ctx.r - ctx.data.lam),
        "(xi sigma) eta ^ d eta": volume * xs,
        "d sigma": ds,
    }
    return CheckReport.from_residuals("T5", res, {"sigma": sigma,
                                                  "eta_wedge_deta_nonzero": not volume.is_zero()})


def _gradient_only(ctx, identity):
    if not ctx.data.is_gradient:
        return CheckReport.vacuous(identity, "potential is not a gradient")
    return None


def _gl(ctx, identity):
    vac = _gradient_only(ctx, identity)
    if vac:
        return vac
    _require(ctx, identity, gradient=True)
    fn = gl1_residual if identity == "GL1" else gl2_residual
    label = "R(X,Y) grad u - X(q) Y + Y(q) X" if identity == "GL1" else \
        "S(Y, grad u) + (dim-1) Y(q)"
    return CheckReport.from_residuals(identity, {label: fn(ctx.model, ctx.data.u, ctx.q)},
                                      {"q": ctx.q})


def _t6(ctx):
    vac = _needs_structure(ctx, "T6", "K_paracontact", "K-paracontact") or \
        _gradient_only(ctx, "T6")
    if vac:
        return vac
    _require(ctx, "T6", gradient=True)
    m, s = ctx.model, ctx.structure
    p = ctx.q - ctx.data.u
    dp = exterior_derivative(m, p)
    res = {"d(q-u) - xi(q-u) eta": dp - s.eta * ctx.xi_of(p), "d(q-u)": dp}
    return CheckReport.from_residuals("T6", res, {"q - u": p, "constant": dp.is_zero()})


def _xi_relation(ctx):
    """``d[X1(r-l) eta(X2) - X2(r-l) eta(X1)] - (X1 d)(r-l) eta(X2) + (X2 d)(r-l) eta(X1)``,
    which equals ``delta^2 g(R(X1, X2) grad u, xi)`` on a gradient soliton."""
    m, s = ctx.model, ctx.structure
    n, eta = ctx.n, s.eta
    delta = ctx.data.delta
    rl = ctx.r - ctx.data.lam
    drl = [m.d(rl, i) for i in range(n)]
    ddel = [m.d(delta, i) for i in range(n)]
    return lambda i, j: (delta * (drl[i] * eta[j] - drl[j] * eta[i])
                         - rl * (ddel[i] * eta[j] - ddel[j] * eta[i]))


def _t7(ctx):
    vac = _needs_structure(ctx, "T7", "paracontact_metric", "paracontact metric") or \
        _gradient_only(ctx, "T7")
    if vac:
        return vac
    kmu = ctx.classes.kmu
    if not kmu.fits:
        return CheckReport.vacuous("T7", f"not a (k, mu)-paracontact structure: {kmu.reason}")
    m, s = ctx.model, ctx.structure
    u = ctx.data.u
    if is_constant(m, u):
        return CheckReport.vacuous("T7", "gradient soliton is trivial (u constant)")
    _require(ctx, "T7", gradient=True)
    n, eta = ctx.n, s.eta
    du = [m.d(u, i) for i in range(n)]
    delta2 = ctx.data.delta * ctx.data.delta
    if kmu.mu == INDETERMINATE:
        mu, hdu = ZERO, [ZERO] * n
    else:
        h = h_operator(s)
        mu = kmu.mu
        hdu = [sum((h[a, i] * du[a] for a in range(n)), ZERO) for i in range(n)]
    lhs = _xi_relation(ctx)

    def eq(i, j):
        rhs = (-delta2 * kmu.k * (du[i] * eta[j] - du[j] * eta[i])
               - delta2 * mu * (hdu[i] * eta[j] - hdu[j] * eta[i]))
        return lhs(i, j) - rhs
    grad = gradient(m, u)
    parallel = (grad - s.xi * ctx.eta_of(grad)).is_zero()
    return CheckReport.from_residuals(
        "T7", {"xi-component relation": TensorField.from_function(m, (0, 2), eq)},
        {"k": kmu.k, "mu": kmu.mu, "Z_parallel_to_xi": parallel},
        note="the closed form for Z in terms of k, mu and h is not evaluated")


def _t8(ctx):
    vac = _needs_structure(ctx, "T8", "para_Sasakian", "para-Sasakian") or \
        _gradient_only(ctx, "T8")
    if vac:
        return vac
    _require(ctx, "T8", gradient=True)
    m, s = ctx.model, ctx.structure
    n, eta = ctx.n, s.eta
    u = ctx.data.u
    du = exterior_derivative(m, u)
    delta2 = ctx.data.delta * ctx.data.delta
    lhs = _xi_relation(ctx)
    res = {
        "para-Sasakian xi relation": TensorField.from_function(
            m, (0, 2), lambda i, j: lhs(i, j) - delta2 * (du[i] * eta[j] - du[j] * eta[i])),
        "grad u - (xi u) xi": gradient(m, u) - s.xi * ctx.xi_of(u),
        "du": du,
    }
    return CheckReport.from_residuals("T8", res, {"constant": du.is_zero()})


def _t9(ctx):
    vac = _needs_structure(ctx, "T9", "para_cosymplectic", "para-cosymplectic")
    if vac:
        return vac
    m, s = ctx.model, ctx.structure
    try:
        rho = conformal_coefficient(m, ctx.Z)
    except NotConformalError as exc:
        return CheckReport.vacuous("T9", f"Z is not conformal: {exc}")
    _require(ctx, "T9")
    lie_eta = lie_derivative(m, ctx.Z, s.eta)
    lie_xi = lie_derivative(m, ctx.Z, s.xi)
    lam, delta = ctx.data.lam, ctx.data.delta
    res = {
        "r - lambda - rho delta": ctx.r - lam - rho * delta,
        "rho - (L_Z eta)(xi)": rho - sum((lie_eta[i] * s.xi[i] for i in range(ctx.n)), ZERO),
        "rho + eta(L_Z xi)": rho + ctx.eta_of(lie_xi),
    }
    derived = {"rho": rho, "classification": classify_soliton(lam)
               if is_constant(m, lam) else "indefinite"}
    return CheckReport.from_residuals("T9", res, derived)


_DISPATCH = {
    "L1a": lambda c: _lie_xi_eta(c, "L1a"),
    "L1b": lambda c: _lie_xi_eta(c, "L1b"),
    "L1c": lambda c: _lie_xi_eta(c, "L1c"),
    "T2": _t2, "T3": _t3, "T4": _t4, "T5": _t5,
    "GL1": lambda c: _gl(c, "GL1"),
    "GL2": lambda c: _gl(c, "GL2"),
    "T6": _t6, "T7": _t7, "T8": _t8, "T9": _t9,
}


def identity_check(model, structure, data, identity_id, jacobi=None, _ctx=None):
    """Residual report for one identity of :data:`IDENTITIES`.

    ``jacobi`` is the optional T4 hypothesis that ``Z`` satisfies the Jacobi
    equation along ``xi``; left as ``None`` it is decided by computation.
    """
    if identity_id not in _DISPATCH:
        raise UnknownIdentityError(identity_id)
    ctx = _ctx or _Context(model, structure, data, jacobi)
    report = _DISPATCH[identity_id](ctx)
    if not report.note:
        report.note = DESCRIPTIONS[identity_id]
    return report


def run_identity_suite(model, structure, data, identities=IDENTITIES, jacobi=None):
    """Every identity in order; a failed soliton prerequisite becomes a vacuous report."""
    ctx = _Context(model, structure, data, jacobi)
    out = []
    for ident in identities:
        try:
            out.append(identity_check(model, structure, data, ident, _ctx=ctx))
        except PrerequisiteError as exc:
            out.append(CheckReport.vacuous(ident, str(exc)))
    return out


__all__ = ["DESCRIPTIONS", "IDENTITIES", "PrerequisiteError", "UnknownIdentityError",
           "identity_check", "run_identity_suite"]
