"""Structure-class detection with witnesses and consequence checks."""

from dataclasses import dataclass, field

from ..checks import CheckReport
from ..geometry import TensorField, compose, covariant_derivative, exterior_derivative
from ..symbolic import ZERO, Expr
from .structure import (contact_form_differential, fundamental_two_form, h_operator,
                        nabla_xi_residual, nijenhuis)

FLAGS = ("almost_paracontact_metric", "paracontact_metric", "K_paracontact", "normal",
         "para_Sasakian", "para_cosymplectic")

INDETERMINATE = "indeterminate"


@dataclass
class KMuFit:
    """Result of matching ``R(X, Y) xi`` against the ``(k, mu)`` form.

    ``mu`` is :data:`INDETERMINATE` when ``h = 0``; ``fits`` is false when no
    pair of real constants works, with ``reason`` saying why.
    """

    fits: bool
    k: object = None
    mu: object = None
    reason: str = ""

    def to_dict(self):
        def show(v):
            return v if v is None or isinstance(v, str) else str(v)
        return {"fits": self.fits, "k": show(self.k), "mu": show(self.mu), "reason": self.reason}


@dataclass
class StructureClassReport:
    flags: dict
    witnesses: dict
    kmu: KMuFit
    checks: list = field(default_factory=list)
    diagnostic: bool = False

    def check(self, identity):
        for c in self.checks:
            if c.identity == identity:
                return c
        raise KeyError(identity)

    @property
    def consistent(self):
        return all(c.acceptable for c in self.checks)

    def to_dict(self):
        return {
            "flags": {k: self.flags[k] for k in FLAGS},
            "witnesses": {k: {",".join(map(str, i)): str(w) for i, w in v}
                          for k, v in sorted(self.witnesses.items())},
            "kmu": self.kmu.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "diagnostic": self.diagnostic,
        }


def _xi_column(R, xi, n):
    """``T[a, i, j]``: the ``e_a`` component of ``R(e_i, e_j) xi``."""
    return lambda a, i, j: sum((R[a, i, j, k] * xi[k] for k in range(n) if not xi[k].is_zero()),
                               ZERO)


def _is_constant(model, e):
    return all(model.d(e, i).is_zero() for i in range(model.dimension))


def fit_k_mu(s, h=None):
    """Solve ``R(X, Y) xi = k (eta(Y) X - eta(X) Y) + mu (eta(Y) hX - eta(X) hY)``.

    Every component gives one linear equation ``lhs = k a + mu b``. The first
    equation with ``a != 0`` (or a nondegenerate pair when ``h != 0``) fixes the
    candidates; all others must then hold exactly and both must be constant.
    """
    m = s.model
    n = m.dimension
    if h is None:
        h = h_operator(s, strict=False, check=False)
    R = s.curvature.riemann
    lhs = _xi_column(R, s.xi, n)
    eta = s.eta
    rows = []
    for a in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                A = eta[j] * int(a == i) - eta[i] * int(a == j)
                B = eta[j] * h[a, i] - eta[i] * h[a, j]
                rows.append((lhs(a, i, j), A, B))

    h_zero = h.is_zero()
    k = mu = None
    if h_zero:
        for L, A, _ in rows:
            if not A.is_zero():
                k = L / A
                break
        if k is None:
            return KMuFit(False, reason="eta vanishes identically")
        mu = INDETERMINATE
    else:
        for idx, (L1, A1, B1) in enumerate(rows):
            for L2, A2, B2 in rows[idx + 1:]:
                det = A1 * B2 - A2 * B1
                if not det.is_zero():
                    k = (L1 * B2 - L2 * B1) / det
                    mu = (A1 * L2 - A2 * L1) / det
                    break
            if k is not None:
                break
        if k is None:
            return KMuFit(False, reason="component equations are degenerate")

    for L, A, B in rows:
        rhs = k * A if h_zero else k * A + mu * B
        if not (L - rhs).is_zero():
            return KMuFit(False, reason=f"component equation fails: {L - rhs}")
    if not _is_constant(m, k) or (not h_zero and not _is_constant(m, mu)):
        return KMuFit(False, k, mu, reason="fitted coefficients are not constant")
    return KMuFit(True, k, mu)


def _vacuous(identity, flag):
    return CheckReport.vacuous(identity, f"structure is not {flag}")


def classify(s):
    """Compute every class flag, witnesses of failed flags, the ``(k, mu)`` fit
    and the consequence relations implied by each established flag."""
    m = s.model
    n = m.dimension
    g, xi, eta, phi = m.metric, s.xi, s.eta, s.phi
    curv = s.curvature
    R, Q = curv.riemann, curv.ricci_operator
    dim1 = Expr.const(n - 1)

    Phi = fundamental_two_form(s, strict=False)
    deta = contact_form_differential(s)
    h = h_operator(s, strict=False, check=False)
    N = nijenhuis(s, strict=False)
    dPhi = exterior_derivative(m, Phi)

    axioms = s.axioms.passed
    residuals = {
        "paracontact_metric": (Phi - deta).nonzero(),
        "K_paracontact": h.nonzero(),
        "normal": N.nonzero(),
    }
    flags = {
        "almost_paracontact_metric": axioms,
        "paracontact_metric": axioms and not residuals["paracontact_metric"],
        "K_paracontact": axioms and not residuals["paracontact_metric"] and not residuals["K_paracontact"],
        "normal": axioms and not residuals["normal"],
    }
    flags["para_Sasakian"] = flags["paracontact_metric"] and flags["normal"]
    cosym_witness = deta.nonzero() + dPhi.nonzero() + residuals["normal"]
    flags["para_cosymplectic"] = axioms and not cosym_witness

    witnesses = {}
    if not axioms:
        witnesses["almost_paracontact_metric"] = [(i, w) for _, i, w in s.axioms.failures()]
    for name in ("paracontact_metric", "K_paracontact", "normal"):
        if residuals[name]:
            witnesses[name] = residuals[name]
    if not flags["para_Sasakian"]:
        witnesses["para_Sasakian"] = residuals["paracontact_metric"] + residuals["normal"]
    if cosym_witness:
        witnesses["para_cosymplectic"] = cosym_witness
    witnesses = {k: v for k, v in witnesses.items() if v}

    conn = curv.connection
    nabla_xi = TensorField.from_function(m, (1, 1), lambda a, b: conn.nabla(b, xi)[a])
    R_xi = _xi_column(R, xi, n)
    R_X_xi_xi = TensorField.from_function(
        m, (1, 1), lambda a, b: sum((R_xi(a, b, j) * xi[j] for j in range(n)), ZERO))
    Q_xi = TensorField(m, (1, 0), [sum((Q[a, b] * xi[b] for b in range(n)), ZERO)
                                   for a in range(n)])
    nabla_phi = covariant_derivative(m, conn, phi)
    ident = m.identity()
    ricci_xi_xi = sum((curv.ricci[a, b] * xi[a] * xi[b] for a in range(n) for b in range(n)), ZERO)
    h2 = compose(h, h)
    tr_h2 = sum((h2[a, a] for a in range(n)), ZERO)

    checks = []
    if flags["paracontact_metric"]:
        checks.append(CheckReport.from_residuals("paracontact.nabla_xi", {
            "nabla_X_xi + phi_X - phi_h_X": nabla_xi_residual(s, h)}))
        checks.append(CheckReport.from_residuals("paracontact.ricci_xi_xi", {
            "S(xi,xi) - tr(h^2) + (dim-1)": ricci_xi_xi - tr_h2 + dim1}))
    else:
        checks += [_vacuous("paracontact.nabla_xi", "paracontact metric"),
                   _vacuous("paracontact.ricci_xi_xi", "paracontact metric")]

    if flags["K_paracontact"]:
        checks.append(CheckReport.from_residuals("K.nabla_xi", {
            "nabla_X_xi + phi_X": nabla_xi + phi}))
        checks.append(CheckReport.from_residuals("K.curvature_xi_xi", {
            "R(X,xi)xi + X - eta(X)xi": TensorField.from_function(
                m, (1, 1), lambda a, b: R_X_xi_xi[a, b] + ident[a, b] - eta[b] * xi[a])}))
        checks.append(CheckReport.from_residuals("K.ricci_operator_xi", {
            "Q_xi + (dim-1)xi": Q_xi + xi * dim1}))
    else:
        checks += [_vacuous(i, "K-paracontact") for i in
                   ("K.nabla_xi", "K.curvature_xi_xi", "K.ricci_operator_xi")]

    if flags["para_Sasakian"]:
        checks.append(CheckReport.from_residuals("paraSasakian.nabla_phi", {
            "(nabla_X phi)Y + g(X,Y)xi - eta(Y)X": TensorField.from_function(
                m, (1, 2), lambda a, i, j: nabla_phi[a, i, j] + g[i, j] * xi[a]
                - eta[j] * ident[a, i])}))
        checks.append(CheckReport.from_residuals("paraSasakian.curvature_xi", {
            "R(X,Y)xi - eta(X)Y + eta(Y)X": TensorField.from_function(
                m, (1, 2), lambda a, i, j: R_xi(a, i, j) - eta[i] * ident[a, j]
                + eta[j] * ident[a, i])}))
        checks.append(CheckReport.from_residuals("paraSasakian.curvature_xi_mixed", {
            "R(X,xi)Y - g(X,Y)xi + eta(Y)X": TensorField.from_function(
                m, (1, 2), lambda a, i, j: sum((R[a, i, k, j] * xi[k] for k in range(n)), ZERO)
                - g[i, j] * xi[a] + eta[j] * ident[a, i])}))
        checks.append(CheckReport.from_residuals("paraSasakian.implies_K", {
            "h": h}))
    else:
        checks += [_vacuous(i, "para-Sasakian") for i in
                   ("paraSasakian.nabla_phi", "paraSasakian.curvature_xi",
                    "paraSasakian.curvature_xi_mixed", "paraSasakian.implies_K")]

    if flags["para_cosymplectic"]:
        ric = curv.ricci
        checks.append(CheckReport.from_residuals("cosymplectic.parallel_forms", {
            "nabla_eta": covariant_derivative(m, conn, eta),
            "nabla_Phi": covariant_derivative(m, conn, Phi)}))
        checks.append(CheckReport.from_residuals("cosymplectic.curvature_xi", {
            "R(X,Y)xi": TensorField.from_function(m, (1, 2), R_xi)}))
        checks.append(CheckReport.from_residuals("cosymplectic.nabla_phi", {
            "nabla_phi": nabla_phi}))
        checks.append(CheckReport.from_residuals("cosymplectic.nabla_xi", {
            "nabla_xi": nabla_xi}))
        checks.append(CheckReport.from_residuals("cosymplectic.ricci_xi", {
            "S(X,xi)": TensorField(m, (0, 1), [sum((ric[a, b] * xi[b] for b in range(n)), ZERO)
                                               for a in range(n)])}))
        checks.append(CheckReport.from_residuals("cosymplectic.ricci_operator_xi", {
            "Q_xi": Q_xi}))
    else:
        checks += [_vacuous(i, "para-cosymplectic") for i in
                   ("cosymplectic.parallel_forms", "cosymplectic.curvature_xi",
                    "cosymplectic.nabla_phi", "cosymplectic.nabla_xi",
                    "cosymplectic.ricci_xi", "cosymplectic.ricci_operator_xi")]

    kmu = fit_k_mu(s, h) if flags["paracontact_metric"] else KMuFit(
        False, reason="structure is not paracontact metric")
    return StructureClassReport(flags, witnesses, kmu, checks, diagnostic=not axioms)


__all__ = ["FLAGS", "INDETERMINATE", "KMuFit", "StructureClassReport", "classify", "fit_k_mu"]
