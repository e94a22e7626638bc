"""Almost paracontact metric structures and their derived tensors."""

from dataclasses import dataclass, field

from ..checks import CheckReport
from ..geometry import (Curvature, TensorField, apply, compose, exterior_derivative,
                        lie_bracket, lie_derivative)
from ..symbolic import ZERO, Expr


class StructureError(ValueError):
    """The tensors violate the almost paracontact metric axioms."""

    def __init__(self, report):
        self.report = report
        bad = ", ".join(sorted({name for name, _, _ in report.failures()}))
        super().__init__(f"structure violates: {bad}")


class ConsistencyError(AssertionError):
    """A relation that must follow from established flags failed."""


@dataclass(eq=False)
class ParacontactStructure:
    """``(phi, xi, eta, g)`` on one model; ``g`` is the model metric.

    Construction checks the axioms unless ``diagnostic`` is set, in which case
    violations are recorded in ``axioms`` instead of raising.
    """

    model: object
    phi: TensorField
    xi: TensorField
    eta: TensorField
    diagnostic: bool = False
    axioms: CheckReport = field(init=False, repr=False)
    _curvature: object = field(default=None, init=False, repr=False)

    def __post_init__(self):
        for t, valence in ((self.phi, (1, 1)), (self.xi, (1, 0)), (self.eta, (0, 1))):
            if t.model is not self.model or t.valence != valence:
                raise ValueError(f"structure tensor of valence {t.valence} does not fit")
        self.axioms = verify_axioms(self)
        if not self.axioms.passed and not self.diagnostic:
            raise StructureError(self.axioms)

    @property
    def g(self):
        return self.model.metric

    @property
    def curvature(self):
        if self._curvature is None:
            self._curvature = Curvature.cached(self.model)
        return self._curvature

    def phi_of(self, X):
        return apply(self.phi, X)

    def eta_of(self, X):
        n = self.model.dimension
        return sum((self.eta[i] * X[i] for i in range(n) if not X[i].is_zero()), ZERO)


def verify_axioms(s):
    """Residuals of the almost paracontact metric axioms.

    ``phi^2 - (I - eta (x) xi)``, ``eta(xi) - 1``, ``phi xi``, ``eta o phi`` and
    ``g(phi X, phi Y) + g(X, Y) - eta(X) eta(Y)``.
    """
    m = s.model
    n = m.dimension
    phi, xi, eta, g = s.phi, s.xi, s.eta, m.metric
    phi2 = compose(phi, phi)
    residuals = {
        "phi_squared": TensorField.from_function(
            m, (1, 1), lambda a, b: phi2[a, b] - int(a == b) + xi[a] * eta[b]),
        "eta_of_xi": sum((eta[i] * xi[i] for i in range(n)), ZERO) - 1,
        "phi_of_xi": apply(phi, xi),
        "eta_after_phi": TensorField.from_function(
            m, (0, 1), lambda b: sum((eta[a] * phi[a, b] for a in range(n)), ZERO)),
        "compatible_metric": TensorField.from_function(
            m, (0, 2), lambda a, b: sum((g[c, d] * phi[c, a] * phi[d, b]
                                         for c in range(n) for d in range(n)), ZERO)
            + g[a, b] - eta[a] * eta[b]),
    }
    return CheckReport.from_residuals("axioms", residuals)


def _require_axioms(s, strict):
    if strict and not s.axioms.passed:
        raise StructureError(s.axioms)


def fundamental_two_form(s, strict=True):
    """``Phi(X, Y) = g(X, phi Y)``."""
    _require_axioms(s, strict)
    m = s.model
    n = m.dimension
    g = m.metric
    return TensorField.from_function(
        m, (0, 2), lambda a, b: sum((g[a, c] * s.phi[c, b] for c in range(n)), ZERO))


def contact_form_differential(s):
    return exterior_derivative(s.model, s.eta)


def h_operator(s, strict=True, check=True):
    """``h = 1/2 L_xi phi``.

    When the structure is paracontact metric, ``nabla_X xi + phi X - phi h X``
    is computed as well and a nonzero value raises :class:`ConsistencyError`.
    """
    _require_axioms(s, strict)
    h = lie_derivative(s.model, s.xi, s.phi) * (Expr.const(1) / 2)
    if check and s.axioms.passed and is_paracontact_metric(s):
        residual = nabla_xi_residual(s, h)
        if not residual.is_zero():
            raise ConsistencyError(f"nabla xi relation fails: {residual.nonzero()[0]}")
    return h


def nabla_xi_residual(s, h):
    """``nabla_X xi + phi X - phi h X`` as a ``(1, 1)`` field in ``X``."""
    m = s.model
    conn = s.curvature.connection
    phih = compose(s.phi, h)
    cols = [conn.nabla(i, s.xi) for i in range(m.dimension)]
    return TensorField.from_function(
        m, (1, 1), lambda a, b: cols[b][a] + s.phi[a, b] - phih[a, b])


def is_paracontact_metric(s):
    return (fundamental_two_form(s, strict=False) - contact_form_differential(s)).is_zero()


def nijenhuis_torsion(s):
    """``[phi, phi](X, Y) = [phi X, phi Y] + phi^2 [X, Y] - phi [X, phi Y] - phi [phi X, Y]``."""
    m = s.model
    n = m.dimension
    basis = [m.basis_vector(i) for i in range(n)]
    images = [s.phi_of(e) for e in basis]
    phi2 = compose(s.phi, s.phi)
    cols = {}
    for i in range(n):
        for j in range(n):
            if j < i:
                cols[i, j] = -cols[j, i]
                continue
            v = (lie_bracket(m, images[i], images[j])
                 + apply(phi2, lie_bracket(m, basis[i], basis[j]))
                 - s.phi_of(lie_bracket(m, basis[i], images[j]))
                 - s.phi_of(lie_bracket(m, images[i], basis[j])))
            cols[i, j] = v
    return TensorField.from_function(m, (1, 2), lambda k, i, j: cols[i, j][k])


def nijenhuis(s, strict=True):
    """Normality tensor ``N = [phi, phi] - 2 d eta (x) xi``; normal iff it vanishes."""
    _require_axioms(s, strict)
    torsion = nijenhuis_torsion(s)
    deta = contact_form_differential(s)
    return TensorField.from_function(
        s.model, (1, 2), lambda k, i, j: torsion[k, i, j] - 2 * deta[i, j] * s.xi[k])


def eta_wedge_deta(s):
    """``eta ^ d eta`` with ``^`` the alternation convention; nonzero on contact structures."""
    from ..geometry import wedge
    return wedge(s.eta, contact_form_differential(s))


__all__ = ["ConsistencyError", "ParacontactStructure", "StructureError", "contact_form_differential",
           "eta_wedge_deta", "fundamental_two_form", "h_operator", "is_paracontact_metric",
           "nabla_xi_residual", "nijenhuis", "nijenhuis_torsion",
           "verify_axioms"]
