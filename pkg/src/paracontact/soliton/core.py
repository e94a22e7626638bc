"""delta-almost Yamabe solitons: residuals, lambda extraction, classification."""

from dataclasses import dataclass
from typing import NamedTuple, Optional

from ..checks import CheckReport
from ..geometry import Curvature, TensorField, divergence, gradient, hessian, lie_derivative
from ..structures.structure import ConsistencyError
from ..symbolic import ZERO, Expr, as_expr


class SolitonDataError(ValueError):
    pass


class ProportionalityError(ArithmeticError):
    """A tensor is not a scalar multiple of the reference one.

    ``pair`` is the first offending component index and ``witness`` the
    nonzero value of ``T[pair] - s * ref[pair]`` for the pivot ratio ``s``.
    """

    def __init__(self, what, pair, witness):
        self.pair = tuple(pair)
        self.witness = witness
        super().__init__(f"{what} is not proportional: component {self.pair} leaves {witness}")


class NotConformalError(ProportionalityError):
    pass


class NotContactTransformationError(ProportionalityError):
    pass


@dataclass(frozen=True)
class SolitonData:
    """Potential (a vector field ``Z`` or a function ``u`` with ``Z = grad u``),
    soliton function ``lam`` and nonzero scaling function ``delta``.

    ``lam`` may be ``None`` when it is to be solved for.
    """

    Z: Optional[TensorField] = None
    u: Optional[Expr] = None
    lam: Optional[Expr] = None
    delta: Expr = Expr.const(1)

    def __post_init__(self):
        if (self.Z is None) == (self.u is None):
            raise SolitonDataError("give exactly one of a potential field Z or a function u")
        object.__setattr__(self, "delta", as_expr(self.delta))
        if self.lam is not None:
            object.__setattr__(self, "lam", as_expr(self.lam))
        if self.u is not None:
            object.__setattr__(self, "u", as_expr(self.u))
        if self.delta.is_zero():
            raise SolitonDataError("delta must be a nonzero function")

    @property
    def is_gradient(self):
        return self.u is not None

    def field(self, model):
        return gradient(model, self.u) if self.u is not None else self.Z

    def with_lambda(self, lam):
        return SolitonData(self.Z, self.u, as_expr(lam), self.delta)


def is_constant(model, e):
    return all(model.d(e, i).is_zero() for i in range(model.dimension))


def _ratio(what, T, ref, error=ProportionalityError):
    """``s`` with ``T = s * ref``; the pivot is the first nonzero component of ``ref``."""
    pivot = next((idx for idx, _ in ref.nonzero()), None)
    if pivot is None:
        raise ValueError("reference tensor vanishes")
    s = T[pivot] / ref[pivot]
    for idx in T.indices():
        w = T[idx] - s * ref[idx]
        if not w.is_zero():
            raise error(what, idx, w)
    return s


def conformal_coefficient(model, Z):
    """``rho`` with ``L_Z g = 2 rho g``; raises :class:`NotConformalError`."""
    return _ratio("L_Z g", lie_derivative(model, Z, model.metric), model.metric * 2,
                  NotConformalError)


def classify_soliton(lam):
    """``expanding``, ``steady`` or ``shrinking`` for positive, zero or negative
    numeric ``lam``; ``indefinite`` if the sign is not fixed by the normal form."""
    lam = as_expr(lam)
    if not lam.is_number:
        return "indefinite"
    v = lam.as_fraction()
    return "expanding" if v > 0 else "steady" if v == 0 else "shrinking"


def _linear_in(e, name):
    """``(a, b)`` with ``e = a + b * name``, or ``None`` if ``e`` is not affine in it."""
    sym = Expr.symbol(name)
    a = e.subs({name: ZERO})
    b = e.subs({name: Expr.const(1)}) - a
    if (e - a - b * sym).is_zero():
        return a, b
    return None


def solve_lambda(model, Z, delta, lambda_name="lambda"):
    """Invert the soliton equation for ``lambda`` when ``L_Z g`` is proportional to ``g``.

    With ``L_Z g = 2 rho g`` the equation reads ``delta rho = r - lambda``. If
    ``delta`` involves the symbol ``lambda_name`` affinely, the resulting linear
    equation is solved, so ``delta = lambda`` and ``Z = xi`` on a Killing ``xi``
    give ``lambda = r``.
    """
    delta = as_expr(delta)
    if delta.is_zero():
        raise SolitonDataError("delta must be a nonzero function")
    r = Curvature.cached(model).scalar
    rho = conformal_coefficient(model, Z)
    if lambda_name not in delta.free_symbols():
        return r - delta * rho
    affine = _linear_in(delta, lambda_name)
    if affine is None:
        raise ArithmeticError(f"delta is not affine in {lambda_name}")
    a, b = affine
    den = 1 + b * rho
    if den.is_zero():
        raise ArithmeticError("the soliton equation does not determine lambda")
    return (r - a * rho) / den


def soliton_residual(model, data, structure=None):
    """``(delta/2) L_Z g - (r - lambda) g``; passes iff it normalizes to zero."""
    if data.lam is None:
        raise SolitonDataError("soliton_residual needs lambda")
    g = model.metric
    r = Curvature.cached(model).scalar
    Z = data.field(model)
    lie_g = lie_derivative(model, Z, g)
    half_delta = data.delta / 2
    residual = TensorField.from_function(
        model, (0, 2), lambda a, b: half_delta * lie_g[a, b] - (r - data.lam) * g[a, b])
    constant = is_constant(model, data.lam)
    derived = {
        "r": r,
        "lambda": data.lam,
        "delta": data.delta,
        "lambda_constant": constant,
        "classical_yamabe": constant and (data.delta - 1).is_zero(),
        "classification": classify_soliton(data.lam) if constant else "indefinite",
    }
    return CheckReport.from_residuals("soliton", {"soliton_equation": residual}, derived)


def _quotient(model, data):
    r = Curvature.cached(model).scalar
    return (r - data.lam) / data.delta


def gl1_residual(model, u, q):
    """``R(X, Y) grad u - X(q) Y + Y(q) X`` as ``T[a, i, j]``."""
    n = model.dimension
    R = Curvature.cached(model).riemann
    grad = gradient(model, u)
    dq = [model.d(q, i) for i in range(n)]

    def comp(a, i, j):
        s = sum((R[a, i, j, k] * grad[k] for k in range(n) if not grad[k].is_zero()), ZERO)
        return s - dq[i] * int(a == j) + dq[j] * int(a == i)
    return TensorField.from_function(model, (1, 2), comp)


def gl2_residual(model, u, q):
    """``S(Y, grad u) + (dim - 1) Y(q)``."""
    n = model.dimension
    S = Curvature.cached(model).ricci
    grad = gradient(model, u)
    return TensorField(model, (0, 1), [
        sum((S[j, k] * grad[k] for k in range(n)), ZERO) + (n - 1) * model.d(q, j)
        for j in range(n)])


def gradient_soliton_residual(model, u, lam, delta):
    """``delta Hess u - (r - lambda) g``.

    On a pass the curvature identities that follow from it are evaluated too
    and a nonzero residual raises :class:`ConsistencyError`.
    """
    data = SolitonData(u=u, lam=lam, delta=delta)
    conn = Curvature.cached(model).connection
    g = model.metric
    r = Curvature.cached(model).scalar
    hess = hessian(model, conn, data.u)
    residual = TensorField.from_function(
        model, (0, 2), lambda a, b: data.delta * hess[a, b] - (r - data.lam) * g[a, b])
    report = CheckReport.from_residuals(
        "gradient_soliton", {"gradient_soliton_equation": residual},
        {"r": r, "lambda": data.lam, "delta": data.delta, "hessian": hess})
    if report.passed:
        q = _quotient(model, data)
        for name, res in (("GL1", gl1_residual(model, data.u, q)),
                          ("GL2", gl2_residual(model, data.u, q))):
            if not res.is_zero():
                raise ConsistencyError(f"{name} fails on a passing gradient soliton")
    return report


class SigmaResult(NamedTuple):
    """``sigma`` with ``L_Z eta = sigma eta`` and ``div Z - (m + 1) sigma``
    (``dim = 2m + 1``), the latter recorded rather than assumed."""

    sigma: Expr
    divergence_residual: Expr


def contact_transformation_sigma(structure, Z):
    model = structure.model
    if not structure.axioms.passed:
        raise ValueError("structure axioms fail")
    lie_eta = lie_derivative(model, Z, structure.eta)
    sigma = _ratio("L_Z eta", lie_eta, structure.eta, NotContactTransformationError)
    m1 = Expr.const(model.dimension + 1) / 2
    div = divergence(model, Curvature.cached(model).connection, Z)
    return SigmaResult(sigma, div - m1 * sigma)


__all__ = [
    "ConsistencyError", "NotConformalError", "NotContactTransformationError",
    "ProportionalityError", "SigmaResult", "SolitonData", "SolitonDataError", "classify_soliton",
    "conformal_coefficient", "contact_transformation_sigma", "gl1_residual", "gl2_residual",
    "gradient_soliton_residual", "is_constant", "solve_lambda", "soliton_residual",
]
