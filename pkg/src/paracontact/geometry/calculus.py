"""Lie brackets, Lie and covariant derivatives, exterior calculus."""

import itertools
import math

from ..symbolic import ZERO, Expr, as_expr
from .tensor import TensorField, expr_array


def lie_bracket(model, X, Y):
    """``[X, Y]^k = X(Y^k) - Y(X^k) + X^i Y^j c^k_ij``."""
    n = model.dimension
    c = model.structure
    out = []
    for k in range(n):
        s = model.along(X, Y[k]) - model.along(Y, X[k])
        for i, j in itertools.product(range(n), repeat=2):
            if X[i].is_zero() or Y[j].is_zero() or c[k, i, j].is_zero():
                continue
            s = s + X[i] * Y[j] * c[k, i, j]
        out.append(s)
    return TensorField(model, (1, 0), out)


def _bracket_with_basis(model, Z):
    """``B[k, i]``: the ``e_k`` component of ``[Z, e_i]``."""
    n = model.dimension
    c = model.structure
    B = expr_array((n, n))
    for k, i in itertools.product(range(n), repeat=2):
        s = -model.d(Z[k], i)
        for a in range(n):
            if not Z[a].is_zero():
                s = s + Z[a] * c[k, a, i]
        B[k, i] = s
    return B


def lie_derivative(model, Z, T):
    """``L_Z T`` for a tensor field of any valence, or for a scalar.

    On the basis ``L_Z e_i = [Z, e_i] = B^k_i e_k`` and ``L_Z e^k = -B^k_i e^i``,
    so each upper slot gains ``B`` and each lower slot loses it.
    """
    if not isinstance(T, TensorField):
        return model.along(Z, as_expr(T))
    p, q = T.valence
    n = model.dimension
    B = _bracket_with_basis(model, Z)

    def comp(*idx):
        s = model.along(Z, T[idx])
        for slot in range(p + q):
            for m in range(n):
                moved = idx[:slot] + (m,) + idx[slot + 1:]
                if slot < p:
                    coeff = B[idx[slot], m]
                else:
                    coeff = -B[m, idx[slot]]
                if coeff.is_zero() or T[moved].is_zero():
                    continue
                s = s + coeff * T[moved]
        return s
    return TensorField.from_function(model, T.valence, comp)


def exterior_derivative(model, omega):
    """``d`` of a scalar or of a ``k``-form given as an antisymmetric ``(0, k)`` field.

    For ``k >= 1`` the normalization is ``1/(k+1)``, so for a 1-form
    ``d omega(X, Y) = 1/2 (X omega(Y) - Y omega(X) - omega([X, Y]))``.
    """
    n = model.dimension
    if not isinstance(omega, TensorField):
        f = as_expr(omega)
        return TensorField(model, (0, 1), [model.d(f, i) for i in range(n)])
    p, k = omega.valence
    if p != 0:
        raise ValueError("exterior_derivative needs a covariant field")
    c = model.structure
    scale = Expr.const(1) / (k + 1)

    def comp(*idx):
        s = ZERO
        for a in range(k + 1):
            rest = idx[:a] + idx[a + 1:]
            term = model.d(omega[rest], idx[a])
            s = s + term if a % 2 == 0 else s - term
        for a, b in itertools.combinations(range(k + 1), 2):
            rest = tuple(idx[t] for t in range(k + 1) if t not in (a, b))
            for m in range(n):
                coeff = c[m, idx[a], idx[b]]
                if coeff.is_zero():
                    continue
                term = coeff * omega[(m,) + rest]
                s = s + term if (a + b) % 2 == 0 else s - term
        return scale * s
    return TensorField.from_function(model, (0, k + 1), comp)


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def alternate(T):
    """``Alt(T)``, averaging over permutations of the covariant slots."""
    p, k = T.valence
    if p != 0:
        raise ValueError("alternate needs a covariant field")
    perms = [(pm, _perm_sign(pm)) for pm in itertools.permutations(range(k))]
    scale = Expr.const(1) / math.factorial(k)

    def comp(*idx):
        s = ZERO
        for pm, sign in perms:
            v = T[tuple(idx[t] for t in pm)]
            s = s + v if sign > 0 else s - v
        return scale * s
    return TensorField.from_function(T.model, (0, k), comp)


def tensor_product(A, B):
    pa, qa = A.valence
    pb, qb = B.valence
    if pa or pb:
        raise ValueError("tensor_product is implemented for covariant fields")
    return TensorField.from_function(
        A.model, (0, qa + qb), lambda *idx: A[idx[:qa]] * B[idx[qa:]])


def wedge(A, B):
    """``A ^ B = Alt(A (x) B)`` (the convention matching the ``1/(k+1)`` in ``d``)."""
    return alternate(tensor_product(A, B))


def covariant_derivative(model, conn, T):
    """``nabla T`` of valence ``(p, q+1)``; the direction is the first lower index."""
    p, q = T.valence
    n = model.dimension
    G = conn.gamma

    def comp(*idx):
        upper, a, lower = idx[:p], idx[p], idx[p + 1:]
        base = upper + lower
        s = model.d(T[base], a)
        for slot in range(p):
            for m in range(n):
                if G[upper[slot], a, m].is_zero():
                    continue
                moved = upper[:slot] + (m,) + upper[slot + 1:] + lower
                s = s + G[upper[slot], a, m] * T[moved]
        for slot in range(q):
            for m in range(n):
                if G[m, a, lower[slot]].is_zero():
                    continue
                moved = upper + lower[:slot] + (m,) + lower[slot + 1:]
                s = s - G[m, a, lower[slot]] * T[moved]
        return s
    return TensorField.from_function(model, (p, q + 1), comp)


def nabla_vector(model, conn, Z):
    """``W[k, a] = (nabla_{e_a} Z)^k`` as a ``(1, 1)`` field."""
    return covariant_derivative(model, conn, Z)


def gradient(model, u):
    """Index-raised ``du``."""
    return model.raise_index(exterior_derivative(model, u))


def hessian(model, conn, u):
    """``Hess u (X, Y) = X(Y u) - (nabla_X Y) u``."""
    return covariant_derivative(model, conn, exterior_derivative(model, u))


def divergence(model, conn, Z):
    """Trace of ``X -> nabla_X Z``."""
    W = nabla_vector(model, conn, Z)
    return sum((W[i, i] for i in range(model.dimension)), ZERO)


def apply(A, X):
    """A ``(1, 1)`` field applied to a vector field."""
    n = A.model.dimension
    return TensorField(A.model, (1, 0), [
        sum((A[a, b] * X[b] for b in range(n) if not X[b].is_zero()), ZERO) for a in range(n)])


def compose(A, B):
    """``A o B`` for ``(1, 1)`` fields."""
    n = A.model.dimension
    return TensorField.from_function(
        A.model, (1, 1), lambda a, b: sum((A[a, m] * B[m, b] for m in range(n)), ZERO))


def evaluate_form(omega, X):
    """``omega(X)`` for a 1-form."""
    return sum((omega[i] * X[i] for i in range(omega.model.dimension)
                if not X[i].is_zero()), ZERO)


def lie_derivative_connection(model, conn, curvature, Z):
    """``(L_Z nabla)(X, Y) = nabla_X nabla_Y Z - nabla_{nabla_X Y} Z + R(Z, X) Y``.

    This is ``[Z, nabla_X Y] - nabla_[Z, X] Y - nabla_X [Z, Y]`` rewritten with
    a torsion-free connection. Stored as ``T[k, i, j]`` for ``X = e_i``, ``Y = e_j``.
    """
    n = model.dimension
    second = covariant_derivative(model, conn, nabla_vector(model, conn, Z))
    R = curvature.riemann

    def comp(k, i, j):
        s = second[k, i, j]
        for m in range(n):
            if not Z[m].is_zero():
                s = s + Z[m] * R[k, m, i, j]
        return s
    return TensorField.from_function(model, (1, 2), comp)
