"""Levi-Civita connection and curvature."""

import itertools
import weakref
from dataclasses import dataclass

from ..symbolic import ZERO, Expr
from .tensor import TensorField, expr_array


class ConnectionCheckError(ArithmeticError):
    """The computed connection failed its own torsion or compatibility check."""


@dataclass(frozen=True)
class ConnectionData:
    """Coefficients ``gamma[k, i, j]`` with ``nabla_{e_i} e_j = sum_k gamma[k, i, j] e_k``."""

    model: object
    gamma: TensorField

    def __getitem__(self, idx):
        return self.gamma[idx]

    def torsion_residual(self):
        c = self.model.structure
        return TensorField.from_function(
            self.model, (1, 2), lambda k, i, j: self.gamma[k, i, j] - self.gamma[k, j, i] - c[k, i, j])

    def compatibility_residual(self):
        """``e_i g_jk - g(nabla_i e_j, e_k) - g(e_j, nabla_i e_k)`` as a ``(0, 3)`` array."""
        m = self.model
        g = m.metric
        n = m.dimension

        def comp(i, j, k):
            s = m.d(g[j, k], i)
            for a in range(n):
                s = s - self.gamma[a, i, j] * g[a, k] - self.gamma[a, i, k] * g[j, a]
            return s
        return TensorField.from_function(m, (0, 3), comp)

    def nabla(self, i, Y):
        """Components of ``nabla_{e_i} Y`` for a vector field ``Y``."""
        m = self.model
        n = m.dimension
        out = []
        for k in range(n):
            s = m.d(Y[k], i)
            for j in range(n):
                if not Y[j].is_zero():
                    s = s + self.gamma[k, i, j] * Y[j]
            out.append(s)
        return TensorField(m, (1, 0), out)

    def covariant(self, X, Y):
        """``nabla_X Y``."""
        m = self.model
        total = TensorField.zeros(m, (1, 0))
        for i in range(m.dimension):
            if not X[i].is_zero():
                total = total + self.nabla(i, Y) * X[i]
        return total


def levi_civita(model):
    """Koszul formula on the model's basis.

    ``g(nabla_{e_i} e_j, e_l) = 1/2 (e_i g_jl + e_j g_il - e_l g_ij
    + c_ijl - c_jli + c_lij)`` with ``c_abl = g([e_a, e_b], e_l)``.
    """
    n = model.dimension
    g = model.metric
    gi = model.inverse_metric
    c = model.structure
    half = Expr.const(1) / 2

    c_low = expr_array((n, n, n))
    for a, b, l in itertools.product(range(n), repeat=3):
        c_low[a, b, l] = sum((c[k, a, b] * g[k, l] for k in range(n)), ZERO)

    lowered = expr_array((n, n, n))
    for i, j, l in itertools.product(range(n), repeat=3):
        lowered[i, j, l] = half * (model.d(g[j, l], i) + model.d(g[i, l], j) - model.d(g[i, j], l)
                                   + c_low[i, j, l] - c_low[j, l, i] + c_low[l, i, j])
    gamma = expr_array((n, n, n))
    for k, i, j in itertools.product(range(n), repeat=3):
        gamma[k, i, j] = sum((gi[k, l] * lowered[i, j, l] for l in range(n)), ZERO)
    conn = ConnectionData(model, TensorField(model, (1, 2), gamma))

    bad = conn.torsion_residual().nonzero() or conn.compatibility_residual().nonzero()
    if bad:
        idx, witness = bad[0]
        raise ConnectionCheckError(f"connection check failed at {idx}: {witness}")
    return conn


def riemann(model, conn):
    """``R[l, i, j, k]``: the ``e_l`` component of ``R(e_i, e_j) e_k``.

    ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]``.
    """
    n = model.dimension
    G = conn.gamma
    c = model.structure

    def comp(l, i, j, k):
        s = model.d(G[l, j, k], i) - model.d(G[l, i, k], j)
        for m in range(n):
            s = s + G[m, j, k] * G[l, i, m] - G[m, i, k] * G[l, j, m] - c[m, i, j] * G[l, m, k]
        return s
    return TensorField.from_function(model, (1, 3), comp)


def ricci(model, riem):
    """``S(Y, Z) = trace(X -> R(X, Y) Z)``."""
    n = model.dimension
    return TensorField.from_function(
        model, (0, 2), lambda j, k: sum((riem[i, i, j, k] for i in range(n)), ZERO))


def ricci_operator(model, ric):
    """``Q`` with ``S(X, Y) = g(QX, Y)``."""
    n = model.dimension
    gi = model.inverse_metric
    return TensorField.from_function(
        model, (1, 1), lambda a, b: sum((gi[a, c] * ric[c, b] for c in range(n)), ZERO))


def scalar_curvature(model, ric):
    q = ricci_operator(model, ric)
    return sum((q[a, a] for a in range(model.dimension)), ZERO)


_CACHE = weakref.WeakKeyDictionary()


@dataclass
class Curvature:
    """Everything curvature-related for one model, computed once."""

    model: object
    connection: ConnectionData
    riemann: TensorField
    ricci: TensorField
    ricci_operator: TensorField
    scalar: Expr

    @classmethod
    def of(cls, model):
        conn = levi_civita(model)
        riem = riemann(model, conn)
        ric = ricci(model, riem)
        q = ricci_operator(model, ric)
        r = sum((q[a, a] for a in range(model.dimension)), ZERO)
        return cls(model, conn, riem, ric, q, r)

    @classmethod
    def cached(cls, model):
        """:meth:`of`, memoized per model object."""
        try:
            return _CACHE[model]
        except KeyError:
            value = _CACHE[model] = cls.of(model)
            return value

    def apply(self, X, Y, W):
        """``R(X, Y) W`` for vector fields."""
        m = self.model
        n = m.dimension
        out = []
        for l in range(n):
            s = ZERO
            for i, j, k in itertools.product(range(n), repeat=3):
                if X[i].is_zero() or Y[j].is_zero() or W[k].is_zero():
                    continue
                s = s + self.riemann[l, i, j, k] * X[i] * Y[j] * W[k]
            out.append(s)
        return TensorField(m, (1, 0), out)

    def bianchi_residual(self):
        R = self.riemann
        return TensorField.from_function(
            self.model, (1, 3), lambda l, i, j, k: R[l, i, j, k] + R[l, j, k, i] + R[l, k, i, j])

    def lowered(self):
        """``Rl[i, j, k, w] = g(R(e_i, e_j) e_k, e_w)``."""
        g = self.model.metric
        n = self.model.dimension
        return TensorField.from_function(
            self.model, (0, 4),
            lambda i, j, k, w: sum((self.riemann[l, i, j, k] * g[l, w] for l in range(n)), ZERO))
