"""Manifold models: chart or frame basis, metric, bracket structure."""

import itertools

from ..symbolic import ZERO, DerivationSpec, Expr, as_expr, differentiate, parse_expr
from .tensor import TensorField, expr_array


class ModelError(ValueError):
    """A model violates its invariants; ``section`` names the offending part."""

    def __init__(self, message, section=None):
        self.section = section
        prefix = f"[{section}] " if section else ""
        super().__init__(prefix + message)


def determinant(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = ZERO
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse(m):
    """Exact inverse by the adjugate formula."""
    n = len(m)
    det = determinant(m)
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    if n == 1:
        return [[1 / det]]
    inv = [[ZERO] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
        cof = determinant(minor)
        inv[j][i] = cof / det if (i + j) % 2 == 0 else -cof / det
    return inv


def _entry(value, spec):
    return parse_expr(value, spec) if isinstance(value, str) else as_expr(value)


class ManifoldModel:
    """A pseudo-Riemannian manifold given on a global basis.

    In ``chart`` mode the basis is the coordinate frame of ``labels``, which
    are declared as coordinates in ``spec``. In ``frame`` mode the basis is an
    arbitrary frame with brackets ``[e_i, e_j] = sum_k c[k][i][j] e_k``;
    ``brackets`` lists ``(i, j, k, coeff)`` entries (0-based) and the
    antisymmetric partner is filled in.
    """

    def __init__(self, labels, metric, spec=None, mode="chart", brackets=(), name="model"):
        if mode not in ("chart", "frame"):
            raise ModelError(f"unknown mode {mode!r}", "manifold")
        self.name = name
        self.mode = mode
        self.labels = tuple(labels)
        n = len(self.labels)
        if n < 1:
            raise ModelError("dimension must be positive", "manifold")
        self.spec = spec if spec is not None else DerivationSpec(self.labels)
        if self.spec.directions != self.labels:
            raise ModelError("symbol table directions differ from basis labels", "symbols")
        if mode == "chart":
            for i, label in enumerate(self.labels):
                if label not in self.spec.symbols:
                    self.spec.add_coordinate(label, i)
                elif self.spec.kind(label) != "coordinate":
                    raise ModelError(f"basis label {label!r} is not a coordinate", "symbols")
            if brackets:
                raise ModelError("chart mode takes no brackets", "brackets")

        rows = [[_entry(v, self.spec) for v in row] for row in metric]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ModelError(f"metric must be {n}x{n}", "metric")
        for i, j in itertools.combinations(range(n), 2):
            if not (rows[i][j] - rows[j][i]).is_zero():
                raise ModelError(f"metric is not symmetric at ({i}, {j})", "metric")
        self.metric = TensorField(self, (0, 2), rows)
        det = determinant(rows)
        if det.is_zero():
            raise ModelError("metric determinant normalizes to zero", "metric")
        self.metric_determinant = det
        self.inverse_metric = TensorField(self, (2, 0), inverse(rows))

        c = expr_array((n, n, n))
        for entry in brackets:
            i, j, k, coeff = entry
            coeff = _entry(coeff, self.spec)
            if i == j:
                if not coeff.is_zero():
                    raise ModelError(f"[e{i + 1}, e{i + 1}] must vanish", "brackets")
                continue
            if not c[k, i, j].is_zero() and not (c[k, i, j] - coeff).is_zero():
                raise ModelError(f"bracket [{i}, {j}] given inconsistently", "brackets")
            c[k, i, j] = coeff
            c[k, j, i] = -coeff
        self.structure = TensorField(self, (1, 2), c)
        if mode == "frame":
            self.spec.set_structure_functions(
                [[[c[k, i, j] for j in range(n)] for i in range(n)] for k in range(n)])
            residual = self.jacobi_residual()
            if not residual.is_zero():
                (idx, witness), = residual.nonzero()[:1]
                raise ModelError(f"Jacobi identity fails at {idx}: {witness}", "brackets")

    @property
    def dimension(self):
        return len(self.labels)

    def d(self, expr, direction):
        """Derivative of a scalar along basis direction ``direction``."""
        return differentiate(expr, direction, self.spec)

    def along(self, X, expr):
        """``X(expr)`` for a vector field ``X``."""
        total = ZERO
        for i in range(self.dimension):
            if not X[i].is_zero():
                total = total + X[i] * self.d(expr, i)
        return total

    def jacobi_residual(self):
        """Components ``(l, i, j, k)`` of the cyclic sum of ``[[e_i, e_j], e_k]``."""
        n = self.dimension
        c = self.structure.components

        def nested(i, j, k, l):
            # [[e_i, e_j], e_k] = sum_m c^m_ij [e_m, e_k] - e_k(c^l_ij) e_l
            s = -self.d(c[l, i, j], k)
            for m in range(n):
                if not c[m, i, j].is_zero():
                    s = s + c[m, i, j] * c[l, m, k]
            return s

        def cyc(l, i, j, k):
            return nested(i, j, k, l) + nested(j, k, i, l) + nested(k, i, j, l)
        return TensorField.from_function(self, (1, 3), cyc)

    # -- basis helpers --------------------------------------------------
    def vector(self, components):
        return TensorField(self, (1, 0), [_entry(v, self.spec) for v in components])

    def covector(self, components):
        return TensorField(self, (0, 1), [_entry(v, self.spec) for v in components])

    def basis_vector(self, i):
        return self.vector([1 if k == i else 0 for k in range(self.dimension)])

    def identity(self):
        return TensorField.from_function(self, (1, 1), lambda a, b: Expr.const(int(a == b)))

    def parse(self, text):
        return parse_expr(text, self.spec)

    def inner(self, X, Y):
        g = self.metric.components
        total = ZERO
        for i, j in itertools.product(range(self.dimension), repeat=2):
            if not g[i, j].is_zero():
                total = total + g[i, j] * X[i] * Y[j]
        return total

    def lower(self, X):
        """The 1-form ``g(X, .)``."""
        g = self.metric.components
        n = self.dimension
        return TensorField(self, (0, 1), [
            sum((g[i, j] * X[j] for j in range(n)), ZERO) for i in range(n)])

    def raise_index(self, omega):
        """The vector field metrically dual to a 1-form."""
        gi = self.inverse_metric.components
        n = self.dimension
        return TensorField(self, (1, 0), [
            sum((gi[i, j] * omega[j] for j in range(n)), ZERO) for i in range(n)])

    def __repr__(self):
        return f"ManifoldModel({self.name!r}, mode={self.mode!r}, labels={self.labels})"
