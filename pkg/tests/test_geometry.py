"""Geometry engine against textbook coordinate formulas evaluated in sympy."""

import itertools

import pytest
import sympy

from paracontact.geometry import (Curvature, ManifoldModel, ModelError, TensorField,
                                  covariant_derivative, divergence, exterior_derivative, gradient,
                                  lie_bracket, lie_derivative, lie_derivative_connection, wedge)
from paracontact.symbolic import DerivationSpec, Expr

from exprgen import engine_to_sympy

X = sympy.symbols("x y z")

METRICS = {
    "half_plane": (["x", "y"], [["1/y^2", "0"], ["0", "1/y^2"]]),
    "warped": (["x", "y", "z"], [["exp(2*z^3)", "0", "0"], ["0", "exp(-2*z^3)", "0"],
                                 ["0", "0", "1"]]),
    "offdiag": (["x", "y", "z"], [["1", "x", "0"], ["x", "x^2 - 1", "0"], ["0", "0", "y^2"]]),
    "lorentz": (["x", "y", "z"], [["-1", "0", "0"], ["0", "exp(2*x)", "0"],
                                  ["0", "0", "x^2*exp(2*x)"]]),
}

FIELDS = {2: ["x*y", "y^2 - x"], 3: ["x*y", "z^2 + x", "exp(x)*y"]}


def model(name):
    labels, rows = METRICS[name]
    m = ManifoldModel(labels, rows, name=name)
    m.spec.add_constant("a")
    return m


def S(e):
    return engine_to_sympy(e)


class Oracle:
    def __init__(self, labels, rows):
        self.x = [sympy.Symbol(s) for s in labels]
        self.n = len(labels)
        self.g = sympy.Matrix([[sympy.sympify(v.replace("^", "**")) for v in r] for r in rows])
        self.gi = sympy.simplify(self.g.inv())
        n, x, g, gi = self.n, self.x, self.g, self.gi
        self.G = [[[sympy.simplify(sum(gi[k, m] * (sympy.diff(g[m, i], x[j]) + sympy.diff(g[m, j], x[i])
                                                   - sympy.diff(g[i, j], x[m])) for m in range(n)) / 2)
                    for j in range(n)] for i in range(n)] for k in range(n)]

    def riemann(self, l, i, j, k):
        G, x, n = self.G, self.x, self.n
        return (sympy.diff(G[l][j][k], x[i]) - sympy.diff(G[l][i][k], x[j])
                + sum(G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k] for m in range(n)))

    def ricci(self, j, k):
        return sum(self.riemann(i, i, j, k) for i in range(self.n))

    def scalar(self):
        return sum(self.gi[j, k] * self.ricci(j, k) for j in range(self.n) for k in range(self.n))

    def nabla(self, Z):
        """W[k][a] = (nabla_a Z)^k."""
        return [[sympy.diff(Z[k], self.x[a]) + sum(self.G[k][a][m] * Z[m] for m in range(self.n))
                 for a in range(self.n)] for k in range(self.n)]

    def lie_g(self, Z):
        n, x, g = self.n, self.x, self.g
        return [[sum(Z[k] * sympy.diff(g[i, j], x[k]) + g[k, j] * sympy.diff(Z[k], x[i])
                     + g[i, k] * sympy.diff(Z[k], x[j]) for k in range(n))
                 for j in range(n)] for i in range(n)]

    def nabla_XY(self, Xv, Yv):
        return [sum(Xv[a] * sympy.diff(Yv[k], self.x[a]) for a in range(self.n))
                + sum(self.G[k][a][b] * Xv[a] * Yv[b] for a in range(self.n) for b in range(self.n))
                for k in range(self.n)]

    def bracket(self, A, B):
        return [sum(A[a] * sympy.diff(B[k], self.x[a]) - B[a] * sympy.diff(A[k], self.x[a])
                    for a in range(self.n)) for k in range(self.n)]

    def lie_connection(self, Z, i, j):
        """[Z, nabla_i e_j] - nabla_[Z, e_i] e_j - nabla_i [Z, e_j]."""
        e = [[int(a == b) for a in range(self.n)] for b in range(self.n)]
        t1 = self.bracket(Z, self.nabla_XY(e[i], e[j]))
        t2 = self.nabla_XY(self.bracket(Z, e[i]), e[j])
        t3 = self.nabla_XY(e[i], self.bracket(Z, e[j]))
        return [t1[k] - t2[k] - t3[k] for k in range(self.n)]


def zero(expr):
    return sympy.simplify(expr) == 0


@pytest.fixture(scope="module", params=sorted(METRICS))
def pair(request):
    labels, rows = METRICS[request.param]
    return model(request.param), Oracle(labels, rows)


def test_christoffel_against_oracle(pair):
    m, o = pair
    gamma = Curvature.cached(m).connection.gamma
    for k, i, j in itertools.product(range(o.n), repeat=3):
        assert zero(S(gamma[k, i, j]) - o.G[k][i][j]), (k, i, j)


def test_riemann_ricci_scalar_against_oracle(pair):
    m, o = pair
    c = Curvature.cached(m)
    for l, i, j, k in itertools.product(range(o.n), repeat=4):
        assert zero(S(c.riemann[l, i, j, k]) - o.riemann(l, i, j, k)), (l, i, j, k)
    for j, k in itertools.product(range(o.n), repeat=2):
        assert zero(S(c.ricci[j, k]) - o.ricci(j, k))
    assert zero(S(c.scalar) - o.scalar())


def test_half_plane_scalar_curvature():
    assert Curvature.cached(model("half_plane")).scalar == Expr.const(-2)


def test_connection_is_levi_civita(pair):
    m, _ = pair
    conn = Curvature.cached(m).connection
    assert conn.torsion_residual().is_zero()
    assert conn.compatibility_residual().is_zero()
    assert covariant_derivative(m, conn, m.metric).is_zero()


def test_curvature_symmetries(pair):
    m, _ = pair
    c = Curvature.cached(m)
    low = c.lowered()
    n = m.dimension
    assert c.bianchi_residual().is_zero()
    for i, j, k, w in itertools.product(range(n), repeat=4):
        assert low[i, j, k, w] == -low[j, i, k, w]
        assert low[i, j, k, w] == low[k, w, i, j]


def test_lie_derivative_of_metric_against_oracle(pair):
    m, o = pair
    Z = m.vector(FIELDS[o.n])
    Zs = [S(v) for v in Z.components]
    L = lie_derivative(m, Z, m.metric)
    ref = o.lie_g(Zs)
    for i, j in itertools.product(range(o.n), repeat=2):
        assert zero(S(L[i, j]) - ref[i][j])


def test_lie_derivative_metric_from_nabla(pair):
    """(L_Z g)(X, Y) = g(nabla_X Z, Y) + g(X, nabla_Y Z)."""
    m, o = pair
    Z = m.vector(FIELDS[o.n])
    W = covariant_derivative(m, Curvature.cached(m).connection, Z)
    g = m.metric
    n = o.n
    alt = TensorField.from_function(m, (0, 2), lambda i, j: sum(
        (g[k, j] * W[k, i] + g[i, k] * W[k, j] for k in range(n)), Expr()))
    assert (alt - lie_derivative(m, Z, g)).is_zero()


def test_lie_derivative_connection_against_definition(pair):
    m, o = pair
    c = Curvature.cached(m)
    Z = m.vector(FIELDS[o.n])
    Zs = [S(v) for v in Z.components]
    T = lie_derivative_connection(m, c.connection, c, Z)
    for i, j in itertools.product(range(o.n), repeat=2):
        ref = o.lie_connection(Zs, i, j)
        for k in range(o.n):
            assert zero(S(T[k, i, j]) - ref[k]), (k, i, j)


def test_divergence_against_oracle(pair):
    m, o = pair
    Z = m.vector(FIELDS[o.n])
    Zs = [S(v) for v in Z.components]
    W = o.nabla(Zs)
    assert zero(S(divergence(m, Curvature.cached(m).connection, Z)) - sum(W[k][k] for k in range(o.n)))


def test_exterior_derivative_conventions():
    m = model("warped")
    f = m.parse("x^2*y*exp(2*z^3)")
    df = exterior_derivative(m, f)
    assert [S(df[i]) for i in range(3)] == [sympy.diff(S(f), s) for s in X]
    omega = m.covector(["y*z", "x^2", "exp(z)"])
    d1 = exterior_derivative(m, omega)
    om = [S(omega[i]) for i in range(3)]
    for i, j in itertools.product(range(3), repeat=2):
        assert zero(S(d1[i, j]) - (sympy.diff(om[j], X[i]) - sympy.diff(om[i], X[j])) / 2)
    assert exterior_derivative(m, d1).is_zero()
    assert exterior_derivative(m, df).is_zero()


def test_wedge_of_coordinate_forms():
    m = model("warped")
    dx, dy = m.covector([1, 0, 0]), m.covector([0, 1, 0])
    w = wedge(dx, dy)
    assert w[0, 1] == Expr.const(1) / 2 and w[1, 0] == Expr.const(-1) / 2


def test_gradient_is_dual_of_differential(pair):
    m, o = pair
    u = m.parse("x*y") if o.n == 2 else m.parse("x*y + z^3")
    grad = gradient(m, u)
    assert (m.lower(grad) - exterior_derivative(m, u)).is_zero()


def frame_model():
    # a left-invariant frame on a 3-dimensional solvable group, varying metric scale
    spec = DerivationSpec(["e1", "e2", "e3"])
    spec.add_constant("s")
    return ManifoldModel(["e1", "e2", "e3"], [["s", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]],
                         spec=spec, mode="frame", brackets=[(0, 1, 1, "2"), (0, 2, 2, "-1")])


def test_frame_connection_matches_koszul():
    """With constant metric: 2 g(nabla_i e_j, e_k) = c_ijk - c_jki + c_kij."""
    m = frame_model()
    c, g = m.structure, m.metric
    gamma = Curvature.cached(m).connection.gamma
    n = 3

    def low(i, j, k):  # g([e_i, e_j], e_k)
        return sum((c[l, i, j] * g[l, k] for l in range(n)), Expr())
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = 2 * sum((gamma[l, i, j] * g[l, k] for l in range(n)), Expr())
        assert lhs == low(i, j, k) - low(j, k, i) + low(k, i, j)


def test_frame_bracket_of_basis():
    m = frame_model()
    br = lie_bracket(m, m.basis_vector(0), m.basis_vector(1))
    assert br == m.vector(["0", "2", "0"])


def test_model_rejections():
    with pytest.raises(ModelError, match="symmetric"):
        ManifoldModel(["x", "y"], [["1", "x"], ["0", "1"]])
    with pytest.raises(ModelError, match="determinant"):
        ManifoldModel(["x", "y"], [["1", "1"], ["1", "1"]])
    spec = DerivationSpec(["e1", "e2", "e3"])
    with pytest.raises(ModelError, match="Jacobi"):
        ManifoldModel(["e1", "e2", "e3"], [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
                      spec=spec, mode="frame",
                      brackets=[(0, 1, 2, "1"), (1, 2, 0, "1"), (0, 2, 2, "1")])
