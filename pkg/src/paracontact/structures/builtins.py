"""Built-in example manifolds with their structures.

``example_5_1`` is a frame model with ``[e1, e2] = -2 e3``, ``[e3, e2] = (u+1) e1``,
``[e3, e1] = (u+1) e2`` and ``g = diag(1, -1, 1)``; ``u`` is either a rational
value or, by default, a constant symbol ``u``.

``example_5_2`` is the chart model on ``(x, y, z)`` with
``g = diag(exp(2z^3), exp(-2z^3), 1)`` and the quoted ``phi`` that violates the
axioms; it is always built in diagnostic mode.

``flat_para_cosymplectic`` is flat ``R^3`` with ``g = diag(1, -1, 1)``.
"""

from fractions import Fraction

from ..geometry import ManifoldModel, TensorField
from ..symbolic import DerivationSpec, as_expr, parse_expr
from .structure import ParacontactStructure


class UnknownBuiltinError(KeyError):
    def __str__(self):
        return f"unknown built-in model {self.args[0]!r}; known: {', '.join(sorted(BUILTINS))}"


def _structure(model, phi_rows, xi, eta, diagnostic=False):
    phi = TensorField(model, (1, 1), [[model.parse(v) if isinstance(v, str) else v for v in row]
                                      for row in phi_rows])
    return ParacontactStructure(model, phi, model.vector(xi), model.covector(eta),
                                diagnostic=diagnostic)


def example_5_1(u=None):
    labels = ("e1", "e2", "e3")
    spec = DerivationSpec(labels)
    if u is None:
        spec.add_constant("u")
        up1 = "u + 1"
    else:
        up1 = as_expr(Fraction(u)) + 1
    model = ManifoldModel(
        labels, [[1, 0, 0], [0, -1, 0], [0, 0, 1]], spec=spec, mode="frame",
        brackets=[(0, 1, 2, -2), (2, 1, 0, up1), (2, 0, 1, up1)],
        name="example_5_1" if u is None else f"example_5_1?u={Fraction(u)}")
    # phi e1 = e2, phi e2 = e1, phi e3 = 0; column b holds phi(e_b)
    s = _structure(model, [[0, 1, 0], [1, 0, 0], [0, 0, 0]], [0, 0, 1], [0, 0, 1])
    return model, s


def example_5_2():
    labels = ("x", "y", "z")
    spec = DerivationSpec(labels)
    for i, c in enumerate(labels):
        spec.add_coordinate(c, i)
    model = ManifoldModel(
        labels, [["exp(2*z^3)", 0, 0], [0, "exp(-2*z^3)", 0], [0, 0, 1]], spec=spec,
        name="example_5_2")
    s = _structure(model, [["-3*z^2", 0, 0], [0, "3*z^2", 0], [0, 0, 0]], [0, 0, 1], [0, 0, 1],
                   diagnostic=True)
    return model, s


def flat_para_cosymplectic():
    model = ManifoldModel(("x", "y", "z"), [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
                          name="flat_para_cosymplectic")
    s = _structure(model, [[0, 1, 0], [1, 0, 0], [0, 0, 0]], [0, 0, 1], [0, 0, 1])
    return model, s


BUILTINS = {
    "example_5_1": example_5_1,
    "example_5_2": example_5_2,
    "flat_para_cosymplectic": flat_para_cosymplectic,
}


def builtin(name, **params):
    """``(model, structure)`` for a built-in name; ``u`` is the only parameter."""
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise UnknownBuiltinError(name) from None
    if params and name != "example_5_1":
        raise ValueError(f"{name} takes no parameters")
    unknown = set(params) - {"u"}
    if unknown:
        raise ValueError(f"unknown parameter(s) {sorted(unknown)} for {name}")
    return factory(**params)


# Connection tables as quoted alongside the examples: (i, j) -> components of
# nabla_{e_i} e_j, missing pairs are zero. The frame table for example_5_1 does
# not agree with the Koszul formula; the chart table for example_5_2 does.
QUOTED_CONNECTIONS = {
    "example_5_1": {
        (0, 1): ("0", "0", "-2"),
        (0, 2): ("0", "-(u+1)", "0"),
        (1, 0): ("0", "0", "2"),
        (1, 2): ("-(u+1)", "0", "0"),
        (2, 0): ("0", "u+1", "0"),
        (2, 1): ("u+1", "0", "0"),
    },
    "example_5_2": {
        (0, 0): ("0", "0", "-3*z^2*exp(2*z^3)"),
        (0, 2): ("3*z^2", "0", "0"),
        (1, 1): ("0", "0", "3*z^2*exp(-2*z^3)"),
        (1, 2): ("0", "-3*z^2", "0"),
        (2, 0): ("3*z^2", "0", "0"),
        (2, 1): ("0", "-3*z^2", "0"),
    },
}


def quoted_connection(name, model):
    """The quoted table as a ``(1, 2)`` field on ``model`` (``u`` substituted if numeric)."""
    table = QUOTED_CONNECTIONS[name]
    n = model.dimension
    subs = {}
    if name == "example_5_1" and not model.spec.declares("u"):
        value = model.name.partition("u=")[2]
        subs = {"u": as_expr(Fraction(value))}

    def comp(k, i, j):
        entry = table.get((i, j))
        if entry is None:
            return 0
        e = parse_expr(entry[k])
        return e.subs(subs) if subs else e
    return TensorField.from_function(model, (1, 2), comp)


__all__ = ["BUILTINS", "QUOTED_CONNECTIONS", "UnknownBuiltinError", "builtin", "example_5_1",
           "example_5_2", "flat_para_cosymplectic", "quoted_connection"]
