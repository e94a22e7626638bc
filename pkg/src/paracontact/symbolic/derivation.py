"""Symbol tables with derivative rules, and differentiation along a basis.

Every symbol used by a model is declared in a :class:`DerivationSpec` with
one of these kinds:

``coordinate``  chart coordinate; ``d_i x_j`` is the Kronecker delta.
``constant``    all directional derivatives vanish (the default for
                parameters such as ``u``, ``lambda``, ``delta``, ``k``).
``free``        an unspecified smooth function. Its derivatives are fresh
                symbols named ``f_<labels>`` (``f1_x``, ``f1_xz``, ...).
``rule``        derivatives given explicitly per direction.

Names bound with :meth:`DerivationSpec.add_exp_generator` are aliases for an
``exp(...)`` expression rather than symbols.

Derivatives of free functions along a frame follow the ordered (PBW) basis:
``w_I`` with ``I`` sorted is ``e_{I[-1]}(...e_{I[0]}(w))`` and derivatives
out of order are rewritten with the bracket structure functions, so
``e_i e_j w - e_j e_i w - [e_i, e_j] w`` reduces to zero.
"""

from fractions import Fraction

from ..kernels import merge_powers, poly_add, poly_mul
from .expr import Expr, as_expr

KINDS = ("coordinate", "constant", "free", "rule")


class UndeclaredSymbolError(KeyError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"undeclared symbol {name!r}{where}")

    def __str__(self):
        return self.args[0]


class DerivationSpec:
    """Symbol table for one manifold model, indexed by basis direction."""

    def __init__(self, directions):
        self.directions = tuple(directions)
        if len(set(self.directions)) != len(self.directions):
            raise ValueError("direction labels must be distinct")
        self._kind = {}
        self._coordinate = {}
        self._rules = {}
        self._aliases = {}
        self._derived = {}
        self._bases = set()
        self._structure = None
        self._dcache = {}

    @property
    def dimension(self):
        return len(self.directions)

    # -- declarations ---------------------------------------------------
    def _check_new(self, name):
        if not name.isidentifier() or name == "exp":
            raise ValueError(f"invalid symbol name {name!r}")
        if name in self._kind or name in self._aliases or self._decode(name):
            raise ValueError(f"symbol {name!r} declared twice")

    def add_coordinate(self, name, direction):
        self._check_new(name)
        self._kind[name] = "coordinate"
        self._coordinate[name] = direction
        return self

    def add_constant(self, name):
        self._check_new(name)
        self._kind[name] = "constant"
        return self

    def add_free_function(self, name):
        self._check_new(name)
        self._kind[name] = "free"
        self._bases.add(name)
        self._derived[name] = (name, ())
        return self

    def add_rule(self, name, derivatives):
        """Declare ``name`` with one derivative (expression or text) per direction."""
        return self.add_rules({name: derivatives})

    def add_rules(self, rules):
        """Declare several rule symbols at once.

        All names are registered before any text is parsed, so rules may refer
        to each other and to themselves (``E`` with ``d_z E = 6*z^2*E``).
        """
        from .parser import parse_expr
        for name, derivatives in rules.items():
            self._check_new(name)
            if len(derivatives) != self.dimension:
                raise ValueError(f"rule for {name!r} needs {self.dimension} derivatives")
            self._kind[name] = "rule"
        for name, derivatives in rules.items():
            self._rules[name] = tuple(
                parse_expr(d, self) if isinstance(d, str) else as_expr(d) for d in derivatives)
        self._dcache.clear()
        return self

    def add_exp_generator(self, name, argument):
        """Bind ``name`` to ``exp(argument)``; its inverse is ``exp(-argument)``."""
        from .parser import parse_expr
        self._check_new(name)
        arg = parse_expr(argument, self) if isinstance(argument, str) else as_expr(argument)
        self._aliases[name] = Expr.exp(arg)
        return self

    def set_structure_functions(self, c):
        """Bracket coefficients ``c[k][i][j]`` with ``[e_i, e_j] = sum_k c[k][i][j] e_k``."""
        self._structure = c
        self._dcache.clear()

    # -- lookup ---------------------------------------------------------
    def kind(self, name):
        if name in self._kind:
            return self._kind[name]
        if self._decode(name):
            return "free"
        raise UndeclaredSymbolError(name)

    def declares(self, name):
        return name in self._kind or name in self._aliases or bool(self._decode(name))

    @property
    def symbols(self):
        return dict(self._kind)

    @property
    def aliases(self):
        return dict(self._aliases)

    def rule(self, name):
        return self._rules[name]

    def resolve(self, name, position=None):
        """Expression for a name appearing in source text."""
        if name in self._aliases:
            return self._aliases[name]
        if self.declares(name):
            return Expr.symbol(name)
        raise UndeclaredSymbolError(name, position)

    def derived_name(self, base, index):
        if not index:
            return base
        return base + "_" + "".join(self.directions[i] for i in index)

    def _decode(self, name):
        if name in self._derived:
            return self._derived[name]
        for base in self._bases:
            prefix = base + "_"
            if name.startswith(prefix):
                index = self._split_labels(name[len(prefix):])
                if index is not None and list(index) == sorted(index):
                    self._derived[name] = (base, index)
                    return self._derived[name]
        return None

    def _split_labels(self, text):
        if not text:
            return ()
        for i, label in enumerate(self.directions):
            if text.startswith(label):
                rest = self._split_labels(text[len(label):])
                if rest is not None:
                    return (i,) + rest
        return None

    def check_closed(self):
        """Every symbol in every rule must be declared."""
        for name, rules in self._rules.items():
            for r in rules:
                for s in r.free_symbols():
                    if not self.declares(s):
                        raise UndeclaredSymbolError(s)

    # -- derivatives of symbols -----------------------------------------
    def symbol_derivative(self, name, direction):
        key = (name, direction)
        hit = self._dcache.get(key)
        if hit is not None:
            return hit
        kind = self.kind(name)
        if kind == "coordinate":
            out = Expr.const(1 if self._coordinate[name] == direction else 0)
        elif kind == "constant":
            out = Expr()
        elif kind == "rule":
            out = self._rules[name][direction]
        else:
            base, index = self._decode(name)
            out = self._free_derivative(base, index, direction)
        if not out.is_polynomial:
            raise ValueError(f"derivative rule for {name!r} must be a polynomial")
        self._dcache[key] = out
        return out

    def _free_derivative(self, base, index, j):
        if not index or j >= index[-1]:
            return Expr.symbol(self.derived_name(base, index + (j,)))
        last = index[-1]
        lower = index[:-1]
        inner = self.symbol_derivative(self.derived_name(base, lower), j)
        out = differentiate(inner, last, self)
        c = self._structure
        if c is not None:
            for k in range(self.dimension):
                ck = c[k][last][j]
                if ck:
                    out = out - ck * self.symbol_derivative(self.derived_name(base, lower), k)
        return out


def _diff_poly(poly, direction, spec):
    out = {}
    for key, coeff in poly.items():
        powers, exparg = key
        for s, e in powers:
            ds = spec.symbol_derivative(s, direction)
            if not ds.num:
                continue
            reduced = (merge_powers(powers, ((s, -1),)), exparg)
            out = poly_add(out, poly_mul({reduced: coeff * e}, ds.num))
        if exparg:
            darg = _diff_poly({(m, ()): Fraction(c) for m, c in exparg}, direction, spec)
            if darg:
                out = poly_add(out, poly_mul({key: coeff}, darg))
    return out


def differentiate(e, direction, spec):
    """Derivative of ``e`` along basis direction ``direction`` (an index)."""
    if not 0 <= direction < spec.dimension:
        raise IndexError(f"direction {direction} out of range for dimension {spec.dimension}")
    e = as_expr(e)
    if e.is_polynomial:
        return Expr(_diff_poly(e.num, direction, spec))
    dn = Expr(_diff_poly(e.num, direction, spec))
    dd = Expr(_diff_poly(e.den, direction, spec))
    n = Expr(e.num)
    d = Expr(e.den)
    return (dn * d - n * dd) / (d * d)


def derivative_along(e, components, spec):
    """``X(e)`` for a vector field with components ``components`` in the basis."""
    total = Expr()
    for i, xi in enumerate(components):
        if xi:
            total = total + xi * differentiate(e, i, spec)
    return total
