"""Random expression trees evaluated both by the engine and by sympy."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from paracontact.symbolic import Expr

SYMBOLS = ("x", "y", "z", "a")
EXP_ARGS = ("2*z^3", "-2*z^3", "x", "x - y/2")

_sym = {n: sympy.Symbol(n) for n in SYMBOLS}


def leaves():
    return st.one_of(
        st.sampled_from(SYMBOLS).map(lambda s: ("sym", s)),
        st.fractions(min_value=-7, max_value=7, max_denominator=5).map(lambda q: ("num", q)),
        st.sampled_from(EXP_ARGS).map(lambda t: ("exp", t)),
    )


def _extend(children):
    return st.one_of(
        st.tuples(st.just("+"), children, children),
        st.tuples(st.just("-"), children, children),
        st.tuples(st.just("*"), children, children),
        st.tuples(st.just("^"), children, st.integers(0, 3)),
        st.tuples(st.just("/"), children, st.sampled_from(("x", "y", "x^2 + 1", "z - a", "2"))),
    )


trees = st.recursive(leaves(), _extend, max_leaves=8)


def to_text(t):
    op = t[0]
    if op == "sym":
        return t[1]
    if op == "num":
        q = t[1]
        return f"({q.numerator}/{q.denominator})"
    if op == "exp":
        return f"exp({t[1]})"
    if op == "^":
        return f"({to_text(t[1])})^{t[2]}"
    if op == "/":
        return f"({to_text(t[1])})/({t[2]})"
    return f"({to_text(t[1])} {op} {to_text(t[2])})"


def build(t, spec):
    """Engine value built with the arithmetic operators, not the parser."""
    op = t[0]
    if op == "sym":
        return Expr.symbol(t[1])
    if op == "num":
        return Expr.const(t[1])
    if op == "exp":
        from paracontact.symbolic import parse_expr
        return Expr.exp(parse_expr(t[1], spec))
    if op == "^":
        return build(t[1], spec) ** t[2]
    if op == "/":
        from paracontact.symbolic import parse_expr
        return build(t[1], spec) / parse_expr(t[2], spec)
    a, b = build(t[1], spec), build(t[2], spec)
    return {"+": a + b, "-": a - b, "*": a * b}[op]


def to_sympy_text(text):
    return sympy.sympify(text.replace("^", "**"), locals=_sym)


def to_sympy(t):
    return to_sympy_text(to_text(t))


def engine_to_sympy(e):
    return to_sympy_text(str(e))


def as_fraction(v):
    return Fraction(v)


def random_tree(rng, depth=3):
    """Seeded counterpart of ``trees`` for suites that need an exact case count."""
    if depth == 0 or rng.random() < 0.25:
        kind = rng.randrange(3)
        if kind == 0:
            return ("sym", rng.choice(SYMBOLS))
        if kind == 1:
            return ("num", Fraction(rng.randint(-7, 7), rng.randint(1, 5)))
        return ("exp", rng.choice(EXP_ARGS))
    op = rng.choice("+-*^/")
    if op == "^":
        return (op, random_tree(rng, depth - 1), rng.randint(0, 3))
    if op == "/":
        return (op, random_tree(rng, depth - 1), rng.choice(("x", "y", "x^2 + 1", "z - a", "2")))
    return (op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))


def central_difference(e, name, point, step_exponent=30, digits=120):
    """(e(p + h) - e(p - h)) / 2h with h = 10^-step_exponent.

    Working precision grows with |e(p)| so the difference of two large values
    does not cancel away the digits that carry the derivative.
    """
    import mpmath

    from paracontact.symbolic import evaluate_numeric

    size = abs(evaluate_numeric(e, point, digits=15))
    extra = int(mpmath.log10(size)) + 1 if size > 1 else 0
    work = digits + extra
    h = Fraction(1, 10 ** step_exponent)
    up = evaluate_numeric(e, {**point, name: point[name] + h}, digits=work)
    down = evaluate_numeric(e, {**point, name: point[name] - h}, digits=work)
    with mpmath.workdps(work):
        return (up - down) * h.denominator / 2
