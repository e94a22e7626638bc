"""Canonical text form of expressions.

The output is accepted by :func:`parse_expr` and reparses to the same normal
form, which keeps reports diff-stable.
"""

from fractions import Fraction

from .expr import order_key


def _factor_strings(key):
    powers, exparg = key
    out = [s if e == 1 else f"{s}^{e}" for s, e in powers]
    if exparg:
        out.append(f"exp({_poly_string({(m, ()): c for m, c in exparg})})")
    return out


def _coeff_string(c):
    c = abs(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_string(poly):
    if not poly:
        return "0"
    parts = []
    for i, key in enumerate(sorted(poly, key=order_key)):
        c = Fraction(poly[key])
        factors = _factor_strings(key)
        if factors and abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_string(c)] + factors)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def to_string(expr):
    num = _poly_string(expr.num)
    if expr.is_polynomial:
        return num
    return f"({num})/({_poly_string(expr.den)})"
