"""Numeric evaluation and the zero test.

Numbers here are test oracles only: verdicts come from normal forms.
"""

import math
import random
from fractions import Fraction
from typing import NamedTuple, Optional

import mpmath

from .expr import Expr, as_expr


class MissingAssignmentError(KeyError):
    def __str__(self):
        return f"no value assigned to symbol {self.args[0]!r}"


def _mpf(q):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def _eval_poly(poly, values):
    total = mpmath.mpf(0)
    for (powers, exparg), c in poly.items():
        term = _mpf(c)
        for s, e in powers:
            try:
                v = values[s]
            except KeyError:
                raise MissingAssignmentError(s) from None
            if e < 0 and v == 0:
                raise ZeroDivisionError(f"{s} = 0 raised to a negative power")
            term *= v ** e
        if exparg:
            term *= mpmath.exp(_eval_poly({(m, ()): a for m, a in exparg}, values))
        total += term
    return total


def evaluate_numeric(e, assignment, digits=50):
    """Value of ``e`` at a rational point, to ``digits`` significant digits.

    ``assignment`` maps every symbol of ``e`` to a rational (``int``,
    ``Fraction`` or a string such as ``"3/7"``).
    """
    e = as_expr(e)
    with mpmath.workdps(digits + 10):
        values = {k: _mpf(Fraction(v)) for k, v in assignment.items()}
        num = _eval_poly(e.num, values)
        if e.is_polynomial:
            out = num
        else:
            den = _eval_poly(e.den, values)
            if den == 0:
                raise ZeroDivisionError("denominator vanishes at this point")
            out = num / den
        return +out


def _exp_atoms(e):
    """For each exp-argument monomial, the lcm of its coefficient denominators."""
    atoms = {}
    for poly in (e.num, e.den):
        for _, exparg in poly:
            for m, c in exparg:
                d = Fraction(c).denominator
                atoms[m] = atoms.get(m, 1) * d // math.gcd(atoms.get(m, 1), d)
    return atoms


def surrogate_value(e, point, generators):
    """Exact rational value of ``e`` with exponentials replaced by surrogates.

    ``exp(c * m)`` for an argument monomial ``m`` is evaluated as
    ``generators[m] ** (c * L)`` where ``L`` is the lcm of the denominators of
    all coefficients of ``m`` in ``e``; so the surrogate respects exactly the
    multiplicative relations ``exp(a) * exp(b) = exp(a + b)`` and nothing else.
    """
    e = as_expr(e)
    atoms = _exp_atoms(e)

    def ev(poly):
        total = Fraction(0)
        for (powers, exparg), c in poly.items():
            term = Fraction(c)
            for s, k in powers:
                try:
                    term *= Fraction(point[s]) ** k
                except KeyError:
                    raise MissingAssignmentError(s) from None
            for m, a in exparg:
                term *= Fraction(generators[m]) ** int(a * atoms[m])
            total += term
        return total

    num = ev(e.num)
    if e.is_polynomial:
        return num
    return num / ev(e.den)


def random_surrogate_point(e, rng):
    """Random nonzero rationals for the symbols and exp atoms of ``e``."""
    def r():
        while True:
            q = Fraction(rng.randint(-97, 97), rng.randint(1, 89))
            if q:
                return q
    point = {s: r() for s in sorted(e.free_symbols())}
    gens = {m: abs(r()) + 1 for m in sorted(_exp_atoms(e))}
    return point, gens


class ZeroTest(NamedTuple):
    is_zero: bool
    witness: Optional[Expr]

    def __bool__(self):
        return self.is_zero


def is_zero(e, verify=False, trials=20, seed=0):
    """Decide ``e == 0`` from its normal form.

    Returns ``ZeroTest(True, None)`` or ``ZeroTest(False, witness)`` where the
    witness is the nonzero normal form. With ``verify=True`` the verdict is
    cross-checked by exact surrogate evaluation at random rational points;
    disagreement raises ``AssertionError``.
    """
    e = as_expr(e)
    verdict = e.is_zero()
    if verify:
        rng = random.Random(seed)
        values = []
        for _ in range(trials):
            point, gens = random_surrogate_point(e, rng)
            try:
                values.append(surrogate_value(e, point, gens))
            except ZeroDivisionError:
                continue
        if verdict and any(values):
            raise AssertionError(f"zero normal form but nonzero value for {e}")
        if not verdict and values and not any(values):
            raise AssertionError(f"nonzero normal form {e} vanished at {trials} random points")
    return ZeroTest(True, None) if verdict else ZeroTest(False, e)
