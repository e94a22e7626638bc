"""Exact scalar expressions.

An :class:`Expr` is a quotient ``num / den`` of sparse Laurent polynomials
with rational coefficients. Each monomial may carry one exponential factor
``exp(p)`` where ``p`` is itself a Laurent polynomial without exponentials,
so ``exp(2*z^3) * exp(-2*z^3)`` collapses to ``1`` by construction.

The denominator is ``1`` whenever the quotient reduces to a Laurent
polynomial (division by a single term is always exact). Genuine quotients
are kept as a pair scaled so the leading denominator term is ``1``; they are
compared by cross-multiplication, never by cancellation.
"""

from fractions import Fraction
from numbers import Rational

from ..kernels import ONE_KEY, poly_add, poly_mul, poly_scale

_ONE_POLY = {ONE_KEY: Fraction(1)}


def _invert_key(key):
    powers, exparg = key
    return (tuple((s, -e) for s, e in powers), tuple((m, -c) for m, c in exparg))


def _degree(powers):
    return sum(e for _, e in powers)


def order_key(key):
    """Sort key giving the canonical (printing) order of monomials."""
    powers, exparg = key
    return (-_degree(powers), tuple((s, -e) for s, e in powers),
            tuple((tuple((s, -e) for s, e in m), -c) for m, c in exparg))


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"not a rational number: {value!r}")


class Expr:
    """Immutable exact scalar expression in normal form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None):
        num = {} if num is None else num
        if den is None or den == _ONE_POLY:
            self.num = num
            self.den = _ONE_POLY
        else:
            self.num, self.den = _normalize_quotient(num, den)
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, value):
        c = _as_fraction(value)
        return cls({ONE_KEY: c} if c else {})

    @classmethod
    def symbol(cls, name, power=1):
        if power == 0:
            return cls.const(1)
        return cls({(((name, power),), ()): Fraction(1)})

    @classmethod
    def exp(cls, argument):
        """``exp(argument)`` for a Laurent polynomial argument."""
        argument = as_expr(argument)
        if not argument.is_polynomial:
            raise ValueError("exp() argument must be a polynomial, got a quotient")
        if any(k[1] for k in argument.num):
            raise ValueError("nested exp() is not supported")
        if not argument.num:
            return cls.const(1)
        linear = tuple(sorted((k[0], c) for k, c in argument.num.items()))
        return cls({((), linear): Fraction(1)})

    # -- structure ------------------------------------------------------
    @property
    def is_polynomial(self):
        return self.den is _ONE_POLY or self.den == _ONE_POLY

    def is_zero(self):
        return not self.num

    def as_fraction(self):
        """The rational value if this is a constant, else ``None``."""
        if not self.num:
            return Fraction(0)
        if self.is_polynomial and len(self.num) == 1 and ONE_KEY in self.num:
            return self.num[ONE_KEY]
        return None

    @property
    def is_number(self):
        return self.as_fraction() is not None

    def free_symbols(self):
        names = set()
        for poly in (self.num, self.den):
            for powers, exparg in poly:
                names.update(s for s, _ in powers)
                for m, _ in exparg:
                    names.update(s for s, _ in m)
        return names

    def terms(self):
        """Numerator terms in canonical order as ``(coeff, key)`` pairs."""
        return [(self.num[k], k) for k in sorted(self.num, key=order_key)]

    def coefficients_in(self, name):
        """Split a polynomial by powers of ``name``: ``{power: coefficient}``.

        The exponential arguments must not mention ``name``.
        """
        if not self.is_polynomial:
            raise ValueError("coefficients_in needs a polynomial")
        parts = {}
        for (powers, exparg), c in self.num.items():
            if any(name == s for m, _ in exparg for s, _ in m):
                raise ValueError(f"{name} appears inside exp()")
            p = 0
            rest = []
            for s, e in powers:
                if s == name:
                    p = e
                else:
                    rest.append((s, e))
            parts.setdefault(p, {})[(tuple(rest), exparg)] = c
        return {p: Expr(d) for p, d in parts.items()}

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = as_expr(other)
        if self.is_polynomial and other.is_polynomial:
            return Expr(poly_add(self.num, other.num))
        if self.den == other.den:
            return Expr(poly_add(self.num, other.num), self.den)
        # reuse a denominator that the other one divides
        for big, small in ((self, other), (other, self)):
            q = _exact_quotient(big.den, small.den)
            if q is not None:
                return Expr(poly_add(big.num, poly_mul(small.num, q)), big.den)
        num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
        return Expr(num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Expr(poly_scale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) + (-self)

    def __mul__(self, other):
        other = as_expr(other)
        if self.is_polynomial and other.is_polynomial:
            return Expr(poly_mul(self.num, other.num))
        return Expr(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_expr(other)
        if not other.num:
            raise ZeroDivisionError("division by an expression that normalizes to zero")
        return Expr(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return as_expr(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return Expr.const(1) / (self ** -n)
        result = Expr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = Expr.const(other)
        if not isinstance(other, Expr):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        if self.is_polynomial and other.is_polynomial:
            return False
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __hash__(self):
        # quotients with different representatives compare equal, so they
        # share one bucket
        if self._hash is None:
            if self.is_polynomial:
                self._hash = hash(frozenset(self.num.items()))
            else:
                self._hash = hash("quotient")
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        from .printer import to_string
        return to_string(self)

    def __repr__(self):
        return f"Expr({str(self)!r})"

    # -- substitution ---------------------------------------------------
    def subs(self, mapping):
        """Replace symbols by expressions (names absent from ``mapping`` stay)."""
        mapping = {k: as_expr(v) for k, v in mapping.items()}
        if not mapping:
            return self

        def sub_poly(poly):
            total = Expr()
            for (powers, exparg), c in poly.items():
                term = Expr.const(c)
                keep = []
                for s, e in powers:
                    if s in mapping:
                        term = term * mapping[s] ** e
                    else:
                        keep.append((s, e))
                if keep:
                    term = term * Expr({(tuple(keep), ()): Fraction(1)})
                if exparg:
                    arg = sub_poly({(m, ()): a for m, a in exparg})
                    term = term * Expr.exp(arg)
                total = total + term
            return total

        num = sub_poly(self.num)
        if self.is_polynomial:
            return num
        return num / sub_poly(self.den)


def _content(poly):
    """Largest monomial (symbol part only) dividing every term, as a key."""
    mins = None
    for powers, _ in poly:
        exps = dict(powers)
        if mins is None:
            mins = exps
        else:
            mins = {s: min(e, exps.get(s, 0)) for s, e in mins.items()}
            for s, e in exps.items():
                if s not in mins:
                    mins[s] = min(0, e)
    return (tuple(sorted((s, e) for s, e in (mins or {}).items() if e)), ())


def _divides(a, b):
    """Whether monomial key ``a`` divides ``b`` in the polynomial ring."""
    eb = dict(b[0])
    return all(e <= eb.get(s, 0) for s, e in a[0])


def _exact_quotient(num, den):
    """``num / den`` when ``den`` divides ``num`` exactly, else ``None``.

    Exponents must be nonnegative. For exp-free input a single divisor leaves
    a zero remainder exactly when the division is exact. Exponential factors
    are units, so a zero remainder still proves exactness, but a ``None``
    answer is then only "not found".
    """
    if not den:
        return None
    lead = min(den, key=order_key)
    inv_lead = (_invert_key(lead), 1 / den[lead])
    quotient = {}
    rem = dict(num)
    budget = 4 * len(num) * len(den) + 64 + max((_degree(k[0]) for k in num), default=0) ** 2
    for _ in range(budget):
        if not rem:
            return quotient
        lt = min(rem, key=order_key)
        if not _divides(lead, lt):
            return None
        t = poly_mul({lt: rem[lt]}, {inv_lead[0]: inv_lead[1]})
        quotient = poly_add(quotient, t)
        rem = poly_add(rem, poly_mul(t, den), -1)
    return None


def _normalize_quotient(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, _ONE_POLY
    if len(den) == 1:
        (key, c), = den.items()
        return poly_mul(num, {_invert_key(key): 1 / c}), _ONE_POLY
    # strip the monomial content of den into num, then scale by the leading term
    content = _content(den)
    inv = {_invert_key(content): Fraction(1)}
    num, den = poly_mul(num, inv), poly_mul(den, inv)
    lead = min(den, key=order_key)
    inv = {((), _invert_key(lead)[1]): 1 / den[lead]}
    num, den = poly_mul(num, inv), poly_mul(den, inv)
    if num.keys() == den.keys():
        k0 = next(iter(den))
        ratio = num[k0] / den[k0]
        if all(num[k] == ratio * den[k] for k in den):
            return {ONE_KEY: ratio}, _ONE_POLY
    shift = _content(num)
    shifted = poly_mul(num, {_invert_key(shift): Fraction(1)})
    q = _exact_quotient(shifted, den)
    if q is not None:
        return poly_mul(q, {shift: Fraction(1)}), _ONE_POLY
    return num, den


def as_expr(value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Rational)):
        return Expr.const(value)
    if isinstance(value, str):
        from .parser import parse_expr
        return parse_expr(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Expr")


ZERO = Expr()
ONE = Expr.const(1)

__all__ = ["Expr", "as_expr", "order_key", "ZERO", "ONE"]
