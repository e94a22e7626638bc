"""Pure-Python sparse polynomial kernels.

A monomial key is a pair ``(powers, exparg)``:

* ``powers`` is a tuple of ``(symbol_name, exponent)`` pairs sorted by name,
  exponents nonzero (negative exponents are allowed, giving Laurent monomials);
* ``exparg`` is the argument of an exponential factor ``exp(exparg)``, stored
  as a tuple of ``(powers, Fraction)`` pairs sorted by ``powers``. The empty
  tuple means no exponential factor.

A polynomial is a plain ``dict`` mapping keys to nonzero ``Fraction``
coefficients. The compiled module ``_kernels`` exposes the same functions.
"""

ONE_KEY = ((), ())


def merge_powers(p, q):
    if not p:
        return q
    if not q:
        return p
    out = []
    i = j = 0
    np_, nq = len(p), len(q)
    while i < np_ and j < nq:
        a, b = p[i], q[j]
        if a[0] == b[0]:
            e = a[1] + b[1]
            if e:
                out.append((a[0], e))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    if i < np_:
        out.extend(p[i:])
    if j < nq:
        out.extend(q[j:])
    return tuple(out)


def add_linear(a, b):
    """Sum of two sorted ``(key, coeff)`` tuples, zero entries dropped."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x[0] == y[0]:
            c = x[1] + y[1]
            if c:
                out.append((x[0], c))
            i += 1
            j += 1
        elif x[0] < y[0]:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return tuple(out)


def mul_key(ka, kb):
    return (merge_powers(ka[0], kb[0]), add_linear(ka[1], kb[1]))


def poly_mul(a, b):
    out = {}
    get = out.get
    for ka, ca in a.items():
        pa, ea = ka
        for kb, cb in b.items():
            key = (merge_powers(pa, kb[0]), add_linear(ea, kb[1]))
            c = get(key)
            if c is None:
                out[key] = ca * cb
            else:
                out[key] = c + ca * cb
    return {k: c for k, c in out.items() if c}


def poly_add(a, b, scale=1):
    """Return ``a + scale * b`` as a new dict."""
    out = dict(a)
    get = out.get
    for k, c in b.items():
        old = get(k)
        if old is None:
            out[k] = c * scale
        else:
            s = old + c * scale
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def poly_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}
