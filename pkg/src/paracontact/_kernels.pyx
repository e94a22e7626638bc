# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same keys, same results."""

ONE_KEY = ((), ())


cpdef tuple merge_powers(tuple p, tuple q):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t np_ = len(p), nq = len(q)
    cdef tuple a, b
    cdef object e
    cdef list out
    if np_ == 0:
        return q
    if nq == 0:
        return p
    out = []
    while i < np_ and j < nq:
        a = <tuple>p[i]
        b = <tuple>q[j]
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
    while i < np_:
        out.append(p[i])
        i += 1
    while j < nq:
        out.append(q[j])
        j += 1
    return tuple(out)


cpdef tuple add_linear(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef tuple x, y
    cdef object c
    cdef list out
    if na == 0:
        return b
    if nb == 0:
        return a
    out = []
    while i < na and j < nb:
        x = <tuple>a[i]
        y = <tuple>b[j]
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
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef tuple mul_key(tuple ka, tuple kb):
    return (merge_powers(<tuple>ka[0], <tuple>kb[0]),
            add_linear(<tuple>ka[1], <tuple>kb[1]))


cpdef dict poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ka, kb, key, pa, ea
    cdef object ca, cb, c
    for ka, ca in a.items():
        pa = <tuple>ka[0]
        ea = <tuple>ka[1]
        for kb, cb in b.items():
            key = (merge_powers(pa, <tuple>kb[0]), add_linear(ea, <tuple>kb[1]))
            c = out.get(key)
            if c is None:
                out[key] = ca * cb
            else:
                out[key] = c + ca * cb
    return {k: v for k, v in out.items() if v}


cpdef dict poly_add(dict a, dict b, object scale=1):
    cdef dict out = dict(a)
    cdef object k, c, old, s
    for k, c in b.items():
        old = out.get(k)
        if old is None:
            out[k] = c * scale
        else:
            s = old + c * scale
            if s:
                out[k] = s
            else:
                del out[k]
    return out


cpdef dict poly_scale(dict a, object c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}
