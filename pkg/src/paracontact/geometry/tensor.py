"""Component arrays of tensor fields over a model's basis."""

import itertools

import numpy as np

from ..symbolic import ZERO, as_expr


def expr_array(shape, fill=ZERO):
    arr = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape) if shape else [()]:
        arr[idx] = fill
    return arr


class TensorField:
    """Tensor of valence ``(p, q)``; upper indices come first in ``components``.

    A ``(1, 1)`` field ``A`` stores ``A[a, b]``, the ``e_a`` component of
    ``A(e_b)``. A ``(1, 2)`` field ``T`` stores ``T[k, i, j]``, the ``e_k``
    component of ``T(e_i, e_j)``; the curvature ``(1, 3)`` field stores
    ``R[l, i, j, k]``, the ``e_l`` component of ``R(e_i, e_j) e_k``.
    """

    __slots__ = ("model", "valence", "components")

    def __init__(self, model, valence, components):
        p, q = valence
        n = model.dimension
        arr = np.asarray(components, dtype=object)
        if arr.shape != (n,) * (p + q):
            raise ValueError(f"valence {valence} on dimension {n} needs shape "
                             f"{(n,) * (p + q)}, got {arr.shape}")
        arr = arr.copy()
        for idx in np.ndindex(*arr.shape):
            arr[idx] = as_expr(arr[idx])
        arr.flags.writeable = False
        self.model = model
        self.valence = (p, q)
        self.components = arr

    @classmethod
    def zeros(cls, model, valence):
        p, q = valence
        return cls(model, valence, expr_array((model.dimension,) * (p + q)))

    @classmethod
    def from_function(cls, model, valence, fn):
        p, q = valence
        shape = (model.dimension,) * (p + q)
        arr = expr_array(shape)
        for idx in itertools.product(range(model.dimension), repeat=p + q):
            arr[idx] = fn(*idx)
        return cls(model, valence, arr)

    @property
    def rank(self):
        return sum(self.valence)

    def __getitem__(self, idx):
        return self.components[idx]

    def indices(self):
        return itertools.product(range(self.model.dimension), repeat=self.rank)

    def _check(self, other):
        if not isinstance(other, TensorField):
            raise TypeError("expected a TensorField")
        if other.model is not self.model or other.valence != self.valence:
            raise ValueError("tensor fields differ in model or valence")

    def __add__(self, other):
        self._check(other)
        return TensorField(self.model, self.valence, self.components + other.components)

    def __sub__(self, other):
        self._check(other)
        return TensorField(self.model, self.valence, self.components - other.components)

    def __neg__(self):
        return TensorField(self.model, self.valence, -self.components)

    def __mul__(self, scalar):
        s = as_expr(scalar)
        return self.map(lambda e: s * e)

    __rmul__ = __mul__

    def map(self, fn):
        arr = expr_array(self.components.shape)
        for idx in self.indices():
            arr[idx] = fn(self.components[idx])
        return TensorField(self.model, self.valence, arr)

    def nonzero(self):
        """``(index, expr)`` for every component whose normal form is nonzero."""
        return [(idx, self.components[idx]) for idx in self.indices()
                if not self.components[idx].is_zero()]

    def is_zero(self):
        return not self.nonzero()

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return (self.model is other.model and self.valence == other.valence
                and all(self.components[i] == other.components[i] for i in self.indices()))

    __hash__ = None

    def to_lists(self):
        """Nested lists of canonical component strings."""
        return np.vectorize(str, otypes=[object])(self.components).tolist() \
            if self.rank else str(self.components[()])

    def __repr__(self):
        return f"TensorField(valence={self.valence}, nonzero={len(self.nonzero())})"
