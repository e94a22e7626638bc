"""Backend selection for the polynomial kernels.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python module is used. Set ``PARACONTACT_PURE_PYTHON=1`` to force the
fallback (the benchmark and the parity tests do this).
"""

import os

if os.environ.get("PARACONTACT_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

ONE_KEY = _impl.ONE_KEY
merge_powers = _impl.merge_powers
add_linear = _impl.add_linear
mul_key = _impl.mul_key
poly_mul = _impl.poly_mul
poly_add = _impl.poly_add
poly_scale = _impl.poly_scale

__all__ = ["BACKEND", "ONE_KEY", "merge_powers", "add_linear", "mul_key",
           "poly_mul", "poly_add", "poly_scale"]
