import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paracontact import _kernels_py as py_k
from paracontact import kernels

try:
    from paracontact import _kernels as c_k
except ImportError:  # extension not built
    c_k = None

needs_ext = pytest.mark.skipif(c_k is None, reason="compiled kernels not built")

names = st.sampled_from("uvwxyz")
powers = st.dictionaries(names, st.integers(-3, 4)).map(
    lambda d: tuple(sorted((k, v) for k, v in d.items() if v)))
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(bool)
expargs = st.dictionaries(powers, coeffs, max_size=2).map(lambda d: tuple(sorted(d.items())))
keys = st.tuples(powers, expargs)
polys = st.dictionaries(keys, coeffs, max_size=12)


@needs_ext
@settings(max_examples=300)
@given(powers, powers)
def test_merge_powers_parity(p, q):
    assert c_k.merge_powers(p, q) == py_k.merge_powers(p, q)


@needs_ext
@settings(max_examples=300)
@given(expargs, expargs)
def test_add_linear_parity(a, b):
    assert c_k.add_linear(a, b) == py_k.add_linear(a, b)


@needs_ext
@settings(max_examples=300)
@given(polys, polys)
def test_poly_mul_parity(a, b):
    assert c_k.poly_mul(a, b) == py_k.poly_mul(a, b)


@needs_ext
@settings(max_examples=300)
@given(polys, polys, coeffs)
def test_poly_add_parity(a, b, s):
    assert c_k.poly_add(a, b, s) == py_k.poly_add(a, b, s)
    assert c_k.poly_scale(a, s) == py_k.poly_scale(a, s)
    assert c_k.poly_scale(a, 0) == {}


@settings(max_examples=200)
@given(polys, polys, polys)
def test_poly_mul_associative_and_distributive(a, b, c):
    mul, add = kernels.poly_mul, kernels.poly_add
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


def test_inputs_not_mutated():
    a = {(((("x", 1),), ())): Fraction(2)}
    b = {(((("x", 1),), ())): Fraction(-2)}
    kernels.poly_add(a, b)
    assert a and b


def test_fallback_selected_by_environment():
    env = dict(os.environ, PARACONTACT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from paracontact import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_compiled_backend_preferred():
    assert kernels.BACKEND == "cython"


def test_backends_give_identical_reports():
    cmd = [sys.executable, "-m", "paracontact", "identity", "all", "builtin:example_5_1",
           "--Z=xi", "--lambda=-4*u - 2", "--delta=3", "--format", "json"]
    outs = []
    for pure in ("0", "1"):
        env = dict(os.environ, PARACONTACT_PURE_PYTHON=pure)
        outs.append(subprocess.run(cmd, env=env, capture_output=True, text=True).stdout)
    assert outs[0] == outs[1] and outs[0]
