"""Compare the compiled and pure-Python polynomial kernels.

Run ``python benchmarks/bench_kernels.py``. Each backend is timed in a fresh
interpreter (the backend is fixed at import), on raw kernel calls and on
end-to-end workloads.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r'''
import json, random, sys, time
from fractions import Fraction
from paracontact import kernels
from paracontact.geometry import Curvature
from paracontact.structures import builtin, classify
from paracontact.soliton import SolitonData, run_identity_suite

def rand_poly(rng, nterms, names=("x", "y", "z", "u")):
    out = {}
    for _ in range(nterms):
        powers = tuple(sorted((n, rng.randint(-2, 4)) for n in rng.sample(names, rng.randint(0, 3))))
        powers = tuple(p for p in powers if p[1])
        exparg = ()
        if rng.random() < 0.3:
            exparg = (((("z", 3),), Fraction(rng.choice((-2, 2)))),)
        out[(powers, exparg)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
    return out

def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

def workloads(repeat):
    rng = random.Random(7)
    polys = [rand_poly(rng, 40) for _ in range(20)]
    def mul():
        for a in polys:
            for b in polys:
                kernels.poly_mul(a, b)
    def add():
        for a in polys:
            for b in polys:
                kernels.poly_add(a, b, Fraction(-3, 2))
    def curvature():
        m, _ = builtin("example_5_2")
        Curvature.of(m).scalar
    def structure():
        _, s = builtin("example_5_1")
        classify(s)
    def suite():
        m, s = builtin("example_5_1")
        m.spec.add_constant("lambda")
        run_identity_suite(m, s, SolitonData(Z=s.xi, lam=m.parse("-4*u - 2"), delta=m.parse("3")))
    return {"poly_mul 20x20 (40 terms)": best(mul, repeat),
            "poly_add 20x20 (40 terms)": best(add, repeat),
            "curvature example_5_2": best(curvature, repeat),
            "classify example_5_1": best(structure, repeat),
            "identity suite example_5_1": best(suite, 1)}

print(json.dumps({"backend": kernels.BACKEND, "times": workloads(int(sys.argv[1]))}))
'''


def run_backend(pure, repeat):
    env = dict(os.environ, PARACONTACT_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    compiled = run_backend(False, args.repeat)
    python = run_backend(True, args.repeat)
    if compiled["backend"] != "cython":
        print("compiled kernels are not built; only the fallback was timed", file=sys.stderr)
    rows = []
    for name, t_py in python["times"].items():
        t_c = compiled["times"][name]
        rows.append({"workload": name, "python_s": t_py, "compiled_s": t_c, "speedup": t_py / t_c})
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'workload':32} {'python [s]':>11} {'compiled [s]':>13} {'speedup':>8}")
    for r in rows:
        print(f"{r['workload']:32} {r['python_s']:11.4f} {r['compiled_s']:13.4f} {r['speedup']:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
