"""Reproduction battery for the built-in examples.

Every check is exact. Known inconsistencies in the quoted example data are
returned as warnings carrying a nonzero witness instead of failing the run.
"""

from .checks import CheckReport
from .geometry import Curvature, TensorField, divergence, exterior_derivative
from .soliton import (SolitonData, classify_soliton, conformal_coefficient,
                      gradient_soliton_residual, identity_check, solve_lambda, soliton_residual)
from .structures import (builtin, classify, fundamental_two_form, h_operator, quoted_connection)
from .symbolic import Expr, evaluate_numeric


def _ex52_connection():
    m, _ = builtin("example_5_2")
    gamma = Curvature.cached(m).connection.gamma
    diff = gamma - quoted_connection("example_5_2", m)
    return CheckReport.from_residuals(
        "example_5_2.connection", {"computed - quoted": diff},
        {"nonzero": {f"{m.labels[k]}_{m.labels[i]}{m.labels[j]}": v
                     for (k, i, j), v in gamma.nonzero()}})


def _ex52_scalar():
    m, _ = builtin("example_5_2")
    r = Curvature.cached(m).scalar
    return CheckReport.from_residuals("example_5_2.scalar_curvature",
                                      {"r + 18 z^4": r - m.parse("-18*z^4")}, {"r": r})


def _ex51_scalar():
    m, _ = builtin("example_5_1")
    r = Curvature.cached(m).scalar
    m0, _ = builtin("example_5_1", u=0)
    r0 = Curvature.cached(m0).scalar
    value = evaluate_numeric(r0, {}, digits=30)
    return CheckReport.from_residuals(
        "example_5_1.scalar_curvature",
        {"r + 2(2u+1)": r - m.parse("-2*(2*u+1)"), "r(u=0) + 2": r0 + 2},
        {"r": r, "r(u=0)": r0, "r(u=0) numeric": str(value)})


def _ex51_structure():
    m, s = builtin("example_5_1")
    report = classify(s)
    h = h_operator(s)
    phi_form = fundamental_two_form(s) - exterior_derivative(m, s.eta)
    residuals = {"axioms": Expr.const(0 if s.axioms.passed else 1), "h": h, "Phi - d eta": phi_form}
    for c in report.checks:
        if c.status != "hypothesis_not_satisfied":
            for name, r in c.residuals.items():
                residuals[f"{c.identity}: {name}"] = r
    kmu = report.kmu
    residuals["k + 1"] = (kmu.k + 1) if kmu.fits else Expr.const(1)
    residuals["mu indeterminate"] = Expr.const(0 if kmu.mu == "indeterminate" else 1)
    for flag in ("paracontact_metric", "K_paracontact", "para_Sasakian"):
        residuals[f"flag {flag}"] = Expr.const(0 if report.flags[flag] else 1)
    return CheckReport.from_residuals("example_5_1.structure", residuals,
                                      {"flags": report.flags, "k": kmu.k, "mu": kmu.mu})


def _ex51_soliton():
    m, s = builtin("example_5_1")
    m.spec.add_constant("lambda")
    lam = solve_lambda(m, s.xi, m.parse("lambda"))
    r = Curvature.cached(m).scalar
    m0, s0 = builtin("example_5_1", u=0)
    lam0 = solve_lambda(m0, s0.xi, -2)
    verdict = soliton_residual(m0, SolitonData(Z=s0.xi, lam=lam0, delta=lam0))
    cls = classify_soliton(lam0)
    return CheckReport.from_residuals(
        "example_5_1.soliton",
        {"lambda - r": lam - r, "lambda(u=0) + 2": lam0 + 2,
         "soliton(u=0)": verdict.residuals["soliton_equation"],
         "shrinking": Expr.const(0 if cls == "shrinking" else 1)},
        {"lambda": lam, "lambda(u=0)": lam0, "classification": cls})


EX52_RELATIONS = (
    "delta*(f1_x + f2_x + 3*z^2*(f1 + f3)) + 18*z^4 + lambda",
    "delta*(f2_y + f3_y - 3*z^2*(f1 + f3)) + 18*z^4 + lambda",
    "delta*(f1_z + f3_z) + 18*z^4 + lambda",
    "(f2_x + f3_x)*exp(-2*z^3) + (f1_y + f2_y)*exp(2*z^3)",
    "f1_y + f3_y + (f2_z + f3_z)*exp(-2*z^3)",
    "(f1_z + f2_z)*exp(2*z^3) + f1_x + f3_x",
)


def example_5_2_relations():
    """The six soliton-equation components for the three-function potential,
    each rescaled to the quoted form, next to the quoted relation."""
    m, _ = builtin("example_5_2")
    for f in ("f1", "f2", "f3"):
        m.spec.add_free_function(f)
    for c in ("lambda", "delta"):
        m.spec.add_constant(c)
    Z = m.vector(["f1 + f2", "f2 + f3", "f3 + f1"])
    delta = m.parse("delta")
    res = soliton_residual(m, SolitonData(Z=Z, lam=m.parse("lambda"), delta=delta))
    E = res.residuals["soliton_equation"]
    g = m.metric
    scaled = [E[0, 0] / g[0, 0], E[1, 1] / g[1, 1], E[2, 2] / g[2, 2],
              E[0, 1] * 2 / delta, E[1, 2] * 2 / delta, E[0, 2] * 2 / delta]
    quoted = [m.parse(t) for t in EX52_RELATIONS]
    return m, scaled, quoted


def _ex52_soliton():
    _, scaled, quoted = example_5_2_relations()
    return CheckReport.from_residuals(
        "example_5_2.soliton_relations",
        {f"relation {i + 1}": a - b for i, (a, b) in enumerate(zip(scaled, quoted))},
        {f"relation {i + 1}": a for i, a in enumerate(scaled)})


def _flat_conformal():
    m, s = builtin("flat_para_cosymplectic")
    m.spec.add_free_function("delta")
    delta = m.parse("delta")
    Z = m.vector(["x", "y", "z"])
    rho = conformal_coefficient(m, Z)
    data = SolitonData(Z=Z, lam=-delta, delta=delta)
    r = Curvature.cached(m).scalar
    res = {"rho - 1": rho - 1, "r - lambda - rho delta": r + delta - rho * delta,
           "soliton": soliton_residual(m, data).residuals["soliton_equation"]}
    statuses = {}
    for ident in ("T9", "L1a", "L1b"):
        rep = identity_check(m, s, data, ident)
        statuses[ident] = rep.status
        res[f"{ident} passes"] = Expr.const(0 if rep.passed else 1)
    return CheckReport.from_residuals("flat.conformal_soliton", res, {"rho": rho, **statuses})


def _flat_gradient():
    m, s = builtin("flat_para_cosymplectic")
    m.spec.add_constant("delta")
    delta = m.parse("delta")
    u = m.parse("(x^2 - y^2 + z^2)/2")
    grad = gradient_soliton_residual(m, u, -delta, delta)
    data = SolitonData(u=u, lam=-delta, delta=delta)
    res = {"gradient soliton": grad.residuals["gradient_soliton_equation"]}
    statuses = {}
    for ident in ("GL1", "GL2", "T6"):
        rep = identity_check(m, s, data, ident)
        statuses[ident] = rep.status
        res[f"{ident} acceptable"] = Expr.const(0 if rep.acceptable else 1)
    return CheckReport.from_residuals("flat.gradient_soliton", res, statuses,
                                      note="T6 needs K-paracontact; the flat model is not, so it "
                                           "is vacuous there")


def _properties():
    res = {}
    for name, kw in (("example_5_1", {}), ("example_5_2", {}), ("flat_para_cosymplectic", {})):
        m, s = builtin(name, **kw)
        c = Curvature.cached(m)
        res[f"{name} bianchi"] = c.bianchi_residual()
        low = c.lowered()
        res[f"{name} pair symmetry"] = TensorField.from_function(
            m, (0, 4), lambda i, j, k, w: low[i, j, k, w] - low[k, w, i, j])
        res[f"{name} ricci symmetry"] = c.ricci - TensorField.from_function(
            m, (0, 2), lambda i, j: c.ricci[j, i])
        res[f"{name} d d eta"] = exterior_derivative(m, exterior_derivative(m, s.eta))
    m, s = builtin("flat_para_cosymplectic")
    m.spec.add_constant("delta")
    delta = m.parse("delta")
    Z = m.vector(["x", "y", "z"])
    div = divergence(m, Curvature.cached(m).connection, Z)
    r = Curvature.cached(m).scalar
    res["flat trace identity"] = div - 3 * (r + delta) / delta
    return CheckReport.from_residuals("properties.curvature_and_forms", res)


def discrepancies():
    """Warnings: ``(identifier, message, witness expression)``."""
    out = []
    m, _ = builtin("example_5_1")
    diff = Curvature.cached(m).connection.gamma - quoted_connection("example_5_1", m)
    for (k, i, j), w in diff.nonzero():
        out.append(("example_5_1.quoted_connection",
                    f"nabla_e{i + 1} e{j + 1}: e{k + 1} component differs from the quoted table "
                    f"(computed - quoted)", w))
    _, s = builtin("example_5_2")
    for name, idx, w in s.axioms.failures():
        out.append(("example_5_2.axioms", f"{name} residual at {list(idx)}", w))
    return out


BATTERY = (_ex52_connection, _ex52_scalar, _ex51_scalar, _ex51_structure, _ex51_soliton,
           _ex52_soliton, _flat_conformal, _flat_gradient, _properties)


def run_battery():
    return [fn() for fn in BATTERY], discrepancies()


__all__ = ["BATTERY", "EX52_RELATIONS", "discrepancies", "example_5_2_relations", "run_battery"]
