"""Command-line entry point: ``paracontact <command> ...``."""

import argparse
import sys

from ..checks import CheckReport
from ..geometry import Curvature
from ..reproduce import run_battery
from ..soliton import (IDENTITIES, PrerequisiteError, ProportionalityError, SolitonData,
                       SolitonDataError,
                       classify_soliton, identity_check, run_identity_suite, solve_lambda,
                       soliton_residual)
from ..structures import classify
from .fileformat import Loaded, ManifoldFileError, load, soliton_data
from .report import ReportDocument, emit


class UsageError(Exception):
    pass


def _common(parser, soliton=False):
    parser.add_argument("input", help="definition file or builtin:<name>[?u=<rational>]")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    if soliton:
        parser.add_argument("--Z", dest="Z", help="potential: field name, xi, or grad:<fn>")
        parser.add_argument("--u", dest="u", help="potential function (gradient case)")
        parser.add_argument("--lambda", dest="lam", help="soliton function")
        parser.add_argument("--delta", dest="delta", help="scaling function (nonzero)")


def build_parser():
    p = argparse.ArgumentParser(prog="paracontact", description=(
        "Exact tensor calculus for paracontact metric manifolds and Yamabe-type solitons."))
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    _common(sub.add_parser("curvature", help="connection, curvature, Ricci, scalar curvature"))
    _common(sub.add_parser("structure", help="axioms and structure-class report"))
    sol = sub.add_parser("soliton", help="soliton verification and lambda extraction")
    solsub = sol.add_subparsers(dest="action", required=True, metavar="action")
    _common(solsub.add_parser("verify", help="soliton residual and classification"), True)
    _common(solsub.add_parser("solve-lambda", help="invert the soliton equation for lambda"), True)
    ident = sub.add_parser("identity", help="identity suite")
    ident.add_argument("identity", help=f"one of {', '.join(IDENTITIES)} or 'all'")
    _common(ident, True)
    ident.add_argument("--jacobi", action="store_true",
                       help="assume the Jacobi hypothesis of T4 instead of computing it")
    rep = sub.add_parser("reproduce-paper", help="run the full reproduction battery")
    rep.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _soliton(loaded, args, need_lambda=True):
    file_spec = loaded.soliton_spec
    if args.Z and args.u:
        raise UsageError("give at most one of --Z and --u")
    if args.u:
        potential = f"grad:{args.u}"
    else:
        potential = args.Z or file_spec.get("potential")
    if potential is None:
        raise UsageError("no potential given (use --Z or --u, or a [soliton] section)")
    lam = args.lam if args.lam is not None else file_spec.get("lambda")
    delta = args.delta if args.delta is not None else file_spec.get("delta", "1")
    if need_lambda and lam is None:
        raise UsageError("no lambda given (use --lambda or a [soliton] section)")
    return soliton_data(loaded, potential, lam, delta)


def _curvature(loaded, doc):
    m = loaded.model
    c = Curvature.cached(m)
    L = m.labels
    doc.derived["christoffel"] = {f"Gamma^{L[k]}_{L[i]}{L[j]}": v
                                  for (k, i, j), v in c.connection.gamma.nonzero()}
    doc.derived["riemann"] = {f"R^{L[l]}_{L[k]}{L[i]}{L[j]}": v
                              for (l, i, j, k), v in c.riemann.nonzero() if i < j}
    doc.derived["ricci"] = c.ricci
    doc.derived["r"] = c.scalar
    doc.checks.append(CheckReport.from_residuals("connection", {
        "torsion": c.connection.torsion_residual(),
        "metric compatibility": c.connection.compatibility_residual()}))
    doc.checks.append(CheckReport.from_residuals("bianchi", {"first Bianchi": c.bianchi_residual()}))


def _structure(loaded, doc):
    s = loaded.structure
    if s is None:
        raise UsageError("input has no structure")
    report = classify(s)
    doc.derived.update(report.to_dict())
    doc.derived.pop("checks")
    doc.checks.append(s.axioms)
    doc.checks += report.checks
    if s.diagnostic and not s.axioms.passed:
        for name, idx, w in s.axioms.failures():
            doc.warn("axioms", f"diagnostic structure: {name} residual at {list(idx)}", w)


def _verify(loaded, args, doc):
    data = _soliton(loaded, args)
    rep = soliton_residual(loaded.model, data, loaded.structure)
    doc.checks.append(rep)
    doc.derived["classification"] = rep.derived["classification"]
    doc.derived["r"] = rep.derived["r"]
    doc.derived["lambda"] = data.lam
    if rep.derived["classical_yamabe"]:
        doc.warn("soliton", "delta = 1 with constant lambda: classical Yamabe soliton")


def _solve(loaded, args, doc):
    data = _soliton(loaded, args, need_lambda=False)
    m = loaded.model
    try:
        lam = solve_lambda(m, data.field(m), data.delta)
    except ProportionalityError as exc:
        doc.checks.append(CheckReport.from_residuals(
            "solve_lambda", {"proportionality": exc.witness},
            {"pair": list(exc.pair)}, note=str(exc)))
        return
    doc.derived["lambda"] = lam
    doc.derived["classification"] = classify_soliton(lam)
    solved = SolitonData(data.Z, data.u, lam, data.delta.subs({"lambda": lam}))
    doc.checks.append(soliton_residual(m, solved, loaded.structure))


def _identity(loaded, args, doc):
    data = _soliton(loaded, args)
    jac = True if args.jacobi else None
    if args.identity == "all":
        doc.checks += run_identity_suite(loaded.model, loaded.structure, data, jacobi=jac)
    elif args.identity in IDENTITIES:
        try:
            doc.checks.append(identity_check(loaded.model, loaded.structure, data,
                                             args.identity, jacobi=jac))
        except PrerequisiteError as exc:
            doc.checks.append(exc.report)
            doc.warn(args.identity, str(exc))
    else:
        raise UsageError(f"unknown identity {args.identity!r}; known: {', '.join(IDENTITIES)}")


def _reproduce(doc):
    checks, warnings = run_battery()
    doc.checks += checks
    for ident, message, witness in warnings:
        doc.warn(ident, message, witness)


def run(argv):
    """``(ReportDocument, exit status)``; raises for usage and input errors."""
    args = build_parser().parse_args(argv)
    doc = ReportDocument(list(argv))
    if args.command == "reproduce-paper":
        _reproduce(doc)
        return doc.finalize(), args.format
    loaded = load(args.input)
    doc.input = loaded.source
    if args.command == "curvature":
        _curvature(loaded, doc)
    elif args.command == "structure":
        _structure(loaded, doc)
    elif args.command == "soliton":
        (_verify if args.action == "verify" else _solve)(loaded, args, doc)
    else:
        _identity(loaded, args, doc)
    return doc.finalize(), args.format


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        doc, fmt = run(argv)
    except (ManifoldFileError, UsageError, SolitonDataError) as exc:
        print(f"paracontact: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(doc, fmt))
    return doc.exit_status


__all__ = ["Loaded", "build_parser", "main", "run"]
