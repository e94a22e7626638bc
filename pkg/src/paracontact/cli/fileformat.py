"""Manifold definition files (TOML) and ``builtin:`` URIs.

Layout::

    [manifold]   name, mode ("chart" | "frame"), basis (labels), dimension (optional check)
    [symbols]    name = "constant" | "free" | "exp(<polynomial>)" | {<label> = "<derivative>", ...}
    [metric]     rows = [[...], ...]                  expression strings or numbers
    [brackets]   entries = [[i, j, k, "coeff"], ...]  1-based; [e_i, e_j] has e_k-coefficient coeff
    [structure]  phi = rows (row a, column b: e_a component of phi(e_b)), xi, eta, diagnostic
    [fields]     name = [components]  (vector field)  or  name = "expr"  (function)
    [soliton]    potential = "xi" | "<field>" | "grad:<function or expr>", lambda, delta

In chart mode the basis labels are the coordinates and are declared
automatically. Names appearing only in soliton parameters are declared as
constants when first seen.
"""

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from urllib.parse import parse_qsl

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..geometry import ManifoldModel, ModelError, TensorField
from ..soliton import SolitonData, SolitonDataError
from ..structures import ParacontactStructure, StructureError, builtin
from ..symbolic import (DerivationSpec, Expr, ExprSyntaxError, UndeclaredSymbolError, as_expr,
                        parse_expr)


class ManifoldFileError(ValueError):
    """Problem in a definition file, positioned by line/column or section path."""

    def __init__(self, message, source="<input>", line=None, column=None, section=None):
        self.source = source
        self.line = line
        self.column = column
        self.section = section
        where = source
        if line is not None:
            where += f":{line}:{column}"
        if section:
            where += f" [{section}]"
        super().__init__(f"{where}: {message}")


@dataclass
class Loaded:
    model: ManifoldModel
    structure: ParacontactStructure = None
    soliton: SolitonData = None
    fields: dict = field(default_factory=dict)
    source: str = "<input>"
    soliton_spec: dict = field(default_factory=dict)


def _toml_error(exc, source):
    line = getattr(exc, "lineno", None)
    column = getattr(exc, "colno", None)
    msg = getattr(exc, "msg", str(exc))
    if line is None:
        import re
        m = re.search(r"\(at line (\d+), column (\d+)\)", str(exc))
        if m:
            line, column = int(m.group(1)), int(m.group(2))
            msg = str(exc)[:m.start()].strip()
    return ManifoldFileError(msg, source, line, column)


def declare_as_needed(spec, text):
    """Parse ``text``, declaring unknown names as constants."""
    for _ in range(64):
        try:
            return parse_expr(text, spec)
        except UndeclaredSymbolError as exc:
            spec.add_constant(exc.name)
    raise ValueError(f"too many undeclared names in {text!r}")


class _Reader:
    def __init__(self, doc, source):
        self.doc = doc
        self.source = source

    def fail(self, message, section):
        raise ManifoldFileError(message, self.source, section=section)

    def section(self, name, required=False):
        value = self.doc.get(name)
        if value is None:
            if required:
                self.fail("missing section", name)
            return {}
        if not isinstance(value, dict):
            self.fail("must be a table", name)
        return value

    def expr(self, value, spec, where):
        if isinstance(value, bool):
            self.fail("expected an expression", where)
        if isinstance(value, (int, float)):
            if isinstance(value, float) and not value.is_integer():
                return as_expr(Fraction(value).limit_denominator())
            return as_expr(int(value))
        if not isinstance(value, str):
            self.fail("expected an expression string", where)
        try:
            return parse_expr(value, spec)
        except ExprSyntaxError as exc:
            raise ManifoldFileError(f"{exc}", self.source, section=where) from None
        except UndeclaredSymbolError as exc:
            raise ManifoldFileError(f"undeclared symbol {exc.name!r}", self.source,
                                    section=where) from None

    def vector(self, value, spec, n, where):
        if not isinstance(value, list) or len(value) != n:
            self.fail(f"expected a list of {n} components", where)
        return [self.expr(v, spec, f"{where}[{i}]") for i, v in enumerate(value)]

    def matrix(self, value, spec, n, where):
        if not isinstance(value, list) or len(value) != n:
            self.fail(f"expected {n} rows", where)
        return [self.vector(row, spec, n, f"{where}[{i}]") for i, row in enumerate(value)]


def loads(text, source="<input>"):
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise _toml_error(exc, source) from None
    return _build(doc, source)


def load(path):
    """Load a file path or a ``builtin:<name>[?u=<rational>]`` URI."""
    path = str(path)
    if path.startswith("builtin:"):
        return load_builtin(path)
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifoldFileError(f"cannot read file: {exc.strerror}", path) from None
    return loads(text, path)


def load_builtin(uri):
    name, _, query = uri[len("builtin:"):].partition("?")
    params = {}
    for key, value in parse_qsl(query, keep_blank_values=True):
        try:
            params[key] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ManifoldFileError(f"parameter {key} must be rational, got {value!r}",
                                    uri) from None
    try:
        model, structure = builtin(name, **params)
    except (KeyError, ValueError) as exc:
        raise ManifoldFileError(str(exc), uri) from None
    return Loaded(model, structure, source=uri)


def _build(doc, source):
    rd = _Reader(doc, source)
    man = rd.section("manifold", required=True)
    mode = man.get("mode", "chart")
    basis = man.get("basis")
    if not isinstance(basis, list) or not basis or not all(isinstance(b, str) for b in basis):
        rd.fail("basis must be a nonempty list of labels", "manifold.basis")
    if "dimension" in man and man["dimension"] != len(basis):
        rd.fail(f"dimension {man['dimension']} does not match {len(basis)} basis labels",
                "manifold.dimension")
    n = len(basis)
    try:
        spec = DerivationSpec(basis)
    except ValueError as exc:
        rd.fail(str(exc), "manifold.basis")
    if mode == "chart":
        for i, label in enumerate(basis):
            spec.add_coordinate(label, i)

    rules = {}
    for name, kind in rd.section("symbols").items():
        where = f"symbols.{name}"
        try:
            if isinstance(kind, dict):
                missing = [b for b in basis if b not in kind]
                if missing or len(kind) != n:
                    rd.fail(f"rule needs one derivative per basis label {basis}", where)
                rules[name] = [kind[b] for b in basis]
            elif kind == "constant":
                spec.add_constant(name)
            elif kind == "free":
                spec.add_free_function(name)
            elif isinstance(kind, str) and kind.replace(" ", "").startswith("exp("):
                continue
            else:
                rd.fail(f"unknown symbol kind {kind!r}", where)
        except ValueError as exc:
            if isinstance(exc, ManifoldFileError):
                raise
            rd.fail(str(exc), where)
    try:
        if rules:
            spec.add_rules(rules)
    except (ExprSyntaxError, UndeclaredSymbolError, ValueError) as exc:
        rd.fail(str(exc), "symbols")
    for name, kind in rd.section("symbols").items():
        if isinstance(kind, str) and kind.replace(" ", "").startswith("exp("):
            arg = kind.strip()[4:-1] if kind.strip().endswith(")") else None
            if arg is None:
                rd.fail("malformed exp(...)", f"symbols.{name}")
            try:
                spec.add_exp_generator(name, arg)
            except (ExprSyntaxError, UndeclaredSymbolError, ValueError) as exc:
                rd.fail(str(exc), f"symbols.{name}")

    metric = rd.matrix(rd.section("metric", required=True).get("rows"), spec, n, "metric.rows")
    brackets = []
    for idx, entry in enumerate(rd.section("brackets").get("entries", [])):
        where = f"brackets.entries[{idx}]"
        if (not isinstance(entry, list) or len(entry) != 4
                or not all(isinstance(v, int) and 1 <= v <= n for v in entry[:3])):
            rd.fail(f"expected [i, j, k, coeff] with 1 <= i, j, k <= {n}", where)
        i, j, k = (v - 1 for v in entry[:3])
        brackets.append((i, j, k, rd.expr(entry[3], spec, where)))
    if brackets and mode != "frame":
        rd.fail("brackets need mode = \"frame\"", "brackets")
    try:
        model = ManifoldModel(basis, metric, spec=spec, mode=mode, brackets=brackets,
                              name=man.get("name", "model"))
    except ModelError as exc:
        raise ManifoldFileError(str(exc), source, section=exc.section) from None

    loaded = Loaded(model, source=source)
    st = rd.section("structure")
    if st:
        phi = TensorField(model, (1, 1), rd.matrix(st.get("phi"), spec, n, "structure.phi"))
        xi = model.vector(rd.vector(st.get("xi"), spec, n, "structure.xi"))
        eta = model.covector(rd.vector(st.get("eta"), spec, n, "structure.eta"))
        try:
            loaded.structure = ParacontactStructure(
                model, phi, xi, eta, diagnostic=bool(st.get("diagnostic", False)))
        except StructureError as exc:
            rd.fail(f"{exc} (set diagnostic = true to load anyway)", "structure")

    for name, value in rd.section("fields").items():
        where = f"fields.{name}"
        if isinstance(value, list):
            loaded.fields[name] = model.vector(rd.vector(value, spec, n, where))
        else:
            loaded.fields[name] = rd.expr(value, spec, where)

    sol = rd.section("soliton")
    if sol:
        loaded.soliton_spec = {k: str(v) for k, v in sol.items()}
        try:
            loaded.soliton = soliton_data(loaded, sol.get("potential", "xi"),
                                          sol.get("lambda"), sol.get("delta", "1"))
        except (ValueError, KeyError) as exc:
            raise ManifoldFileError(str(exc), source, section="soliton") from None
    return loaded


def soliton_data(loaded, potential, lam, delta):
    """Resolve ``potential`` (``xi``, a field name, or ``grad:<fn>``) into :class:`SolitonData`."""
    model = loaded.model
    spec = model.spec

    def scalar(v):
        return None if v is None else declare_as_needed(spec, str(v))

    potential = str(potential)
    if potential.startswith("grad:"):
        fn = potential[len("grad:"):]
        value = loaded.fields.get(fn)
        if value is None:
            u = scalar(fn)
        elif isinstance(value, Expr):
            u = value
        else:
            raise SolitonDataError(f"field {fn!r} is a vector field, not a function")
        return SolitonData(u=u, lam=scalar(lam), delta=scalar(delta))
    if potential == "xi":
        if loaded.structure is None:
            raise SolitonDataError("potential xi needs a [structure] section")
        Z = loaded.structure.xi
    else:
        Z = loaded.fields.get(potential)
        if Z is None and potential in model.labels:
            Z = model.basis_vector(model.labels.index(potential))
        if not isinstance(Z, TensorField):
            raise SolitonDataError(f"unknown vector field {potential!r}")
    return SolitonData(Z=Z, lam=scalar(lam), delta=scalar(delta))


def _toml_str(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _toml_list(items):
    return "[" + ", ".join(items) + "]"


def dumps(loaded):
    """Canonical TOML text; :func:`loads` of it rebuilds an identical model."""
    model = loaded.model
    spec = model.spec
    n = model.dimension
    out = ["[manifold]",
           f"name = {_toml_str(model.name)}",
           f"dimension = {n}",
           f"mode = {_toml_str(model.mode)}",
           f"basis = {_toml_list(_toml_str(b) for b in model.labels)}",
           ""]
    sym = []
    for name, kind in sorted(spec.symbols.items()):
        if kind == "coordinate":
            if model.mode == "chart" and name in model.labels:
                continue
            raise ValueError("extra coordinates are not representable")
        if kind in ("constant", "free"):
            sym.append(f"{name} = {_toml_str(kind)}")
        else:
            derivs = ", ".join(f"{b} = {_toml_str(str(d))}"
                               for b, d in zip(model.labels, spec.rule(name)))
            sym.append(f"{name} = {{ {derivs} }}")
    for name, value in sorted(spec.aliases.items()):
        sym.append(f"{name} = {_toml_str(str(value))}")
    if sym:
        out += ["[symbols]"] + sym + [""]

    def row(v):
        return _toml_list(_toml_str(str(v[i])) for i in range(n))
    g = model.metric
    out += ["[metric]", "rows = [",
            *(f"  {_toml_list(_toml_str(str(g[i, j])) for j in range(n))}," for i in range(n)),
            "]", ""]
    c = model.structure
    entries = [f"  [{i + 1}, {j + 1}, {k + 1}, {_toml_str(str(c[k, i, j]))}],"
               for i in range(n) for j in range(i + 1, n) for k in range(n)
               if not c[k, i, j].is_zero()]
    if entries:
        out += ["[brackets]", "entries = [", *entries, "]", ""]
    s = loaded.structure
    if s is not None:
        out += ["[structure]", "phi = [",
                *(f"  {_toml_list(_toml_str(str(s.phi[a, b])) for b in range(n))}," for a in range(n)),
                "]", f"xi = {row(s.xi)}", f"eta = {row(s.eta)}",
                f"diagnostic = {'true' if s.diagnostic else 'false'}", ""]
    if loaded.fields:
        out.append("[fields]")
        for name, value in sorted(loaded.fields.items()):
            out.append(f"{name} = {row(value) if isinstance(value, TensorField) else _toml_str(str(value))}")
        out.append("")
    if loaded.soliton_spec:
        out.append("[soliton]")
        out += [f"{k} = {_toml_str(v)}" for k, v in sorted(loaded.soliton_spec.items())]
        out.append("")
    return "\n".join(out)


def _same_tensor(model, A, B):
    return (A - TensorField(model, A.valence, B.components)).is_zero()


def same_model(a, b):
    """Componentwise normal-form equality of metric, brackets and structure.

    Accepts two models or two :class:`Loaded` results.
    """
    sa = sb = None
    if isinstance(a, Loaded):
        a, sa, b, sb = a.model, a.structure, b.model, b.structure
    if a.labels != b.labels or a.mode != b.mode:
        return False
    if not (_same_tensor(a, a.metric, b.metric) and _same_tensor(a, a.structure, b.structure)):
        return False
    if (sa is None) != (sb is None):
        return False
    if sa is None:
        return True
    return sa.diagnostic == sb.diagnostic and all(
        _same_tensor(a, getattr(sa, t), getattr(sb, t)) for t in ("phi", "xi", "eta"))


__all__ = ["Loaded", "ManifoldFileError", "declare_as_needed", "dumps", "load", "load_builtin",
           "loads", "same_model", "soliton_data"]
