"""Report documents and their text/JSON renderings.

JSON schema (all keys always present, keys sorted)::

    {
      "command":        [argv tokens after the program name],
      "engine_version": "x.y.z",
      "input":          source path / builtin URI or null,
      "status":         "pass" | "fail",
      "derived":        {name: string | bool | nested lists/dicts of strings},
      "checks":         [{"identity", "status", "residuals", "derived", "failures", "note"}],
      "warnings":       [{"id", "message", "witness"}]
    }

Expressions are printed in the canonical normal form, so identical inputs
yield byte-identical documents.
"""

import json
from dataclasses import dataclass, field

from .. import __version__
from ..checks import render_value


@dataclass
class ReportDocument:
    command: list
    input: str = None
    checks: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def warn(self, ident, message, witness=""):
        self.warnings.append({"id": ident, "message": message, "witness": str(witness)})

    @property
    def ok(self):
        return all(c.acceptable for c in self.checks)

    @property
    def exit_status(self):
        return 0 if self.ok else 1

    def finalize(self):
        for c in self.checks:
            if c.status == "hypothesis_not_satisfied":
                entry = {"id": c.identity, "message": f"hypothesis not satisfied: {c.note}",
                         "witness": ""}
                if entry not in self.warnings:
                    self.warnings.append(entry)
        return self

    def to_dict(self):
        return {
            "command": list(self.command),
            "engine_version": __version__,
            "input": self.input,
            "status": "pass" if self.ok else "fail",
            "derived": render_value(self.derived),
            "checks": [c.to_dict() for c in self.checks],
            "warnings": list(self.warnings),
        }


def emit(report, fmt="text"):
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return _text(report.to_dict())


def _text_value(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text_value(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [pad + "[" + ", ".join(_scalar(v) for v in value) + "]"]
        lines = []
        for v in value:
            lines += _text_value(v, indent)
        return lines
    return [pad + _scalar(value)]


def _scalar(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _text(doc):
    lines = [f"paracontact {doc['engine_version']}: {' '.join(doc['command'])}"]
    if doc["input"]:
        lines.append(f"input: {doc['input']}")
    if doc["derived"]:
        lines.append("derived:")
        lines += _text_value(doc["derived"], 1)
    for c in doc["checks"]:
        mark = {"pass": "PASS", "fail": "FAIL"}.get(c["status"], "VACUOUS")
        lines.append(f"[{mark}] {c['identity']}" + (f"  ({c['note']})" if c["note"] else ""))
        for name, value in c["derived"].items():
            if isinstance(value, (dict, list)):
                continue
            lines.append(f"    {name} = {_scalar(value)}")
        for f in c["failures"]:
            lines.append(f"    residual {f['residual']} at {f['index']}: {f['witness']}")
    for w in doc["warnings"]:
        tail = f" (witness: {w['witness']})" if w["witness"] else ""
        lines.append(f"warning: {w['id']}: {w['message']}{tail}")
    lines.append(f"status: {doc['status']}")
    return "\n".join(lines) + "\n"


__all__ = ["ReportDocument", "emit"]
