"""Structured results of identity and axiom checks."""

from dataclasses import dataclass, field

from .geometry.tensor import TensorField
from .symbolic import Expr

PASS = "pass"
FAIL = "fail"
VACUOUS = "hypothesis_not_satisfied"


def _nonzero(residual):
    if isinstance(residual, TensorField):
        return residual.nonzero()
    return [] if residual.is_zero() else [((), residual)]


def render_value(value):
    if isinstance(value, TensorField):
        return value.to_lists()
    if isinstance(value, Expr):
        return str(value)
    if isinstance(value, dict):
        return {k: render_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render_value(v) for v in value]
    return value


@dataclass
class CheckReport:
    """Outcome of one check.

    ``status`` is ``pass`` exactly when every residual normalizes to zero,
    ``fail`` otherwise, and ``hypothesis_not_satisfied`` when the check does
    not apply to its input (an implication with a false premise).
    """

    identity: str
    status: str
    residuals: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)
    note: str = ""

    @classmethod
    def from_residuals(cls, identity, residuals, derived=None, note=""):
        ok = all(not _nonzero(r) for r in residuals.values())
        return cls(identity, PASS if ok else FAIL, dict(residuals), dict(derived or {}), note)

    @classmethod
    def vacuous(cls, identity, note, derived=None):
        return cls(identity, VACUOUS, {}, dict(derived or {}), note)

    @property
    def passed(self):
        return self.status == PASS

    @property
    def acceptable(self):
        """Pass or vacuous: what a command's exit status counts as success."""
        return self.status != FAIL

    def failures(self):
        """``(residual name, component index, witness)`` for each nonzero component."""
        out = []
        for name, r in self.residuals.items():
            out.extend((name, idx, w) for idx, w in _nonzero(r))
        return out

    def to_dict(self):
        return {
            "identity": self.identity,
            "status": self.status,
            "residuals": {k: render_value(v) for k, v in self.residuals.items()},
            "derived": {k: render_value(v) for k, v in self.derived.items()},
            "failures": [{"residual": n, "index": list(i), "witness": str(w)}
                         for n, i, w in self.failures()],
            "note": self.note,
        }
