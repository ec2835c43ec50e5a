"""Check results and their human and machine renderings."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly
from .expr import render_poly
from .scalar import CycScalar
from .expr import render_scalar
from .tensor import TensorPoly

__all__ = ["Check", "Report", "render_residual"]

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


def render_residual(r) -> str:
    if r is None:
        return ""
    if isinstance(r, Poly):
        return render_poly(r)
    if isinstance(r, TensorPoly):
        return r.render()
    if isinstance(r, CycScalar):
        return render_scalar(r)
    return str(r)


@dataclass
class Check:
    suite: str
    name: str
    status: str
    residual: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, suite: str, name: str, ok: bool, residual=None) -> Check:
        c = Check(suite, name, PASS if ok else FAIL, "" if ok else render_residual(residual))
        self.checks.append(c)
        return c

    def zero(self, suite: str, name: str, residual) -> Check:
        """Pass iff ``residual`` is zero (empty Poly/TensorPoly, zero scalar, 0, empty list)."""
        ok = not residual
        return self.add(suite, name, ok, residual)

    def info(self, suite: str, name: str, value) -> Check:
        c = Check(suite, name, INFO, render_residual(value))
        self.checks.append(c)
        return c

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INFO: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def suite(self, name: str) -> "Report":
        return Report([c for c in self.checks if c.suite == name])

    def machine(self) -> str:
        lines = []
        for c in self.checks:
            name = " ".join(c.name.split())
            res = " ".join(c.residual.split())
            lines.append("\t".join([c.suite, name, c.status] + ([res] if res else [])))
        return "\n".join(lines) + ("\n" if lines else "")

    def human(self) -> str:
        lines = []
        current = None
        for c in self.checks:
            if c.suite != current:
                current = c.suite
                lines.append(f"== {current}")
            lines.append(f"  {c.status}  {c.name}")
            if c.residual:
                for part in c.residual.splitlines():
                    lines.append(f"        {part}")
        n = self.counts()
        lines.append(f"{n[PASS]} passed, {n[FAIL]} failed, {n[INFO]} informational")
        return "\n".join(lines) + "\n"
