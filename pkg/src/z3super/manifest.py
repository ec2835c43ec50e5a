"""Line-based ruleset manifest format.

::

    name superspace
    description commutation relations of the coordinates
    generator x grade=0 rank=10 nil=- weight=1
    rule [superspace] y*x -> q^2*x*y
    rule [inverse derived] xinv*y -> q*y*xinv

Blank lines and lines starting with ``#`` are ignored. Nilpotency rules are
implied by ``nil=`` and are not written as rules.
"""

from __future__ import annotations

import re
from pathlib import Path

from .algebra import Generator, RewriteRule, RuleSet
from .expr import parse_poly, render_poly, render_word

__all__ = ["ManifestError", "dumps", "loads", "export_preset", "load_manifest"]


class ManifestError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_RULE = re.compile(r"^\[(?P<tags>[^\]]*)\]\s*(?P<lhs>[^-]+?)\s*->\s*(?P<rhs>.+)$")


def dumps(rs: RuleSet) -> str:
    lines = ["# z3super ruleset manifest", f"name {rs.name}"]
    if rs.description:
        lines.append(f"description {rs.description}")
    for g in rs.generators.values():
        nil = "-" if g.nilpotency is None else str(g.nilpotency)
        lines.append(f"generator {g.name} grade={g.grade} rank={g.rank} nil={nil} weight={g.weight}")
    for r in rs.rules:
        if r.origin.startswith("nilpotent"):
            continue
        tags = (r.origin or "-") + (" derived" if r.derived else "")
        lines.append(f"rule [{tags}] {render_word(r.lhs)} -> {render_poly(r.rhs, rs)}")
    return "\n".join(lines) + "\n"


def _fields(rest: str, lineno: int) -> dict:
    out = {}
    for tok in rest.split():
        if "=" not in tok:
            raise ManifestError(f"expected key=value, got {tok!r}", lineno)
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def loads(text: str) -> RuleSet:
    name = None
    description = ""
    gens: list = []
    pending: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "name":
            name = rest.strip()
        elif head == "description":
            description = rest.strip()
        elif head == "generator":
            gname, _, tail = rest.strip().partition(" ")
            f = _fields(tail, lineno)
            try:
                nil = None if f.get("nil", "-") == "-" else int(f["nil"])
                gens.append(
                    Generator(gname, int(f["grade"]), int(f["rank"]), nil, int(f.get("weight", 1)))
                )
            except (KeyError, ValueError) as e:
                raise ManifestError(f"bad generator line ({e})", lineno) from None
        elif head == "rule":
            m = _RULE.match(rest.strip())
            if not m:
                raise ManifestError("expected 'rule [origin] LHS -> RHS'", lineno)
            pending.append((lineno, m))
        else:
            raise ManifestError(f"unknown directive {head!r}", lineno)
    if not name:
        raise ManifestError("missing 'name' line", 0)
    symbols = {g.name for g in gens}
    rules = []
    for lineno, m in pending:
        tags = m["tags"].split()
        derived = "derived" in tags
        origin = " ".join(t for t in tags if t != "derived")
        try:
            lhs = parse_poly(m["lhs"], symbols, name)
            rhs = parse_poly(m["rhs"], symbols, name)
        except (ValueError, KeyError) as e:
            raise ManifestError(str(e), lineno) from None
        if len(lhs.terms) != 1 or lhs.coeff(next(iter(lhs.terms))) != 1:
            raise ManifestError("left-hand side must be a single monic word", lineno)
        rules.append(RewriteRule(next(iter(lhs.terms)), rhs, "" if origin == "-" else origin, derived))
    try:
        return RuleSet(name, gens, rules, description=description)
    except ValueError as e:
        raise ManifestError(str(e), 0) from None


def export_preset(rs: RuleSet, path) -> None:
    Path(path).write_text(dumps(rs))


def load_manifest(path) -> RuleSet:
    return loads(Path(path).read_text())
