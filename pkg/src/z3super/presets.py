"""Shipped presentations.

Each preset is a list of graded generators plus oriented relations written
in the expression grammar.  Normal words put lower-ranked symbols to the
left; the global order is

    d2x < d2y < d2th < dx < dy < dth < wx < wy < wth < xinv < x < y < th
        < px < py < pth < Tx < Ty < Tth

Rules involving ``xinv`` are never written by hand: they are obtained by
conjugating the rules that involve ``x`` (see :func:`inverse_rules`).
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Generator, Poly, RewriteRule, RuleSet
from .expr import parse, evaluate
from .scalar import q_pow

__all__ = ["get_preset", "PRESET_NAMES", "inverse_rules", "BRACKET_EXPONENT", "GENERATORS"]

# name: (grade, rank, nilpotency, weight)
GENERATORS = {
    "d2x": (2, 0, None, 3),
    "d2y": (0, 1, None, 3),
    "d2th": (1, 2, None, 5),
    "dx": (1, 3, 3, 1),
    "dy": (2, 4, 3, 1),
    "dth": (0, 5, None, 3),
    "wx": (1, 6, 3, 1),
    "wy": (2, 7, 3, 1),
    "wth": (0, 8, None, 1),
    "xinv": (0, 9, None, 1),
    "x": (0, 10, None, 1),
    "y": (1, 11, 3, 1),
    "th": (2, 12, 3, 1),
    "px": (0, 13, None, 3),
    "py": (2, 14, 3, 3),
    "pth": (1, 15, 3, 1),
    "Tx": (0, 16, None, 1),
    "Ty": (2, 17, 3, 1),
    "Tth": (1, 18, 3, 1),
    # dual Hopf algebra; K stands for the grouplike q^{2X}
    "Th": (1, 30, 3, 1),
    "Y": (2, 31, 3, 1),
    "X": (0, 32, None, 1),
    "K": (0, 33, None, 1),
    # quantum matrix entries
    "a": (0, 40, None, 1),
    "b": (0, 41, None, 1),
    "c": (0, 42, None, 1),
    "be1": (1, 43, None, 1),
    "be2": (1, 44, None, 1),
    "be3": (1, 45, None, 1),
    "ga1": (2, 46, None, 1),
    "ga2": (2, 47, None, 1),
    "ga3": (2, 48, None, 1),
}

COORDS = ("x", "y", "th")
FIRST = ("dx", "dy", "dth")
SECOND = ("d2x", "d2y", "d2th")
PARTIALS = ("px", "py", "pth")
FORMS = ("wx", "wy", "wth")
LIE = ("Tx", "Ty", "Tth")
DUAL = ("Th", "Y", "X", "K")
MATRIX = ("a", "b", "c", "be1", "be2", "be3", "ga1", "ga2", "ga3")

# [A, B]_q = A B - q^e B A; constant exponent found by search against the
# differential-operator realization of Tx, Ty, Tth.
BRACKET_EXPONENT = 1

RELATIONS = {
    "superspace": [
        "y*x -> q^2*x*y",
        "th*x -> q^2*x*th",
        "th*y -> q*y*th",
    ],
    "dual-superspace": [
        "dy*dx -> q*dx*dy",
        "dth*dx -> dx*dth",
        "dth*dy -> dy*dth",
    ],
    "coord-dx": [
        "x*dx -> q*dx*x",
        "x*dy -> q^2*dy*x",
        "x*dth -> q*dth*x + (q - 1)*dx*th",
        "y*dy -> dy*y",
        "y*dx -> q*dx*y + (1 - q^2)*dy*x",
        "y*dth -> q*dth*y + (1 - q^2)*dy*th",
        "th*dx -> q*dx*th",
        "th*dy -> dy*th",
        "th*dth -> q^2*dth*th",
    ],
    "dx-dx": [
        "dy*dx -> q*dx*dy",
        "dth*dx -> dx*dth",
        "dth*dy -> dy*dth",
    ],
    "coord-d2x": [
        "x*d2x -> q*d2x*x + (q^2 - 1)*dx*dx",
        "x*d2y -> q^2*d2y*x + (q^2 - 1)*dx*dy",
        "x*d2th -> q*d2th*x + (q - 1)*d2x*th + (q^2 - 1)*dx*dth",
        "y*d2x -> d2x*y + (q^2 - q)*d2y*x + (q - q^2)*dy*dx",
        "y*d2y -> q^2*d2y*y + (q - q^2)*dy*dy",
        "y*d2th -> d2th*y + (q^2 - q)*d2y*th + (q - q^2)*dy*dth",
        "th*d2x -> q^2*d2x*th + (1 - q)*dth*dx",
        "th*d2y -> q*d2y*th + (1 - q)*dth*dy",
        "th*d2th -> d2th*th + (1 - q)*dth*dth",
    ],
    "dx-d2x": [
        "dx*d2x -> q*d2x*dx",
        "dx*d2y -> q*d2y*dx + (q - q^2)*d2x*dy",
        "dx*d2th -> q*d2th*dx",
        "dy*d2x -> q*d2x*dy",
        "dy*d2y -> d2y*dy",
        "dy*d2th -> d2th*dy",
        "dth*d2x -> d2x*dth + (q^2 - 1)*d2th*dx",
        "dth*d2th -> q^2*d2th*dth",
        "dth*d2y -> d2y*dth + (q^2 - 1)*d2th*dy",
    ],
    "d2x-d2x": [
        "d2y*d2x -> d2x*d2y",
        "d2th*d2y -> q^2*d2y*d2th",
        "d2th*d2x -> q*d2x*d2th",
    ],
    "forms-coord": [
        "x*wx -> q*wx*x",
        "x*wy -> q^2*wy*x",
        "x*wth -> q*wth*x",
        "y*wx -> q^2*wx*y + (q - 1)*wy*x",
        "y*wy -> q*wy*y",
        "y*wth -> wth*y",
        "th*wx -> q^2*wx*th",
        "th*wy -> q*wy*th",
        "th*wth -> q*wth*th",
    ],
    "forms": [
        "wy*wx -> q^2*wx*wy",
        "wth*wy -> wy*wth",
        "wth*wx -> q^2*wx*wth",
    ],
    "partial-coord": [
        "px*x -> 1 + q*x*px + (q - 1)*th*pth",
        "px*y -> q^2*y*px",
        "px*th -> th*px",
        "py*x -> q^2*x*py",
        "py*th -> q^2*th*py",
        "py*y -> 1 + q*y*py + (q - 1)*(x*px + th*pth)",
        "pth*x -> q*x*pth",
        "pth*y -> q^2*y*pth",
        "pth*th -> 1 + q*th*pth",
    ],
    "partial-partial": [
        "py*px -> q*px*py",
        "pth*py -> q^2*py*pth",
        "pth*px -> px*pth",
    ],
    "partial-dx": [
        "px*dx -> q^2*dx*px + (q^2 - 1)*dy*py",
        "px*dy -> q*dy*px",
        "px*dth -> q^2*dth*px",
        "py*dx -> q^2*dx*py",
        "py*dy -> dy*py",
        "py*dth -> q^2*dth*py",
        "pth*dx -> q^2*dx*pth",
        "pth*dy -> dy*pth",
        "pth*dth -> q*dth*pth + (q - q^2)*(dx*px + dy*py)",
    ],
    "partial-d2x": [
        "px*d2x -> q^2*d2x*px + (q^2 - 1)*d2y*py",
        "px*d2y -> q*d2y*px",
        "px*d2th -> q^2*d2th*px",
        "py*d2x -> d2x*py",
        "py*d2y -> q*d2y*py",
        "py*d2th -> d2th*py",
        "pth*d2x -> q^2*d2x*pth",
        "pth*d2y -> q^2*d2y*pth",
        "pth*d2th -> q^2*d2th*pth + (q^2 - q)*d2x*px",
    ],
    # Tth*y uses q (not q^2): the value forced by the differential-operator
    # realization and by consistency with y*xinv = q*xinv*y.
    "lie-coord": [
        "Tx*x -> q*x + q*x*Tx",
        "Tx*y -> y*Tx",
        "Tx*th -> q*th + q*th*Tx",
        "Ty*x -> q^2*x*Ty",
        "Ty*y -> q^2*x + q^2*y*Ty + (q^2 - q)*x*Tx",
        "Ty*th -> th*Ty",
        "Tth*x -> q*x*Tth",
        "Tth*y -> q*y*Tth",
        "Tth*th -> q^2*xinv + th*Tth",
    ],
    "dual-algebra": [
        "Y*Th -> Th*Y",
        "X*Y -> Y*X + Y",
        "X*Th -> Th*X - 2*Th",
        "K*Th -> q^2*Th*K",
        "K*Y -> q^2*Y*K",
        "K*X -> X*K",
        "K^3 -> 1",
    ],
}


def lie_bracket_rules(e: int = BRACKET_EXPONENT) -> list:
    """Bracket relations oriented as rewrite rules for exponent ``e``."""
    s = q_pow(-e)
    out = []
    for lhs, rhs in (
        (("Ty", "Tx"), Poly.word("Tx", "Ty") - q_pow(1) * Poly.word("Ty")),
        (("Tth", "Tx"), Poly.word("Tx", "Tth") - q_pow(1) * Poly.word("Tth")),
        (("Tth", "Ty"), Poly.word("Ty", "Tth")),
    ):
        out.append(RewriteRule(lhs, s * rhs, origin="lie-bracket"))
    return out


PRESET_CONTENT = {
    "superspace": (COORDS, ["superspace"], False),
    "extended": (COORDS + ("xinv",), ["superspace"], True),
    "dual-superspace": (FIRST, ["dual-superspace"], False),
    "differential-algebra": (
        COORDS + ("xinv",) + FIRST + SECOND,
        ["superspace", "coord-dx", "dx-dx", "coord-d2x", "dx-d2x", "d2x-d2x"],
        True,
    ),
    "weyl": (COORDS + ("xinv",) + PARTIALS, ["superspace", "partial-coord", "partial-partial"], True),
    "weyl-differential": (
        COORDS + FIRST + SECOND + PARTIALS,
        [
            "superspace",
            "coord-dx",
            "dx-dx",
            "coord-d2x",
            "dx-d2x",
            "d2x-d2x",
            "partial-coord",
            "partial-partial",
            "partial-dx",
            "partial-d2x",
        ],
        False,
    ),
    "forms": (COORDS + FORMS, ["superspace", "forms-coord", "forms"], False),
    "lie": (COORDS + ("xinv",) + LIE, ["superspace", "lie-coord", "lie-bracket"], True),
    "dual-hopf": (DUAL, ["dual-algebra"], False),
    "glq-free": (MATRIX, [], False),
}

PRESET_NAMES = tuple(PRESET_CONTENT)

DESCRIPTIONS = {
    "superspace": "function algebra of the Z3-graded quantum superspace",
    "extended": "superspace extended by the inverse of x (the Hopf algebra)",
    "dual-superspace": "dual quantum superspace on dx, dy, dth",
    "differential-algebra": "coordinates, x^-1, first and second differentials",
    "weyl": "quantum Weyl superalgebra with x^-1",
    "weyl-differential": "Weyl superalgebra together with first and second differentials",
    "forms": "coordinates and left-invariant one-forms",
    "lie": "coordinates, x^-1 and the quantum Lie superalgebra generators",
    "dual-hopf": "dual Hopf algebra generated by X, Y, Th and K = q^{2X}",
    "glq-free": "free algebra on the quantum matrix entries",
}


def make_generators(names) -> list:
    out = []
    for n in names:
        grade, rank, nil, weight = GENERATORS[n]
        out.append(Generator(n, grade, rank, nil, weight))
    return out


def parse_rule(text: str, origin: str, derived: bool = False) -> RewriteRule:
    lhs_text, rhs_text = text.split("->")
    lhs = evaluate(parse(lhs_text))
    if len(lhs.terms) != 1:
        raise ValueError(f"left-hand side of {text!r} must be a single word")
    ((word, coeff),) = lhs.terms.items()
    rhs = evaluate(parse(rhs_text))
    return RewriteRule(word, (1 / coeff) * rhs if coeff != 1 else rhs, origin, derived)


def inverse_rules(rules, generators, x: str = "x", xinv: str = "xinv") -> list:
    """Commutation rules of ``xinv`` obtained by conjugating those of ``x``.

    From ``x g -> c g x + S`` one gets ``xinv g -> c^-1 g xinv - c^-1 xinv S xinv``;
    from ``g x -> c x g + S`` one gets ``g xinv -> c^-1 xinv g - c^-1 xinv S xinv``.
    """
    out = [
        RewriteRule((x, xinv), Poly.one(), "inverse", True),
        RewriteRule((xinv, x), Poly.one(), "inverse", True),
    ]
    X = Poly.word(xinv)
    for r in rules:
        if len(r.lhs) != 2 or xinv in r.lhs:
            continue
        u, v = r.lhs
        if u == x and v != x:
            lead = (v, x)
            new_lhs = (xinv, v)
        elif v == x and u != x:
            lead = (x, u)
            new_lhs = (u, xinv)
        else:
            continue
        c = r.rhs.coeff(lead)
        if not c:
            raise ValueError(f"rule {r.lhs} has no leading term {lead}; cannot conjugate")
        rest = r.rhs - Poly.word(*lead, coeff=c)
        swapped = Poly.word(*reversed(new_lhs))
        rhs = (1 / c) * swapped - (1 / c) * (X * rest * X)
        out.append(RewriteRule(new_lhs, rhs, "inverse", True))
    return out


def build_preset(name: str) -> RuleSet:
    names, groups, with_inverse = PRESET_CONTENT[name]
    gens = make_generators(names)
    rules = []
    for g in groups:
        if g == "lie-bracket":
            rules.extend(lie_bracket_rules())
        else:
            rules.extend(parse_rule(t, g) for t in RELATIONS[g])
    if with_inverse:
        raw = inverse_rules(rules, gens)
        draft = RuleSet(name, gens, rules + raw)
        # store derived right-hand sides in normal form
        rules = rules + [
            RewriteRule(r.lhs, draft.normalize(r.rhs) if len(r.rhs) else r.rhs, r.origin, True)
            for r in raw
        ]
    return RuleSet(name, gens, rules, description=DESCRIPTIONS.get(name, ""))


@lru_cache(maxsize=None)
def get_preset(name: str) -> RuleSet:
    if name not in PRESET_CONTENT:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return build_preset(name)
