"""Exterior differential, partial derivatives, Cartan-Maurer forms and the
quantum Lie superalgebra, all acting on normal-form polynomials.

The differential ``d`` has grade one, ``d^3 = 0`` and obeys the graded
Leibniz rule ``d(ab) = d(a) b + q^{p(a)} a d(b)``.  Relations to be verified
are written as expression strings and reduced in the relevant preset.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .algebra import AlgebraError, Poly, RuleSet, UnknownGeneratorError
from .expr import parse_poly
from .presets import get_preset, make_generators, GENERATORS, COORDS, FIRST, SECOND, PARTIALS
from .scalar import ONE, ZERO, CycScalar, q_pow

__all__ = [
    "apply_d",
    "apply_d_times",
    "d_image",
    "check_d3",
    "check_leibniz",
    "check_d2_leibniz",
    "check_eq11",
    "leibniz_pairs",
    "partials",
    "weyl_action",
    "check_weyl_consistency",
    "cartan_maurer",
    "check_form_relations",
    "lie_generators",
    "BracketSpec",
    "SHIPPED_BRACKET",
    "bracket",
    "check_lie_brackets",
    "search_bracket_specs",
    "check_T_coordinate_action",
    "replay_derivation",
    "check_inverse_differential",
    "check_note4",
    "check_note6",
    "check_cm_inversion",
    "ResidualTermError",
]

DIFF = "differential-algebra"


class ResidualTermError(AlgebraError):
    """A normalized 1-form had a word without a leading first differential."""


def _P(text: str) -> Poly:
    return parse_poly(text)


def _grade(g: str) -> int:
    return GENERATORS[g][0]


def _word_grade(w) -> int:
    return sum(GENERATORS[g][0] for g in w) % 3


# -- the differential ---------------------------------------------------------

_STEP = dict(zip(COORDS + FIRST, FIRST + SECOND))


@lru_cache(maxsize=None)
def d_image(g: str) -> Poly:
    """Image of a single generator under d.

    d(xinv) follows from 0 = d(x xinv) = dx xinv + x d(xinv).
    """
    if g in _STEP:
        return Poly.word(_STEP[g])
    if g in SECOND:
        return Poly.zero()
    if g == "xinv":
        return get_preset(DIFF).normalize(-Poly.word("xinv", "dx", "xinv"))
    raise UnknownGeneratorError(f"d is not defined on {g!r}")


def _d_free(p: Poly) -> Poly:
    """Leibniz expansion in the free algebra, without any normalization."""
    out: dict = {}
    for w, c in p.terms.items():
        e = 0
        for k, g in enumerate(w):
            img = d_image(g)
            if img:
                s = c * q_pow(e)
                for wi, ci in img.terms.items():
                    key = w[:k] + wi + w[k + 1 :]
                    v = out.get(key, ZERO) + s * ci
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
            e += _grade(g)
    return Poly(out)


def apply_d(p: Poly, rules: RuleSet | None = None) -> Poly:
    """d(p), normalized.  The input is not normalized first, so d can be
    applied to a relation and the result reduced in a chosen presentation."""
    rules = rules or get_preset(DIFF)
    rules.check_symbols(p)
    return rules.normalize(_d_free(p))


def apply_d_times(p: Poly, n: int, rules: RuleSet | None = None) -> Poly:
    for _ in range(n):
        p = apply_d(p, rules)
    return p


def check_d3(max_degree: int = 6, random_polys: int = 200, seed: int = 0) -> list:
    """Inputs (basis words, then random polynomials) with d^3 != 0."""
    R = get_preset(DIFF)
    bad = []
    for w in R.basis(max_degree):
        if apply_d_times(Poly.word(*w), 3):
            bad.append(Poly.word(*w))
    names = list(R.generators)
    rng = random.Random(seed)
    for _ in range(random_polys):
        p = Poly.zero()
        for _ in range(rng.randint(1, 4)):
            w = tuple(rng.choice(names) for _ in range(rng.randint(0, 4)))
            c = CycScalar(rng.randint(-3, 3), rng.randint(-3, 3))
            p = p + Poly.word(*w, coeff=c)
        if apply_d_times(p, 3):
            bad.append(p)
    return bad


# -- Leibniz identities --------------------------------------------------------


def _homogeneous_grade(p: Poly) -> int:
    return get_preset(DIFF).grade_of(p)


def check_leibniz(a: Poly, b: Poly) -> Poly:
    """Residual of d(ab) = d(a) b + q^{p(a)} a d(b)."""
    R = get_preset(DIFF)
    pa = _homogeneous_grade(a)
    lhs = apply_d(a * b)
    rhs = apply_d(a) * b + q_pow(pa) * (a * apply_d(b))
    return R.normalize(lhs - rhs)


def check_d2_leibniz(a: Poly, b: Poly) -> Poly:
    """Residual of d^2(ab) = d^2a b + (q^{p(a)} + q^{p(a)+1}) da db + q^{2p(a)} a d^2b."""
    R = get_preset(DIFF)
    pa = _homogeneous_grade(a)
    lhs = apply_d_times(a * b, 2)
    da, db = apply_d(a), apply_d(b)
    rhs = (
        apply_d(da) * b
        + (q_pow(pa) + q_pow(pa + 1)) * (da * db)
        + q_pow(2 * pa) * (a * apply_d(db))
    )
    return R.normalize(lhs - rhs)


def check_eq11(a: Poly, b: Poly) -> Poly:
    """Residual of d(a db) = da db + q^{p(a)} a d^2b."""
    R = get_preset(DIFF)
    pa = _homogeneous_grade(a)
    db = apply_d(b)
    lhs = apply_d(a * db)
    rhs = apply_d(a) * db + q_pow(pa) * (a * apply_d(db))
    return R.normalize(lhs - rhs)


def leibniz_pairs(max_degree: int = 3, symbols=None):
    """Monomial pairs (a, b) of the differential algebra with deg a + deg b <= max_degree."""
    R = get_preset(DIFF)
    words = R.basis(max_degree, symbols)
    for u in words:
        for v in words:
            if len(u) + len(v) <= max_degree:
                yield Poly.word(*u), Poly.word(*v)


# -- partial derivatives -------------------------------------------------------


def partials(p: Poly) -> tuple:
    """(d_x p, d_y p, d_th p) read off from d(p) = dx d_x p + dy d_y p + dth d_th p."""
    R = get_preset(DIFF)
    for s in p.symbols():
        if s not in COORDS and s != "xinv":
            raise UnknownGeneratorError(f"partials needs a coordinate polynomial, got {s!r}")
    dp = apply_d(p)
    out = {g: {} for g in FIRST}
    for w, c in dp.terms.items():
        if not w or w[0] not in FIRST or any(s not in COORDS and s != "xinv" for s in w[1:]):
            raise ResidualTermError(f"word {w} of d(p) has no single leading differential")
        out[w[0]][w[1:]] = c
    return tuple(Poly(out[g]) for g in FIRST)


def weyl_action(i: str, m: Poly, rules: RuleSet | None = None) -> Poly:
    """Action of the partial ``i`` on m: derivative-free part of the normal form of i*m."""
    rules = rules or get_preset("weyl")
    nf = rules.normalize(Poly.word(i) * m)
    return nf.filter(lambda w: not any(g in PARTIALS for g in w))


@dataclass(frozen=True)
class WeylMismatch:
    monomial: tuple
    partial: str
    extracted: Poly
    rewritten: Poly


def check_weyl_consistency(max_degree: int = 4, include_inverse: bool = False) -> list:
    """Compare extraction from d with the Weyl rewrite on every coordinate monomial."""
    W = get_preset("weyl")
    syms = COORDS + (("xinv",) if include_inverse else ())
    bad = []
    for w in W.basis(max_degree, syms):
        m = Poly.word(*w)
        ext = partials(m)
        for i, e in zip(PARTIALS, ext):
            r = weyl_action(i, m, W)
            if W.normalize(e) != r:
                bad.append(WeylMismatch(w, i, e, r))
    return bad


# -- Cartan-Maurer forms ---------------------------------------------------------

_CM = {"x": "xinv*dx", "y": "xinv*dy", "th": "x*dth - th*dx"}


def cartan_maurer(a: str) -> Poly:
    if a not in _CM:
        raise ValueError(f"Cartan-Maurer forms exist for x, y, th; got {a!r}")
    return _P(_CM[a])


def _form_images() -> dict:
    w = {f"w{k}": cartan_maurer(a) for k, a in (("x", "x"), ("y", "y"), ("th", "th"))}
    imgs = dict(w)
    for k, v in w.items():
        imgs["d" + k] = apply_d(v)
        imgs["d2" + k] = apply_d(imgs["d" + k])
    return imgs


# Commutation of forms with coordinates, among themselves, with their
# differentials, and the d/d^2 displays; ``lhs = rhs`` with w*, dw* symbols.
FORM_RELATIONS = {
    "forms-coord": [
        "x*wx = q*wx*x",
        "x*wy = q^2*wy*x",
        "x*wth = q*wth*x",
        "y*wx = q^2*wx*y + (q - 1)*wy*x",
        "y*wy = q*wy*y",
        "y*wth = wth*y",
        "th*wx = q^2*wx*th",
        "th*wy = q*wy*th",
        "th*wth = q*wth*th",
    ],
    "forms": [
        "wx*wy = q*wy*wx",
        "wy*wth = wth*wy",
        "wth*wx = q^2*wx*wth",
        "wx*wx*wx = 0",
        "wy*wy*wy = 0",
    ],
    "forms-dforms": [
        "wx*dwx = q*dwx*wx",
        "wx*dwy = dwy*wx + (q - q^2)*(dwx + wx*wx)*wy",
        "wx*dwth = q^2*dwth*wx + (q - q^2)*(dwx - wx*wx)*wth",
        "wy*dwx = q^2*dwx*wy + (q^2 - 1)*wx*wx*wy",
        "wy*dwy = dwy*wy + (1 - q)*wx*wy*wy",
        "wy*dwth = dwth*wy + (1 - q^2)*wx*wy*wth",
        "wth*dwx = q*dwx*wth + (q^2 - 1)*(dwth - wx*wth)*wx",
        "wth*dwy = dwy*wth + (q^2 - q)*(q*dwth - wx*wth)*wy",
        "wth*dwth = q^2*dwth*wth",
    ],
    "dforms": [
        "dwx = xinv*d2x - wx*wx",
        "dwy = xinv*d2y - wx*wy",
        "dwth = x*d2th - q^2*th*d2x",
    ],
    "d2forms": [
        "d2wx = 0",
        "d2wy = q^2*dwy*wx - q*dwx*wy",
        "d2wth = q*dwth*wx - dwx*wth - q^2*wx*wx*wth",
    ],
    "inversion": [
        "dx = x*wx",
        "dy = x*wy",
        "dth = xinv*wth + q^2*th*wx",
    ],
}


def _relation_residual(text: str, images: dict) -> Poly:
    lhs, rhs = text.split("=")
    rel = _P(lhs) - _P(rhs)
    return get_preset(DIFF).normalize(rel.substitute(images))


def check_form_relations(groups=None) -> list:
    """(group, relation, residual) for every form relation; residuals should vanish."""
    images = _form_images()
    out = []
    for g, rels in FORM_RELATIONS.items():
        if groups is not None and g not in groups:
            continue
        for text in rels:
            out.append((g, text, _relation_residual(text, images)))
    return out


def check_cm_inversion() -> list:
    return check_form_relations(["inversion"])


# -- quantum Lie superalgebra --------------------------------------------------------

_LIE = {"Tx": "q*x*px + q*th*pth", "Ty": "q^2*x*py", "Tth": "q^2*xinv*pth"}
_LIE_GRADE = {"Tx": 0, "Ty": 2, "Tth": 1}


def lie_generators() -> tuple:
    """Realization of Tx, Ty, Tth as Weyl-algebra polynomials."""
    return tuple(_P(_LIE[t]) for t in ("Tx", "Ty", "Tth"))


def lie_images() -> dict:
    return dict(zip(("Tx", "Ty", "Tth"), lie_generators()))


@dataclass(frozen=True)
class BracketSpec:
    """[A, B]_q = A B - q^e B A with e = c0 + c1 p(A)p(B) + c2 p(A) + c3 p(B) mod 3."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    def exponent(self, pa: int, pb: int) -> int:
        return (self.c0 + self.c1 * pa * pb + self.c2 * pa + self.c3 * pb) % 3

    def __str__(self):
        parts = []
        for c, t in ((self.c0, ""), (self.c1, "p(A)p(B)"), (self.c2, "p(A)"), (self.c3, "p(B)")):
            if c:
                parts.append(f"{c}{'*' + t if t else ''}" if t else str(c))
        return "e = " + (" + ".join(parts) if parts else "0")


def _shipped() -> BracketSpec:
    from .presets import BRACKET_EXPONENT

    return BracketSpec(BRACKET_EXPONENT % 3)


SHIPPED_BRACKET = _shipped()


def bracket(a: Poly, b: Poly, pa: int, pb: int, spec: BracketSpec = SHIPPED_BRACKET) -> Poly:
    return a * b - q_pow(spec.exponent(pa, pb)) * (b * a)


def check_lie_brackets(spec: BracketSpec = SHIPPED_BRACKET, rules: RuleSet | None = None,
                       images: dict | None = None) -> list:
    """(label, residual) for the bracket relations and the cube relations."""
    rules = rules or get_preset("weyl")
    T = images or lie_images()
    g = _LIE_GRADE
    out = []
    for a, b, rhs in (("Tx", "Ty", q_pow(1) * T["Ty"]), ("Tx", "Tth", q_pow(1) * T["Tth"]),
                      ("Ty", "Tth", Poly.zero())):
        r = rules.normalize(bracket(T[a], T[b], g[a], g[b], spec) - rhs)
        label = f"[{a},{b}]_q = {'q*' + b if rhs else '0'}"
        out.append((label, r))
    out.append(("Ty^3 = 0", rules.normalize(T["Ty"] ** 3)))
    out.append(("Tth^3 = 0", rules.normalize(T["Tth"] ** 3)))
    return out


def search_bracket_specs(rules: RuleSet | None = None, images: dict | None = None) -> list:
    """All exponent rules e(A, B) of the affine family that make the brackets hold."""
    rules = rules or get_preset("weyl")
    T = images or lie_images()
    g = _LIE_GRADE
    pairs = (("Tx", "Ty", q_pow(1) * T["Ty"]), ("Tx", "Tth", q_pow(1) * T["Tth"]),
             ("Ty", "Tth", Poly.zero()))
    # the brackets only see e at three grade pairs; precompute per exponent value
    ok = {}
    for a, b, rhs in pairs:
        for e in range(3):
            r = rules.normalize(T[a] * T[b] - q_pow(e) * (T[b] * T[a]) - rhs)
            ok[(a, b, e)] = not r
    winners = []
    for c in product(range(3), repeat=4):
        spec = BracketSpec(*c)
        if all(ok[(a, b, spec.exponent(g[a], g[b]))] for a, b, _ in pairs):
            winners.append(spec)
    return winners


# Commutation of the Lie generators with the coordinates, as printed.
T_COORD_RELATIONS = [
    "Tx*x = q*x + q*x*Tx",
    "Tx*y = y*Tx",
    "Tx*th = q*th + q*th*Tx",
    "Ty*x = q^2*x*Ty",
    "Ty*y = q^2*x + q^2*y*Ty + (q^2 - q)*x*Tx",
    "Ty*th = th*Ty",
    "Tth*x = q*x*Tth",
    "Tth*y = q^2*y*Tth",
    "Tth*th = q^2*xinv + th*Tth",
]


def printed_tx_coefficient(k: int) -> CycScalar:
    """(1 - q^k) / (1 - q^2), evaluated exactly."""
    return (ONE - q_pow(k)) / (ONE - q_pow(2))


def tx_coefficient(k: int) -> CycScalar:
    """Scalar c_k with Tx x^k = c_k x^k + q^k x^k Tx in the realization, or None."""
    W = get_preset("weyl")
    T = lie_images()
    xk = Poly.word(*(("x",) * k))
    r = W.normalize(T["Tx"] * xk - q_pow(k) * (xk * T["Tx"]))
    if set(r.terms) - {("x",) * k}:
        return None
    return r.coeff(("x",) * k)


def check_T_coordinate_action(max_k: int = 6) -> list:
    """(label, residual) for the T-coordinate relations and the x^k formulas."""
    W = get_preset("weyl")
    T = lie_images()
    out = []
    for text in T_COORD_RELATIONS:
        lhs, rhs = text.split("=")
        rel = (_P(lhs) - _P(rhs)).substitute(T)
        out.append((text, W.normalize(rel)))
    for k in range(max_k + 1):
        xk = Poly.word(*(("x",) * k))
        r1 = T["Tx"] * xk - printed_tx_coefficient(k) * xk - q_pow(k) * (xk * T["Tx"])
        r2 = T["Ty"] * xk - q_pow(2 * k) * (xk * T["Ty"])
        r3 = T["Tth"] * xk - q_pow(k) * (xk * T["Tth"])
        out.append((f"Tx*x^{k} = (1-q^{k})/(1-q^2)*x^{k} + q^{k}*x^{k}*Tx", W.normalize(r1)))
        out.append((f"Ty*x^{k} = q^{2 * k}*x^{k}*Ty", W.normalize(r2)))
        out.append((f"Tth*x^{k} = q^{k}*x^{k}*Tth", W.normalize(r3)))
    return out


# -- derivation replays and notes -------------------------------------------------------


def _sub_preset(name: str, origins, names) -> RuleSet:
    base = get_preset(DIFF)
    rules = [r for r in base.rules if r.origin in origins and not r.origin.startswith("nilpotent")]
    return RuleSet(name, make_generators(names), rules)


def replay_derivation(source: str, target_origins) -> list:
    """Apply d to each relation of ``source`` and reduce with ``target_origins`` only.

    Returns (relation text, residual) pairs.
    """
    base = get_preset(DIFF)
    names = tuple(g for g in base.generators if g != "xinv")
    R = _sub_preset(f"replay-{source}", set(target_origins), names)
    out = []
    for r in base.rules_from(source):
        rel = r.relation()
        res = R.normalize(_d_free(rel))
        out.append((f"{_fmt_word(r.lhs)} -> {r.rhs!r}", res))
    return out


def _fmt_word(w) -> str:
    return "*".join(w)


def check_inverse_differential() -> list:
    R = get_preset(DIFF)
    return [
        ("d(x*xinv) = 0", apply_d(_P("x*xinv"))),
        ("d(xinv*x) = 0", apply_d(_P("xinv*x"))),
        ("d(xinv) = -xinv*dx*xinv", R.normalize(d_image("xinv") + _P("xinv*dx*xinv"))),
    ]


def check_note4() -> list:
    R = get_preset(DIFF)
    return [
        ("d(dx*dx) = -dx*d2x", R.normalize(apply_d(_P("dx*dx")) + _P("dx*d2x"))),
        ("d(dy*dy) = -q*dy*d2y", R.normalize(apply_d(_P("dy*dy")) + _P("q*dy*d2y"))),
    ]


_PGRADE = {"px": 0, "py": 2, "pth": 1}


def check_note6(max_degree: int = 4, second: bool = True) -> list:
    """Sample-wise operator identities p_i d = q^{2-p} d p_i (and p_i d^2 = q^{1+p} d^2 p_i).

    Both sides act on coordinate monomials; the left side is reduced with
    the partial/differential relations, the right side uses the Weyl action.
    """
    WD = get_preset("weyl-differential")
    W = get_preset("weyl")
    out = []
    for w in W.basis(max_degree, COORDS):
        m = Poly.word(*w)
        dm = apply_d(m)
        d2m = apply_d(dm)
        for i in PARTIALS:
            pm = weyl_action(i, m, W)
            lhs = weyl_action(i, dm, WD)
            rhs = q_pow(2 - _PGRADE[i]) * apply_d(pm)
            out.append(("first", w, i, WD.normalize(lhs - rhs)))
            if second:
                lhs2 = weyl_action(i, d2m, WD)
                rhs2 = q_pow(1 + _PGRADE[i]) * apply_d(apply_d(pm))
                out.append(("second", w, i, WD.normalize(lhs2 - rhs2)))
    return out
