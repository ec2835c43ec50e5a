"""Hopf structure of the extended superspace, its left coaction on the
differential calculus, the dual Hopf algebra U_q and the pairing.

U_q is generated by X, Y, Th and the grouplike K standing for q^{2X}.  The
pairing forces K^3 = 1, so q^X = K^2 and q^{-X} = K.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .algebra import Poly, RuleSet, UnknownGeneratorError
from .expr import parse_poly
from .presets import get_preset, FIRST, SECOND, COORDS
from .scalar import ONE, ZERO, CycScalar, q_pow
from .tensor import TensorPoly, braided_mul, ArityError

__all__ = [
    "TensorPoly",
    "braided_mul",
    "ArityError",
    "coproduct",
    "counit",
    "antipode",
    "check_hopf_axioms",
    "check_hopf_morphisms",
    "coaction_L",
    "check_covariance",
    "dual_normalize",
    "dual_coproduct",
    "dual_counit",
    "dual_antipode",
    "pair",
    "pair_tensor",
    "check_duality",
    "check_dual_relations",
    "check_T_transform",
    "ANTIPODE_BRAIDED",
]

A_NAME = "extended"
U_NAME = "dual-hopf"

# k(ab) = q^{p(a)p(b)} k(b) k(a); the unbraided rule fails the antipode axiom
# on words such as y*y.
ANTIPODE_BRAIDED = True


def _A() -> RuleSet:
    return get_preset(A_NAME)


def _U() -> RuleSet:
    return get_preset(U_NAME)


def _P(text: str) -> Poly:
    return parse_poly(text)


def _check_in(p: Poly, rules: RuleSet, what: str):
    for s in p.symbols():
        if s not in rules:
            raise UnknownGeneratorError(f"{what} is defined on preset {rules.name!r}; {s!r} is not a generator")


# -- Hopf structure of A ---------------------------------------------------------

_DELTA = {
    "x": "x (x) x",
    "y": "y (x) 1 + x (x) y",
    "th": "th (x) x + xinv (x) th",
    "xinv": "xinv (x) xinv",
}


def _tensor(text: str, slots) -> TensorPoly:
    from .expr import parse, evaluate

    return evaluate(parse(text, tensor=True)).with_slots(slots)


@lru_cache(maxsize=None)
def _delta_gen(g: str) -> TensorPoly:
    A = _A()
    return _tensor(_DELTA[g], (A, A))


@lru_cache(maxsize=None)
def _delta_word(w: tuple) -> TensorPoly:
    A = _A()
    if not w:
        return TensorPoly.unit((A, A))
    if len(w) == 1:
        return _delta_gen(w[0])
    return braided_mul(_delta_word(w[:-1]), _delta_gen(w[-1]))


def _linear(p: Poly, fn, unit) -> TensorPoly:
    out = TensorPoly(unit.arity, {}, unit.slots)
    for w, c in p.terms.items():
        out = out + c * fn(w)
    return out


def coproduct(p: Poly) -> TensorPoly:
    """Delta(p), extended as an algebra map into the braided tensor square."""
    A = _A()
    _check_in(p, A, "the coproduct")
    return _linear(p, _delta_word, TensorPoly.unit((A, A)))


_EPS = {"x": ONE, "xinv": ONE, "y": ZERO, "th": ZERO}


def _counit_word(w) -> CycScalar:
    c = ONE
    for g in w:
        c = c * _EPS[g]
        if not c:
            return ZERO
    return c


def counit(p: Poly) -> CycScalar:
    _check_in(p, _A(), "the counit")
    out = ZERO
    for w, c in p.terms.items():
        out = out + c * _counit_word(w)
    return out


_KAPPA = {"x": "xinv", "xinv": "x", "y": "-xinv*y", "th": "-q*th"}


@lru_cache(maxsize=None)
def _kappa_gen(g: str) -> Poly:
    return _P(_KAPPA[g])


def _grades(rules: RuleSet, w):
    return [rules.grade(g) for g in w]


def _anti(w, images, rules, braided) -> Poly:
    out = Poly.one()
    for g in reversed(w):
        out = out * images(g)
    if braided:
        gs = _grades(rules, w)
        e = sum(gs[i] * gs[j] for i in range(len(gs)) for j in range(i + 1, len(gs)))
        out = q_pow(e) * out
    return rules.normalize(out)


def antipode(p: Poly, braided: bool | None = None) -> Poly:
    """kappa(p): anti-multiplicative extension of the generator images, normalized."""
    A = _A()
    _check_in(p, A, "the antipode")
    braided = ANTIPODE_BRAIDED if braided is None else braided
    out = Poly.zero()
    for w, c in p.terms.items():
        out = out + c * _anti(w, _kappa_gen, A, braided)
    return A.normalize(out)


def _m(t: TensorPoly, left, right) -> Poly:
    """Multiplication after applying linear maps to the two slots."""
    out = Poly.zero()
    for (a, b), c in t.terms.items():
        out = out + c * (left(a) * right(b))
    return out


def check_hopf_axioms(max_degree: int = 4, braided: bool | None = None) -> list:
    """(axiom, word, residual) for every failing basis word."""
    A = _A()
    bad = []
    slots3 = (A, A, A)
    for w in A.basis(max_degree):
        f = Poly.word(*w)
        D = coproduct(f)
        lhs = D.expand_slot(0, lambda u: _delta_word(u), slots3).normalize()
        rhs = D.expand_slot(1, lambda u: _delta_word(u), slots3).normalize()
        r = lhs - rhs
        if r:
            bad.append(("coassociativity", w, r))
        word = lambda u: Poly.word(*u)
        eps_l = A.normalize(_m(D, lambda a: Poly.const(_counit_word(a)), word))
        eps_r = A.normalize(_m(D, word, lambda b: Poly.const(_counit_word(b))))
        for name, v in (("counit-left", eps_l), ("counit-right", eps_r)):
            res = v - A.normalize(f)
            if res:
                bad.append((name, w, res))
        kap = lambda u: antipode(Poly.word(*u), braided)
        e = Poly.const(_counit_word(w))
        for name, v in (("antipode-left", _m(D, kap, word)), ("antipode-right", _m(D, word, kap))):
            res = A.normalize(v) - e
            if res:
                bad.append((name, w, res))
    return bad


def _random_homogeneous(rng, rules: RuleSet, grade: int, max_len: int = 3) -> Poly:
    names = list(rules.generators)
    p = Poly.zero()
    while not p:
        for _ in range(rng.randint(1, 3)):
            for _ in range(50):
                w = tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))
                if rules.word_grade(w) == grade:
                    p = p + Poly.word(*w, coeff=CycScalar(rng.randint(-2, 2), rng.randint(-2, 2)))
                    break
    return p


def check_hopf_morphisms(samples: int = 200, seed: int = 0, braided: bool | None = None) -> list:
    """Multiplicativity of Delta and eps and anti-multiplicativity of kappa on random pairs."""
    A = _A()
    rng = random.Random(seed)
    bad = []
    braided = ANTIPODE_BRAIDED if braided is None else braided
    for _ in range(samples):
        ga, gb = rng.randrange(3), rng.randrange(3)
        u = _random_homogeneous(rng, A, ga)
        v = _random_homogeneous(rng, A, gb)
        uv = A.normalize(u * v)
        if coproduct(uv).normalize() != braided_mul(coproduct(u), coproduct(v)):
            bad.append(("coproduct", u, v))
        if counit(uv) != counit(u) * counit(v):
            bad.append(("counit", u, v))
        twist = q_pow(ga * gb) if braided else ONE
        if antipode(uv, braided) != A.normalize(twist * (antipode(v, braided) * antipode(u, braided))):
            bad.append(("antipode", u, v))
    return bad


# -- left coaction on the differential calculus ---------------------------------------

_FIRST_OF = dict(zip(COORDS, FIRST))
_SECOND_OF = dict(zip(FIRST, SECOND))


def _G():
    return get_preset("differential-algebra")


def _tau_d(t: TensorPoly) -> TensorPoly:
    """(tau (x) d): scale by q^{p(left)} and differentiate the right slot."""
    from .calculus import apply_d

    A, G = _A(), _G()
    out = TensorPoly(2, {}, (A, G))
    for (a, b), c in t.terms.items():
        db = apply_d(Poly.word(*b))
        if not db:
            continue
        s = c * q_pow(A.word_grade(a))
        for w, v in db.terms.items():
            out = out + TensorPoly(2, {(a, w): s * v}, (A, G))
    return out


@lru_cache(maxsize=None)
def _coaction_gen(g: str) -> TensorPoly:
    A, G = _A(), _G()
    if g in _DELTA:
        return _delta_gen(g).with_slots((A, G))
    inv = {v: k for k, v in _FIRST_OF.items()}
    if g in inv:
        return _tau_d(_coaction_gen(inv[g])).normalize()
    inv2 = {v: k for k, v in _SECOND_OF.items()}
    if g in inv2:
        return _tau_d(_coaction_gen(inv2[g])).normalize()
    raise UnknownGeneratorError(f"the coaction is not defined on {g!r}")


@lru_cache(maxsize=None)
def _coaction_word(w: tuple) -> TensorPoly:
    if not w:
        return TensorPoly.unit((_A(), _G()))
    if len(w) == 1:
        return _coaction_gen(w[0])
    return braided_mul(_coaction_word(w[:-1]), _coaction_gen(w[-1]))


def coaction_L(p: Poly) -> TensorPoly:
    """Delta_L(p) in A (x) Gamma: Delta on coordinates, (tau (x) d) on differentials."""
    G = _G()
    _check_in(p, G, "the coaction")
    return _linear(p, _coaction_word, TensorPoly.unit((_A(), G)))


def check_covariance(origins=("coord-dx", "dx-dx", "coord-d2x", "dx-d2x", "d2x-d2x")) -> list:
    """(label, residual TensorPoly) for relation images, the counit law,
    left coassociativity and invariance of the Cartan-Maurer forms."""
    from .calculus import cartan_maurer

    A, G = _A(), _G()
    out = []
    for r in G.rules:
        if r.origin in origins:
            out.append((f"{r.origin}: {'*'.join(r.lhs)}", coaction_L(r.relation()).normalize()))
    for g in FIRST + SECOND:
        t = coaction_L(Poly.word(g))
        v = G.normalize(_m(t, lambda a: Poly.const(_counit_word(a)), lambda b: Poly.word(*b)))
        res = v - Poly.word(g)
        out.append((f"(eps (x) id) Delta_L({g}) = {g}", TensorPoly(2, {((), w): c for w, c in res.terms.items()}, (A, G))))
    slots3 = (A, A, G)
    for g in COORDS + ("xinv",) + FIRST:
        t = coaction_L(Poly.word(g))
        lhs = t.expand_slot(0, lambda u: _delta_word(u), slots3).normalize()
        rhs = t.expand_slot(1, lambda u: _coaction_word(u), slots3).normalize()
        out.append((f"left coassociativity on {g}", lhs - rhs))
    for a, name in (("x", "wx"), ("y", "wy"), ("th", "wth")):
        w = cartan_maurer(a)
        t = coaction_L(w).normalize()
        expected = TensorPoly(2, {((), k): c for k, c in G.normalize(w).terms.items()}, (A, G))
        out.append((f"Delta_L({name}) = 1 (x) {name}", t - expected))
    return out


# -- the dual Hopf algebra U_q -------------------------------------------------------------

def dual_normalize(p: Poly) -> Poly:
    return _U().normalize(p)


_UDELTA = {
    "X": "X (x) 1 + 1 (x) X",
    "Y": "Y (x) K + 1 (x) Y",
    "Th": "Th (x) K + 1 (x) Th",
    "K": "K (x) K",
}
_UEPS = {"X": ZERO, "Y": ZERO, "Th": ZERO, "K": ONE}
# kappa(Y) = -Y q^X with q^X = K^2; kappa(K) = K^{-1} = K^2
_UKAPPA = {"X": "-X", "Y": "-Y*K^2", "Th": "-Th*K^2", "K": "K^2"}


@lru_cache(maxsize=None)
def _udelta_gen(g):
    U = _U()
    return _tensor(_UDELTA[g], (U, U))


@lru_cache(maxsize=None)
def _udelta_word(w):
    U = _U()
    if not w:
        return TensorPoly.unit((U, U))
    if len(w) == 1:
        return _udelta_gen(w[0])
    return braided_mul(_udelta_word(w[:-1]), _udelta_gen(w[-1]))


def dual_coproduct(u: Poly) -> TensorPoly:
    U = _U()
    _check_in(u, U, "the dual coproduct")
    return _linear(u, _udelta_word, TensorPoly.unit((U, U)))


def _ueps_word(w) -> CycScalar:
    c = ONE
    for g in w:
        c = c * _UEPS[g]
    return c


def dual_counit(u: Poly) -> CycScalar:
    out = ZERO
    for w, c in u.terms.items():
        out = out + c * _ueps_word(w)
    return out


def dual_antipode(u: Poly, braided: bool | None = None) -> Poly:
    U = _U()
    braided = ANTIPODE_BRAIDED if braided is None else braided
    out = Poly.zero()
    for w, c in u.terms.items():
        out = out + c * _anti(w, lambda g: _P(_UKAPPA[g]), U, braided)
    return U.normalize(out)


# -- pairing -----------------------------------------------------------------------


def _exponents(w) -> tuple:
    """(k, l, m) of a normal word x^k y^l th^m of A (k may be negative)."""
    k = l = m = 0
    for g in w:
        if g == "x":
            k += 1
        elif g == "xinv":
            k -= 1
        elif g == "y":
            l += 1
        elif g == "th":
            m += 1
    return k, l, m


def _pair_gen(g: str, w) -> CycScalar:
    k, l, m = _exponents(w)
    if g == "X":
        return CycScalar(k) if l == 0 and m == 0 else ZERO
    if g == "Y":
        return ONE if l == 1 and m == 0 else ZERO
    if g == "Th":
        return ONE if l == 0 and m == 1 else ZERO
    if g == "K":
        return q_pow(2 * k) if l == 0 and m == 0 else ZERO
    raise UnknownGeneratorError(f"{g!r} is not a generator of preset {U_NAME!r}")


@lru_cache(maxsize=None)
def _pair_words(u: tuple, f: tuple) -> CycScalar:
    """<u, f> for a U-word u and a normal A-word f (differentiation from the right)."""
    if not u:
        return _counit_word(f)
    if len(u) == 1:
        return _pair_gen(u[0], f)
    g, rest = u[0], u[1:]
    pr = _U().word_grade(rest)
    A = _A()
    out = ZERO
    for (a, b), c in _delta_word(f).terms.items():
        v = _pair_gen(g, a)
        if not v:
            continue
        out = out + c * q_pow(pr * A.word_grade(a)) * v * _pair_words(rest, b)
    return out


def pair(u: Poly, f: Poly) -> CycScalar:
    """Bilinear pairing <u, f> of U_q with A."""
    U, A = _U(), _A()
    _check_in(u, U, "the pairing (left argument)")
    _check_in(f, A, "the pairing (right argument)")
    fn = A.normalize(f)
    out = ZERO
    for wu, cu in u.terms.items():
        for wf, cf in fn.terms.items():
            out = out + cu * cf * _pair_words(wu, wf)
    return out


def pair_tensor(s: TensorPoly, t: TensorPoly) -> CycScalar:
    """<u (x) v, a (x) b> = q^{p(v)p(a)} <u, a> <v, b>."""
    U, A = _U(), _A()
    out = ZERO
    for (u, v), c1 in s.terms.items():
        pv = U.word_grade(v)
        for (a, b), c2 in t.terms.items():
            x = _pair_words(u, a)
            if not x:
                continue
            y = _pair_words(v, b)
            if y:
                out = out + c1 * c2 * q_pow(pv * A.word_grade(a)) * x * y
    return out


def _a_basis(max_k: int) -> list:
    return [("x",) * k + ("y",) * l + ("th",) * m for k in range(max_k + 1) for l in range(3) for m in range(3)]


def _u_words(max_len: int = 2) -> list:
    gens = ("X", "Y", "Th", "K")
    out = [()]
    level = [()]
    for _ in range(max_len):
        level = [w + (g,) for w in level for g in gens]
        out.extend(level)
    return out


def check_dual_relations(max_k: int = 5) -> list:
    """(label, value) pairs that must vanish: every U relation paired with
    the basis, and the images of the relations under Delta_U, eps_U, kappa_U."""
    U = _U()
    out = []
    basis = _a_basis(max_k)
    for r in U.rules:
        rel = r.relation()
        bad = [f for f in basis if pair(rel, Poly.word(*f))]
        out.append((f"<{'*'.join(r.lhs)} - rhs, f> = 0", len(bad)))
        d = dual_coproduct(rel).normalize()
        out.append((f"Delta_U({'*'.join(r.lhs)} - rhs) = 0", len(d)))
        out.append((f"eps_U({'*'.join(r.lhs)} - rhs) = 0", 0 if not dual_counit(rel) else 1))
        k = dual_antipode(rel)
        out.append((f"kappa_U({'*'.join(r.lhs)} - rhs) = 0", len(k)))
    for g in ("X", "Y", "Th", "K"):
        D = dual_coproduct(Poly.word(g))
        kap = lambda a: dual_antipode(Poly.word(*a))
        left = U.normalize(_m(D, kap, lambda b: Poly.word(*b)))
        right = U.normalize(_m(D, lambda a: Poly.word(*a), kap))
        e = Poly.const(_ueps_word((g,)))
        out.append((f"antipode law on {g}", len(left - e) + len(right - e)))
    return out


def check_duality(max_k: int = 5, max_len: int = 2) -> list:
    """(axiom, u, a, b, lhs, rhs) for every mismatch of the pairing axioms."""
    U, A = _U(), _A()
    basis = _a_basis(max_k)
    words = _u_words(max_len)
    bad = []
    for u in words:
        du = _udelta_word(u)
        for a in basis:
            for b in basis:
                ab = A.normalize(Poly.word(*a) * Poly.word(*b))
                lhs = pair(Poly.word(*u), ab)
                rhs = pair_tensor(du, TensorPoly(2, {(a, b): ONE}, (A, A)))
                if lhs != rhs:
                    bad.append(("coproduct", u, a, b, lhs, rhs))
    for u in words:
        for v in words:
            for a in basis:
                lhs = pair(U.normalize(Poly.word(*u) * Poly.word(*v)), Poly.word(*a))
                rhs = pair_tensor(TensorPoly(2, {(u, v): ONE}, (U, U)), _delta_word(a))
                if lhs != rhs:
                    bad.append(("product", (u, v), a, None, lhs, rhs))
    for u in words:
        ku = dual_antipode(Poly.word(*u))
        if pair(Poly.word(*u), Poly.one()) != _ueps_word(u):
            bad.append(("unit", u, (), None, pair(Poly.word(*u), Poly.one()), _ueps_word(u)))
        for a in basis:
            lhs = pair(ku, Poly.word(*a))
            rhs = pair(Poly.word(*u), antipode(Poly.word(*a)))
            if lhs != rhs:
                bad.append(("antipode", u, a, None, lhs, rhs))
    for a in basis:
        if pair(Poly.one(), Poly.word(*a)) != _counit_word(a):
            bad.append(("counit", (), a, None, pair(Poly.one(), Poly.word(*a)), _counit_word(a)))
    return bad


def check_pairing_table(max_k: int = 5) -> list:
    """(label, value, expected) for the tangent-vector table and <XY>, <YX>."""
    out = []
    for k in range(max_k + 1):
        f = Poly.word(*(("x",) * k + ("y",)))
        out.append((f"<X*Y, x^{k}*y>", pair(_P("X*Y"), f), CycScalar(k + 1)))
        out.append((f"<Y*X, x^{k}*y>", pair(_P("Y*X"), f), CycScalar(k)))
        out.append((f"<X*Y - Y*X - Y, x^{k}*y>", pair(_P("X*Y - Y*X - Y"), f), ZERO))
    for w in _a_basis(max_k):
        k, l, m = _exponents(w)
        f = Poly.word(*w)
        out.append((f"<X, {w}>", pair(_P("X"), f), CycScalar(k) if (l, m) == (0, 0) else ZERO))
        out.append((f"<Y, {w}>", pair(_P("Y"), f), ONE if (l, m) == (1, 0) else ZERO))
        out.append((f"<Th, {w}>", pair(_P("Th"), f), ONE if (l, m) == (0, 1) else ZERO))
        out.append((f"<1, {w}>", pair(Poly.one(), f), ONE if (l, m) == (0, 0) else ZERO))
    return out


# -- the transform to the Lie generators -------------------------------------------------


def t_transform() -> dict:
    """Tx = (q^X - 1)/(1 - q^2), Ty = Y, Tth = q^{2X} Th inside U_q."""
    c = (ONE - q_pow(2)).inv()
    return {"Tx": c * _P("K^2 - 1"), "Ty": _P("Y"), "Tth": _P("K*Th")}


def check_T_transform() -> list:
    """(label, residual size) for the coproduct formulas, counits and brackets."""
    from .calculus import SHIPPED_BRACKET, bracket

    U = _U()
    T = t_transform()
    slots = (U, U)
    # 1 + (1 - q^2) Tx
    L = Poly.one() + (ONE - q_pow(2)) * T["Tx"]

    def tp(a, b):
        return TensorPoly.from_slots([a, b], slots)

    expected = {
        "Tx": tp(T["Tx"], Poly.one()) + tp(L, T["Tx"]),
        "Ty": tp(T["Ty"], L * L) + tp(Poly.one(), T["Ty"]),
        "Tth": tp(T["Tth"], L) + tp(L * L, T["Tth"]),
    }
    out = []
    for name in ("Tx", "Ty", "Tth"):
        got = dual_coproduct(U.normalize(T[name])).normalize()
        res = got - expected[name].normalize()
        out.append((f"Delta({name})", res))
    for name in ("Tx", "Ty", "Tth"):
        out.append((f"eps({name}) = 0", dual_counit(T[name])))
    grades = {"Tx": 0, "Ty": 2, "Tth": 1}
    for a, b, rhs in (("Tx", "Ty", q_pow(1) * T["Ty"]), ("Tx", "Tth", q_pow(1) * T["Tth"]),
                      ("Ty", "Tth", Poly.zero())):
        r = U.normalize(bracket(T[a], T[b], grades[a], grades[b], SHIPPED_BRACKET) - rhs)
        out.append((f"[{a},{b}]_q in U_q", r))
    out.append(("Ty^3 = 0 in U_q", U.normalize(T["Ty"] ** 3)))
    out.append(("Tth^3 = 0 in U_q", U.normalize(T["Tth"] ** 3)))
    return out
