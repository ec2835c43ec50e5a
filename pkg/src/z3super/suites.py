"""Verification suites run by ``z3super check``.

Each suite returns a :class:`Report`.  INFO lines record measured facts that
are not pass/fail properties (for example a corrected coefficient).
"""

from __future__ import annotations

import random

from . import calculus as C
from . import covariance as V
from . import hopf as H
from .algebra import (
    Poly,
    RuleSet,
    check_grade_homogeneity,
    check_local_confluence,
    check_orientation,
)
from .expr import parse_poly, render_poly, render_word
from .presets import COORDS, get_preset, make_generators, PRESET_NAMES
from .report import Report
from .scalar import ONE, ZERO, CycScalar, q_pow

__all__ = ["SUITES", "run_suite", "run_all", "DEFAULT_MAX_DEGREE"]

DEFAULT_MAX_DEGREE = {"d3": 6}


def _P(text: str) -> Poly:
    return parse_poly(text)


def _first(items, n: int = 3) -> str:
    items = list(items)
    head = "; ".join(str(i) for i in items[:n])
    return f"{len(items)} failing: {head}" + (" ..." if len(items) > n else "")


# -- scalar ---------------------------------------------------------------------------


def suite_scalar(max_degree: int | None = None, samples: int = 1000, seed: int = 0) -> Report:
    R = Report()
    s = "scalar"
    q = q_pow(1)
    R.zero(s, "1 + q + q^2 = 0", ONE + q + q * q)
    R.zero(s, "q^3 = 1", q**3 - ONE)
    R.zero(s, "q^-1 = q^2", q**-1 - q * q)
    R.zero(s, "(1 - q^2)^-1 = (1 - q)/3", (ONE - q * q).inv() - (ONE - q) / 3)
    rng = random.Random(seed)

    def rnd():
        return CycScalar(rng.randint(-9, 9) / rng.randint(1, 5), rng.randint(-9, 9) / rng.randint(1, 5))

    bad = []
    for _ in range(samples):
        a, b, c = rnd(), rnd(), rnd()
        ok = (
            (a + b) + c == a + (b + c)
            and (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and a + ZERO == a
            and a * ONE == a
            and a + (-a) == ZERO
            and (not a or a * a.inv() == ONE)
        )
        if not ok:
            bad.append((a, b, c))
    R.add(s, f"field axioms on {samples} random triples", not bad, _first(bad))
    return R


# -- confluence -------------------------------------------------------------------------

CONFLUENCE_PRESETS = (
    "superspace",
    "extended",
    "dual-superspace",
    "differential-algebra",
    "weyl",
    "weyl-differential",
    "forms",
    "lie",
    "dual-hopf",
)


def weyl_with_partial_dx() -> RuleSet:
    """Weyl relations plus the partial/first-differential rules, without the d^2 ones."""
    WD = get_preset("weyl-differential")
    keep = ("superspace", "dual-superspace", "coord-dx", "dx-dx", "partial-coord",
            "partial-partial", "partial-dx")
    rules = [r for r in WD.rules if r.origin in keep]
    names = [g for g in WD.generators if not g.startswith("d2")]
    return RuleSet("weyl+partial-dx", make_generators(names), rules)


def _confluence_checks(R: Report, rs: RuleSet, max_degree: int):
    s = "confluence"
    bad = check_local_confluence(rs, max_degree=max_degree + 2, random_words=200)
    R.add(s, f"{rs.name}: overlaps and random words resolve", not bad,
          _first(f"{render_word(m.word)} ({m.source})" for m in bad))
    R.zero(s, f"{rs.name}: rules grade-homogeneous", check_grade_homogeneity(rs))
    R.zero(s, f"{rs.name}: rules decrease the weighted order", check_orientation(rs))


def suite_confluence(max_degree: int | None = None) -> Report:
    md = max_degree or 4
    R = Report()
    for name in CONFLUENCE_PRESETS:
        _confluence_checks(R, get_preset(name), md)
    _confluence_checks(R, weyl_with_partial_dx(), md)
    return R


# -- d^3 = 0 -----------------------------------------------------------------------------


def suite_d3(max_degree: int | None = None) -> Report:
    md = 6 if max_degree is None else max_degree
    R = Report()
    bad = C.check_d3(md, random_polys=200)
    R.add("d3", f"d^3 = 0 on the basis to degree {md} and 200 random polynomials", not bad,
          _first(render_poly(p) for p in bad))
    R.zero("d3", "d^3(x*y*th) = 0", C.apply_d_times(_P("x*y*th"), 3))
    return R


# -- Leibniz and derivation replays ------------------------------------------------------


def suite_leibniz(max_degree: int | None = None) -> Report:
    md = max_degree if max_degree is not None else 3
    md = min(md, 4)
    s = "leibniz"
    R = Report()
    for label, fn in (("d(ab) = da b + q^p(a) a db", C.check_leibniz),
                      ("d^2(ab) expansion", C.check_d2_leibniz),
                      ("d(a db) = da db + q^p(a) a d^2b", C.check_eq11)):
        bad = [(a, b) for a, b in C.leibniz_pairs(md) if fn(a, b)]
        R.add(s, f"{label}, monomial pairs to total degree {md}", not bad,
              _first(f"({render_poly(a)}, {render_poly(b)})" for a, b in bad))
    for src, tgt in (("coord-dx", ("superspace", "dual-superspace", "dx-dx", "coord-d2x")),
                     ("coord-d2x", ("superspace", "dual-superspace", "coord-dx", "dx-d2x", "d2x-d2x"))):
        for text, res in C.replay_derivation(src, tgt):
            R.zero(s, f"replay {src}: d({text}) reduces to 0", res)
    for label, res in C.check_inverse_differential() + C.check_note4():
        R.zero(s, label, res)
    return R


# -- Cartan-Maurer forms ---------------------------------------------------------------


def suite_forms(max_degree: int | None = None) -> Report:
    R = Report()
    for group, text, res in C.check_form_relations():
        R.zero("forms", f"{group}: {text}", res)
    return R


# -- Weyl algebra ----------------------------------------------------------------------


def suite_weyl(max_degree: int | None = None) -> Report:
    md = max_degree or 4
    s = "weyl"
    R = Report()
    bad = C.check_weyl_consistency(md)
    R.add(s, f"extraction from d equals Weyl rewriting, coordinates to degree {md}", not bad,
          _first(f"{m.partial} on {render_word(m.monomial)}" for m in bad))
    bad = C.check_weyl_consistency(min(md, 3), include_inverse=True)
    R.add(s, f"same with xinv, to degree {min(md, 3)}", not bad,
          _first(f"{m.partial} on {render_word(m.monomial)}" for m in bad))
    px, py, pth = C.partials(_P("x*y"))
    R.zero(s, "partials(x*y) = (y, q^2*x, 0)", (px - _P("y")) + (py - _P("q^2*x")) + pth)
    n6 = C.check_note6(min(md, 3))
    first = [t for t in n6 if t[0] == "first" and t[3]]
    second = [t for t in n6 if t[0] == "second" and t[3]]
    R.add(s, "d_i d = q^(2-p(i)) d d_i on coordinate monomials", not first,
          _first(f"{t[2]} on {render_word(t[1])}" for t in first))
    R.add(s, "d_i d^2 = q^(1+p(i)) d^2 d_i on coordinate monomials", not second,
          _first(f"{t[2]} on {render_word(t[1])}" for t in second))
    return R


# -- Lie superalgebra ------------------------------------------------------------------


def suite_lie(max_degree: int | None = None) -> Report:
    s = "lie"
    R = Report()
    for label, res in C.check_lie_brackets():
        R.zero(s, f"{label} ({C.SHIPPED_BRACKET})", res)
    R.info(s, "bracket exponent rules that work", ", ".join(str(w) for w in C.search_bracket_specs()))
    for label, res in C.check_T_coordinate_action(6):
        R.zero(s, label, res)
    # preset relations among T and coordinates, checked in the realization
    W = get_preset("weyl")
    T = C.lie_images()
    for r in get_preset("lie").rules:
        if r.origin.startswith("nilpotent") or r.derived:
            continue
        res = W.normalize(r.relation().substitute(T))
        R.zero(s, f"lie preset {r.origin}: {render_word(r.lhs)} -> {render_poly(r.rhs)}", res)
    coeffs = [C.tx_coefficient(k) for k in range(7)]
    R.info(s, "measured Tx*x^k coefficient for k = 0..6",
           ", ".join("?" if c is None else render_poly(Poly.const(c)) for c in coeffs))
    return R


# -- Hopf algebra ----------------------------------------------------------------------


def suite_hopf(max_degree: int | None = None) -> Report:
    md = max_degree or 4
    s = "hopf"
    R = Report()
    bad = H.check_hopf_axioms(md)
    for axiom in ("coassociativity", "counit-left", "counit-right", "antipode-left", "antipode-right"):
        hits = [b for b in bad if b[0] == axiom]
        R.add(s, f"{axiom} on the basis to degree {md}", not hits,
              _first(render_word(b[1]) for b in hits))
    bad = H.check_hopf_morphisms(200)
    R.add(s, "Delta, eps multiplicative and kappa braided anti-multiplicative (200 samples)",
          not bad, _first(f"{b[0]}: {render_poly(b[1])}, {render_poly(b[2])}" for b in bad))
    A = get_preset(H.A_NAME)
    want = H.TensorPoly.from_slots([_P("x^2"), _P("y^2")], (A, A)) - H.TensorPoly.from_slots(
        [_P("x*y"), _P("y")], (A, A)) + H.TensorPoly.from_slots([_P("y^2"), Poly.one()], (A, A))
    R.zero(s, "Delta(y^2) = x^2 (x) y^2 - x*y (x) y + y^2 (x) 1",
           H.coproduct(_P("y^2")).normalize() - want.normalize())
    R.zero(s, "kappa(x*y) = -q*xinv^2*y", H.antipode(_P("x*y")) - _P("-q*xinv^2*y"))
    plain = H.check_hopf_axioms(3, braided=False)
    R.info(s, "unbraided antipode: failing axiom instances to degree 3", len(plain))
    return R


# -- coaction on the calculus ---------------------------------------------------------------


def suite_coaction(max_degree: int | None = None) -> Report:
    R = Report()
    for label, res in H.check_covariance():
        R.zero("coaction", label, res)
    return R


# -- duality ---------------------------------------------------------------------------


def suite_duality(max_degree: int | None = None) -> Report:
    s = "duality"
    R = Report()
    for label, n in H.check_dual_relations(5):
        R.zero(s, label, n)
    bad = H.check_duality(5, 2)
    for axiom in ("coproduct", "product", "unit", "antipode", "counit"):
        hits = [b for b in bad if b[0] == axiom]
        R.add(s, f"pairing {axiom} axiom, u, v of length <= 2, k <= 5", not hits,
              _first(f"{b[1]} on {b[2]}" for b in hits))
    for label, got, want in H.check_pairing_table(5):
        R.zero(s, f"{label} = {render_poly(Poly.const(want))}", got - want)
    return R


def suite_ttransform(max_degree: int | None = None) -> Report:
    R = Report()
    for label, res in H.check_T_transform():
        R.zero("ttransform", label, res)
    return R


# -- GL_q(2|1) -------------------------------------------------------------------------


def suite_glq(max_degree: int | None = None) -> Report:
    s = "glq"
    R = Report()
    E = V.derive_glq_relations()
    quad = sum(1 for r in E.rules if len(r.lhs) == 2)
    R.info(s, "emitted relations (quadratic, cubic)", f"{quad}, {len(E.rules) - quad}")
    R.zero(s, "emitted relations grade-homogeneous", check_grade_homogeneity(E))
    R.zero(s, "derivation deterministic", [a for a, b in zip(E.rules, V.derive_glq_relations().rules) if a != b])
    cmp = V.compare_glq(E)
    for t in cmp.printed_not_implied:
        R.add(s, f"printed relation implied by emitted set: {t}", False, "not in the ideal")
    for t in cmp.emitted_not_implied:
        R.add(s, f"emitted relation implied by printed set: {t}", False, "not in the ideal")
    R.add(s, "emitted set two-way equivalent to the printed list", cmp.equivalent,
          f"{len(cmp.printed_not_implied)} printed and {len(cmp.emitted_not_implied)} emitted relations unmatched")
    for bad, fix, ok in cmp.repairs:
        R.info(s, f"repair of '{bad}' as '{fix}'", "implied" if ok else "not implied")
    for label, res in V.check_coaction_homomorphism(E):
        R.zero(s, f"delta_L preserves {label}", res)
    return R


def suite_rmatrix(max_degree: int | None = None) -> Report:
    s = "rmatrix"
    R = Report()
    M = V.build_R()
    diff = [(i, j) for i in range(9) for j in range(9) if M[i][j] != V.PRINTED_R[i][j]]
    R.add(s, "build_R equals the printed matrix in all 81 entries", not diff, _first(diff))
    allowed = {ZERO, ONE, q_pow(1), q_pow(2), ONE - q_pow(2)}
    R.add(s, "entries lie in {0, 1, q, q^2, 1 - q^2}", all(v in allowed for row in M for v in row))
    R.zero(s, "R^21_12 = q", V.R_entry(M, 2, 1, 1, 2) - q_pow(1))
    R.zero(s, "R^21_21 = 1 - q^2", V.R_entry(M, 2, 1, 2, 1) - (ONE - q_pow(2)))
    for part, label, res in V.check_R_reproduces_relations(M):
        R.zero(s, f"({part}) {label}", res)
    return R


def _nonzero(M) -> int:
    return sum(1 for row in M for v in row if v)


def suite_braid(max_degree: int | None = None) -> Report:
    s = "braid"
    R = Report()
    I9 = [[ONE if i == j else ZERO for j in range(9)] for i in range(9)]
    R.zero(s, "identity: zero residual", _nonzero(V.check_braid(I9)))
    # a scalar multiple of the identity; a general diagonal needs D12 = D23
    D = [[q_pow(1) if i == j else ZERO for j in range(9)] for i in range(9)]
    R.zero(s, "q times identity: zero residual", _nonzero(V.check_braid(D)))
    M = V.build_R()
    B = V.check_braid(M)
    R.add(s, "kron and index-sum evaluations agree", B == V.braid_residual_direct(M))
    text = V.braid_report_text(M)
    golden = V.GOLDEN_BRAID.read_text() if V.GOLDEN_BRAID.exists() else None
    R.add(s, "residual matches the shipped golden file", text == golden,
          "golden file missing" if golden is None else "differs from golden file")
    R.info(s, "untwisted residual nonzero entries", _nonzero(B))
    R.info(s, "grade-twisted residual nonzero entries", _nonzero(V.check_braid(V.grade_twist(M))))
    return R


SUITES = {
    "scalar": suite_scalar,
    "confluence": suite_confluence,
    "d3": suite_d3,
    "leibniz": suite_leibniz,
    "forms": suite_forms,
    "weyl": suite_weyl,
    "lie": suite_lie,
    "hopf": suite_hopf,
    "coaction": suite_coaction,
    "duality": suite_duality,
    "ttransform": suite_ttransform,
    "glq": suite_glq,
    "rmatrix": suite_rmatrix,
    "braid": suite_braid,
}


def run_suite(name: str, max_degree: int | None = None) -> Report:
    if name == "all":
        return run_all(max_degree)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return SUITES[name](max_degree)


def run_all(max_degree: int | None = None) -> Report:
    R = Report()
    for name, fn in SUITES.items():
        # the d^3 suite keeps its own default depth
        R.extend(fn(None if name == "d3" else max_degree))
    return R
