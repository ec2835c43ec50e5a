import pytest
from hypothesis import given, settings, strategies as st

from z3super.algebra import (
    Generator,
    NonHomogeneousError,
    Poly,
    RewriteBudgetExceeded,
    RewriteRule,
    RuleSet,
    UnknownGeneratorError,
    check_grade_homogeneity,
    check_local_confluence,
    check_orientation,
)
from z3super.expr import ParseError, parse, parse_poly, render, render_poly
from z3super.manifest import ManifestError, dumps, loads
from z3super.presets import PRESET_NAMES, get_preset, make_generators
from z3super.scalar import ONE, Q
from z3super.tensor import TensorPoly, braided_mul

P = parse_poly
S = get_preset("superspace")


def nf(preset, text):
    return get_preset(preset).normalize(P(text))


@pytest.mark.parametrize(
    "preset,text,expected",
    [
        ("superspace", "y*x", "q^2*x*y"),
        ("superspace", "th*th*th", "0"),
        ("superspace", "th*y", "q*y*th"),
        ("superspace", "x*y", "x*y"),
        ("extended", "x*xinv", "1"),
        ("extended", "xinv*x", "1"),
        ("differential-algebra", "x*dth", "q*dth*x + (q - 1)*dx*th"),
    ],
)
def test_normal_forms(preset, text, expected):
    assert nf(preset, text) == P(expected)


def test_unit_is_neutral():
    p = P("y*x + th")
    assert S.multiply(Poly.one(), p) == S.normalize(p)


def test_grades():
    assert S.grade_of(P("th")) == 2
    assert S.grade_of(P("x*y*th")) == 0
    with pytest.raises(NonHomogeneousError):
        S.grade_of(P("x + y"))


def test_basis_small_degrees():
    assert S.basis(1) == [(), ("x",), ("y",), ("th",)]
    b3 = S.basis(3)
    assert ("x", "y", "th") in b3 and ("y", "y", "y") not in b3
    # 1; x, y, th; x^2, x*y, x*th, y^2, y*th, th^2
    assert len(S.basis(2)) == 10


def test_grade_homogeneity_reports():
    assert check_grade_homogeneity(S) == []
    bad = RuleSet("bad", make_generators(["x", "y", "th"]), [RewriteRule(("x", "y"), P("th"), "corrupt")])
    assert len(check_grade_homogeneity(bad)) == 1
    assert check_grade_homogeneity(RuleSet("empty", [])) == []


def test_overlap_th_y_x():
    # th*y*x -> q*y*th*x -> q*q^2*y*x*th -> q^2*x*y*th, and the other way agrees
    assert S.normalize(P("th*y*x")) == P("q^2*x*y*th")
    assert S.normalize(P("th*y*x"), "rightmost") == P("q^2*x*y*th")


@pytest.mark.parametrize(
    "name",
    ["superspace", "extended", "dual-superspace", "differential-algebra", "weyl", "forms", "lie",
     "dual-hopf", "glq-free"],
)
def test_presets_confluent(name):
    R = get_preset(name)
    assert check_local_confluence(R, max_degree=5, random_words=100) == []
    assert check_orientation(R) == []
    assert check_grade_homogeneity(R) == []


def test_weyl_differential_overlaps_fail():
    # the printed partial/d^2 relations do not close with the rest
    bad = check_local_confluence(get_preset("weyl-differential"), max_degree=4, random_words=0)
    assert bad and all(m.source == "overlap" for m in bad)


def test_duplicate_lhs_rejected():
    with pytest.raises(ValueError):
        RuleSet("dup", make_generators(["x", "y"]), [RewriteRule(("y", "x"), P("x*y")),
                                                     RewriteRule(("y", "x"), P("q*x*y"))])


def test_unknown_generator_in_rule():
    with pytest.raises(UnknownGeneratorError):
        RuleSet("u", make_generators(["x"]), [RewriteRule(("x", "x"), P("z"))])


def test_budget_and_cycle_detection():
    gens = [Generator("a", 0, 1), Generator("b", 0, 2)]
    loop = RuleSet("loop", gens, [RewriteRule(("b", "a"), P("a*b")), RewriteRule(("a", "b"), P("b*a"))],
                   max_rewrite_steps=1000)
    with pytest.raises(RewriteBudgetExceeded):
        loop.normalize(P("b*a"))


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("nope")


words = st.lists(st.sampled_from(["x", "y", "th"]), max_size=6)


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_normalize_is_multiplicative(u, v):
    a, b = Poly.word(*u), Poly.word(*v)
    assert S.normalize(S.normalize(a) * S.normalize(b)) == S.normalize(a * b)


@settings(max_examples=60, deadline=None)
@given(words)
def test_strategies_agree(u):
    p = Poly.word(*u)
    assert S.normalize(p, "leftmost") == S.normalize(p, "rightmost")


# -- expression grammar ------------------------------------------------------------------


def test_parse_examples():
    assert P("q^2*dy*x") == Poly.word("dy", "x", coeff=Q * Q)
    assert parse("x*(x)*y", tensor=True) == parse("x (x) y", tensor=True)
    with pytest.raises(ParseError):
        parse("x y")
    with pytest.raises(ParseError):
        parse("x*(")


def test_parse_unknown_generator_names_preset():
    with pytest.raises(UnknownGeneratorError, match="superspace"):
        parse_poly("x*dx", S.generators, "superspace")


@pytest.mark.parametrize("text", ["x*dth", "q^2*dy*x", "-(1/2)*x^3 + y", "(1 - q)*x*(y + th)"])
def test_ast_round_trip(text):
    ast = parse(text)
    assert parse(render(ast)) == ast


def test_render_poly_canonical():
    assert render_poly(S.normalize(P("y*x")), S) == "q^2*x*y"
    assert render_poly(Poly.zero()) == "0"


# -- tensors -------------------------------------------------------------------------


def test_braided_products():
    slots = (S, S)
    xy = TensorPoly.from_slots([P("x"), P("y")], slots)
    y1 = TensorPoly.from_slots([P("y"), Poly.one()], slots)
    assert braided_mul(xy, xy) == TensorPoly.from_slots([P("x^2"), P("y^2")], slots).normalize()
    assert braided_mul(y1, xy) == TensorPoly.from_slots([P("q^2*x*y"), P("y")], slots).normalize()
    unit = TensorPoly.unit(slots)
    assert braided_mul(unit, xy) == xy.normalize()


def test_crossing_factor():
    slots = (S, S)
    a = TensorPoly.from_slots([Poly.one(), P("y")], slots)
    b = TensorPoly.from_slots([P("th"), Poly.one()], slots)
    # moving th (grade 2) past y (grade 1) costs q^2
    assert braided_mul(a, b) == TensorPoly.from_slots([P("q^2*th"), P("y")], slots)


# -- manifests -------------------------------------------------------------------------


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_manifest_round_trip(name):
    R = get_preset(name)
    back = loads(dumps(R))
    assert [(r.lhs, r.rhs, r.origin, r.derived) for r in R.rules] == [
        (r.lhs, r.rhs, r.origin, r.derived) for r in back.rules]
    assert dumps(back) == dumps(R)


def test_manifest_errors():
    with pytest.raises(ManifestError, match="line 2"):
        loads("name t\nbogus line\n")
    with pytest.raises(ManifestError):
        loads("name t\ngenerator x grade=0 rank=1\nrule [t] x -> z\n")
    with pytest.raises(ManifestError):
        loads("generator x grade=0 rank=1\n")
