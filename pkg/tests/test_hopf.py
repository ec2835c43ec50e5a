import pytest

from z3super import hopf as H
from z3super.algebra import Poly
from z3super.expr import parse_poly
from z3super.presets import get_preset
from z3super.scalar import ONE, ZERO, Q, CycScalar
from z3super.tensor import TensorPoly

P = parse_poly
A = get_preset("extended")
G = get_preset("differential-algebra")
U = get_preset("dual-hopf")


def t2(a, b, slots=(A, A)):
    return TensorPoly.from_slots([P(a), P(b)], slots).normalize()


def test_coproduct_examples():
    assert H.coproduct(P("x")).normalize() == t2("x", "x")
    assert H.coproduct(P("th")).normalize() == t2("th", "x") + t2("xinv", "th")
    assert H.coproduct(P("y^2")).normalize() == t2("y^2", "1") - t2("x*y", "y") + t2("x^2", "y^2")


def test_counit_examples():
    assert H.counit(P("x^3")) == ONE
    assert H.counit(P("y")) == ZERO
    assert H.counit(P("x + th")) == ONE


def test_antipode_examples():
    assert H.antipode(P("x")) == P("xinv")
    assert H.antipode(P("y")) == P("-xinv*y")
    assert H.antipode(P("x*y")) == P("-q*xinv^2*y")


def test_antipode_law_on_theta_by_hand():
    # kappa(th) x + kappa(xinv) th = -q th x + x th = 0
    assert A.normalize(H.antipode(P("th")) * P("x") + H.antipode(P("xinv")) * P("th")) == Poly.zero()


def test_hopf_axioms_degree_3():
    assert H.check_hopf_axioms(3) == []


def test_unbraided_antipode_fails():
    bad = H.check_hopf_axioms(2, braided=False)
    assert any(w == ("y", "y") for _, w, _ in bad)


def test_hopf_morphisms():
    assert H.check_hopf_morphisms(60) == []


def test_left_coaction_examples():
    assert H.coaction_L(P("dx")).normalize() == t2("x", "dx", (A, G))
    assert H.coaction_L(P("dth")).normalize() == t2("q^2*th", "dx", (A, G)) + t2("xinv", "dth", (A, G))


def test_cartan_maurer_invariance_and_covariance():
    for label, res in H.check_covariance():
        assert not res, label


def test_dual_relations():
    assert H.dual_normalize(P("X*Y")) == P("Y*X + Y")
    assert H.dual_normalize(P("K*Y")) == P("q^2*Y*K")
    # Th*X = X*Th + 2*Th, written in the PBW order of U
    assert H.dual_normalize(P("Th*X - X*Th - 2*Th")) == Poly.zero()
    assert H.dual_normalize(P("K^3")) == P("1")


def test_pairing_values():
    assert H.pair(P("X"), P("x^3")) == CycScalar(3)
    assert H.pair(P("Y"), P("y")) == ONE
    assert H.pair(P("X*Y"), P("x^2*y")) == CycScalar(3)
    assert H.pair(P("K"), P("x")) == Q * Q
    # <Y, y x> = <Y, q^2 x y> = q^2
    assert H.pair(P("Y"), A.normalize(P("y*x"))) == Q * Q
    assert H.pair(P("1"), P("y")) == ZERO


def test_pairing_of_K_Y_relation_vanishes():
    rel = P("K*Y - q^2*Y*K")
    for w in A.basis(4, ("x", "y", "th")):
        assert H.pair(rel, Poly.word(*w)) == ZERO


def test_pairing_table():
    for label, got, want in H.check_pairing_table(4):
        assert got == want, label


def test_duality_axioms_short():
    assert H.check_duality(max_k=3, max_len=1) == []


def test_dual_hopf_relations():
    for label, n in H.check_dual_relations(3):
        assert n == 0, label


def test_T_transform():
    for label, res in H.check_T_transform():
        assert not res, label
