import pytest

from z3super import covariance as V
from z3super.algebra import Poly, check_grade_homogeneity
from z3super.expr import parse_poly
from z3super.linalg import InconsistentSystem, identity, SparseEchelon
from z3super.presets import get_preset
from z3super.scalar import ONE, ZERO, Q, q_pow
from z3super.tensor import TensorPoly

P = parse_poly
GL = get_preset("glq-free")


def t2(a, b, right):
    return TensorPoly.from_slots([P(a), P(b)], (GL, get_preset(right)))


def test_coaction_rows():
    assert V.coaction(1) == t2("a", "x", "superspace") + t2("ga1", "y", "superspace") + t2("be1", "th", "superspace")
    assert V.coaction(3) == t2("ga3", "x", "superspace") + t2("be3", "y", "superspace") + t2("c", "th", "superspace")
    S = get_preset("superspace")
    for (left, right), _ in V.coaction(1).terms.items():
        assert (GL.word_grade(left) + S.word_grade(right)) % 3 == 0


def test_coaction_dual_twist():
    # q^{p(t)}: p(ga1) = 2, p(be1) = 1
    want = t2("a", "dx", "dual-superspace") + t2("q^2*ga1", "dy", "dual-superspace") + t2("q*be1", "dth", "dual-superspace")
    assert V.coaction_dual(1) == want
    for (left, _), c in V.coaction_dual(3).terms.items():
        assert c == q_pow(GL.word_grade(left))


def test_coaction_index_checked():
    with pytest.raises(ValueError):
        V.coaction(4)


def test_derivation_deterministic_and_homogeneous():
    E1, E2 = V.derive_glq_relations(), V.derive_glq_relations()
    assert [(r.lhs, r.rhs) for r in E1.rules] == [(r.lhs, r.rhs) for r in E2.rules]
    assert check_grade_homogeneity(E1) == []


def test_emitted_relations_examples():
    E = V.derive_glq_relations()
    assert E.rule_for(("be1", "be1", "be1")) == Poly.zero()
    assert E.rule_for(("ga3", "ga3", "ga3")) == Poly.zero()
    # a*be2 = q*be2*a, oriented by rank
    assert E.normalize(P("a*be2 - q*be2*a")) == Poly.zero()


def test_coaction_is_algebra_map_under_emitted_set():
    for label, res in V.check_coaction_homomorphism():
        assert not res, label


def test_inconsistent_constraints_raise(monkeypatch):
    monkeypatch.setattr(V, "relation_constraints", lambda: [("fake", (), Poly.one())])
    with pytest.raises(InconsistentSystem):
        V.derive_glq_relations()


def test_comparison_itemizes_typo_line():
    cmp = V.compare_glq()
    assert "c*be3 = q^2*be3" in cmp.printed_not_implied
    assert cmp.repairs and cmp.repairs[0][0] == "c*be3 = q^2*be3"


def test_comparison_of_a_set_with_itself():
    E = V.derive_glq_relations()
    texts = []
    from z3super.expr import render_poly, render_word
    for r in E.rules:
        texts.append(f"{render_word(r.lhs)} = {render_poly(r.rhs)}")
    cmp = V.compare_glq(E, texts)
    assert cmp.equivalent


def test_sparse_echelon_span():
    E = SparseEchelon()
    assert E.add({("a",): ONE, ("b",): Q})
    assert not E.add({("a",): Q, ("b",): Q * Q})
    assert E.contains({("a",): ONE * 2, ("b",): Q * 2})
    assert not E.contains({("a",): ONE})


def test_build_R_entries():
    R = V.build_R()
    assert V.R_entry(R, 2, 1, 1, 2) == Q
    assert V.R_entry(R, 2, 1, 2, 1) == ONE - Q * Q
    assert V.R_entry(R, 1, 1, 1, 1) == ONE
    assert V.R_entry(R, 3, 3, 3, 3) == ONE
    assert R == V.PRINTED_R


def test_R_reproduces_relations():
    for part, label, res in V.check_R_reproduces_relations():
        assert not res, (part, label)


def test_R_export_import_round_trip():
    R = V.build_R()
    assert V.import_matrix(V.export_matrix(R)) == R
    with pytest.raises(ValueError):
        V.import_matrix("1, 0\n1\n")


def test_braid_trivial_inputs():
    I = identity(9)
    assert all(not v for row in V.check_braid(I) for v in row)
    qI = [[Q if i == j else ZERO for j in range(9)] for i in range(9)]
    assert all(not v for row in V.check_braid(qI) for v in row)


def test_general_diagonal_is_not_braid_trivial():
    D = [[q_pow(i) if i == j else ZERO for j in range(9)] for i in range(9)]
    assert any(v for row in V.check_braid(D) for v in row)


def test_braid_two_evaluation_paths_agree():
    R = V.build_R()
    assert V.check_braid(R) == V.braid_residual_direct(R)
    D = [[q_pow(i) if i == j else ZERO for j in range(9)] for i in range(9)]
    assert V.check_braid(D) == V.braid_residual_direct(D)


def test_braid_golden_file():
    assert V.braid_report_text() == V.GOLDEN_BRAID.read_text()
