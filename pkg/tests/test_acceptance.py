"""Acceptance criteria 1-14.

Each criterion is computed once, recorded in RESULTS and printed as a
``criterion N: PASS|FAIL`` line in the pytest terminal summary (see
conftest.py).  Run this file directly for the same lines without pytest.
"""

from __future__ import annotations

import time

import pytest

from z3super import calculus as C
from z3super import covariance as V
from z3super import hopf as H
from z3super.algebra import Poly, check_local_confluence
from z3super.presets import get_preset
from z3super.scalar import ZERO
from z3super.suites import suite_scalar, weyl_with_partial_dx

RESULTS: dict = {}
TIME_LIMIT = 60.0


def _zero(items) -> list:
    return [i for i in items if i[-1]]


def c1():
    rep = suite_scalar(samples=1000)
    return rep.ok, f"{len(rep.checks)} scalar checks"


def c2():
    counts = {}
    for name in ("superspace", "dual-superspace", "differential-algebra", "weyl", "weyl-differential"):
        counts[name] = len(check_local_confluence(get_preset(name), max_degree=6, random_words=200))
    counts["weyl+partial-dx"] = len(check_local_confluence(weyl_with_partial_dx(), max_degree=6))
    ok = all(v == 0 for v in counts.values())
    return ok, ", ".join(f"{k}: {v} mismatches" for k, v in counts.items())


def c3():
    bad = C.check_d3(6, random_polys=200)
    return not bad, f"{len(bad)} inputs with d^3 != 0 (basis to degree 6 + 200 random)"


def c4():
    fails = 0
    pairs = list(C.leibniz_pairs(3))
    for a, b in pairs:
        for fn in (C.check_leibniz, C.check_d2_leibniz, C.check_eq11):
            if fn(a, b):
                fails += 1
    return fails == 0, f"{len(pairs)} pairs, {fails} nonzero residuals"


def c5():
    r1 = C.replay_derivation("coord-dx", ("superspace", "dual-superspace", "dx-dx", "coord-d2x"))
    r2 = C.replay_derivation("coord-d2x", ("superspace", "dual-superspace", "coord-dx", "dx-d2x", "d2x-d2x"))
    bad = _zero(r1) + _zero(r2)
    return not bad and len(r1) == 9 and len(r2) == 9, f"{len(r1)}+{len(r2)} replays, {len(bad)} nonzero"


def c6():
    res = C.check_form_relations(["forms-coord", "forms", "forms-dforms", "dforms", "d2forms"])
    bad = [t for _, t, r in res if r]
    return not bad, f"{len(res)} relations, failing: {bad}"


def c7():
    bad = C.check_weyl_consistency(4)
    return not bad, f"{len(bad)} mismatches on coordinate monomials to degree 4"


def c8():
    br = _zero(C.check_lie_brackets(C.SHIPPED_BRACKET))
    tc = [label for label, r in C.check_T_coordinate_action(6) if r]
    k3 = all(not r for label, r in C.check_T_coordinate_action(6) if label.startswith(("Tx*x^0", "Tx*x^3", "Tx*x^6")))
    ok = not br and not tc and k3
    return ok, f"brackets: {len(br)} nonzero; coordinate relations failing: {tc}; k = 0 mod 3 vanishing: {k3}"


def c9():
    bad = H.check_hopf_axioms(4)
    return not bad, f"{len(bad)} failing axiom instances on the basis to degree 4"


def c10():
    bad = H.check_duality(5, 2)
    rel = [label for label, n in H.check_dual_relations(5) if n]
    table = [label for label, got, want in H.check_pairing_table(5) if got != want]
    ok = not bad and not rel and not table
    return ok, f"{len(bad)} axiom mismatches, {len(rel)} relation failures, {len(table)} table mismatches"


def c11():
    bad = [label for label, r in H.check_T_transform() if r]
    return not bad, f"failing: {bad}"


def c12():
    E = V.derive_glq_relations()
    cmp = V.compare_glq(E)
    hom = [label for label, r in V.check_coaction_homomorphism(E) if r]
    ok = cmp.equivalent and not hom
    detail = (f"{len(cmp.printed_not_implied)} printed relations not implied, "
              f"{len(cmp.emitted_not_implied)} emitted not implied; "
              f"delta_L homomorphism failures: {len(hom)}")
    return ok, detail


def c13():
    R = V.build_R()
    diff = sum(1 for i in range(9) for j in range(9) if R[i][j] != V.PRINTED_R[i][j])
    bad = [(p, label) for p, label, r in V.check_R_reproduces_relations(R) if r]
    return diff == 0 and not bad, f"{diff} entries differ, {len(bad)} nonzero residuals"


def c14():
    I9 = [[V.ONE if i == j else ZERO for j in range(9)] for i in range(9)]
    ident = all(not v for row in V.check_braid(I9) for v in row)
    match = V.GOLDEN_BRAID.exists() and V.braid_report_text() == V.GOLDEN_BRAID.read_text()
    return ident and match, f"identity residual zero: {ident}; golden file match: {match}"


CRITERIA = {
    1: ("scalar kernel", c1),
    2: ("confluence of the presets", c2),
    3: ("d^3 = 0", c3),
    4: ("Leibniz identities", c4),
    5: ("derivation replays", c5),
    6: ("Cartan-Maurer relations", c6),
    7: ("Weyl/extraction equivalence", c7),
    8: ("Lie superalgebra", c8),
    9: ("Hopf axioms", c9),
    10: ("duality", c10),
    11: ("T-transform", c11),
    12: ("GL_q(2|1) relations", c12),
    13: ("R-matrix", c13),
    14: ("braid report", c14),
}


def evaluate(n: int):
    if n not in RESULTS:
        title, fn = CRITERIA[n]
        t0 = time.perf_counter()
        ok, detail = fn()
        dt = time.perf_counter() - t0
        if dt > TIME_LIMIT:
            ok, detail = False, f"{detail}; took {dt:.1f}s > {TIME_LIMIT:.0f}s"
        RESULTS[n] = (ok, title, detail, dt)
    return RESULTS[n]


def summary_lines() -> list:
    out = []
    for n in sorted(RESULTS):
        ok, title, detail, dt = RESULTS[n]
        out.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} {title} ({dt:.1f}s) {detail}")
    return out


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, title, detail, _ = evaluate(n)
    assert ok, f"criterion {n} ({title}): {detail}"


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        evaluate(n)
    print("\n".join(summary_lines()))
