"""Quantum-matrix coaction on the superspace, derivation of the relations
among the matrix entries, and the R-hat matrix of the coordinate calculus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .algebra import Poly, RewriteRule, RuleSet, check_grade_homogeneity, check_local_confluence
from .expr import parse_poly, parse_scalar, render_poly, render_scalar, render_word
from .linalg import identity, kron, matmul, rref, zeros, InconsistentSystem, SparseEchelon
from .presets import get_preset, make_generators, COORDS, FIRST, MATRIX, PARTIALS
from .scalar import ONE, ZERO, CycScalar, q_pow
from .tensor import TensorPoly, braided_mul

__all__ = [
    "T_MATRIX",
    "coaction",
    "coaction_dual",
    "relation_constraints",
    "derive_glq_relations",
    "PRINTED_GLQ",
    "compare_glq",
    "check_coaction_homomorphism",
    "RMatrix",
    "build_R",
    "PRINTED_R",
    "check_R_reproduces_relations",
    "check_braid",
    "braid_residual_direct",
    "grade_twist",
    "GOLDEN_BRAID",
]

# row-major layout of the quantum matrix; be* have grade 1, ga* grade 2
T_MATRIX = (
    ("a", "ga1", "be1"),
    ("be2", "b", "ga2"),
    ("ga3", "be3", "c"),
)

GL = "glq-free"


def _P(text: str) -> Poly:
    return parse_poly(text)


def _grade(g: str) -> int:
    return get_preset(GL).grade(g)


def coaction(i: int) -> TensorPoly:
    """delta_L(X_i) = sum_k t_ik (x) X_k, for i = 1, 2, 3 over (x, y, th)."""
    if i not in (1, 2, 3):
        raise ValueError("coordinate index must be 1, 2 or 3")
    slots = (get_preset(GL), get_preset("superspace"))
    terms = {((T_MATRIX[i - 1][k],), (COORDS[k],)): ONE for k in range(3)}
    return TensorPoly(2, terms, slots)


def coaction_dual(i: int) -> TensorPoly:
    """delta_L(Xhat_i) = sum_k q^{p(t_ik)} t_ik (x) Xhat_k over (dx, dy, dth)."""
    if i not in (1, 2, 3):
        raise ValueError("coordinate index must be 1, 2 or 3")
    slots = (get_preset(GL), get_preset("dual-superspace"))
    terms = {}
    for k in range(3):
        t = T_MATRIX[i - 1][k]
        terms[((t,), (FIRST[k],))] = q_pow(_grade(t))
    return TensorPoly(2, terms, slots)


def _image(word, images, unit) -> TensorPoly:
    out = unit
    for g in word:
        out = braided_mul(out, images[g])
    return out


def _relation_image(rel: Poly, images, unit) -> TensorPoly:
    out = TensorPoly(2, {}, unit.slots)
    for w, c in rel.terms.items():
        out = out + c * _image(w, images, unit)
    return out


def relation_constraints() -> list:
    """(source relation, right-slot word, free polynomial in the entries) that must vanish."""
    out = []
    for target, coact in (("superspace", coaction), ("dual-superspace", coaction_dual)):
        R = get_preset(target)
        names = COORDS if target == "superspace" else FIRST
        images = {g: coact(i + 1) for i, g in enumerate(names)}
        unit = TensorPoly.unit((get_preset(GL), R))
        for r in R.rules:
            img = _relation_image(r.relation(), images, unit).normalize()
            by_word: dict = {}
            for (left, right), c in img.terms.items():
                by_word.setdefault(right, {})[left] = c
            for right in sorted(by_word, key=R.word_key):
                p = Poly(by_word[right])
                if p:
                    out.append(("*".join(r.lhs), right, p))
    return out


def _echelon_rules(polys, rules: RuleSet, origin: str) -> list:
    """Reduced echelon basis of a span of homogeneous-degree polynomials, as rules."""
    words = sorted({w for p in polys for w in p.terms}, key=rules.word_key, reverse=True)
    index = {w: k for k, w in enumerate(words)}
    rows = []
    for p in polys:
        row = [ZERO] * len(words)
        for w, c in p.terms.items():
            row[index[w]] = c
        rows.append(row)
    red, piv = rref(rows, len(words))
    out = []
    for row, c in zip(red, piv):
        lhs = words[c]
        rhs = Poly({words[k]: -v for k, v in enumerate(row) if v and k != c})
        out.append(RewriteRule(lhs, rhs, origin))
    return out


def derive_glq_relations() -> RuleSet:
    """Relations among the matrix entries forced by the coaction being an algebra map."""
    free = get_preset(GL)
    cons = relation_constraints()
    polys = [p for _, _, p in cons]
    for p in polys:
        if () in p.terms:
            raise InconsistentSystem("coefficient collection demands 1 = 0")
    by_degree: dict = {}
    for p in polys:
        degs = {len(w) for w in p.terms}
        if len(degs) != 1:
            raise ValueError("mixed-degree constraint")
        by_degree.setdefault(degs.pop(), []).append(p)
    rules = []
    gens = make_generators(MATRIX)
    for deg in sorted(by_degree):
        current = RuleSet("glq", gens, rules)
        reduced = [current.normalize(p) for p in by_degree[deg]]
        reduced = [p for p in reduced if p]
        if reduced:
            rules = rules + _echelon_rules(reduced, free, f"glq-degree-{deg}")
    return RuleSet("glq", gens, rules, description="relations derived from the coaction")


# As typeset, including the line "c be3 = q^2 be3" which lacks a factor.
PRINTED_GLQ = [
    "a*ga1 = q*ga1*a", "a*ga2 = q*ga2*a", "a*ga3 = q*ga3*a", "a*be1 = be1*a", "a*be2 = q*be2*a",
    "a*be3 = q^2*be3*a", "a*b = b*a + (q^2 - 1)*ga1*be2", "a*c = c*a + (q - 1)*be1*ga3",
    "b*ga1 = ga1*b", "b*ga2 = ga2*b", "b*ga3 = q*ga3*b + (1 - q^2)*be2*be3",
    "b*be1 = q^2*be1*b + (1 - q^2)*ga1*ga2", "b*be2 = q*be2*b", "b*be3 = q*be3*b",
    "b*c = c*b + (q - 1)*ga2*be3", "c*ga1 = q^2*ga1*c + (q^2 - 1)*be1*be2", "c*ga2 = ga2*c",
    "c*ga3 = q^2*ga3*c", "c*be1 = be1*c", "c*be2 = be2*c + (1 - q)*ga2*ga3", "c*be3 = q^2*be3",
    "be1*be2 = be2*be1 + (q - q^2)*a*ga2", "be1*be3 = q*be3*be1", "be2*be3 = q*be3*be2",
    "ga1*ga2 = q^2*ga2*ga1", "ga1*ga3 = ga3*ga1 + (1 - q^2)*a*be3", "ga2*ga3 = q*ga3*ga2",
    "ga1*be1 = q^2*be1*ga1", "ga1*be2 = q^2*be2*ga1", "ga1*be3 = q^2*be3*ga1", "ga2*be1 = q*be1*ga2",
    "ga2*be2 = q*be2*ga2", "ga2*be3 = be3*ga2", "ga3*be1 = be1*ga3",
    "ga3*be2 = q*be2*ga3", "ga3*be3 = be3*ga3",
    "be1^3 = 0", "be2^3 = 0", "ga2^3 = 0", "ga3^3 = 0",
]

TYPO_REPAIRS = {"c*be3 = q^2*be3": "c*be3 = q^2*be3*c"}


def _rel(text: str) -> Poly:
    lhs, rhs = text.split("=")
    return _P(lhs) - _P(rhs)


def _in_span(p: Poly, basis_polys) -> bool:
    E = SparseEchelon()
    for b in basis_polys:
        E.add(b.terms)
    return E.contains(p.terms)


def ideal_part(relations, degree: int, gens=MATRIX) -> SparseEchelon:
    """Degree-``degree`` part of the two-sided ideal of homogeneous relations."""
    E = SparseEchelon()
    for r in relations:
        d = r.degree()
        if d > degree or not r:
            continue
        gap = degree - d
        for left in range(gap + 1):
            for u in product(gens, repeat=left):
                for v in product(gens, repeat=gap - left):
                    E.add({u + w + v: c for w, c in r.terms.items()})
    return E


def _homogeneous_parts(p: Poly) -> dict:
    parts: dict = {}
    for w, c in p.terms.items():
        parts.setdefault(len(w), {})[w] = c
    return parts


@dataclass
class GlqComparison:
    printed_not_implied: list = field(default_factory=list)
    emitted_not_implied: list = field(default_factory=list)
    repairs: list = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.printed_not_implied and not self.emitted_not_implied


class _Ideal:
    def __init__(self, relations):
        self.relations = list(relations)
        self._parts: dict = {}

    def implies(self, p: Poly) -> bool:
        for d, vec in _homogeneous_parts(p).items():
            if d not in self._parts:
                self._parts[d] = ideal_part(self.relations, d)
            if not self._parts[d].contains(vec):
                return False
        return True


def compare_glq(emitted: RuleSet | None = None, printed=None) -> GlqComparison:
    """Two-way comparison of the emitted relations with a printed list.

    Membership is decided exactly in each degree by spanning the ideal's
    homogeneous part, so it does not depend on confluence of either set.
    """
    emitted = emitted or derive_glq_relations()
    printed = list(PRINTED_GLQ if printed is None else printed)
    em_rel = [r.relation() for r in emitted.rules]
    pr_rel = [(t, _rel(t)) for t in printed]
    em_ideal = _Ideal(em_rel)
    pr_ideal = _Ideal(p for _, p in pr_rel)
    out = GlqComparison()
    for t, p in pr_rel:
        if not em_ideal.implies(p):
            out.printed_not_implied.append(t)
    for r in emitted.rules:
        if r.origin.startswith("nilpotent"):
            continue
        if not pr_ideal.implies(r.relation()):
            out.emitted_not_implied.append(f"{render_word(r.lhs)} = {render_poly(r.rhs)}")
    for bad, fix in TYPO_REPAIRS.items():
        if bad in printed:
            out.repairs.append((bad, fix, em_ideal.implies(_rel(fix))))
    return out


def check_coaction_homomorphism(emitted: RuleSet | None = None) -> list:
    """(relation, residual) of each superspace and dual relation under delta_L,
    with the left slot reduced by the emitted relations."""
    emitted = emitted or derive_glq_relations()
    out = []
    for target, coact in (("superspace", coaction), ("dual-superspace", coaction_dual)):
        R = get_preset(target)
        names = COORDS if target == "superspace" else FIRST
        images = {g: coact(i + 1).with_slots((emitted, R)) for i, g in enumerate(names)}
        unit = TensorPoly.unit((emitted, R))
        for r in R.rules:
            img = _relation_image(r.relation(), images, unit).normalize()
            out.append((f"{target}: {'*'.join(r.lhs)}", img))
    return out


# -- R-hat --------------------------------------------------------------------------

RMatrix = list  # 9x9 list of CycScalar, row-major over pairs (i, j)

_PRINTED_R_TEXT = """
1, 0, 0, 0, 0, 0, 0, 0, 0
0, 0, 0, q, 0, 0, 0, 0, 0
0, 0, 1 - q^2, 0, 0, 0, 1, 0, 0
0, q, 0, 1 - q^2, 0, 0, 0, 0, 0
0, 0, 0, 0, 1, 0, 0, 0, 0
0, 0, 0, 0, 0, 1 - q^2, 0, q, 0
0, 0, q^2, 0, 0, 0, 0, 0, 0
0, 0, 0, 0, 0, q, 0, 0, 0
0, 0, 0, 0, 0, 0, 0, 0, 1
"""


def import_matrix(text: str) -> list:
    """Parse a plain-text matrix: one row per line, entries separated by commas."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([parse_scalar(x) for x in line.split(",")])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def export_matrix(M) -> str:
    return "\n".join(", ".join(render_scalar(v) for v in row) for row in M) + "\n"


PRINTED_R = import_matrix(_PRINTED_R_TEXT)


def _pair(i: int, j: int) -> int:
    """0-based row index of the pair (i, j) with 1-based i, j."""
    return 3 * (i - 1) + (j - 1)


def build_R() -> RMatrix:
    """Read R-hat off the normal forms of q^{p(X_i)} X_i dX_j = q R^{ij}_{kl} dX_k X_l."""
    G = get_preset("differential-algebra")
    R = zeros(9, 9)
    qinv = q_pow(-1)
    for i in range(1, 4):
        for j in range(1, 4):
            Xi = COORDS[i - 1]
            p = G.normalize(Poly.word(Xi, FIRST[j - 1], coeff=q_pow(G.grade(Xi))))
            for w, c in p.terms.items():
                k = FIRST.index(w[0]) + 1
                l = COORDS.index(w[1]) + 1
                R[_pair(i, j)][_pair(k, l)] = c * qinv
    return R


def R_entry(R, i, j, k, l) -> CycScalar:
    """R^{ij}_{kl} with 1-based indices."""
    return R[_pair(i, j)][_pair(k, l)]


def check_R_reproduces_relations(R: RMatrix | None = None) -> list:
    """(part, label, residual) for the coordinate/differential relations (i),
    the superspace relations (ii) and the Weyl relations (iii)."""
    R = R or build_R()
    G = get_preset("differential-algebra")
    S = get_preset("superspace")
    W = get_preset("weyl")
    out = []
    for i in range(1, 4):
        for j in range(1, 4):
            Xi = COORDS[i - 1]
            lhs = Poly.word(Xi, FIRST[j - 1], coeff=q_pow(G.grade(Xi)))
            rhs = Poly.zero()
            for k in range(1, 4):
                for l in range(1, 4):
                    c = R_entry(R, i, j, k, l)
                    if c:
                        rhs = rhs + Poly.word(FIRST[k - 1], COORDS[l - 1], coeff=q_pow(1) * c)
            out.append(("i", f"X{i} dX{j}", G.normalize(lhs - rhs)))
    for i in range(1, 4):
        for j in range(1, 4):
            v = Poly.word(COORDS[i - 1], COORDS[j - 1])
            for k in range(1, 4):
                for l in range(1, 4):
                    c = R_entry(R, i, j, k, l)
                    if c:
                        v = v - Poly.word(COORDS[k - 1], COORDS[l - 1], coeff=c)
            out.append(("ii", f"((I - R)(X (x) X))_{i}{j}", S.normalize(v)))
    weyl_rels = []
    for i in range(1, 4):
        for j in range(1, 4):
            p = Poly.word(PARTIALS[i - 1], COORDS[j - 1])
            if i == j:
                p = p - Poly.one()
            for k in range(1, 4):
                for l in range(1, 4):
                    c = R_entry(R, j, k, i, l)
                    if c:
                        p = p - Poly.word(COORDS[l - 1], PARTIALS[k - 1], coeff=q_pow(1) * c)
            weyl_rels.append(p)
            out.append(("iii", f"d{i} X{j} via R", W.normalize(p)))
    for i in range(1, 4):
        for j in range(1, 4):
            p = Poly.word(PARTIALS[i - 1], PARTIALS[j - 1])
            for k in range(1, 4):
                for l in range(1, 4):
                    c = R_entry(R, l, k, j, i)
                    if c:
                        p = p - Poly.word(PARTIALS[k - 1], PARTIALS[l - 1], coeff=c)
            weyl_rels.append(p)
            out.append(("iii", f"d{i} d{j} via R", W.normalize(p)))
    # converse direction: every preset relation lies in the span of the R-form ones
    for r in W.rules:
        if r.origin in ("partial-coord", "partial-partial"):
            ok = _in_span(r.relation(), weyl_rels)
            out.append(("iii", f"preset {'*'.join(r.lhs)} implied by R-form", Poly.zero() if ok else r.relation()))
    return out


def _zero_pattern(M) -> list:
    return [(i, j) for i, row in enumerate(M) for j, v in enumerate(row) if v]


def grade_twist(R: RMatrix) -> RMatrix:
    """D R D^{-1} with D = diag(q^{p(i)p(j)}) on the pair basis."""
    g = [0, 1, 2]
    d = [q_pow(g[i] * g[j]) for i in range(3) for j in range(3)]
    return [[d[r] * R[r][c] / d[c] if R[r][c] else ZERO for c in range(9)] for r in range(9)]


def check_braid(R: RMatrix) -> list:
    """R12 R23 R12 - R23 R12 R23 as an exact 27x27 matrix."""
    I3 = identity(3)
    R12 = kron(R, I3)
    R23 = kron(I3, R)
    a = matmul(matmul(R12, R23), R12)
    b = matmul(matmul(R23, R12), R23)
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def braid_residual_direct(R: RMatrix) -> list:
    """Same residual by explicit index sums; an independent evaluation path."""
    n = 3

    def r(i, j, k, l):
        return R[i * n + j][k * n + l]

    def R12(s, t):
        (i, j, k), (a, b, c) = s, t
        return r(i, j, a, b) if k == c else ZERO

    def R23(s, t):
        (i, j, k), (a, b, c) = s, t
        return r(j, k, b, c) if i == a else ZERO

    idx = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    out = zeros(27, 27)
    for x, s in enumerate(idx):
        for y, t in enumerate(idx):
            lhs = ZERO
            rhs = ZERO
            for u in idx:
                a1 = R12(s, u)
                b1 = R23(s, u)
                if not a1 and not b1:
                    continue
                for v in idx:
                    if a1:
                        m = R23(u, v)
                        if m:
                            e = R12(v, t)
                            if e:
                                lhs = lhs + a1 * m * e
                    if b1:
                        m = R12(u, v)
                        if m:
                            e = R23(v, t)
                            if e:
                                rhs = rhs + b1 * m * e
            out[x][y] = lhs - rhs
    return out


GOLDEN_BRAID = Path(__file__).with_name("data") / "braid_residual.txt"


def braid_report_text(R: RMatrix | None = None) -> str:
    """Golden-file text: the untwisted and grade-twisted residuals."""
    R = R or build_R()
    plain = check_braid(R)
    tw = check_braid(grade_twist(R))
    parts = [
        f"# braid residual R12 R23 R12 - R23 R12 R23, 27x27, rows/cols (i,j,k) row-major",
        f"# untwisted: {len(_zero_pattern(plain))} nonzero entries",
        export_matrix(plain).rstrip("\n"),
        f"# grade-twisted D R D^-1: {len(_zero_pattern(tw))} nonzero entries",
        export_matrix(tw).rstrip("\n"),
    ]
    return "\n".join(parts) + "\n"
