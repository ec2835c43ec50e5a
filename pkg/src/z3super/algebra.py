"""Graded free algebras over Q(q) and oriented rewrite systems.

A :class:`Poly` is an element of the free algebra: a finite map from words
(tuples of generator names) to nonzero scalars.  A :class:`RuleSet` is a
presentation: graded generators plus oriented rules ``lhs -> rhs``.  Its
:meth:`RuleSet.normalize` computes the unique normal form by exhaustive
rewriting, which realizes the quotient by the two-sided ideal of relations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .scalar import ONE, ZERO, CycScalar, as_scalar

__all__ = [
    "Word",
    "Generator",
    "Poly",
    "RewriteRule",
    "RuleSet",
    "AlgebraError",
    "RewriteBudgetExceeded",
    "NonHomogeneousError",
    "UndefinedGradeError",
    "UnknownGeneratorError",
    "Mismatch",
    "normalize",
    "multiply",
    "grade_of",
    "basis",
    "check_grade_homogeneity",
    "check_orientation",
    "check_local_confluence",
]

Word = tuple  # tuple[str, ...]

DEFAULT_BUDGET = 10**6


class AlgebraError(Exception):
    pass


class RewriteBudgetExceeded(AlgebraError):
    pass


class NonHomogeneousError(AlgebraError):
    pass


class UndefinedGradeError(AlgebraError):
    pass


class UnknownGeneratorError(AlgebraError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown generator"


@dataclass(frozen=True)
class Generator:
    name: str
    grade: int
    rank: int
    nilpotency: int | None = None
    # Weight in the weighted-degree order used to certify termination.
    weight: int = 1

    def __post_init__(self):
        if self.grade not in (0, 1, 2):
            raise ValueError(f"grade of {self.name} must be in Z3, got {self.grade}")
        if self.nilpotency is not None and self.nilpotency < 1:
            raise ValueError(f"nilpotency of {self.name} must be positive")
        if self.weight < 1:
            raise ValueError(f"weight of {self.name} must be positive")


class Poly:
    """Element of a free associative algebra over Q(q).

    Instances are treated as immutable.  ``*`` is free concatenation; use
    :meth:`RuleSet.normalize` or :func:`multiply` to reduce.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                c = as_scalar(c)
                if c:
                    w = tuple(w)
                    prev = clean.get(w)
                    c = c if prev is None else prev + c
                    if c:
                        clean[w] = c
                    else:
                        clean.pop(w, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def word(cls, *names: str, coeff=ONE) -> "Poly":
        return cls({tuple(names): coeff})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Poly":
        return cls._raw({(): ONE})

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = out.get(w)
                    v = c1 * c2 if v is None else v + c1 * c2
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            return Poly._raw(out)
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Poly.zero()
        return Poly._raw({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Poly.zero()
        return Poly._raw({w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Poly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- inspection -------------------------------------------------------

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def coeff(self, word) -> CycScalar:
        return self.terms.get(tuple(word), ZERO)

    def words(self):
        return list(self.terms)

    def symbols(self) -> set:
        return {g for w in self.terms for g in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def scalar_part(self) -> CycScalar:
        return self.terms.get((), ZERO)

    def filter(self, keep) -> "Poly":
        return Poly._raw({w: c for w, c in self.terms.items() if keep(w)})

    def substitute(self, images: dict) -> "Poly":
        """Free-algebra homomorphism sending generator g to ``images[g]``."""
        out = Poly.zero()
        for w, c in self.terms.items():
            term = Poly.const(c)
            for g in w:
                img = images.get(g)
                term = term * (Poly.word(g) if img is None else img)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        from .expr import render_poly

        return f"Poly({render_poly(self)})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    try:
        return Poly.const(as_scalar(x))
    except TypeError:
        return NotImplemented


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: Poly
    origin: str = ""
    derived: bool = False

    def relation(self) -> Poly:
        """The relation ``lhs - rhs`` as a free polynomial."""
        return Poly.word(*self.lhs) - self.rhs


@dataclass(frozen=True)
class Mismatch:
    word: tuple
    left: Poly
    right: Poly
    source: str = "overlap"

    @property
    def difference(self) -> Poly:
        return self.left - self.right


class RuleSet:
    """Graded presentation with an oriented rewrite system.

    Nilpotency declared on a generator contributes the rule ``g^n -> 0``.
    Instances are immutable after construction; normal-form caches are
    internal and only ever gain entries that are pure functions of the key.
    """

    def __init__(
        self,
        name: str,
        generators: Iterable[Generator],
        rules: Iterable[RewriteRule] = (),
        max_rewrite_steps: int = DEFAULT_BUDGET,
        description: str = "",
    ):
        self.name = name
        self.description = description
        self.max_rewrite_steps = max_rewrite_steps
        gens = sorted(generators, key=lambda g: g.rank)
        self.generators = {g.name: g for g in gens}
        if len(self.generators) != len(gens):
            raise ValueError(f"duplicate generator names in {name}")
        ranks = [g.rank for g in gens]
        if len(set(ranks)) != len(ranks):
            raise ValueError(f"generator ranks must be unique in {name}")

        collected = []
        for g in gens:
            if g.nilpotency is not None:
                collected.append(
                    RewriteRule((g.name,) * g.nilpotency, Poly.zero(), origin=f"nilpotent {g.name}")
                )
        collected.extend(rules)
        self._rules: dict = {}
        self.rules: list = []
        for r in collected:
            lhs = tuple(r.lhs)
            if not lhs:
                raise ValueError("rule with empty left-hand side")
            for s in lhs + tuple(g for w in r.rhs.terms for g in w):
                if s not in self.generators:
                    raise UnknownGeneratorError(
                        f"rule {r.origin or lhs} uses {s!r}, not a generator of preset {name!r}"
                    )
            if lhs in self._rules:
                raise ValueError(f"two rules share the left-hand side {lhs} in {name}")
            self._rules[lhs] = r.rhs
            self.rules.append(r)
        self._lengths = tuple(sorted({len(k) for k in self._rules}))
        self._caches = {"leftmost": {}, "rightmost": {}}

    # -- metadata ---------------------------------------------------------

    def __repr__(self):
        return f"RuleSet({self.name!r}, {len(self.generators)} generators, {len(self.rules)} rules)"

    def __contains__(self, name):
        return name in self.generators

    def rank(self, name: str) -> int:
        return self.generators[name].rank

    def grade(self, name: str) -> int:
        return self.generators[name].grade

    def word_grade(self, word) -> int:
        gens = self.generators
        try:
            return sum(gens[g].grade for g in word) % 3
        except KeyError as exc:
            raise UnknownGeneratorError(
                f"{exc.args[0]!r} is not a generator of preset {self.name!r}"
            ) from None

    def word_key(self, word):
        """Rank-lexicographic key, degree first; used for canonical order."""
        gens = self.generators
        return (len(word), tuple(gens[g].rank for g in word))

    def order_key(self, word):
        """Weighted-degree-lexicographic key certifying rule orientation."""
        gens = self.generators
        return (sum(gens[g].weight for g in word), tuple(gens[g].rank for g in word))

    def rules_from(self, *origins: str) -> list:
        return [r for r in self.rules if r.origin in origins]

    def rule_for(self, lhs) -> Poly | None:
        return self._rules.get(tuple(lhs))

    def check_symbols(self, p: Poly):
        for s in p.symbols():
            if s not in self.generators:
                raise UnknownGeneratorError(
                    f"{s!r} is not a generator of preset {self.name!r}"
                )

    # -- rewriting --------------------------------------------------------

    def _find_redex(self, word, leftmost: bool):
        n = len(word)
        rules = self._rules
        positions = range(n) if leftmost else range(n - 1, -1, -1)
        for i in positions:
            for L in self._lengths:
                if i + L > n:
                    break
                if word[i : i + L] in rules:
                    return i, L
        return None

    def _nf(self, word, cache, state, leftmost):
        hit = cache.get(word)
        if hit is not None:
            return hit
        pos = self._find_redex(word, leftmost)
        if pos is None:
            res = {word: ONE}
            cache[word] = res
            return res
        state[0] += 1
        if state[0] > self.max_rewrite_steps:
            raise RewriteBudgetExceeded(
                f"preset {self.name!r}: more than {self.max_rewrite_steps} rewrite steps"
            )
        active = state[1]
        if word in active:
            raise RewriteBudgetExceeded(
                f"preset {self.name!r}: rewriting cycles through {word}"
            )
        active.add(word)
        i, L = pos
        prefix, suffix = word[:i], word[i + L :]
        res: dict = {}
        try:
            for w, c in self._rules[word[i : i + L]].terms.items():
                for w2, c2 in self._nf(prefix + w + suffix, cache, state, leftmost).items():
                    v = res.get(w2)
                    v = c * c2 if v is None else v + c * c2
                    if v:
                        res[w2] = v
                    else:
                        del res[w2]
        except RecursionError:
            raise RewriteBudgetExceeded(
                f"preset {self.name!r}: rewrite chain too deep at {word}"
            ) from None
        finally:
            active.discard(word)
        cache[word] = res
        return res

    def normal_word(self, word, strategy: str = "leftmost") -> dict:
        """Normal form of a single word as a ``{word: coeff}`` dict (shared; do not mutate)."""
        return self._nf(tuple(word), self._caches[strategy], [0, set()], strategy == "leftmost")

    def normalize(self, p: Poly, strategy: str = "leftmost") -> Poly:
        if strategy not in self._caches:
            raise ValueError(f"unknown rewrite strategy {strategy!r}")
        self.check_symbols(p)
        cache = self._caches[strategy]
        state = [0, set()]
        leftmost = strategy == "leftmost"
        out: dict = {}
        for w, c in p.terms.items():
            for w2, c2 in self._nf(w, cache, state, leftmost).items():
                v = out.get(w2)
                v = c * c2 if v is None else v + c * c2
                if v:
                    out[w2] = v
                else:
                    del out[w2]
        return Poly._raw(out)

    def multiply(self, *factors: Poly) -> Poly:
        out = Poly.one()
        for f in factors:
            out = self.normalize(out * f)
        return out

    def is_normal(self, word) -> bool:
        return self._find_redex(tuple(word), True) is None

    def apply_rule_at(self, word, i: int, L: int) -> Poly:
        """One rewrite step on ``word`` at position ``i`` with a rule of length ``L``."""
        word = tuple(word)
        rhs = self._rules[word[i : i + L]]
        return Poly.word(*word[:i]) * rhs * Poly.word(*word[i + L :])

    # -- grading ----------------------------------------------------------

    def grade_of(self, p: Poly) -> int:
        if not p:
            raise UndefinedGradeError("the zero polynomial has no grade")
        grades = {self.word_grade(w) for w in p.terms}
        if len(grades) != 1:
            raise NonHomogeneousError(f"polynomial mixes grades {sorted(grades)}")
        return grades.pop()

    # -- enumeration ------------------------------------------------------

    def basis(self, max_degree: int, symbols: Iterable[str] | None = None) -> list:
        """Normal words of length <= max_degree in rank-lexicographic order.

        ``symbols`` restricts the alphabet (e.g. coordinates only).
        """
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        alphabet = [g for g in self.generators if symbols is None or g in symbols]
        level = [()]
        out = [()]
        for _ in range(max_degree):
            nxt = []
            for w in level:
                for g in alphabet:
                    cand = w + (g,)
                    n = len(cand)
                    if any(
                        cand[n - L :] in self._rules for L in self._lengths if L <= n
                    ):
                        continue
                    nxt.append(cand)
            level = nxt
            out.extend(nxt)
        out.sort(key=self.word_key)
        return out


# -- module-level operations ---------------------------------------------------


def normalize(p: Poly, rules: RuleSet) -> Poly:
    return rules.normalize(p)


def multiply(p: Poly, r: Poly, rules: RuleSet) -> Poly:
    return rules.normalize(p * r)


def grade_of(p: Poly, rules: RuleSet) -> int:
    return rules.grade_of(p)


def basis(rules: RuleSet, max_degree: int) -> list:
    return rules.basis(max_degree)


def check_grade_homogeneity(rules: RuleSet) -> list:
    """Rules whose rhs words differ in grade from the lhs."""
    bad = []
    for r in rules.rules:
        g = rules.word_grade(r.lhs)
        if any(rules.word_grade(w) != g for w in r.rhs.terms):
            bad.append(r)
    return bad


def check_orientation(rules: RuleSet) -> list:
    """Rules whose rhs is not strictly below the lhs in the weighted-degree order."""
    bad = []
    for r in rules.rules:
        k = rules.order_key(r.lhs)
        if any(rules.order_key(w) >= k for w in r.rhs.terms):
            bad.append(r)
    return bad


def critical_words(rules: RuleSet):
    """Overlap and inclusion ambiguities as ``(word, (i1, L1), (i2, L2))``."""
    lhss = list(rules._rules)
    seen = set()
    for l1 in lhss:
        for l2 in lhss:
            # proper overlaps: suffix of l1 == prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    key = (w, 0, len(l1), len(l1) - k, len(l2))
                    if key not in seen:
                        seen.add(key)
                        yield w, (0, len(l1)), (len(l1) - k, len(l2))
            # inclusions: l2 strictly inside l1
            if len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i : i + len(l2)] == l2:
                        key = (l1, 0, len(l1), i, len(l2))
                        if key not in seen:
                            seen.add(key)
                            yield l1, (0, len(l1)), (i, len(l2))


def check_local_confluence(
    rules: RuleSet, max_degree: int = 6, random_words: int = 200, seed: int = 0
) -> list:
    """Resolve every critical pair two ways and compare normal forms.

    Also reduces ``random_words`` random words by leftmost and by rightmost
    rewriting.  Returns the list of :class:`Mismatch` found (empty when the
    system is locally confluent on everything examined).
    """
    bad = []
    for w, (i1, L1), (i2, L2) in critical_words(rules):
        left = rules.normalize(rules.apply_rule_at(w, i1, L1))
        right = rules.normalize(rules.apply_rule_at(w, i2, L2))
        if left != right:
            bad.append(Mismatch(w, left, right, "overlap"))
    rng = random.Random(seed)
    names = list(rules.generators)
    if names and max_degree > 0:
        for _ in range(random_words):
            n = rng.randint(1, max_degree)
            w = tuple(rng.choice(names) for _ in range(n))
            left = rules.normalize(Poly.word(*w), "leftmost")
            right = rules.normalize(Poly.word(*w), "rightmost")
            if left != right:
                bad.append(Mismatch(w, left, right, "random"))
    return bad
