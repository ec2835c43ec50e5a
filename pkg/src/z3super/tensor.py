"""Braided tensor products of graded algebras.

Multiplication follows ``(a (x) b)(c (x) d) = q^{p(b)p(c)} (ac (x) bd)``,
generalised to n slots by braiding every right-hand factor leftwards past
the left-hand factors in later slots.
"""

from __future__ import annotations

from itertools import product as _cartesian

from .algebra import Poly, RuleSet
from .expr import TENSOR_SEP, render_terms, render_word
from .scalar import ONE, ZERO, CycScalar, as_scalar, q_pow

__all__ = ["TensorPoly", "ArityError", "braided_mul"]


class ArityError(ValueError):
    pass


class TensorPoly:
    """Scalar-weighted sum of word tuples ``w1 (x) ... (x) wn``.

    ``slots`` optionally tags each position with the RuleSet it lives in;
    grading and normalization need the tags.
    """

    __slots__ = ("arity", "terms", "slots")

    def __init__(self, arity: int, terms=None, slots=None):
        self.arity = arity
        self.slots = tuple(slots) if slots is not None else None
        if self.slots is not None and len(self.slots) != arity:
            raise ArityError("one preset per slot is required")
        clean: dict = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(w) for w in key)
            if len(key) != arity:
                raise ArityError(f"term {key} does not have {arity} slots")
            c = as_scalar(c)
            v = clean.get(key)
            v = c if v is None else v + c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, arity, terms, slots):
        t = cls.__new__(cls)
        t.arity = arity
        t.terms = terms
        t.slots = slots
        return t

    @classmethod
    def from_slots(cls, polys, slots=None) -> "TensorPoly":
        """Multilinear tensor product of plain polynomials (no braiding)."""
        terms: dict = {}
        for combo in _cartesian(*[list(p.terms.items()) for p in polys]):
            key = tuple(w for w, _ in combo)
            c = ONE
            for _, v in combo:
                c = c * v
            terms[key] = terms.get(key, ZERO) + c
        return cls(len(polys), terms, slots)

    @classmethod
    def unit(cls, slots) -> "TensorPoly":
        slots = tuple(slots)
        return cls._raw(len(slots), {((),) * len(slots): ONE}, slots)

    def with_slots(self, slots) -> "TensorPoly":
        return TensorPoly._raw(self.arity, dict(self.terms), tuple(slots))

    # -- linear structure -------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TensorPoly._raw(self.arity, out, self.slots or other.slots)

    def __neg__(self):
        return TensorPoly._raw(self.arity, {k: -c for k, c in self.terms.items()}, self.slots)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = as_scalar(c)
        if not c:
            return TensorPoly._raw(self.arity, {}, self.slots)
        return TensorPoly._raw(self.arity, {k: c * v for k, v in self.terms.items()}, self.slots)

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            return braided_mul(self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    # -- structure --------------------------------------------------------

    def _slot(self, i) -> RuleSet:
        if self.slots is None or self.slots[i] is None:
            raise ValueError("slot presets are required for grading and normalization")
        return self.slots[i]

    def normalize(self) -> "TensorPoly":
        out: dict = {}
        for key, c in self.terms.items():
            factors = [self._slot(i).normal_word(w) for i, w in enumerate(key)]
            for combo in _cartesian(*[list(f.items()) for f in factors]):
                k = tuple(w for w, _ in combo)
                v = c
                for _, x in combo:
                    v = v * x
                prev = out.get(k)
                v = v if prev is None else prev + v
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return TensorPoly._raw(self.arity, out, self.slots)

    def map_slot(self, i: int, fn, new_slot=None) -> "TensorPoly":
        """Apply a linear map (word -> Poly) in slot ``i``."""
        slots = self.slots
        if new_slot is not None and slots is not None:
            slots = slots[:i] + (new_slot,) + slots[i + 1 :]
        out: dict = {}
        for key, c in self.terms.items():
            for w, v in fn(key[i]).terms.items():
                k = key[:i] + (w,) + key[i + 1 :]
                x = out.get(k)
                x = c * v if x is None else x + c * v
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return TensorPoly._raw(self.arity, out, slots)

    def expand_slot(self, i: int, fn, new_slots) -> "TensorPoly":
        """Replace slot ``i`` by a TensorPoly-valued linear map, raising the arity."""
        out: dict = {}
        sub_arity = None
        for key, c in self.terms.items():
            sub = fn(key[i])
            sub_arity = sub.arity
            for k2, v in sub.terms.items():
                k = key[:i] + k2 + key[i + 1 :]
                x = out.get(k)
                x = c * v if x is None else x + c * v
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        if sub_arity is None:
            sub_arity = len(new_slots) - self.arity + 1
        return TensorPoly._raw(self.arity + sub_arity - 1, out, tuple(new_slots))

    def contract(self, fn) -> Poly:
        """Sum of ``c * fn(key)`` where ``fn`` maps a word tuple to a Poly."""
        out = Poly.zero()
        for key, c in self.terms.items():
            out = out + c * fn(key)
        return out

    def render(self) -> str:
        def slot_key(i, w):
            if self.slots is not None and self.slots[i] is not None:
                return self.slots[i].word_key(w)
            return (len(w), w)

        keys = sorted(
            self.terms, key=lambda k: tuple(slot_key(i, w) for i, w in enumerate(k))
        )
        items = []
        for k in keys:
            text = TENSOR_SEP.join(render_word(w) for w in k)
            items.append((self.terms[k], text))
        return render_terms(items)

    def __repr__(self):
        return f"TensorPoly({self.render()})"


def braided_mul(s: TensorPoly, t: TensorPoly, normalize: bool = True) -> TensorPoly:
    """Braided product: each factor of ``t`` crosses the later factors of ``s``."""
    if s.arity != t.arity:
        raise ArityError(f"arity mismatch: {s.arity} vs {t.arity}")
    slots = s.slots or t.slots
    if slots is None or any(x is None for x in slots):
        raise ValueError("slot presets are required for braided multiplication")
    n = s.arity
    out: dict = {}
    grade_cache: dict = {}

    def grades(key):
        g = grade_cache.get(key)
        if g is None:
            g = tuple(slots[i].word_grade(w) for i, w in enumerate(key))
            grade_cache[key] = g
        return g

    for k1, c1 in s.terms.items():
        g1 = grades(k1)
        for k2, c2 in t.terms.items():
            g2 = grades(k2)
            e = 0
            for j in range(n):
                if g2[j]:
                    e += g2[j] * sum(g1[j + 1 :])
            c = c1 * c2 * q_pow(e)
            key = tuple(a + b for a, b in zip(k1, k2))
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    res = TensorPoly._raw(n, out, slots)
    return res.normalize() if normalize else res
