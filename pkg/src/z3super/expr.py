"""Text grammar for scalars, polynomials and tensors.

Grammar (``*`` is mandatory, juxtaposition is an error)::

    sum     := tterm (('+' | '-') tterm)*
    tterm   := product ('(x)' product)*          # tensor mode only
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := INT ['/' INT] | 'q' | IDENT | '(' sum ')'

Canonical output orders words rank-lexicographically and writes scalars
as a rational multiple of a power of q when possible, else ``a + b*q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, UnknownGeneratorError
from .scalar import ONE, CycScalar, q_pow

__all__ = [
    "ParseError",
    "Num",
    "QSym",
    "Sym",
    "Neg",
    "Pow",
    "Prod",
    "Sum",
    "Tensor",
    "parse",
    "render",
    "evaluate",
    "parse_poly",
    "parse_scalar",
    "render_scalar",
    "render_poly",
    "render_word",
    "TENSOR_SEP",
]

TENSOR_SEP = " (x) "


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Tensor:
    slots: tuple


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<tensor>\(\s*x\s*\))|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[-+*/^()]))"
)


def _lex(text: str, tensor: bool):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "tensor" and not tensor:
            # plain parenthesized x
            out.append(("op", "(", start))
            out.append(("ident", "x", start + value.index("x")))
            out.append(("op", ")", start + len(value) - 1))
        else:
            out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, tensor: bool):
        self.text = text
        self.tokens = _lex(text, tensor)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] not in ("op",):
            self.error(f"expected {value!r}", tok)
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.sum()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("ident", "int", "tensor") or tok[1] == "(":
                self.error("missing '*' between factors")
            self.error(f"unexpected {tok[1]!r}")
        return node

    def sum(self):
        terms = [self.tterm()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            t = self.tterm()
            terms.append(Neg(t) if op == "-" else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def tterm(self):
        # a leading unary minus on a tensor term negates the whole term
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.next()
            return Neg(self.tterm())
        slots = [self.product()]
        while self.peek()[0] == "tensor":
            self.next()
            if self.peek()[1] == "*":
                self.next()
            slots.append(self.product())
        return slots[0] if len(slots) == 1 else Tensor(tuple(slots))

    def product(self):
        factors = [self.unary()]
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.next()
            if self.peek()[0] == "tensor":
                break
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.next()
            sign = 1
            if self.peek()[1] == "-":
                self.next()
                sign = -1
            tok = self.next()
            if tok[0] != "int":
                self.error("exponent must be an integer", tok)
            return Pow(base, sign * int(tok[1]))
        return base

    def atom(self):
        tok = self.next()
        kind, value = tok[0], tok[1]
        if kind == "int":
            num = Fraction(int(value))
            if self.peek()[1] == "/":
                self.next()
                den = self.next()
                if den[0] != "int":
                    self.error("expected integer denominator", den)
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                num = Fraction(int(value), int(den[1]))
            return Num(num)
        if kind == "ident":
            return QSym() if value == "q" else Sym(value)
        if value == "(":
            node = self.sum()
            self.expect(")")
            return node
        if kind == "tensor":
            self.error("tensor separator '(x)' outside a product")
        self.error(f"unexpected {value!r}" if value else "unexpected end of input", tok)


def parse(text: str, tensor: bool = False):
    """Parse ``text`` into an AST.  ``(x)`` is the tensor separator in tensor mode."""
    return _Parser(text, tensor).parse()


# -- rendering of ASTs -------------------------------------------------------

_PREC = {Sum: 0, Tensor: 1, Neg: 2, Prod: 3, Pow: 4}


def _prec(node):
    if isinstance(node, Num):
        return 5 if node.value.denominator == 1 else 3
    return _PREC.get(type(node), 5)


def render(node) -> str:
    """Inverse of :func:`parse` up to whitespace: ``parse(render(a)) == a``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, QSym):
        return "q"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, Prod):
        # a Num with a denominator is a single atom, so it may sit anywhere
        return "*".join(_wrap(f, 4, strict_num=True) for f in node.factors)
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 2)
    if isinstance(node, Tensor):
        return TENSOR_SEP.join(_wrap(s, 2) for s in node.slots)
    if isinstance(node, Sum):
        parts = [_wrap(node.terms[0], 1)]
        for t in node.terms[1:]:
            if isinstance(t, Neg):
                parts.append(" - " + _wrap(t.operand, 1))
            else:
                parts.append(" + " + _wrap(t, 1))
        return "".join(parts)
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, min_prec, strict_num=False):
    s = render(node)
    p = _prec(node)
    if isinstance(node, Num) and strict_num:
        return s if node.value.denominator == 1 else f"({s})"
    if isinstance(node, Neg) and min_prec > 2:
        return f"({s})"
    if p < min_prec and not isinstance(node, Neg):
        return f"({s})"
    return s


# -- evaluation --------------------------------------------------------------


def evaluate(node, symbols=None, preset_name: str = "?"):
    """Evaluate an AST to a :class:`Poly`, or a TensorPoly if it contains ``(x)``.

    ``symbols`` is the admissible generator set (a RuleSet, dict or set);
    ``None`` accepts any identifier.
    """
    from .tensor import TensorPoly

    def ev(n):
        if isinstance(n, Num):
            return Poly.const(CycScalar(n.value))
        if isinstance(n, QSym):
            return Poly.const(q_pow(1))
        if isinstance(n, Sym):
            if symbols is not None and n.name not in symbols:
                raise UnknownGeneratorError(
                    f"{n.name!r} is not a generator of preset {preset_name!r}"
                )
            return Poly.word(n.name)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            base = ev(n.base)
            if n.exp < 0:
                if set(base.terms) != {()}:
                    raise ValueError("negative powers are only allowed for scalars")
                return Poly.const(base.scalar_part() ** n.exp)
            if isinstance(base, TensorPoly):
                raise ValueError("powers of tensors are not supported")
            return base**n.exp
        if isinstance(n, Prod):
            out = ev(n.factors[0])
            for f in n.factors[1:]:
                nxt = ev(f)
                if isinstance(out, TensorPoly) or isinstance(nxt, TensorPoly):
                    raise ValueError("products of tensors must be written with (x) at top level")
                out = out * nxt
            return out
        if isinstance(n, Sum):
            vals = [ev(t) for t in n.terms]
            if any(isinstance(v, TensorPoly) for v in vals):
                vals = [_lift(v) for v in vals]
                arities = {v.arity for v in vals}
                if len(arities) != 1:
                    raise ValueError("sum of tensors with different arities")
            out = vals[0]
            for v in vals[1:]:
                out = out + v
            return out
        if isinstance(n, Tensor):
            slots = [ev(s) for s in n.slots]
            if any(isinstance(s, TensorPoly) for s in slots):
                raise ValueError("nested tensor products are not supported")
            return TensorPoly.from_slots(slots)
        raise TypeError(f"not an expression node: {n!r}")

    def _lift(v):
        if isinstance(v, TensorPoly):
            return v
        raise ValueError("cannot add a plain polynomial to a tensor")

    return ev(node)


def parse_poly(text: str, symbols=None, preset_name: str = "?") -> Poly:
    val = evaluate(parse(text), symbols, preset_name)
    return val


def parse_scalar(text: str) -> CycScalar:
    p = evaluate(parse(text), symbols=set())
    if set(p.terms) - {()}:
        raise ValueError(f"{text!r} is not a scalar")
    return p.scalar_part()


# -- canonical rendering of values ------------------------------------------


def _frac(v: Fraction, paren: bool) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    s = f"{v.numerator}/{v.denominator}"
    return f"({s})" if paren else s


def _qpart(n: int) -> str:
    return {0: "", 1: "q", 2: "q^2"}[n]


def render_scalar(c: CycScalar) -> str:
    """Canonical scalar text: ``q^2``, ``-3*q``, ``1 - q``, ``(2/3) + (1/3)*q``."""
    mono = c.q_monomial()
    if mono is not None:
        k, n = mono
        if n == 0:
            return _frac(k, False)
        sign = "-" if k < 0 else ""
        k = abs(k)
        if k == 1:
            return sign + _qpart(n)
        return f"{sign}{_frac(k, True)}*{_qpart(n)}"
    a, b = c.a, c.b
    head = _frac(a, True) if a >= 0 else "-" + _frac(-a, True)
    mag = abs(b)
    tail = "q" if mag == 1 else f"{_frac(mag, True)}*q"
    return f"{head} {'-' if b < 0 else '+'} {tail}"


def render_word(word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        parts.append(word[i] if k == 1 else f"{word[i]}^{k}")
        i = j
    return "*".join(parts)


def _term(c: CycScalar, word_text: str | None):
    """Render one term; returns (negative, text-without-leading-sign)."""
    mono = c.q_monomial()
    if mono is not None:
        k, n = mono
        neg = k < 0
        k = abs(k)
        pieces = []
        if k != 1 or (n == 0 and word_text is None):
            pieces.append(_frac(k, word_text is not None or n != 0))
        if n:
            pieces.append(_qpart(n))
        if word_text is not None:
            pieces.append(word_text)
        return neg, "*".join(pieces)
    s = f"({render_scalar(c)})" if word_text is not None else render_scalar(c)
    return False, s if word_text is None else f"{s}*{word_text}"


def render_terms(items) -> str:
    """Join ``(coeff, text_or_None)`` terms into a signed sum."""
    out = []
    for c, txt in items:
        neg, body = _term(c, txt)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def render_poly(p: Poly, rules=None) -> str:
    """Canonical text of a polynomial; words sorted by ``rules.word_key`` if given."""
    if rules is not None:
        key = rules.word_key
    else:
        key = lambda w: (len(w), w)  # noqa: E731
    items = []
    for w in sorted(p.terms, key=key):
        items.append((p.terms[w], render_word(w) if w else None))
    return render_terms(items)
