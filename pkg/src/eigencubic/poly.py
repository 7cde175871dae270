"""Sparse multivariate polynomials over the fields of :mod:`eigencubic.exact`.

A :class:`Polynomial` is a mapping from exponent tuples to nonzero field
elements, tied to a :class:`VariableContext` (the ordered variable names) and
a coefficient field.  Monomial orders only matter for Groebner computations,
so polynomials are not kept sorted; :meth:`Polynomial.sorted_terms` produces
the ordered view on demand.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exact import QQ, ExtensionElement, format_rational


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if "L" in self.names and self.names[-1] != "L":
            raise ValueError("the eigenvalue variable L must come last")

    @classmethod
    def projective(cls, n: int, with_lambda: bool = False) -> "VariableContext":
        """Coordinates x0..xn of P^n, optionally followed by ``L``."""
        names = tuple(f"x{i}" for i in range(n + 1))
        return cls(names + ("L",) if with_lambda else names)

    @property
    def count(self) -> int:
        return len(self.names)

    @property
    def has_lambda(self) -> bool:
        return bool(self.names) and self.names[-1] == "L"

    @property
    def x_count(self) -> int:
        return self.count - 1 if self.has_lambda else self.count

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``elim`` (block order eliminating the first ``k``)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @cached_property
    def key(self):
        if self.kind == "lex":
            return _lex_key
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.k

        def elim_key(e):
            head = e[:k]
            return (sum(head), _grevlex_key(head), _grevlex_key(e[k:]))
        return elim_key

    def __str__(self) -> str:
        return f"elim({self.k})" if self.kind == "elim" else self.kind


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e), tuple(-v for v in reversed(e)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class Polynomial:
    __slots__ = ("ctx", "field", "terms")

    def __init__(self, ctx: VariableContext, field, terms: Mapping | None = None,
                 _trusted: bool = False):
        self.ctx = ctx
        self.field = field
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != ctx.count:
                raise DimensionMismatch(f"exponent {e} does not match {ctx.count} variables")
            c = field(c)
            if c:
                if e in clean:
                    s = clean[e] + c
                    if s:
                        clean[e] = s
                    else:
                        del clean[e]
                else:
                    clean[e] = c
        self.terms = clean

    # -- constructors --

    @classmethod
    def zero(cls, ctx, field=QQ) -> "Polynomial":
        return cls(ctx, field, {}, _trusted=True)

    @classmethod
    def constant(cls, ctx, field, c) -> "Polynomial":
        return cls(ctx, field, {(0,) * ctx.count: c})

    @classmethod
    def variable(cls, ctx, field, i: int) -> "Polynomial":
        e = [0] * ctx.count
        e[i] = 1
        return cls(ctx, field, {tuple(e): 1})

    @classmethod
    def from_dense_linear(cls, ctx, field, coeffs: Sequence) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * ctx.count
            e[i] = 1
            terms[tuple(e)] = c
        return cls(ctx, field, terms)

    def _new(self, terms: dict) -> "Polynomial":
        return Polynomial(self.ctx, self.field, terms, _trusted=True)

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise DimensionMismatch("polynomials live in different variable contexts")
        if self.field != other.field:
            raise TypeError("polynomials have different coefficient fields")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.ctx, self.field, other)

    # -- arithmetic --

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            s = self.field(other)
            if not s:
                return self._new({})
            return self._new({e: c * s for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.ctx, self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        if isinstance(other, Polynomial):
            raise TypeError("use exact_divide for polynomial division")
        s = self.field(other)
        if not s:
            raise ZeroDivisionError("division by zero")
        inv = self.field.one / s
        return self * inv

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if not self.terms:
            return other == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- structure --

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return True
        if degree is None:
            return len(degrees) == 1
        return degrees == {degree}

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, object]]:
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self / c

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), self.field.zero)

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, v in enumerate(e) if v}

    # -- calculus and substitution --

    def derivative(self, i: int) -> "Polynomial":
        if not 0 <= i < self.ctx.count:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return self._new(out)

    def linear_substitute(self, U: Sequence[Sequence]) -> "Polynomial":
        """Return f(xU): each x_i becomes sum_k x_k U[k][i]; ``L`` is untouched."""
        nx = self.ctx.x_count
        if len(U) != nx or any(len(row) != nx for row in U):
            raise DimensionMismatch(f"substitution matrix must be {nx}x{nx}")
        images = []
        for i in range(nx):
            images.append(Polynomial.from_dense_linear(
                self.ctx, self.field, [U[k][i] for k in range(nx)] + [0] * (self.ctx.count - nx)))
        power_cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = images[i] ** k
            return power_cache[key]

        result = Polynomial.zero(self.ctx, self.field)
        for e, c in self.terms.items():
            term = Polynomial.constant(self.ctx, self.field, c)
            for i in range(nx):
                if e[i]:
                    term = term * power(i, e[i])
            if nx < self.ctx.count:
                rest = (0,) * nx + e[nx:]
                term = term * Polynomial(self.ctx, self.field, {rest: 1}, _trusted=False)
            result = result + term
        return result

    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials of the same context."""
        result = Polynomial.zero(self.ctx, self.field)
        for e, c in self.terms.items():
            keep = list(e)
            term = Polynomial.constant(self.ctx, self.field, c)
            for i, p in values.items():
                if e[i]:
                    term = term * (p ** e[i])
                    keep[i] = 0
            term = term * Polynomial(self.ctx, self.field, {tuple(keep): 1})
            result = result + term
        return result

    def evaluate(self, point: Sequence):
        if len(point) != self.ctx.count:
            raise DimensionMismatch(f"expected {self.ctx.count} coordinates, got {len(point)}")
        point = [self.field(v) for v in point]
        acc = self.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v ** k
            acc = acc + t
        return acc

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        if len(point) != self.ctx.count:
            raise DimensionMismatch(f"expected {self.ctx.count} coordinates, got {len(point)}")
        acc = 0j
        embed = self.field.embed
        for e, c in self.terms.items():
            t = embed(c)
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            acc += t
        return acc

    def coefficient_norm(self) -> float:
        embed = self.field.embed
        return max((abs(embed(c)) for c in self.terms.values()), default=0.0)

    # -- change of context --

    def extend(self, ctx: VariableContext, positions: Sequence[int] | None = None) -> "Polynomial":
        """Embed into a larger context; variable j goes to ``positions[j]``."""
        if positions is None:
            positions = [ctx.index(name) for name in self.ctx.names]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * ctx.count
            for j, k in enumerate(e):
                e2[positions[j]] = k
            out[tuple(e2)] = c
        return Polynomial(ctx, self.field, out, _trusted=True)

    def restrict(self, ctx: VariableContext) -> "Polynomial":
        """Drop variables missing from ``ctx``; they must not occur."""
        keep = [self.ctx.index(name) for name in ctx.names]
        dropped = [i for i in range(self.ctx.count) if i not in keep]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise DimensionMismatch("polynomial involves a dropped variable")
            out[tuple(e[i] for i in keep)] = c
        return Polynomial(ctx, self.field, out, _trusted=True)

    def change_field(self, field) -> "Polynomial":
        return Polynomial(self.ctx, field, {e: field(c) for e, c in self.terms.items()})


def exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient p/g, raising ValueError if g does not divide p."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    p._check(g)
    key = GREVLEX.key
    lg, cg = g.leading_term(GREVLEX)
    inv = p.field.one / cg
    rem = dict(p.terms)
    quo = {}
    while rem:
        m = max(rem, key=key)
        if any(a < b for a, b in zip(m, lg)):
            raise ValueError("divisor does not divide the polynomial")
        q = tuple(a - b for a, b in zip(m, lg))
        c = rem[m] * inv
        quo[q] = c
        for e, gc in g.terms.items():
            ee = tuple(a + b for a, b in zip(e, q))
            v = rem.get(ee)
            v = -c * gc if v is None else v - c * gc
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return Polynomial(p.ctx, p.field, quo, _trusted=True)


# -- text format --

def _monomial_str(ctx: VariableContext, e: tuple) -> str:
    parts = []
    for name, k in zip(ctx.names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _coefficient_str(field, c) -> tuple[str, bool]:
    """Return (text, negative) for a coefficient, sign pulled out if rational."""
    if isinstance(c, ExtensionElement):
        if field.is_rational(c):
            c = c.coefficients[0]
        else:
            text = field.format(c)
            if " " in text:
                return "(" + text + ")", False
            if text.startswith("-"):
                return text[1:], True
            return text, False
    c = mpq(c)
    if c < 0:
        return format_rational(-c), True
    return format_rational(c), False


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Render ``f`` in the input grammar (round-trips through :func:`parse`)."""
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.sorted_terms(order):
        mono = _monomial_str(f.ctx, e)
        text, negative = _coefficient_str(f.field, c)
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        pieces.append((negative, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VariableContext, field):
        if not text.isascii():
            bad = next(i for i, ch in enumerate(text) if not ch.isascii())
            raise ParseError("non-ASCII character", bad)
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.field = field

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] not in ("op",):
            raise ParseError(f"expected {value!r}", tok[2])

    def parse(self) -> Polynomial:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return result

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.unary()
            elif tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("):
                raise ParseError("implicit multiplication is not allowed", tok[2])
            else:
                return acc

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num":
                raise ParseError("exponent must be a non-negative integer literal", exp_tok[2])
            base = base ** int(exp_tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            num = mpq(int(value))
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise ParseError("'/' is only allowed inside a rational literal p/q", den[2])
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                num = mpq(int(value), int(den[1]))
            return Polynomial.constant(self.ctx, self.field, num)
        if kind == "name":
            if value in self.ctx.names:
                return Polynomial.variable(self.ctx, self.field, self.ctx.names.index(value))
            sym = self.field.symbol(value)
            if sym is not None:
                return Polynomial.constant(self.ctx, self.field, sym)
            raise UnknownVariable(f"{value!r} (at position {pos})")
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {value!r}", pos)


def parse(text: str, ctx: VariableContext, field=QQ) -> Polynomial:
    """Parse ``text`` (operators ``+ - * ^``, literals ``p`` and ``p/q``)."""
    return _Parser(text, ctx, field).parse()


def infer_context(text: str, with_lambda: bool = False) -> VariableContext:
    """Smallest x0..xn context covering the variables named in ``text``."""
    indices = [int(m) for m in re.findall(r"\bx(\d)\b", text)]
    n = max(indices, default=0)
    return VariableContext.projective(n, with_lambda)


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree ``d``, lexicographically descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for k in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - k):
            out.append((k,) + rest)
    return out


def polynomial_from_coefficients(ctx: VariableContext, field, monomials: Iterable[tuple],
                                 coeffs: Iterable) -> Polynomial:
    return Polynomial(ctx, field, dict(zip(monomials, coeffs)))
