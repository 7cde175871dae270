"""Exact coefficient fields: the rationals and simple extensions Q[t]/(m(t)).

Rationals are ``gmpy2.mpq`` values.  An extension field is described by a
:class:`FieldDescriptor`; its elements are :class:`ExtensionElement` objects
holding ``d`` rational coordinates in the power basis ``1, t, ..., t^(d-1)``.

Both field kinds expose the same small interface used by the polynomial
layer: calling the field coerces a value, ``zero``/``one``, ``embed`` to a
Python ``complex`` and ``format`` into the polynomial text grammar.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Sequence

import numpy as np
from gmpy2 import mpq

Rational = mpq


class NotSquarefree(ValueError):
    pass


class InvalidRootIndex(ValueError):
    pass


class NotInvertible(ArithmeticError):
    """Raised when inverting a zero divisor of a reducible modulus."""


def to_rational(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def format_rational(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# -- dense univariate helpers over Q (coefficient lists, lowest degree first) --

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def upoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([mpq(c) for c in a])
    b = _trim([mpq(c) for c in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for k, bc in enumerate(b):
            a[shift + k] -= c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def upoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd of two univariate polynomials."""
    a = _trim([mpq(c) for c in a])
    b = _trim([mpq(c) for c in b])
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def upoly_derivative(a: Sequence) -> list:
    return _trim([mpq(k) * a[k] for k in range(1, len(a))])


class RationalField:
    """The field Q.  Elements are plain ``mpq`` values."""

    degree = 1
    name = "QQ"
    generator_names: tuple[str, ...] = ()

    def __call__(self, x) -> mpq:
        if isinstance(x, ExtensionElement):
            raise TypeError("cannot coerce an extension element into QQ")
        return to_rational(x)

    @property
    def zero(self) -> mpq:
        return mpq(0)

    @property
    def one(self) -> mpq:
        return mpq(1)

    def symbol(self, name: str):
        return None

    def embed(self, c) -> complex:
        return complex(float(c), 0.0)

    def format(self, c) -> str:
        return format_rational(mpq(c))

    def is_rational(self, c) -> bool:
        return True

    def random_element(self, rng: random.Random, bound: int = 9) -> mpq:
        return mpq(rng.randint(-bound, bound), rng.randint(1, bound))

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


class FieldDescriptor:
    """A simple algebraic extension Q[t]/(m(t)) with a chosen complex root.

    ``minimal_polynomial`` is stored monic, lowest degree coefficient first.
    Irreducibility of ``m`` is not checked; inverting a zero divisor raises
    :class:`NotInvertible`.
    """

    def __init__(self, minimal_polynomial: Sequence, chosen_root_index: int = 0,
                 generator_name: str = "t"):
        m = _trim([to_rational(c) for c in minimal_polynomial])
        if len(m) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        m = [c / m[-1] for c in m]
        if len(upoly_gcd(m, upoly_derivative(m))) > 1:
            raise NotSquarefree("minimal polynomial is not squarefree")
        self.minimal_polynomial: tuple[mpq, ...] = tuple(m)
        self.degree = len(m) - 1
        self.generator_name = generator_name
        self.complex_roots = _sorted_roots(m)
        if not 0 <= chosen_root_index < self.degree:
            raise InvalidRootIndex(
                f"root index {chosen_root_index} outside [0, {self.degree})")
        self.chosen_root_index = chosen_root_index
        self.root = self.complex_roots[chosen_root_index]
        # reduction rule: t^d = -(m_0 + ... + m_{d-1} t^{d-1})
        self._tail = tuple(-c for c in m[:-1])
        self.aliases: dict[str, ExtensionElement] = {}

    @property
    def name(self) -> str:
        return f"QQ[{self.generator_name}]/({self.format_minimal_polynomial()})"

    @property
    def generator_names(self) -> tuple[str, ...]:
        return ("t", self.generator_name) if self.generator_name != "t" else ("t",)

    def format_minimal_polynomial(self, var: str = "t") -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.minimal_polynomial[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_join_coeff(c, mono))
        return _join_terms(parts)

    def __call__(self, x) -> "ExtensionElement":
        if isinstance(x, ExtensionElement):
            if x.field is not self and x.field != self:
                raise TypeError("element belongs to a different field")
            return x
        c = [mpq(0)] * self.degree
        c[0] = to_rational(x)
        return ExtensionElement(self, tuple(c))

    def element(self, coefficients: Sequence) -> "ExtensionElement":
        c = [to_rational(v) for v in coefficients]
        if len(c) > self.degree:
            return ExtensionElement(self, self._reduce(c))
        c += [mpq(0)] * (self.degree - len(c))
        return ExtensionElement(self, tuple(c))

    @property
    def zero(self) -> "ExtensionElement":
        return ExtensionElement(self, (mpq(0),) * self.degree)

    @property
    def one(self) -> "ExtensionElement":
        return self(1)

    @property
    def generator(self) -> "ExtensionElement":
        if self.degree == 1:
            return self(self._tail[0])
        c = [mpq(0)] * self.degree
        c[1] = mpq(1)
        return ExtensionElement(self, tuple(c))

    def symbol(self, name: str):
        if name in self.generator_names:
            return self.generator
        return self.aliases.get(name)

    def _reduce(self, prod: list) -> tuple:
        d = self.degree
        tail = self._tail
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for j in range(d):
                    if tail[j]:
                        prod[base + j] += c * tail[j]
        return tuple(prod[:d])

    def embed(self, c: "ExtensionElement") -> complex:
        if not isinstance(c, ExtensionElement):
            return complex(float(c))
        acc = 0j
        for v in reversed(c.coefficients):
            acc = acc * self.root + float(v)
        return acc

    def format(self, c: "ExtensionElement") -> str:
        parts = []
        g = self.generator_name
        for k in range(self.degree - 1, -1, -1):
            v = c.coefficients[k]
            if not v:
                continue
            mono = "" if k == 0 else (g if k == 1 else f"{g}^{k}")
            parts.append(_join_coeff(v, mono))
        if not parts:
            return "0"
        return _join_terms(parts)

    def is_rational(self, c: "ExtensionElement") -> bool:
        return not any(c.coefficients[1:])

    def random_element(self, rng: random.Random, bound: int = 9):
        return ExtensionElement(self, tuple(
            mpq(rng.randint(-bound, bound), rng.randint(1, bound))
            for _ in range(self.degree)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldDescriptor)
                and self.minimal_polynomial == other.minimal_polynomial
                and self.chosen_root_index == other.chosen_root_index)

    def __hash__(self) -> int:
        return hash((self.minimal_polynomial, self.chosen_root_index))

    def __repr__(self) -> str:
        return f"FieldDescriptor({self.format_minimal_polynomial()}, root={self.chosen_root_index})"


def _join_coeff(c: mpq, mono: str) -> str:
    if not mono:
        return format_rational(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_rational(c)}*{mono}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _sorted_roots(m: Sequence[mpq]) -> tuple[complex, ...]:
    d = len(m) - 1
    companion = np.zeros((d, d), dtype=complex)
    companion[1:, :-1] = np.eye(d - 1)
    companion[:, -1] = [-float(c) for c in m[:-1]]
    roots = np.linalg.eigvals(companion)
    polished = []
    for r in roots:
        r = complex(r)
        for _ in range(3):
            val = der = 0j
            for c in reversed(m):
                der = der * r + val
                val = val * r + float(c)
            if der == 0:
                break
            r -= val / der
        polished.append(r)

    def key(z: complex):
        re, im = round(z.real, 9), round(z.imag, 9)
        return (re + 0.0, im + 0.0)

    return tuple(sorted(polished, key=key))


class ExtensionElement:
    """Element c_0 + c_1 t + ... + c_{d-1} t^{d-1} of a :class:`FieldDescriptor`."""

    __slots__ = ("field", "coefficients")

    def __init__(self, field: FieldDescriptor, coefficients: tuple):
        self.field = field
        self.coefficients = coefficients

    def _coerce(self, other):
        if isinstance(other, ExtensionElement):
            return other.coefficients
        c = [mpq(0)] * self.field.degree
        c[0] = mpq(other)
        return c

    def __add__(self, other):
        o = self._coerce(other)
        return ExtensionElement(self.field, tuple(a + b for a, b in zip(self.coefficients, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return ExtensionElement(self.field, tuple(a - b for a, b in zip(self.coefficients, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        return ExtensionElement(self.field, tuple(b - a for a, b in zip(self.coefficients, o)))

    def __neg__(self):
        return ExtensionElement(self.field, tuple(-a for a in self.coefficients))

    def __mul__(self, other):
        if not isinstance(other, ExtensionElement):
            s = mpq(other)
            return ExtensionElement(self.field, tuple(a * s for a in self.coefficients))
        a = self.coefficients
        b = other.coefficients
        d = self.field.degree
        prod = [mpq(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return ExtensionElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "ExtensionElement":
        if not any(self.coefficients):
            raise ZeroDivisionError("inverse of zero in an extension field")
        # extended Euclid: find u with u*a = 1 mod m
        m = list(self.field.minimal_polynomial)
        r0, r1 = m, _trim(list(self.coefficients))
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, r = upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
            if not r1:
                raise NotInvertible("element shares a factor with the modulus")
        if not r1:
            raise NotInvertible("element shares a factor with the modulus")
        c = r1[0]
        inv = [v / c for v in s1]
        _, inv = upoly_divmod(inv, m)
        inv += [mpq(0)] * (self.field.degree - len(inv))
        return ExtensionElement(self.field, tuple(inv))

    def __truediv__(self, other):
        if isinstance(other, ExtensionElement):
            return self * other.inverse()
        s = mpq(other)
        if not s:
            raise ZeroDivisionError("division by zero")
        return ExtensionElement(self.field, tuple(a / s for a in self.coefficients))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.coefficients)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtensionElement):
            return self.coefficients == other.coefficients
        try:
            return self.coefficients == tuple(self._coerce(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if not any(self.coefficients[1:]):
            return hash(self.coefficients[0])
        return hash(self.coefficients)

    def __complex__(self) -> complex:
        return self.field.embed(self)

    def __repr__(self) -> str:
        return self.field.format(self)


def _upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _upoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    return _trim([mpq(v) for v in out])


def make_field(minimal_polynomial: Sequence, chosen_root_index: int = 0,
               generator_name: str = "t") -> FieldDescriptor:
    """Build Q[t]/(m) from the coefficients of ``m`` (lowest degree first)."""
    return FieldDescriptor(minimal_polynomial, chosen_root_index, generator_name)


def invert(e):
    if isinstance(e, ExtensionElement):
        return e.inverse()
    e = mpq(e)
    if not e:
        raise ZeroDivisionError("inverse of zero")
    return 1 / e


def embed_complex(e) -> complex:
    if isinstance(e, ExtensionElement):
        return e.field.embed(e)
    return complex(float(e), 0.0)


def gaussian_field() -> FieldDescriptor:
    """Q(i) with ``i`` the root +i of t^2 + 1."""
    roots = _sorted_roots([mpq(1), mpq(0), mpq(1)])
    index = min(range(2), key=lambda k: abs(roots[k] - 1j))
    return FieldDescriptor([1, 0, 1], index, generator_name="i")


def theta_field(chosen_root_index: int = 0) -> FieldDescriptor:
    """Q(theta) with theta^6 = -8/9."""
    return FieldDescriptor([mpq(8, 9), 0, 0, 0, 0, 0, 1], chosen_root_index,
                           generator_name="theta")


def field_from_spec(spec: str) -> RationalField | FieldDescriptor:
    """Resolve a field name used on the command line.

    Accepts ``rational``, ``gaussian``, ``theta`` or ``ext:<coefficients>``
    where the coefficients of m(t) are listed lowest degree first and
    separated by commas, optionally followed by ``@<root index>``.
    """
    spec = spec.strip()
    if spec in ("rational", "QQ", "q"):
        return QQ
    if spec in ("gaussian", "i"):
        return gaussian_field()
    if spec == "theta":
        return theta_field()
    if spec.startswith("ext:"):
        body = spec[4:]
        index = 0
        if "@" in body:
            body, idx = body.rsplit("@", 1)
            index = int(idx)
        coeffs = [to_rational(c) for c in body.split(",")]
        return make_field(coeffs, index)
    raise ValueError(f"unknown field {spec!r}")


# -- Q(theta, i) through the primitive element gamma = theta + i --

def _gaussian_poly_mul(a: list, b: list) -> list:
    """Multiply polynomials whose coefficients are (re, im) pairs of rationals."""
    out = [(mpq(0), mpq(0))] * (len(a) + len(b) - 1)
    for k, (ar, ai) in enumerate(a):
        for j, (br, bi) in enumerate(b):
            r, i = out[k + j]
            out[k + j] = (r + ar * br - ai * bi, i + ar * bi + ai * br)
    return out


def _shifted_theta_poly(sign: int) -> list:
    """Coefficients of (g - sign*i)^6 + 8/9 as (re, im) pairs."""
    from math import comb
    # (-sign*i)^k cycles through 1, -sign*i, -1, sign*i
    cycle = [(1, 0), (0, -sign), (-1, 0), (0, sign)]
    coeffs = []
    for k in range(7):
        re, im = cycle[(6 - k) % 4]
        c = comb(6, k)
        coeffs.append((mpq(c * re), mpq(c * im)))
    coeffs[0] = (coeffs[0][0] + mpq(8, 9), coeffs[0][1])
    return coeffs


def _field_poly_rem(a: list, b: list) -> list:
    a = list(a)
    while b and not b[-1]:
        b = b[:-1]
    inv = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        for k, v in enumerate(b):
            a[shift + k] = a[shift + k] - c * v
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


@lru_cache(maxsize=None)
def theta_gaussian_field():
    """The degree-12 field Q(theta, i) with theta^6 = -8/9 and i^2 = -1.

    Built on the primitive element gamma = theta + i, whose minimal
    polynomial is ((g - i)^6 + 8/9)((g + i)^6 + 8/9).  Returns the field
    together with the elements theta and i; the embedding sends i to +i
    and theta to the root of t^6 + 8/9 with the smallest sort key.
    """
    prod = _gaussian_poly_mul(_shifted_theta_poly(1), _shifted_theta_poly(-1))
    if any(im for _, im in prod):
        raise AssertionError("norm polynomial must have rational coefficients")
    coeffs = [re for re, _ in prod]
    theta0 = _sorted_roots([mpq(8, 9), 0, 0, 0, 0, 0, 1])[0]
    probe = FieldDescriptor(coeffs, 0)
    index = min(range(probe.degree), key=lambda k: abs(probe.complex_roots[k] - (theta0 + 1j)))
    K = FieldDescriptor(coeffs, index, generator_name="gamma")
    gamma = K.generator
    # i is the common root of s^2 + 1 and (gamma - s)^6 + 8/9
    a = [K.one, K.zero, K.one]
    b = [K.zero] * 7
    from math import comb
    for k in range(7):
        # (gamma - s)^6 = sum_k C(6,k) gamma^(6-k) (-s)^k
        b[k] = gamma ** (6 - k) * (comb(6, k) * (-1) ** k)
    b[0] = b[0] + mpq(8, 9)
    while any(b):
        a, b = b, _field_poly_rem(a, b)
    if len(a) != 2:
        raise AssertionError("expected a linear gcd")
    i = -(a[0] / a[1])
    theta = gamma - i
    K.aliases.update(theta=theta, i=i)
    return K, theta, i
