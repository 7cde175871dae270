"""Buchberger Groebner bases and the ideal operations built on them.

The inner loop works on bare ``{exponent tuple: coefficient}`` dicts;
:class:`Ideal` and :class:`GroebnerBasis` wrap the results as
:class:`~eigencubic.poly.Polynomial` objects.

Saturation is computed by iterating ideal quotients until the ideal
stabilises, and quotients go through intersections with a principal ideal.
Every intermediate ideal of a homogeneous input therefore stays homogeneous,
so :func:`hilbert` applies to all of them.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dataclass_field
from typing import Iterable, Sequence

from .exact import QQ
from .poly import (GREVLEX, DimensionMismatch, MonomialOrder, Polynomial,
                   VariableContext, elimination, exact_divide)


class NotHomogeneous(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw dict kernels

def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _leading(p: dict, key) -> tuple:
    return max(p, key=key)


def _monic(p: dict, key, one) -> dict:
    lm = _leading(p, key)
    c = p[lm]
    if c == one:
        return p
    inv = one / c
    return {e: v * inv for e, v in p.items()}


def _reduce(p: dict, reducers: Sequence[tuple[tuple, dict]], key, full: bool = True) -> dict:
    """Normal form of ``p`` modulo monic ``reducers`` given as (lm, poly)."""
    p = dict(p)
    result = {}
    keycache: dict = {}

    def k(e):
        v = keycache.get(e)
        if v is None:
            v = keycache[e] = key(e)
        return v

    while p:
        m = max(p, key=k)
        c = p.pop(m)
        for lm, g in reducers:
            if _divides(lm, m):
                break
        else:
            result[m] = c
            if not full:
                result.update(p)
                return result
            continue
        q = tuple(a - b for a, b in zip(m, lm))
        for e, gc in g.items():
            if e == lm:
                continue
            ee = tuple(a + b for a, b in zip(e, q))
            v = p.get(ee)
            if v is None:
                p[ee] = -(c * gc)
            else:
                v = v - c * gc
                if v:
                    p[ee] = v
                else:
                    del p[ee]
    return result


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    L = _lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(L, lf))
    qg = tuple(a - b for a, b in zip(L, lg))
    out = {}
    for e, c in f.items():
        out[tuple(a + b for a, b in zip(e, qf))] = c
    for e, c in g.items():
        ee = tuple(a + b for a, b in zip(e, qg))
        v = out.get(ee)
        if v is None:
            out[ee] = -c
        else:
            v = v - c
            if v:
                out[ee] = v
            else:
                del out[ee]
    return out


def _buchberger(gens: Iterable[dict], key, one) -> list[dict]:
    """Reduced Groebner basis of nonzero dict polynomials ``gens``."""
    polys: list[dict] = []
    lms: list[tuple] = []
    sugar: list[int] = []
    G: list[int] = []
    pairs: list = []

    def push_pair(i, j):
        L = _lcm(lms[i], lms[j])
        dl = sum(L)
        s = max(sugar[i] + dl - sum(lms[i]), sugar[j] + dl - sum(lms[j]))
        heapq.heappush(pairs, (s, _neg(key(L)), i, j, L))

    def update(h: int):
        nonlocal G, pairs
        lh = lms[h]
        lcms = {g: _lcm(lms[g], lh) for g in G}
        C = list(G)
        D: list[int] = []
        while C:
            g = C.pop(0)
            Lg = lcms[g]
            if _coprime(lms[g], lh):
                D.append(g)
                continue
            if any(_divides(lcms[o], Lg) for o in C) or any(_divides(lcms[o], Lg) for o in D):
                continue
            D.append(g)
        new = [g for g in D if not _coprime(lms[g], lh)]
        kept = []
        for entry in pairs:
            i, j, L = entry[2], entry[3], entry[4]
            if _divides(lh, L) and _lcm(lms[i], lh) != L and _lcm(lms[j], lh) != L:
                continue
            kept.append(entry)
        heapq.heapify(kept)
        pairs = kept
        G = [g for g in G if not _divides(lh, lms[g])] + [h]
        for g in new:
            push_pair(g, h)

    def add(p: dict, s: int):
        p = _monic(p, key, one)
        polys.append(p)
        lms.append(_leading(p, key))
        sugar.append(s)
        update(len(polys) - 1)

    start = sorted((g for g in gens if g), key=lambda p: key(_leading(p, key)))
    for f in start:
        h = _reduce(f, [(lms[g], polys[g]) for g in G], key)
        if h:
            add(h, max(sum(e) for e in f))

    while pairs:
        s, _, i, j, _L = heapq.heappop(pairs)
        sp = _spoly(polys[i], lms[i], polys[j], lms[j])
        if not sp:
            continue
        h = _reduce(sp, [(lms[g], polys[g]) for g in G], key)
        if h:
            add(h, s)

    basis = [polys[g] for g in G]
    leads = [lms[g] for g in G]
    reduced = []
    for idx, p in enumerate(basis):
        others = [(leads[k], basis[k]) for k in range(len(basis)) if k != idx]
        lm = leads[idx]
        tail = {e: c for e, c in p.items() if e != lm}
        r = _reduce(tail, others, key)
        r[lm] = p[lm]
        reduced.append(r)
    reduced.sort(key=lambda p: key(_leading(p, key)))
    return reduced


def _neg(k):
    if isinstance(k, tuple):
        return tuple(_neg(v) for v in k)
    return -k


# ---------------------------------------------------------------------------
# public objects

class Ideal:
    """A finitely generated ideal of a polynomial ring."""

    def __init__(self, generators: Iterable[Polynomial], ctx: VariableContext | None = None,
                 field=None):
        gens = [g for g in generators if g]
        if ctx is None:
            if not gens:
                raise ValueError("context required for an ideal without generators")
            ctx = gens[0].ctx
        if field is None:
            field = gens[0].field if gens else QQ
        for g in gens:
            if g.ctx != ctx:
                raise DimensionMismatch("generators live in different contexts")
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.ctx = ctx
        self.field = field
        self._bases: dict = {}

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner(self, order: MonomialOrder = GREVLEX) -> "GroebnerBasis":
        gb = self._bases.get(order)
        if gb is None:
            gb = groebner(self, order)
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit

    def __contains__(self, p: Polynomial) -> bool:
        return not normal_form(p, self.groebner())

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    ctx: VariableContext
    field: object = QQ
    _raw: list = dataclass_field(default_factory=list, repr=False)

    @property
    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].total_degree() == 0

    @property
    def leading_monomials(self) -> list[tuple]:
        key = self.order.key
        return [_leading(p, key) for p in self._raw]

    def ideal(self) -> Ideal:
        return Ideal(self.elements, self.ctx, self.field)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _raw(p: Polynomial) -> dict:
    return dict(p.terms)


def groebner(I: Ideal, order: MonomialOrder = GREVLEX, verify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (monic, sorted by ascending leading term)."""
    key = order.key
    one = I.field.one
    raw = _buchberger([_raw(g) for g in I.generators], key, one)
    elements = tuple(Polynomial(I.ctx, I.field, p, _trusted=True) for p in raw)
    gb = GroebnerBasis(order, elements, I.ctx, I.field, raw)
    if verify:
        reducers = list(zip(gb.leading_monomials, raw))
        for g in I.generators:
            if _reduce(_raw(g), reducers, key, full=False):
                raise AssertionError("input generator does not reduce to zero")
    I._bases[order] = gb
    return gb


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    if p.ctx != G.ctx:
        raise DimensionMismatch("polynomial and basis live in different contexts")
    reducers = list(zip(G.leading_monomials, G._raw))
    r = _reduce(_raw(p), reducers, G.order.key)
    return Polynomial(p.ctx, p.field, r, _trusted=True)


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    key = G.order.key
    leads = G.leading_monomials
    reducers = list(zip(leads, G._raw))
    for i in range(len(G._raw)):
        for j in range(i + 1, len(G._raw)):
            if _coprime(leads[i], leads[j]):
                continue
            sp = _spoly(G._raw[i], leads[i], G._raw[j], leads[j])
            if sp and _reduce(sp, reducers, key, full=False):
                return False
    return True


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I."""
    _same_ring(I, J)
    gb = I.groebner()
    return all(not normal_form(g, gb) for g in J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    a = I.groebner()
    b = J.groebner()
    return [g.terms for g in a.elements] == [g.terms for g in b.elements]


def _same_ring(I: Ideal, J: Ideal):
    if I.ctx != J.ctx:
        raise DimensionMismatch("ideals live in different contexts")
    if I.field != J.field:
        raise TypeError("ideals have different coefficient fields")


def unit_ideal(ctx: VariableContext, field=QQ) -> Ideal:
    return Ideal([Polynomial.constant(ctx, field, 1)], ctx, field)


def zero_ideal(ctx: VariableContext, field=QQ) -> Ideal:
    return Ideal([], ctx, field)


def eliminate(I: Ideal, variables: Iterable[int | str]) -> Ideal:
    """Intersection of ``I`` with the subring in the remaining variables.

    The result lives in the context obtained by dropping the eliminated
    variables.
    """
    elim = sorted({v if isinstance(v, int) else I.ctx.index(v) for v in variables})
    k = len(elim)
    if not 0 < k < I.ctx.count:
        raise ValueError("must eliminate at least one and not all variables")
    rest = [i for i in range(I.ctx.count) if i not in elim]
    perm = elim + rest
    # raw exponent tuples with the eliminated variables moved to the front
    gens = [{tuple(e[i] for i in perm): c for e, c in g.terms.items()} for g in I.generators]
    small = VariableContext(tuple(I.ctx.names[i] for i in rest))
    kept = [Polynomial(small, I.field, p, _trusted=True)
            for p in _eliminate_front(gens, I.field, k)]
    return Ideal(kept, small, I.field)


def _eliminate_front(gens: list[dict], field, k: int = 1) -> list[dict]:
    key = elimination(k).key
    basis = _buchberger(gens, key, field.one)
    return [{e[k:]: c for e, c in p.items()} for p in basis
            if all(not any(e[:k]) for e in p)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of t from t*I + (1 - t)*J."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return zero_ideal(I.ctx, I.field)
    gens = []
    for g in I.generators:
        gens.append({(1,) + e: c for e, c in g.terms.items()})
    for g in J.generators:
        p = {}
        for e, c in g.terms.items():
            p[(0,) + e] = c
            p[(1,) + e] = -c
        gens.append(p)
    raw = _eliminate_front(gens, I.field)
    return Ideal([Polynomial(I.ctx, I.field, p, _trusted=True) for p in raw], I.ctx, I.field)


def quotient(I: Ideal, g: Polynomial) -> Ideal:
    """I : g = (I ∩ (g)) / g."""
    if not g:
        raise ZeroDivisionError("ideal quotient by the zero polynomial")
    if I.is_zero():
        return zero_ideal(I.ctx, I.field)
    meet = intersect(I, Ideal([g], I.ctx, I.field))
    return Ideal([exact_divide(p, g) for p in meet.generators], I.ctx, I.field)


def quotient_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of the quotients by the generators of J."""
    _same_ring(I, J)
    if J.is_zero():
        return unit_ideal(I.ctx, I.field)
    result = None
    for g in J.generators:
        q = quotient(I, g)
        if q.is_unit():
            continue
        result = q if result is None else intersect(result, q)
    if result is None:
        return unit_ideal(I.ctx, I.field)
    return Ideal(result.groebner().elements, I.ctx, I.field)


def saturate(I: Ideal, J: Ideal, max_rounds: int = 64) -> Ideal:
    """I : J^∞ by iterated quotients until the ideal stops growing."""
    _same_ring(I, J)
    if J.is_zero():
        return unit_ideal(I.ctx, I.field)
    current = Ideal(I.groebner().elements, I.ctx, I.field)
    for _ in range(max_rounds):
        nxt = quotient_ideal(current, J)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise RuntimeError("saturation did not stabilise")


# ---------------------------------------------------------------------------
# Hilbert series of homogeneous ideals

@dataclass(frozen=True)
class HilbertData:
    """Projective dimension, degree and Hilbert series numerator.

    The Hilbert series of the quotient ring is ``numerator(t) / (1 - t)^nvars``
    with ``numerator`` given as a coefficient list (lowest degree first).
    ``degree`` is None when the scheme is empty.
    """

    projective_dimension: int
    degree: int | None
    numerator: tuple[int, ...]
    nvars: int

    def hilbert_function(self, d: int) -> int:
        """Dimension of the degree-``d`` part of the quotient ring."""
        from math import comb
        total = 0
        for k, c in enumerate(self.numerator):
            if c and d - k >= 0:
                total += c * comb(d - k + self.nvars - 1, self.nvars - 1)
        return total


def _minimalize(monos: Iterable[tuple]) -> list[tuple]:
    ms = sorted(set(monos), key=sum)
    out: list[tuple] = []
    for m in ms:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]


def _hilbert_numerator(monos: list[tuple]) -> list[int]:
    """Numerator of the Hilbert series of k[x]/(monos) by pivot recursion."""
    monos = _minimalize(monos)
    if not monos:
        return [1]
    if any(sum(m) == 0 for m in monos):
        return [0]
    # pairwise coprime generators: numerator is prod (1 - t^deg)
    support = [i for m in monos for i, v in enumerate(m) if v]
    if len(support) == len(set(support)):
        out = [1]
        for m in monos:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    counts: dict[int, int] = {}
    for i in support:
        counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    pivot = tuple(1 if i == var else 0 for i in range(len(monos[0])))
    # N(M) = N(M + (x)) + t * N(M : x)
    plus = [m for m in monos if not m[var]] + [pivot]
    colon = [tuple(v - 1 if i == var and v else v for i, v in enumerate(m)) for m in monos]
    a = _hilbert_numerator(plus)
    b = _hilbert_numerator(colon)
    return _poly_add(a, [0] + b)


def hilbert_from_leading_monomials(monos: Sequence[tuple], nvars: int) -> HilbertData:
    num = _hilbert_numerator(list(monos)) if monos else [1]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if not any(num):
        return HilbertData(-1, None, (0,), nvars)
    h = list(num)
    r = 0
    # divide by (1 - t) while h(1) == 0
    while sum(h) == 0:
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = q
        r += 1
    krull = nvars - r
    proj = krull - 1
    degree = sum(h) if proj >= 0 else None
    return HilbertData(proj, degree, tuple(num), nvars)


def hilbert(I: Ideal) -> HilbertData:
    if not I.is_homogeneous:
        raise NotHomogeneous("Hilbert data requires a homogeneous ideal")
    nvars = I.ctx.count
    if I.is_zero():
        return hilbert_from_leading_monomials([], nvars)
    gb = I.groebner(GREVLEX)
    return hilbert_from_leading_monomials(gb.leading_monomials, nvars)
