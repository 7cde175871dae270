import itertools
import random
from math import comb

import pytest
from gmpy2 import mpq

from eigencubic.exact import QQ, ExtensionElement, gaussian_field, theta_field
from eigencubic.poly import VariableContext, monomials_of_degree, parse

# A prime p = 1 mod 4 in which t^6 + 8/9 also has a root.
MODULUS = 1000000009


def ctx(n, with_lambda=False):
    return VariableContext.projective(n, with_lambda)


def poly(text, n, field=QQ, with_lambda=False):
    return parse(text, ctx(n, with_lambda), field)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def QI():
    return gaussian_field()


@pytest.fixture(scope="session")
def QT():
    return theta_field()


# -- Macaulay-matrix Hilbert function oracle (independent of Groebner bases) --

def _sqrt_minus_one(p):
    for g in range(2, 200):
        r = pow(g, (p - 1) // 4, p)
        if r * r % p == p - 1:
            return r
    raise AssertionError("no square root of -1")


# a root of t^6 + 8/9 modulo MODULUS (computed once with an independent nth-root solver)
THETA_MOD_ROOT = 41328833


_ROOTS = {}


def reduce_mod(c, p=MODULUS):
    """Ring map Q(t) -> F_p sending t to a fixed root of m(t) modulo p."""
    if isinstance(c, ExtensionElement):
        field = c.field
        if field not in _ROOTS:
            m = field.minimal_polynomial
            if m == (1, 0, 1):
                _ROOTS[field] = _sqrt_minus_one(p)
            elif m == (mpq(8, 9), 0, 0, 0, 0, 0, 1):
                _ROOTS[field] = THETA_MOD_ROOT
            else:
                raise NotImplementedError
        t = _ROOTS[field]
        return sum(reduce_mod(v, p) * pow(t, k, p) for k, v in enumerate(c.coefficients)) % p
    c = mpq(c)
    return int(c.numerator) * pow(int(c.denominator), -1, p) % p


def rank_mod(rows, p=MODULUS):
    A = [list(r) for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        A[rank] = [v * inv % p for v in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def brute_hilbert_function(gens, nvars, d, p=MODULUS):
    """dim of the degree-d part of k[x]/(gens), by the rank of all multiples."""
    cols = monomials_of_degree(nvars, d)
    index = {m: k for k, m in enumerate(cols)}
    rows = []
    for g in gens:
        dg = g.total_degree()
        if dg > d:
            continue
        for m in monomials_of_degree(nvars, d - dg):
            row = [0] * len(cols)
            for e, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = reduce_mod(c, p)
            rows.append(row)
    r = rank_mod(rows, p) if rows else 0
    return comb(nvars + d - 1, d) - r


def random_points(rng, count, n, bound=5):
    return [[mpq(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n + 1)]
            for _ in range(count)]


def collinear(p, q, r):
    """Exact test: rank of the 3 x (n+1) matrix is < 3."""
    rows = [list(p), list(q), list(r)]
    for cols in itertools.combinations(range(len(p)), 3):
        m = [[row[c] for c in cols] for row in rows]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if det:
            return False
    return True
