"""Tensors as 3-planes in P^14 and the binary eigendiscriminant.

A tensor T = (q_0, ..., q_3) spans the 4-dimensional space of quadrics
q_i - L x_i inside C[x0..x3, L]_2.  Writing each quadric in the fixed
15-monomial basis gives a 4x15 matrix whose maximal minors are the Pluecker
coordinates of that plane.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .exact import QQ
from .matrix import determinant, maximal_minors, rref
from .poly import DimensionMismatch, Polynomial, VariableContext, exact_divide
from .tensor import PartiallySymmetricTensor, as_tensor


class ConditionsViolated(ValueError):
    pass


def _basis(names: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    """Quadric exponents: x-monomials lex-descending, then L*x_i, then L^2."""
    k = len(names)
    x = [e for e in _quadrics(k - 1)]
    out = [e + (0,) for e in x]
    for i in range(k - 1):
        e = [0] * k
        e[i] = 1
        e[-1] = 1
        out.append(tuple(e))
    out.append((0,) * (k - 1) + (2,))
    return tuple(out)


def _quadrics(nvars: int) -> list[tuple]:
    out = []
    for i, j in itertools.combinations_with_replacement(range(nvars), 2):
        e = [0] * nvars
        e[i] += 1
        e[j] += 1
        out.append(tuple(e))
    return out


PLANE_CONTEXT = VariableContext.projective(3, with_lambda=True)
QUADRIC_BASIS = _basis(PLANE_CONTEXT.names)
"""x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2, x0L, x1L, x2L, x3L, L^2"""

BINARY_CONTEXT = VariableContext.projective(1, with_lambda=True)
BINARY_BASIS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
"""x0^2, x0x1, x0L, x1^2, x1L, L^2"""

LAMBDA_X_COLUMNS = (10, 11, 12, 13)
LAMBDA_SQUARED_COLUMN = 14


def basis_labels(basis=QUADRIC_BASIS, ctx: VariableContext = PLANE_CONTEXT) -> list[str]:
    return [str(Polynomial(ctx, QQ, {e: 1})) for e in basis]


@dataclass(frozen=True)
class EigenPlane:
    rows: tuple[tuple, ...]
    field: object = QQ

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 15 for r in self.rows):
            raise DimensionMismatch("an eigenplane is a 4x15 matrix")

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


def coefficient_row(q: Polynomial, basis=QUADRIC_BASIS) -> list:
    index = {e: k for k, e in enumerate(basis)}
    row = [q.field.zero] * len(basis)
    for e, c in q.terms.items():
        if e not in index:
            raise ValueError(f"{q} is not a quadric in this basis")
        row[index[e]] = c
    return row


def plane_from_tensor(T) -> EigenPlane:
    """Rows are the coefficients of q_i - L x_i."""
    T = as_tensor(T)
    if T.n != 3:
        raise DimensionMismatch("the plane construction needs a quaternary tensor")
    L = Polynomial.variable(PLANE_CONTEXT, T.field, 4)
    rows = []
    for i, q in enumerate(T.quadrics):
        p = q.extend(PLANE_CONTEXT) - L * Polynomial.variable(PLANE_CONTEXT, T.field, i)
        rows.append(tuple(coefficient_row(p)))
    return EigenPlane(tuple(rows), T.field)


def pluecker_subsets(rows: int = 4, cols: int = 15) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(cols), rows))


def pluecker_coordinates(P: EigenPlane | Sequence[Sequence]) -> list:
    """All 1365 maximal minors, column subsets in lexicographic order."""
    M = P.as_lists() if isinstance(P, EigenPlane) else [list(r) for r in P]
    return maximal_minors(M)


def pluecker_index(subset: Sequence[int], cols: int = 15) -> int:
    return pluecker_subsets(len(subset), cols).index(tuple(sorted(subset)))


@dataclass(frozen=True)
class PlaneConditions:
    lambda_squared_column_zero: bool
    lambda_block_nonsingular: bool

    @property
    def ok(self) -> bool:
        return self.lambda_squared_column_zero and self.lambda_block_nonsingular


def check_eigenplane_conditions(M: EigenPlane | Sequence[Sequence]) -> PlaneConditions:
    rows = M.as_lists() if isinstance(M, EigenPlane) else [list(r) for r in M]
    if len(rows) != 4 or any(len(r) != 15 for r in rows):
        raise DimensionMismatch("expected a 4x15 matrix")
    col_zero = all(not r[LAMBDA_SQUARED_COLUMN] for r in rows)
    block = [[r[c] for c in LAMBDA_X_COLUMNS] for r in rows]
    return PlaneConditions(col_zero, bool(determinant(block)))


def tensor_from_plane(M: EigenPlane | Sequence[Sequence], field=None) -> PartiallySymmetricTensor:
    """Normalise the row space so the L*x block is minus the identity and read off q_i."""
    rows = M.as_lists() if isinstance(M, EigenPlane) else [list(r) for r in M]
    field = field or (M.field if isinstance(M, EigenPlane) else QQ)
    rows = [[field(v) for v in r] for r in rows]
    cond = check_eigenplane_conditions(rows)
    if not cond.ok:
        raise ConditionsViolated(
            f"lambda^2 column zero: {cond.lambda_squared_column_zero}, "
            f"lambda*x block nonsingular: {cond.lambda_block_nonsingular}")
    R, pivots = rref(rows, pivot_order=LAMBDA_X_COLUMNS)
    ctx = VariableContext.projective(3)
    quadrics = []
    for i in range(4):
        row = [-v for v in R[i]]  # pivot entry becomes -1
        quadrics.append(Polynomial(ctx, field, {QUADRIC_BASIS[c][:4]: row[c] for c in range(10)}))
    return PartiallySymmetricTensor(tuple(quadrics))


# -- symmetric tensors --

def symmetry_violations(T) -> list[tuple[int, int]]:
    """Pairs i < j with dq_i/dx_j != dq_j/dx_i."""
    T = as_tensor(T)
    out = []
    for i, j in itertools.combinations(range(T.n + 1), 2):
        if T.quadrics[i].derivative(j) != T.quadrics[j].derivative(i):
            out.append((i, j))
    return out


def cubic_witness(T) -> Polynomial:
    """(1/3) sum x_i q_i, the cubic whose gradient is T when T is symmetric."""
    T = as_tensor(T)
    acc = Polynomial.zero(T.ctx, T.field)
    for i, q in enumerate(T.quadrics):
        acc = acc + Polynomial.variable(T.ctx, T.field, i) * q
    return acc * mpq(1, 3)


def is_symmetric_point(T) -> bool:
    T = as_tensor(T)
    f = cubic_witness(T)
    gradient_matches = all(f.derivative(i) == q for i, q in enumerate(T.quadrics))
    return gradient_matches and not symmetry_violations(T)


def plane_symmetry_violations(M: EigenPlane | Sequence[Sequence]) -> list[tuple[int, int]]:
    """Symmetry conditions read on the normalised (affine chart) form of a plane."""
    return symmetry_violations(tensor_from_plane(M))


# -- Veronese and pairing --

def veronese(point: Sequence, basis=QUADRIC_BASIS) -> list:
    if len(point) != len(basis[0]):
        raise DimensionMismatch("point length does not match the quadric basis")
    if not any(point):
        raise ValueError("the zero vector is not a projective point")
    out = []
    for e in basis:
        v = point[0] * 0 + 1
        for c, k in zip(point, e):
            for _ in range(k):
                v = v * c
        out.append(v)
    return out


def pairing(coefficients: Sequence, image: Sequence):
    """Unweighted monomial pairing, so <coeffs(q), nu2(p)> = q(p)."""
    acc = coefficients[0] * 0
    for a, b in zip(coefficients, image):
        acc = acc + a * b
    return acc


def eigenpair_veronese_check(T, point: Sequence) -> bool:
    """Whether (x, L) = point lies on the eigenpair scheme, via the plane pairing."""
    T = as_tensor(T)
    P = plane_from_tensor(T)
    p = [T.field(v) for v in point]
    image = veronese(p)
    return all(not pairing(row, image) for row in P.rows)


# -- binary cubics --

COEFF_CONTEXT = VariableContext(("a0", "a1", "a2", "a3"))


def binary_matrix(a0, a1, a2, a3) -> list[list]:
    """Rows q_i - L x_i for f = a0 x0^3 + a1 x0^2 x1 + a2 x0 x1^2 + a3 x1^3 in BINARY_BASIS."""
    zero = a0 * 0
    one = zero + 1
    return [[3 * a0, 2 * a1, -one, a2, zero, zero],
            [a1, 2 * a2, zero, 3 * a3, -one, zero]]


def _a(i: int) -> Polynomial:
    return Polynomial.variable(COEFF_CONTEXT, QQ, i)


def eliminated_binary_cubic() -> list[Polynomial]:
    """Coefficients (b0..b3) of x0 q1 - x1 q0 = sum b_k x0^(3-k) x1^k."""
    a0, a1, a2, a3 = (_a(i) for i in range(4))
    return [a1, 2 * a2 - 3 * a0, 3 * a3 - 2 * a1, -a2]


def binary_eigendiscriminant() -> Polynomial:
    """Discriminant of the eliminated binary cubic, by the classical closed formula."""
    b0, b1, b2, b3 = eliminated_binary_cubic()
    return (18 * b0 * b1 * b2 * b3 - 4 * b1 ** 3 * b3 + b1 ** 2 * b2 ** 2
            - 4 * b0 * b2 ** 3 - 27 * b0 ** 2 * b3 ** 2)


def _poly_det(M: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(M)
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return A[0][0] * 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else exact_divide(num, prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def _sylvester(f: Sequence[Polynomial], g: Sequence[Polynomial]) -> list[list[Polynomial]]:
    """Sylvester matrix of two binary forms given by coefficient lists (highest first)."""
    m, n = len(f) - 1, len(g) - 1
    zero = f[0] * 0
    rows = []
    for k in range(n):
        rows.append([zero] * k + list(f) + [zero] * (n - 1 - k))
    for k in range(m):
        rows.append([zero] * k + list(g) + [zero] * (m - 1 - k))
    return rows


@dataclass
class HurwitzResult:
    raw: Polynomial
    normalized: Polynomial
    scale: mpq


def _normalize_a1_quartic(p: Polynomial) -> tuple[Polynomial, mpq]:
    lead = p.coefficient((0, 4, 0, 0))
    if not lead:
        raise ArithmeticError("a1^4 coefficient vanishes; cannot normalise")
    s = mpq(32) / lead
    return p * s, s


def binary_restricted_hurwitz() -> HurwitzResult:
    """Tangency locus of the binary eigenline with the Veronese conic.

    The two conics q_i - L x_i meet in the apex and the eigenpairs.  The
    apex is transverse, so tangency happens exactly when the eigenpoints
    collide: eliminate L with a Sylvester resultant, then test the
    resulting cubic for a double root with the resultant of its partials.
    Normalised so that the a1^4 coefficient is +32.
    """
    a0, a1, a2, a3 = (_a(i) for i in range(4))
    # p0 = q0 - L x0 and p1 = q1 - L x1 as linear polynomials in L over C[a][x0, x1]
    q0 = {(2, 0): 3 * a0, (1, 1): 2 * a1, (0, 2): a2}
    q1 = {(2, 0): a1, (1, 1): 2 * a2, (0, 2): 3 * a3}
    neg_x0 = {(1, 0): -1}
    neg_x1 = {(0, 1): -1}

    # Res_L(p0, p1) = det [[q0, -x0], [q1, -x1]], expanded in x0, x1
    def mul(u, v):
        out: dict = {}
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                out[e] = out.get(e, a0 * 0) + c1 * c2
        return out

    res = mul(q0, neg_x1)
    for e, c in mul(q1, neg_x0).items():
        res[e] = res.get(e, a0 * 0) - c
    cubic = [res.get((3 - k, k), a0 * 0) for k in range(4)]  # x0^3 .. x1^3
    d0 = [3 * cubic[0], 2 * cubic[1], cubic[2]]  # d/dx0
    d1 = [cubic[1], 2 * cubic[2], 3 * cubic[3]]  # d/dx1
    raw = _poly_det(_sylvester(d0, d1))
    normalized, scale = _normalize_a1_quartic(raw)
    return HurwitzResult(raw, normalized, scale)


def parse_coefficient_term(text: str) -> tuple[tuple[int, ...], mpq]:
    """Parse a printed monomial term like '-156*a1*a3^2*a3' literally."""
    from .poly import parse
    p = parse(text, COEFF_CONTEXT)
    if len(p.terms) != 1:
        raise ValueError(f"{text!r} is not a single term")
    (e, c), = p.terms.items()
    return e, c


@dataclass
class ConjectureReport:
    eigendiscriminant: Polynomial
    hurwitz: Polynomial
    raw_ratio: mpq
    normalized_ratio: mpq | None
    unmatched_printed: list[tuple[str, mpq | None]]
    """Printed terms whose coefficient differs from the computed one (computed value)."""
    uncovered_computed: list[tuple[tuple[int, ...], mpq]]
    """Computed terms not reproduced by any printed term."""

    @property
    def ratio_is_unit(self) -> bool:
        return self.normalized_ratio is not None and abs(self.normalized_ratio) == 1


def _constant_ratio(p: Polynomial, q: Polynomial) -> mpq | None:
    if not q or set(p.terms) != set(q.terms):
        return None
    ratios = {p.terms[e] / q.terms[e] for e in q.terms}
    return ratios.pop() if len(ratios) == 1 else None


def compare_conjecture(printed_terms: Sequence[str]) -> ConjectureReport:
    """Compare the eigendiscriminant with the restricted Hurwitz form and a printed display."""
    disc = binary_eigendiscriminant()
    hw = binary_restricted_hurwitz()
    unmatched = []
    covered = set()
    for text in printed_terms:
        e, c = parse_coefficient_term(text)
        actual = disc.coefficient(e)
        if actual == c:
            covered.add(e)
        else:
            unmatched.append((text, actual if actual else None))
    uncovered = sorted(((e, c) for e, c in disc.terms.items() if e not in covered), reverse=True)
    return ConjectureReport(disc, hw.normalized, _constant_ratio(hw.raw, disc),
                            _constant_ratio(hw.normalized, disc), unmatched, uncovered)
