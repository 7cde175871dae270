"""Exact linear algebra over the coefficient fields and a dense complex eigensolver.

Exact matrices are plain lists of rows whose entries are field elements
(``mpq`` or :class:`~eigencubic.exact.ExtensionElement`).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .exact import QQ


class SingularMatrix(ArithmeticError):
    pass


class NoConvergence(ArithmeticError):
    pass


def _copy(M: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in M]


def rref(M: Sequence[Sequence], pivot_order: Sequence[int] | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns.

    ``pivot_order`` lists the columns in the order they are tried as pivots
    (default: left to right).  The returned rows are sorted so that pivot
    ``k`` sits in row ``k``; the pivot list follows the same order.
    """
    A = _copy(M)
    if not A:
        return A, []
    ncols = len(A[0])
    cols = list(pivot_order) if pivot_order is not None else list(range(ncols))
    pivots = []
    r = 0
    for c in cols:
        if r == len(A):
            break
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    if all(isinstance(v, (int, type(mpq(0)))) for row in M for v in row):
        return _integer_rank(M)
    return len(rref(M)[1])


def _integer_rows(M: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; returns the rows and the product of row scalings."""
    rows = []
    scale = 1
    for row in M:
        den = 1
        for v in row:
            d = mpq(v).denominator
            den = den * d // math.gcd(den, d)
        rows.append([int(mpq(v) * den) for v in row])
        scale *= den
    return rows, scale


def _integer_rank(M: Sequence[Sequence]) -> int:
    A, _ = _integer_rows(M)
    ncols = len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, len(A)):
            a = A[i][c]
            A[i] = [(piv * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = piv
        r += 1
        if r == len(A):
            break
    return r


def determinant(M: Sequence[Sequence]):
    n = len(M)
    if n == 0:
        return mpq(1)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(v, (int, type(mpq(0)))) for row in M for v in row):
        A, scale = _integer_rows(M)
        return mpq(_bareiss(A), scale)
    A = _copy(M)
    det = A[0][0] * 0 + 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return A[0][0] * 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def _bareiss(A: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``A``)."""
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def maximal_minors(M: Sequence[Sequence]) -> list:
    """All maximal minors, column subsets in lexicographic order."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows > cols:
        raise ValueError("maximal minors need rows <= cols")
    out = []
    for subset in itertools.combinations(range(cols), rows):
        out.append(determinant([[row[c] for c in subset] for row in M]))
    return out


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    inner = len(B)
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), A[i][0] * 0)
             for j in range(len(B[0]))] for i in range(len(A))]


def identity(n: int, field=QQ) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def inverse(M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    one = M[0][0] * 0 + 1
    zero = M[0][0] * 0
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def nullspace(M: Sequence[Sequence], ncols: int, field=QQ) -> tuple[list[list], int]:
    """Exact basis of {v : M v = 0} and the rank of M."""
    if not M:
        return identity(ncols, field), 0
    R, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis, len(pivots)


# ---------------------------------------------------------------------------
# complex eigenproblems

@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    """Columns are unit-norm eigenvectors."""
    residuals: np.ndarray


def complex_eigen(M: np.ndarray, residual_tol: float = 1e-8) -> EigenResult:
    """Eigenvalues, unit eigenvectors and scaled residuals of a square matrix.

    residual_k = ||M v_k - λ_k v_k|| / max(1, ||M||_F).  Eigenvectors whose
    residual exceeds ``residual_tol`` are refined by inverse iteration.
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("complex_eigen needs a square matrix")
    n = A.shape[0]
    if n == 0:
        return EigenResult(np.zeros(0, complex), np.zeros((0, 0), complex), np.zeros(0))
    if not np.all(np.isfinite(A)):
        raise NoConvergence("matrix has non-finite entries")
    try:
        vals, vecs = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    scale = max(1.0, np.linalg.norm(A))
    residuals = np.empty(n)
    for k in range(n):
        v = vecs[:, k]
        v = v / np.linalg.norm(v)
        res = np.linalg.norm(A @ v - vals[k] * v) / scale
        if res > residual_tol:
            v, res = _inverse_iteration(A, vals[k], v, scale)
        vecs[:, k] = v
        residuals[k] = res
    return EigenResult(vals, vecs, residuals)


def _inverse_iteration(A: np.ndarray, lam: complex, v: np.ndarray, scale: float,
                       steps: int = 5) -> tuple[np.ndarray, float]:
    n = A.shape[0]
    shift = lam + 1e-10 * scale
    B = A - shift * np.eye(n)
    for _ in range(steps):
        try:
            w = np.linalg.solve(B, v)
        except np.linalg.LinAlgError:
            break
        norm = np.linalg.norm(w)
        if not np.isfinite(norm) or norm == 0:
            break
        v = w / norm
    res = np.linalg.norm(A @ v - lam * v) / scale
    return v, res
