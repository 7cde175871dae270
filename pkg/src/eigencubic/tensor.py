"""Partially symmetric tensors, cubic forms and their eigenschemes.

A partially symmetric tensor on C^{n+1} is stored as its tuple of quadrics
(q_0, ..., q_n).  For a cubic form f the tensor is the gradient
(df/dx_0, ..., df/dx_n); the customary 1/n normalisation is dropped since it
only rescales eigenvalues.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .exact import QQ
from .groebner import (HilbertData, Ideal, hilbert, saturate, zero_ideal)
from .matrix import inverse as matrix_inverse, nullspace, SingularMatrix
from .poly import (Polynomial, VariableContext, exact_divide, monomials_of_degree)


class NotACone(ValueError):
    pass


@dataclass(frozen=True)
class PartiallySymmetricTensor:
    quadrics: tuple[Polynomial, ...]

    def __post_init__(self):
        if not self.quadrics:
            raise ValueError("a tensor needs at least one quadric")
        ctx = self.quadrics[0].ctx
        if ctx.has_lambda or ctx.count != len(self.quadrics):
            raise ValueError("need n+1 quadrics in the variables x0..xn")
        for q in self.quadrics:
            if q.ctx != ctx:
                raise ValueError("quadrics live in different contexts")
            if not q.is_homogeneous(2):
                raise ValueError(f"{q} is not a quadratic form")

    @property
    def n(self) -> int:
        return len(self.quadrics) - 1

    @property
    def ctx(self) -> VariableContext:
        return self.quadrics[0].ctx

    @property
    def field(self):
        return self.quadrics[0].field

    def __str__(self) -> str:
        return "(" + ", ".join(str(q) for q in self.quadrics) + ")"


@dataclass(frozen=True)
class CubicForm:
    f: Polynomial

    def __post_init__(self):
        if self.f.ctx.has_lambda:
            raise ValueError("a cubic form lives in x0..xn only")
        if not self.f.is_homogeneous(3):
            raise ValueError(f"{self.f} is not a homogeneous cubic")

    @property
    def n(self) -> int:
        return self.f.ctx.count - 1

    def __str__(self) -> str:
        return str(self.f)


def as_tensor(obj) -> PartiallySymmetricTensor:
    if isinstance(obj, PartiallySymmetricTensor):
        return obj
    if isinstance(obj, CubicForm):
        return tensor_from_cubic(obj)
    if isinstance(obj, Polynomial):
        return tensor_from_cubic(CubicForm(obj))
    raise TypeError(f"cannot interpret {type(obj).__name__} as a tensor")


def tensor_from_cubic(f: CubicForm | Polynomial) -> PartiallySymmetricTensor:
    poly = f.f if isinstance(f, CubicForm) else f
    return PartiallySymmetricTensor(tuple(poly.derivative(i) for i in range(poly.ctx.count)))


def contract(T: PartiallySymmetricTensor, point: Sequence) -> list:
    """T·(x⊗x) at ``point``: the values (q_0(p), ..., q_n(p))."""
    return [q.evaluate(point) for q in T.quadrics]


def _x(T: PartiallySymmetricTensor, i: int) -> Polynomial:
    return Polynomial.variable(T.ctx, T.field, i)


def minors(T: PartiallySymmetricTensor) -> list[Polynomial]:
    """x_i q_j - x_j q_i for i < j."""
    out = []
    for i, j in itertools.combinations(range(T.n + 1), 2):
        out.append(_x(T, i) * T.quadrics[j] - _x(T, j) * T.quadrics[i])
    return out


def eigenscheme_ideal(T) -> Ideal:
    T = as_tensor(T)
    return Ideal(minors(T), T.ctx, T.field)


def eigenpair_ideal(T) -> Ideal:
    """(q_i - L x_i) in the ring with the eigenvalue variable ``L`` appended."""
    T = as_tensor(T)
    big = VariableContext.projective(T.n, with_lambda=True)
    lam = Polynomial.variable(big, T.field, big.count - 1)
    gens = []
    for i, q in enumerate(T.quadrics):
        gens.append(q.extend(big) - lam * Polynomial.variable(big, T.field, i))
    return Ideal(gens, big, T.field)


def irregular_ideal(T) -> Ideal:
    T = as_tensor(T)
    return Ideal(T.quadrics, T.ctx, T.field)


def regular_ideal(T) -> Ideal:
    """The saturation E(T) : Irr(T)^∞."""
    T = as_tensor(T)
    return saturate(eigenscheme_ideal(T), irregular_ideal(T))


@dataclass
class EigenschemeReport:
    tensor: PartiallySymmetricTensor
    eigen: Ideal
    eigenpair: Ideal
    irregular: Ideal
    regular: Ideal
    eigen_hilbert: HilbertData
    eigenpair_hilbert: HilbertData
    irregular_hilbert: HilbertData
    regular_hilbert: HilbertData

    @property
    def delta(self) -> int:
        """dim Reg."""
        return self.regular_hilbert.projective_dimension

    @property
    def epsilon(self) -> int:
        """dim Irr."""
        return self.irregular_hilbert.projective_dimension

    def check_dimension_bounds(self) -> list[str]:
        """Violations of dim Irr + 1 >= dim Reg and of the dim Reg = n-1 rule."""
        problems = []
        n = self.tensor.n
        if self.epsilon + 1 < self.delta:
            problems.append(f"dim Irr + 1 = {self.epsilon + 1} < dim Reg = {self.delta}")
        if self.delta == n - 1 and self.epsilon != n - 2:
            problems.append(f"dim Reg = n-1 but dim Irr = {self.epsilon} != n-2")
        return problems


def analyze(obj, check_bounds: bool = True) -> EigenschemeReport:
    """Compute E, Ẽ, Irr and Reg with their Hilbert data.

    ``check_bounds`` asserts the dimension inequalities that hold for cubic
    forms; they are skipped for tensors that are not gradients.
    """
    symmetric = isinstance(obj, (CubicForm, Polynomial))
    T = as_tensor(obj)
    E = eigenscheme_ideal(T)
    Et = eigenpair_ideal(T)
    Irr = irregular_ideal(T)
    Reg = saturate(E, Irr) if not E.is_zero() else zero_ideal(T.ctx, T.field)
    report = EigenschemeReport(T, E, Et, Irr, Reg, hilbert(E), hilbert(Et), hilbert(Irr),
                               hilbert(Reg))
    if check_bounds and symmetric:
        problems = report.check_dimension_bounds()
        if problems:
            raise AssertionError("; ".join(problems))
    return report


def twisted_action(U: Sequence[Sequence], T: PartiallySymmetricTensor) -> PartiallySymmetricTensor:
    """Ψ_U T = (q_0(xU), ..., q_n(xU)) · U^{-1}."""
    n1 = T.n + 1
    if len(U) != n1:
        raise ValueError("U must be (n+1)x(n+1)")
    Uinv = matrix_inverse([[T.field(v) for v in row] for row in U])
    moved = [q.linear_substitute(U) for q in T.quadrics]
    out = []
    for j in range(n1):
        acc = Polynomial.zero(T.ctx, T.field)
        for k in range(n1):
            if Uinv[k][j]:
                acc = acc + moved[k] * Uinv[k][j]
        out.append(acc)
    return PartiallySymmetricTensor(tuple(out))


def transform_ideal(I: Ideal, U: Sequence[Sequence]) -> Ideal:
    """Ideal generated by g(xU) for g in I, i.e. the ideal of U^{-1}·V(I)."""
    return Ideal([g.linear_substitute(U) for g in I.generators], I.ctx, I.field)


def trivial_eigenscheme_witness(T: PartiallySymmetricTensor) -> Polynomial | None:
    """Linear form l with q_i = l x_i for all i, or None if none exists."""
    if any(m for m in minors(T)):
        return None
    for i, q in enumerate(T.quadrics):
        if q:
            return exact_divide(q, _x(T, i))
    return Polynomial.zero(T.ctx, T.field)


def cone_reduce(f: CubicForm | Polynomial) -> CubicForm:
    """Restrict a cubic with df/dx_n = 0 to the hyperplane x_n = 0."""
    poly = f.f if isinstance(f, CubicForm) else f
    n = poly.ctx.count - 1
    if poly.derivative(n):
        raise NotACone("the cubic depends on its last variable")
    small = VariableContext.projective(n - 1)
    return CubicForm(poly.restrict(small))


def cone_lift(I: Ideal) -> Ideal:
    """The ideal of phi(V(I)) in one more variable: I extended plus (x_{n+1})."""
    big = VariableContext.projective(I.ctx.count)
    last = Polynomial.variable(big, I.field, big.count - 1)
    return Ideal([g.extend(big) for g in I.generators] + [last], big, I.field)


def apex_jacobian_check(T: PartiallySymmetricTensor) -> bool:
    """The Jacobian of q_i(x) - x_i at the origin (chart L = 1) is minus the identity."""
    origin = [T.field.zero] * (T.n + 1)
    for i, q in enumerate(T.quadrics):
        g = q - _x(T, i)
        for j in range(T.n + 1):
            value = g.derivative(j).evaluate(origin)
            if value != (-1 if i == j else 0):
                return False
    return True


def cubic_monomials(n: int) -> list[tuple]:
    return monomials_of_degree(n + 1, 3)


def cubic_from_points(points: Sequence[Sequence], n: int, field=QQ) -> tuple[list[CubicForm], int]:
    """Cubics whose eigenscheme contains every given point.

    Each point p contributes the linear conditions
    (df/dx_i)(p) p_j - (df/dx_j)(p) p_i = 0 on the coefficients of f.
    Returns an exact nullspace basis and the rank of the condition matrix.
    """
    ctx = VariableContext.projective(n)
    monos = cubic_monomials(n)
    rows = []
    for p in points:
        p = [field(v) for v in p]
        if len(p) != n + 1:
            raise ValueError("point has the wrong number of coordinates")
        # gradient of each monomial at p
        grads = []
        for m in monos:
            mono = Polynomial(ctx, field, {m: 1})
            grads.append([mono.derivative(i).evaluate(p) for i in range(n + 1)])
        for i, j in itertools.combinations(range(n + 1), 2):
            rows.append([g[i] * p[j] - g[j] * p[i] for g in grads])
    basis, rank = nullspace(rows, len(monos), field)
    forms = [CubicForm(Polynomial(ctx, field, dict(zip(monos, vec)))) for vec in basis]
    return forms, rank


# -- seeded random generators used by tests and acceptance runs --

def random_quadric(ctx: VariableContext, rng: random.Random, field=QQ, bound: int = 5) -> Polynomial:
    terms = {m: rng.randint(-bound, bound) for m in monomials_of_degree(ctx.count, 2)}
    return Polynomial(ctx, field, terms)


def random_tensor(n: int, rng: random.Random, field=QQ, bound: int = 5) -> PartiallySymmetricTensor:
    ctx = VariableContext.projective(n)
    return PartiallySymmetricTensor(tuple(random_quadric(ctx, rng, field, bound) for _ in range(n + 1)))


def random_cubic(n: int, rng: random.Random, field=QQ, bound: int = 5) -> CubicForm:
    ctx = VariableContext.projective(n)
    while True:
        terms = {m: rng.randint(-bound, bound) for m in cubic_monomials(n)}
        f = Polynomial(ctx, field, terms)
        if f:
            return CubicForm(f)


def random_invertible_matrix(size: int, rng: random.Random, field=QQ, bound: int = 3) -> list[list]:
    while True:
        U = [[field(rng.randint(-bound, bound)) for _ in range(size)] for _ in range(size)]
        try:
            matrix_inverse(U)
        except SingularMatrix:
            continue
        return U
