"""Reference instances: cubics with known eigenscheme dimensions and real eigenpoint counts.

Every entry is stored in the polynomial text grammar so it can be re-parsed
and fed to the command line unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import QQ, gaussian_field, theta_gaussian_field, theta_field
from .groebner import Ideal
from .poly import VariableContext, parse
from .tensor import CubicForm, PartiallySymmetricTensor


@dataclass(frozen=True)
class DimensionCell:
    key: str
    n: int
    text: str
    field: str  # "rational", "gaussian" or "theta-gaussian"
    delta: int
    epsilon: int


@dataclass(frozen=True)
class CountRow:
    n: int
    text: str
    field: str
    real_count: int


DIMENSIONS_TERNARY = (
    DimensionCell("table1:delta-1-eps0", 2, "3*x0*(x1^2+x2^2)+(x1+i*x2)^3", "gaussian", -1, 0),
    DimensionCell("table1:delta-1-eps1", 2, "x0^2*(x1+i*x2)", "gaussian", -1, 1),
    DimensionCell("table1:delta0-eps-1", 2, "x0^3+x1^3+x2^3", "rational", 0, -1),
    DimensionCell("table1:delta0-eps0", 2, "x0^3+x1^3", "rational", 0, 0),
    DimensionCell("table1:delta0-eps1", 2, "x0^3", "rational", 0, 1),
    DimensionCell("table1:delta1-eps0", 2, "x0*(x1^2+x2^2)", "rational", 1, 0),
)

DIMENSIONS_QUATERNARY = (
    DimensionCell("table2:delta-1-eps0", 3, "x0*(x1^2-x2^2-x3^2)+(theta*x1+i*x2+x3)^3",
                  "theta-gaussian", -1, 0),
    DimensionCell("table2:delta-1-eps1", 3, "3*x0*(x1^2+x2^2)+(x1+i*x2)^3", "gaussian", -1, 1),
    DimensionCell("table2:delta-1-eps2", 3, "x0^2*(x1+i*x2)", "gaussian", -1, 2),
    DimensionCell("table2:delta0-eps-1", 3, "x0^3+x1^3+x2^3+x3^3", "rational", 0, -1),
    DimensionCell("table2:delta0-eps0", 3, "x0^3+x1^3+x2^3", "rational", 0, 0),
    DimensionCell("table2:delta0-eps1", 3, "x0^3+x1^3", "rational", 0, 1),
    DimensionCell("table2:delta0-eps2", 3, "x0^3", "rational", 0, 2),
    DimensionCell("table2:delta1-eps0", 3, "x0*x1^2+x0*x2^2+x0*x3^2+x1^3", "rational", 1, 0),
    DimensionCell("table2:delta1-eps1", 3, "x0*(x1^2+x2^2)", "rational", 1, 1),
    DimensionCell("table2:delta2-eps1", 3, "x0*(x1^2+x2^2+x3^2)", "rational", 2, 1),
)

REAL_COUNTS = (
    CountRow(2, "x0^2*(x1+i*x2)", "gaussian", 0),
    CountRow(2, "x0^3", "rational", 1),
    CountRow(2, "x1^2*x2", "rational", 2),
    CountRow(2, "x0^3+x1^3", "rational", 3),
    CountRow(2, "x0*x1*x2", "rational", 4),
    CountRow(2, "x0^3+x1^2*x2", "rational", 5),
    CountRow(2, "x0^2*x1+x0^2*x2+x1*x2^2", "rational", 6),
    CountRow(2, "x0^3+x1^3+x2^3", "rational", 7),
    CountRow(3, "x0^2*x1+x2^2*x3", "rational", 8),
    CountRow(3, "x0*x1*x2+x3^3", "rational", 9),
    CountRow(3, "x0*x1*x2+x0*x3^2+x1*x2^2", "rational", 10),
    CountRow(3, "x0^3+x1^2*x2+3*x3^3", "rational", 11),
    CountRow(3, "10*x1*x2^2-x0^2*x1-x0^2*x2-x0*x3^2", "rational", 12),
    CountRow(3, "x0^2*x1+x0^2*x2+x1*x2^2+x3^3", "rational", 13),
    CountRow(3, "x0*x3^2+x0*x1*x2+x1^3+10*x1*x2^2+x2^3", "rational", 14),
    CountRow(3, "x0^3+x1^3+x2^3+x3^3", "rational", 15),
)

# -- mixed-dimension example: E = C1 u C2 u {two points}, Irr = C2 --
MIXED_CUBIC = "x1*(x1*x2+x3^2+x0^2)"
MIXED_C1 = ("x1-2*x2", "x0^2-4*x2^2+x3^2")
MIXED_C2 = ("x1", "x0^2+x3^2")
MIXED_POINT_PAIR = ("x0", "x3", "x1^2-2*x2^2")  # the points [0, +-sqrt(2), 1, 0]

# -- non-reduced example: closure of Reg contains the double conic --
NONREDUCED_CUBIC = "x0*(x1^2+x2^2+x3^2)+x1^3"
NONREDUCED_CURVE = ("x1^2", "2*x0^2-x2^2-x3^2")

# -- Fermat eigenpoints --
FERMAT_TERNARY_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1))
FERMAT_PLANE_POINTS = tuple(p + (0,) for p in FERMAT_TERNARY_POINTS)
FERMAT_QUATERNARY_POINTS = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 0, 0),
    (1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1),
    (0, 0, 1, 1), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 1, 1),
)

# -- printed form of the restricted Hurwitz polynomial, one printed term per entry --
HURWITZ_DISPLAY = (
    "36*a0^2*a1^2", "32*a1^4", "-108*a0^3*a2", "-156*a0*a1^2*a2", "216*a0^2*a2^2",
    "61*a1^2*a2^2", "-144*a0*a2^3", "32*a2^4", "-108*a0^2*a1*a3", "-144*a1^3*a3",
    "306*a0*a1*a2*a3", "-156*a1*a3^2*a3", "81*a0^2*a3^2", "216*a1^2*a3^2",
    "-108*a1*a2*a3^2", "36*a2^2*a3^2", "-108*a1*a3^3",
)
HURWITZ_KNOWN_ANOMALY = "a1*a2^2*a3"


def field_named(name: str):
    if name == "rational":
        return QQ
    if name == "gaussian":
        return gaussian_field()
    if name == "theta-gaussian":
        return theta_gaussian_field()[0]
    if name == "theta":
        return theta_field()
    raise KeyError(name)


def cubic(text: str, n: int, field="rational") -> CubicForm:
    F = field_named(field) if isinstance(field, str) else field
    return CubicForm(parse(text, VariableContext.projective(n), F))


def cell_cubic(cell: DimensionCell | CountRow) -> CubicForm:
    return cubic(cell.text, cell.n, cell.field)


def ideal_from_text(gens, n: int, field=QQ) -> Ideal:
    ctx = VariableContext.projective(n)
    return Ideal([parse(g, ctx, field) for g in gens], ctx, field)


@lru_cache(maxsize=None)
def theta_cell_reduced() -> PartiallySymmetricTensor:
    """The theta cell moved by x2 -> i*x2 to a tensor defined over Q(theta).

    With g = f(x0, x1, i*x2, x3) = x0(x1^2+x2^2-x3^2) + (theta*x1 - x2 + x3)^3 the
    twisted action by diag(1, 1, i, 1) sends the gradient of f to
    (dg/dx0, dg/dx1, -dg/dx2, dg/dx3), which has the same eigenscheme
    dimensions as the original tensor.
    """
    F = theta_field()
    g = parse("x0*(x1^2+x2^2-x3^2)+(theta*x1-x2+x3)^3", VariableContext.projective(3), F)
    q = [g.derivative(i) for i in range(4)]
    q[2] = -q[2]
    return PartiallySymmetricTensor(tuple(q))


def named_instances() -> dict[str, DimensionCell | CountRow]:
    out: dict = {c.key: c for c in DIMENSIONS_TERNARY + DIMENSIONS_QUATERNARY}
    for row in REAL_COUNTS:
        out[f"table3:{row.real_count}"] = row
    return out


def corpus_cubics() -> list[CubicForm]:
    """Every cubic listed above (the theta cell included)."""
    out = [cell_cubic(c) for c in DIMENSIONS_TERNARY + DIMENSIONS_QUATERNARY]
    out += [cell_cubic(r) for r in REAL_COUNTS]
    out.append(cubic(MIXED_CUBIC, 3))
    out.append(cubic(NONREDUCED_CUBIC, 3))
    return out
