"""Numerical points of zero-dimensional projective schemes.

Each affine chart x_i = 1 is handled with a Groebner basis of the
dehomogenised ideal: the standard monomials give a basis of the quotient
ring, a random linear form gives a multiplication matrix, and its left
eigenvectors are evaluation vectors of the solutions (Stickelberger).
Points are polished by Gauss-Newton and merged across charts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .groebner import GREVLEX, Ideal, groebner, hilbert, normal_form
from .matrix import NoConvergence, complex_eigen
from .poly import Polynomial, VariableContext


class NotZeroDimensional(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    residual_tol: float = 1e-8
    real_tol: float = 1e-6
    cluster_tol: float = 1e-7
    max_retries: int = 3
    descending_charts: bool = True

    def __post_init__(self):
        if min(self.residual_tol, self.real_tol, self.cluster_tol) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class ProjectivePoint:
    """Complex projective point scaled so its largest coordinate is 1."""

    coordinates: tuple[complex, ...]

    @classmethod
    def normalized(cls, coords: Sequence[complex]) -> "ProjectivePoint":
        v = np.asarray(coords, dtype=complex)
        mags = np.abs(v)
        top = mags.max()
        if top == 0:
            raise ValueError("the zero vector is not a projective point")
        # first coordinate within rounding of the maximum, for a stable choice
        k = int(np.flatnonzero(mags >= top * (1 - 1e-9))[0])
        v = v / v[k]
        v[k] = 1.0
        return cls(tuple(complex(z) for z in v))

    def is_real(self, tol: float) -> bool:
        return all(abs(z.imag) <= tol for z in self.coordinates)

    def distance(self, other: "ProjectivePoint") -> float:
        """Sup-norm distance after scaling both at this point's pivot."""
        a = np.asarray(self.coordinates)
        b = np.asarray(other.coordinates)
        k = int(np.argmax(np.abs(a)))
        if abs(b[k]) < 1e-300:
            return float("inf")
        return float(np.max(np.abs(a / a[k] - b / b[k])))

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self) -> int:
        return len(self.coordinates)


@dataclass
class SolutionSet:
    points: list[ProjectivePoint]
    multiplicities: list[int]
    residuals: list[float]
    total_degree: int

    def __len__(self) -> int:
        return len(self.points)


def point_residual(ideal: Ideal, point: Sequence[complex]) -> float:
    """Largest |g(p)| / max|coeff(g)| over the generators, p max-normalised."""
    p = ProjectivePoint.normalized(point).coordinates
    worst = 0.0
    for g in ideal.generators:
        norm = g.coefficient_norm()
        if norm:
            worst = max(worst, abs(g.evaluate_complex(p)) / norm)
    return worst


def _dehomogenize(I: Ideal, i: int) -> Ideal:
    names = tuple(n for k, n in enumerate(I.ctx.names) if k != i)
    small = VariableContext(names)
    gens = []
    for g in I.generators:
        terms: dict = {}
        for e, c in g.terms.items():
            e2 = e[:i] + e[i + 1:]
            v = terms.get(e2)
            terms[e2] = c if v is None else v + c
        gens.append(Polynomial(small, I.field, {e: c for e, c in terms.items() if c}))
    return Ideal(gens, small, I.field)


def _standard_monomials(leads: list[tuple], nvars: int, limit: int = 4096) -> list[tuple]:
    def divisible(m):
        return any(all(a <= b for a, b in zip(lm, m)) for lm in leads)

    start = (0,) * nvars
    if divisible(start):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for j in range(nvars):
                m2 = m[:j] + (m[j] + 1,) + m[j + 1:]
                if m2 not in seen and not divisible(m2):
                    seen.add(m2)
                    nxt.append(m2)
        frontier = nxt
        if len(seen) > limit:
            raise NotZeroDimensional("quotient ring is not finite dimensional")
    return sorted(seen, key=GREVLEX.key)


@dataclass
class _ChartPoint:
    coords: np.ndarray
    multiplicity: int


def _multiplication_matrices(J: Ideal, basis: list[tuple]):
    gb = J.groebner(GREVLEX)
    index = {m: k for k, m in enumerate(basis)}
    embed = J.field.embed
    mats = []
    for j in range(J.ctx.count):
        M = np.zeros((len(basis), len(basis)), dtype=complex)
        for col, b in enumerate(basis):
            e = list(b)
            e[j] += 1
            nf = normal_form(Polynomial(J.ctx, J.field, {tuple(e): 1}, _trusted=True), gb)
            for mono, c in nf.terms.items():
                M[index[mono], col] = embed(c)
        mats.append(M)
    return mats


def _newton(J: Ideal, y: np.ndarray, steps: int = 6) -> np.ndarray:
    gens = J.generators
    derivs = [[g.derivative(j) for j in range(J.ctx.count)] for g in gens]

    def F(v):
        return np.array([g.evaluate_complex(v) for g in gens])

    best = y
    best_norm = np.linalg.norm(F(y))
    for _ in range(steps):
        if best_norm == 0:
            break
        Jac = np.array([[d.evaluate_complex(best) for d in row] for row in derivs])
        step, *_ = np.linalg.lstsq(Jac, -F(best), rcond=None)
        cand = best + step
        norm = np.linalg.norm(F(cand))
        if not np.isfinite(norm) or norm >= best_norm:
            break
        best, best_norm = cand, norm
    return best


def _solve_chart(J: Ideal, rng: np.random.Generator, cfg: SolverConfig) -> list[_ChartPoint] | None:
    """Points of an affine zero-dimensional ideal; None signals an ambiguous projection."""
    gb = groebner(J, GREVLEX)
    if gb.is_unit:
        return []
    basis = _standard_monomials(gb.leading_monomials, J.ctx.count)
    if not basis:
        return []
    mats = _multiplication_matrices(J, basis)
    weights = rng.uniform(-1.0, 1.0, size=len(mats))
    Mh = sum(w * M for w, M in zip(weights, mats))
    eig = complex_eigen(Mh.T, cfg.residual_tol)
    vals = eig.eigenvalues
    readings = []
    for k in range(len(vals)):
        v = eig.eigenvectors[:, k]
        denom = np.vdot(v, v)
        readings.append(np.array([np.vdot(v, v @ M) / denom for M in mats]))
    # group coincident eigenvalues
    scale = max(1.0, float(np.max(np.abs(vals))))
    groups: list[list[int]] = []
    for k in range(len(vals)):
        for grp in groups:
            if abs(vals[grp[0]] - vals[k]) <= max(cfg.cluster_tol, 1e-4) * scale:
                grp.append(k)
                break
        else:
            groups.append([k])
    out = []
    for grp in groups:
        pts = [readings[k] for k in grp]
        if len(grp) > 1:
            spread = max(np.max(np.abs(p - pts[0])) for p in pts)
            if spread > 1e-3 * max(1.0, float(np.max(np.abs(pts[0])))):
                return None
        y = np.mean(pts, axis=0)
        y = _newton(J, y)
        out.append(_ChartPoint(y, len(grp)))
    return out


def solve_projective(I: Ideal, cfg: SolverConfig | None = None) -> SolutionSet:
    """All complex points of a homogeneous ideal of projective dimension <= 0."""
    cfg = cfg or SolverConfig()
    h = hilbert(I)
    if h.projective_dimension < 0:
        return SolutionSet([], [], [], 0)
    if h.projective_dimension > 0:
        raise NotZeroDimensional(f"projective dimension {h.projective_dimension}")
    n1 = I.ctx.count
    charts = list(range(n1 - 1, -1, -1)) if cfg.descending_charts else list(range(n1))
    last_problem = "no attempt"
    for attempt in range(cfg.max_retries + 1):
        rng = np.random.default_rng([cfg.seed, attempt])
        found: list[tuple[ProjectivePoint, int]] = []
        ambiguous = False
        for i in charts:
            J = _dehomogenize(I, i)
            chart_points = _solve_chart(J, rng, cfg)
            if chart_points is None:
                ambiguous = True
                break
            for cp in chart_points:
                coords = np.insert(cp.coords, i, 1.0)
                if np.max(np.abs(coords)) > 2.0:
                    continue  # better conditioned in another chart
                pt = ProjectivePoint.normalized(coords)
                if any(pt.distance(q) < cfg.cluster_tol for q, _ in found):
                    continue
                found.append((pt, cp.multiplicity))
        if ambiguous:
            last_problem = "eigenvalue clustering ambiguity"
            continue
        residuals = [point_residual(I, p.coordinates) for p, _ in found]
        total = sum(m for _, m in found)
        if total != h.degree:
            last_problem = f"multiplicities sum to {total}, expected {h.degree}"
            continue
        if any(r > cfg.residual_tol for r in residuals):
            last_problem = f"residual {max(residuals):.3g} above tolerance"
            continue
        order = sorted(range(len(found)), key=lambda k: _sort_key(found[k][0]))
        return SolutionSet([found[k][0] for k in order], [found[k][1] for k in order],
                           [residuals[k] for k in order], h.degree)
    raise NoConvergence(f"solver failed after {cfg.max_retries + 1} attempts: {last_problem}")


def _sort_key(p: ProjectivePoint):
    return tuple((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0) for z in p.coordinates)


def count_real(S: SolutionSet, cfg: SolverConfig | None = None) -> int:
    """Number of distinct points whose normalised coordinates are all real."""
    cfg = cfg or SolverConfig()
    return sum(1 for p in S.points if p.is_real(cfg.real_tol))


def rational_recover(point: ProjectivePoint | Sequence[complex], denominator_bound: int,
                     ideal: Ideal | None = None, imag_tol: float = 1e-6) -> tuple | None:
    """Round a point to rationals by continued fractions.

    The candidate is returned only when it is exactly a zero of every
    generator of ``ideal`` (when given).
    """
    p = point if isinstance(point, ProjectivePoint) else ProjectivePoint.normalized(point)
    coords = []
    for z in p.coordinates:
        if abs(z.imag) > imag_tol:
            return None
        fr = Fraction(z.real).limit_denominator(denominator_bound)
        coords.append(mpq(fr.numerator, fr.denominator))
    if not any(coords):
        return None
    if ideal is not None:
        exact = [ideal.field(c) for c in coords]
        if any(g.evaluate(exact) for g in ideal.generators):
            return None
    return tuple(coords)
