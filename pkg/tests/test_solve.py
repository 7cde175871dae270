import random

import numpy as np
import pytest

from eigencubic import corpus
from eigencubic.solve import (NotZeroDimensional, ProjectivePoint, SolverConfig, count_real,
                              point_residual, rational_recover, solve_projective)
from eigencubic.tensor import random_cubic, regular_ideal

from conftest import poly


def _regular(row):
    return regular_ideal(corpus.cubic(row.text, row.n, corpus.field_named(row.field)))


@pytest.mark.parametrize("row", corpus.REAL_COUNTS, ids=lambda r: f"real{r.real_count}")
def test_real_count_rows(row):
    S = solve_projective(_regular(row))
    assert count_real(S) == row.real_count
    assert sum(S.multiplicities) == S.total_degree
    assert max(S.residuals, default=0.0) <= 1e-8


def test_fermat_ternary_points_are_recovered_exactly():
    I = regular_ideal(poly("x0^3+x1^3+x2^3", 2))
    S = solve_projective(I)
    got = {rational_recover(p, 10, I) for p in S.points}
    want = {tuple(ProjectivePoint.normalized(p).coordinates) for p in corpus.FERMAT_TERNARY_POINTS}
    assert got == {tuple(int(c.real) for c in w) for w in want}


def test_fermat_quaternary_points():
    I = regular_ideal(poly("x0^3+x1^3+x2^3+x3^3", 3))
    S = solve_projective(I)
    assert len(S.points) == 15
    got = sorted(tuple(int(c) for c in rational_recover(p, 10, I)) for p in S.points)
    assert got == sorted(corpus.FERMAT_QUATERNARY_POINTS)


def test_irrational_points_do_not_recover():
    I = regular_ideal(poly("x1^2*x2", 2))
    S = solve_projective(I)
    assert len(S.points) == 2
    r = 0.7071067811865476  # 1/sqrt(2), frozen from an exact computation
    for p in S.points:
        c = p.coordinates
        assert abs(c[0]) < 1e-10 and abs(abs(c[1]) - 1) < 1e-10 and abs(abs(c[2]) - r) < 1e-10
        assert rational_recover(p, 1000, I) is None


def test_rational_recover_examples():
    assert rational_recover([1.0000000001, 0, 1e-12], 100) == (1, 0, 0)
    assert rational_recover([0.5 + 1e-3j, 1], 100) is None


def test_chart_order_does_not_change_the_answer():
    I = regular_ideal(random_cubic(2, random.Random(21)))
    a = solve_projective(I, SolverConfig(descending_charts=True))
    b = solve_projective(I, SolverConfig(descending_charts=False))
    assert len(a.points) == len(b.points) == 7
    for p in a.points:
        assert min(p.distance(q) for q in b.points) < 1e-8


def test_conjugate_symmetry_for_rational_input():
    I = regular_ideal(random_cubic(3, random.Random(22)))
    S = solve_projective(I)
    for p in S.points:
        conj = ProjectivePoint.normalized([z.conjugate() for z in p.coordinates])
        assert min(conj.distance(q) for q in S.points) < 1e-8


def test_seed_determinism():
    I = regular_ideal(random_cubic(2, random.Random(23)))
    a = solve_projective(I, SolverConfig(seed=5))
    b = solve_projective(I, SolverConfig(seed=5))
    assert a.points == b.points
    c = solve_projective(I, SolverConfig(seed=6))
    for p in a.points:
        assert min(p.distance(q) for q in c.points) < 1e-8


def test_positive_dimensional_input_raises():
    with pytest.raises(NotZeroDimensional):
        solve_projective(regular_ideal(poly("x0*(x1^2+x2^2)", 2)))


def test_empty_regular_scheme(QI):
    S = solve_projective(regular_ideal(poly("x0^2*(x1+i*x2)", 2, QI)))
    assert S.points == [] and count_real(S) == 0


def test_points_satisfy_the_ideal():
    I = regular_ideal(poly("x0*x1*x2+x3^3", 3))
    S = solve_projective(I)
    for p in S.points:
        assert point_residual(I, p.coordinates) <= 1e-8


def test_projective_point_normalisation():
    p = ProjectivePoint.normalized([2, -4, 1j])
    assert p.coordinates == (-0.5, 1, -0.25j)
    with pytest.raises(ValueError):
        ProjectivePoint.normalized([0, 0])
    q = ProjectivePoint.normalized([-1, 2, -0.5j])
    assert p.distance(q) < 1e-15


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(residual_tol=0)


def test_multiplicities_add_up_to_the_degree():
    I = regular_ideal(poly("x0^2*x1", 1))
    S = solve_projective(I)
    assert sum(S.multiplicities) == S.total_degree
    assert all(np.isfinite(r) for r in S.residuals)
