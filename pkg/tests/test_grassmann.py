import random

import pytest
from gmpy2 import mpq

from eigencubic import corpus
from eigencubic.exact import QQ
from eigencubic.grassmann import (BINARY_BASIS, LAMBDA_SQUARED_COLUMN, LAMBDA_X_COLUMNS,
                                  QUADRIC_BASIS, ConditionsViolated, EigenPlane, basis_labels,
                                  binary_eigendiscriminant, binary_matrix,
                                  binary_restricted_hurwitz, check_eigenplane_conditions,
                                  compare_conjecture, cubic_witness, eigenpair_veronese_check,
                                  is_symmetric_point, pairing, plane_from_tensor,
                                  plane_symmetry_violations, pluecker_coordinates,
                                  pluecker_index, pluecker_subsets, symmetry_violations,
                                  tensor_from_plane, veronese)
from eigencubic.matrix import determinant, matmul
from eigencubic.poly import Polynomial
from eigencubic.tensor import (PartiallySymmetricTensor, contract, random_cubic,
                               random_invertible_matrix, random_tensor, tensor_from_cubic)

from conftest import poly

# coefficients of the binary eigendiscriminant in a0..a3, frozen from a sympy computation
DISCRIMINANT = {
    (3, 0, 1, 0): -108, (2, 2, 0, 0): 36, (2, 1, 0, 1): -108, (2, 0, 2, 0): 216,
    (2, 0, 0, 2): 81, (1, 2, 1, 0): -156, (1, 1, 1, 1): 306, (1, 0, 3, 0): -144,
    (1, 0, 1, 2): -108, (0, 4, 0, 0): 32, (0, 3, 0, 1): -144, (0, 2, 2, 0): 61,
    (0, 2, 0, 2): 216, (0, 1, 2, 1): -156, (0, 1, 0, 3): -108, (0, 0, 4, 0): 32,
    (0, 0, 2, 2): 36,
}


def test_basis_order():
    assert len(QUADRIC_BASIS) == 15
    assert basis_labels() == ["x0^2", "x0*x1", "x0*x2", "x0*x3", "x1^2", "x1*x2", "x1*x3",
                              "x2^2", "x2*x3", "x3^2", "x0*L", "x1*L", "x2*L", "x3*L", "L^2"]
    assert LAMBDA_X_COLUMNS == (10, 11, 12, 13) and LAMBDA_SQUARED_COLUMN == 14


def test_fermat_plane():
    P = plane_from_tensor(poly("x0^3+x1^3+x2^3+x3^3", 3)).as_lists()
    for i, row in enumerate(P):
        want = [0] * 15
        want[QUADRIC_BASIS.index(tuple(2 if k == i else 0 for k in range(4)) + (0,))] = 3
        want[10 + i] = -1
        assert row == want


def test_pluecker_of_fermat():
    coords = pluecker_coordinates(plane_from_tensor(poly("x0^3+x1^3+x2^3+x3^3", 3)))
    assert len(coords) == 1365
    assert coords[pluecker_index(LAMBDA_X_COLUMNS)] == 1
    assert coords[pluecker_index((0, 4, 7, 9))] == 81
    assert all(not c for c in coords[pluecker_index((11, 12, 13, 14)):])


def test_pluecker_subsets_are_lexicographic():
    subs = pluecker_subsets()
    assert subs[0] == (0, 1, 2, 3) and subs[-1] == (11, 12, 13, 14)
    assert subs == sorted(subs)
    assert pluecker_index((13, 10, 12, 11)) == subs.index((10, 11, 12, 13))


def test_pluecker_coordinates_are_projective():
    rng = random.Random(1)
    for _ in range(5):
        P = plane_from_tensor(random_tensor(3, rng)).as_lists()
        E = random_invertible_matrix(4, rng)
        d = determinant(E)
        assert pluecker_coordinates(matmul(E, P)) == [d * c for c in pluecker_coordinates(P)]


def test_conditions_examples():
    P = plane_from_tensor(random_cubic(3, random.Random(2))).as_lists()
    assert check_eigenplane_conditions(P).ok
    bad = [list(r) for r in P]
    bad[0][14] = mpq(1)
    c = check_eigenplane_conditions(bad)
    assert not c.lambda_squared_column_zero and c.lambda_block_nonsingular
    with pytest.raises(ConditionsViolated):
        tensor_from_plane(bad)
    singular = [list(r) for r in P]
    singular[3] = list(singular[2])
    c = check_eigenplane_conditions(singular)
    assert c.lambda_squared_column_zero and not c.lambda_block_nonsingular


def test_plane_round_trip():
    rng = random.Random(3)
    for _ in range(25):
        T = random_tensor(3, rng)
        P = plane_from_tensor(T).as_lists()
        E = random_invertible_matrix(4, rng)
        assert tensor_from_plane(matmul(E, P)) == T


def test_plane_rejects_wrong_shape():
    from eigencubic.poly import DimensionMismatch
    with pytest.raises(DimensionMismatch):
        check_eigenplane_conditions([[0] * 14] * 4)


def test_veronese_and_pairing():
    p = [mpq(1), mpq(2), mpq(0), mpq(-1), mpq(3)]
    v = veronese(p)
    assert v[:4] == [1, 2, 0, -1] and v[-1] == 9
    with pytest.raises(ValueError):
        veronese([0] * 5)
    rng = random.Random(4)
    for _ in range(100):
        T = random_tensor(3, rng)
        x = [mpq(rng.randint(-4, 4)) for _ in range(4)] + [mpq(rng.randint(-4, 4))]
        if not any(x):
            continue
        P = plane_from_tensor(T)
        qx = contract(T, x[:4])
        for i, row in enumerate(P.rows):
            assert pairing(row, veronese(x)) == qx[i] - x[4] * x[i]


def test_eigenpair_veronese_check():
    f = poly("x0^3+x1^3+x2^3+x3^3", 3)
    assert eigenpair_veronese_check(f, [1, 1, 0, 0, 3])
    assert not eigenpair_veronese_check(f, [1, 1, 0, 0, 2])
    assert eigenpair_veronese_check(f, [0, 0, 0, 0, 1])  # the apex


def test_symmetry_examples():
    f = corpus.cubic("x0^3+x1^3+x2^3+x3^3", 3)
    T = tensor_from_cubic(f)
    assert symmetry_violations(T) == [] and is_symmetric_point(T)
    assert cubic_witness(T) == f.f
    assert plane_symmetry_violations(plane_from_tensor(T)) == []
    S = PartiallySymmetricTensor(tuple(poly(t, 1) for t in ("x0*x1", "x0*x1")))
    assert symmetry_violations(S) == [(0, 1)] and not is_symmetric_point(S)


def test_symmetry_perturbation_breaks_only_its_slice():
    rng = random.Random(5)
    for _ in range(20):
        T = tensor_from_cubic(random_cubic(3, rng))
        k, a, b = rng.randrange(4), rng.randrange(4), rng.randrange(4)
        e = [0, 0, 0, 0]
        e[a] += 1
        e[b] += 1
        qs = list(T.quadrics)
        qs[k] = qs[k] + Polynomial(T.ctx, QQ, {tuple(e): mpq(1)})
        got = symmetry_violations(PartiallySymmetricTensor(tuple(qs)))
        want = sorted({tuple(sorted((k, j))) for j in (a, b) if j != k})
        assert got == want


def test_binary_matrix_examples():
    M = binary_matrix(mpq(1), mpq(0), mpq(0), mpq(1))
    assert M == [[3, 0, -1, 0, 0, 0], [0, 0, 0, 3, -1, 0]]
    assert len(BINARY_BASIS) == 6


def test_binary_eigendiscriminant_coefficients():
    d = binary_eigendiscriminant()
    assert {e: int(c) for e, c in d.terms.items()} == DISCRIMINANT


def test_binary_eigendiscriminant_values():
    d = binary_eigendiscriminant()
    assert d.evaluate([1, 0, 0, 0]) == 0  # x0^3 has a non-reduced eigenscheme
    assert d.evaluate([1, 0, 0, 1]) != 0  # x0^3 + x1^3 has three distinct eigenpoints


def test_restricted_hurwitz_ratio():
    h = binary_restricted_hurwitz()
    d = binary_eigendiscriminant()
    assert h.normalized == d
    assert h.raw == d * mpq(-3)
    assert h.scale == mpq(-1, 3)


def test_conjecture_report():
    r = compare_conjecture(corpus.HURWITZ_DISPLAY)
    assert r.raw_ratio == -3 and r.normalized_ratio == 1 and r.ratio_is_unit
    assert r.unmatched_printed == [("-156*a1*a3^2*a3", -108), ("-108*a1*a2*a3^2", None)]
    assert r.uncovered_computed == [((1, 0, 1, 2), -108), ((0, 1, 2, 1), -156)]


def test_conjecture_report_on_the_computed_display():
    d = binary_eigendiscriminant()
    terms = [str(Polynomial(d.ctx, QQ, {e: c})) for e, c in d.terms.items()]
    r = compare_conjecture(terms)
    assert r.unmatched_printed == [] and r.uncovered_computed == []


def test_eigen_plane_rejects_bad_rows():
    with pytest.raises(ValueError):
        EigenPlane(((1, 2),), QQ)
