import itertools
import random

import pytest

from eigencubic import corpus
from eigencubic.exact import QQ
from eigencubic.groebner import (Ideal, NotHomogeneous, eliminate, groebner,
                                 hilbert, ideal_contains, ideal_equal, intersect, is_groebner,
                                 normal_form, quotient, quotient_ideal, saturate, unit_ideal)
from eigencubic.poly import LEX, Polynomial
from eigencubic.tensor import (analyze, eigenpair_ideal, eigenscheme_ideal, irregular_ideal,
                               random_cubic, regular_ideal)

from conftest import brute_hilbert_function, ctx, poly


def I(texts, n, field=QQ, with_lambda=False):
    c = ctx(n, with_lambda)
    return Ideal([poly(t, n, field, with_lambda) for t in texts], c, field)


def test_groebner_containment_example():
    G = groebner(I(["x0^2", "x0"], 1))
    assert [str(g) for g in G.elements] == ["x0"]


def test_groebner_of_fermat_gradient():
    G = groebner(I(["3*x0^2", "3*x1^2", "3*x2^2"], 2))
    assert sorted(str(g) for g in G.elements) == ["x0^2", "x1^2", "x2^2"]


def test_groebner_binary_eigenscheme():
    G = groebner(eigenscheme_ideal(poly("x0^3+x1^3", 1)))
    assert [str(g) for g in G.elements] == ["x0^2*x1 - x0*x1^2"]


def test_groebner_lex_example():
    # x^2 + 2xy^2, xy + 2y^3 - 1 under lex -> {x, y^3 - 1/2}
    c = ctx(1)
    f = Polynomial(c, QQ, {(2, 0): 1, (1, 2): 2})
    g = Polynomial(c, QQ, {(1, 1): 1, (0, 3): 2, (0, 0): -1})
    G = groebner(Ideal([f, g], c, QQ), LEX)
    assert [str(p) for p in G.elements] == ["x1^3 - 1/2", "x0"]


def test_normal_form_examples():
    c = ctx(1)
    assert normal_form(poly("x0^2", 1), groebner(I(["x0"], 1))).is_zero()
    p = Polynomial(c, QQ, {(1, 0): 1, (0, 0): 1})
    assert normal_form(p, groebner(I(["x1"], 1))) == p
    assert normal_form(poly("x0^2*x1", 1), groebner(I(["x0^2-x1^2"], 1))) == poly("x1^3", 1)


def test_intersection_examples():
    assert ideal_equal(intersect(I(["x0"], 1), I(["x1"], 1)), I(["x0*x1"], 1))
    J = I(["x0^2", "x1*x2"], 2)
    assert ideal_equal(intersect(J, unit_ideal(ctx(2))), J)


def test_quotient_examples():
    assert ideal_equal(quotient(I(["x0*x1"], 1), poly("x0", 1)), I(["x1"], 1))
    J = I(["x0^2", "x1*x2"], 2)
    assert ideal_equal(quotient(J, Polynomial.constant(ctx(2), QQ, 1)), J)
    assert ideal_equal(quotient(I(["x0^2", "x0*x1"], 1), poly("x0", 1)), I(["x0", "x1"], 1))
    with pytest.raises(ZeroDivisionError):
        quotient(J, Polynomial.zero(ctx(2)))


def test_saturation_examples():
    assert ideal_equal(saturate(I(["x0^2*x1"], 1), I(["x0"], 1)), I(["x1"], 1))
    J = I(["x0", "x1"], 2)
    assert ideal_equal(saturate(J, I(["x2"], 2)), J)


def test_elimination_examples():
    E = eliminate(I(["L-x0", "L-x1"], 1, with_lambda=True), ["L"])
    assert ideal_equal(E, I(["x0-x1"], 1))
    E = eliminate(I(["x0"], 1, with_lambda=True), ["L"])
    assert ideal_equal(E, I(["x0"], 1))


def test_eliminating_lambda_contains_minors():
    f = random_cubic(2, random.Random(1)).f
    proj = eliminate(eigenpair_ideal(f), ["L"])
    G = groebner(proj)
    for m in eigenscheme_ideal(f).generators:
        assert normal_form(m, G).is_zero()


def test_hilbert_examples():
    h = hilbert(I(["x0", "x1", "x2"], 2))
    assert h.projective_dimension == -1
    h = hilbert(I(["x1", "x2"], 2))
    assert (h.projective_dimension, h.degree) == (0, 1)
    h = hilbert(eigenscheme_ideal(poly("x0^3+x1^3+x2^3", 2)))
    assert (h.projective_dimension, h.degree) == (0, 7)
    assert hilbert(unit_ideal(ctx(2))).projective_dimension == -1


def test_hilbert_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneous):
        hilbert(I(["x0^2-x1"], 1))


def test_ideal_equal_and_contains():
    assert ideal_equal(I(["x0", "x1"], 1), I(["x1", "x0+x1"], 1))
    assert ideal_contains(I(["x0"], 1), I(["x0^2"], 1))
    assert not ideal_contains(I(["x0^2"], 1), I(["x0"], 1))


def test_nonreduced_example_containment():
    f = corpus.cubic(corpus.NONREDUCED_CUBIC, 3)
    C = corpus.ideal_from_text(corpus.NONREDUCED_CURVE, 3)
    assert ideal_contains(C, regular_ideal(f))


def _paper_ideals():
    out = []
    cells = corpus.DIMENSIONS_TERNARY + corpus.DIMENSIONS_QUATERNARY
    for cell in cells:
        if cell.field == "theta-gaussian":
            T = corpus.theta_cell_reduced()
        else:
            T = corpus.cell_cubic(cell)
        r = analyze(T, check_bounds=False)
        for name, ideal, h in (("E", r.eigen, r.eigen_hilbert), ("Irr", r.irregular, r.irregular_hilbert),
                               ("Reg", r.regular, r.regular_hilbert)):
            out.append(pytest.param(ideal, h, id=f"{cell.key}-{name}"))
    return out


@pytest.mark.parametrize("ideal,h", _paper_ideals())
def test_hilbert_matches_brute_force(ideal, h):
    for d in range(9):
        assert h.hilbert_function(d) == brute_hilbert_function(ideal.generators, ideal.ctx.count, d)


def test_buchberger_criterion_on_paper_bases():
    for cell in corpus.DIMENSIONS_TERNARY + corpus.DIMENSIONS_QUATERNARY[1:]:
        r = analyze(corpus.cell_cubic(cell))
        for ideal in (r.eigen, r.irregular, r.regular):
            G = groebner(ideal)
            if len(G) <= 25:
                assert is_groebner(G)


def test_reduced_basis_is_independent_of_generator_order():
    E = eigenscheme_ideal(random_cubic(3, random.Random(2)))
    base = groebner(E).elements
    rng = random.Random(3)
    for _ in range(3):
        gens = list(E.generators)
        rng.shuffle(gens)
        assert groebner(Ideal(gens, E.ctx, E.field)).elements == base


def test_saturation_is_idempotent_on_corpus():
    # the degree-12 theta cell is replaced by its equivalent form over Q(theta)
    tensors = [f for f in corpus.corpus_cubics() if getattr(f.f.field, "degree", 1) <= 2]
    tensors.append(corpus.theta_cell_reduced())
    for f in tensors:
        irr = irregular_ideal(f)
        reg = saturate(eigenscheme_ideal(f), irr)
        assert ideal_equal(saturate(reg, irr), reg)


def test_quotient_soundness():
    f = corpus.cubic(corpus.MIXED_CUBIC, 3)
    E, J = eigenscheme_ideal(f), irregular_ideal(f)
    Q = quotient_ideal(E, J)
    G = groebner(E)
    for p, g in itertools.product(Q.generators, J.generators):
        assert normal_form(p * g, G).is_zero()


def test_membership_operator():
    J = I(["x0^2", "x1"], 1)
    assert poly("x0^3+x1^2", 1) in J
    assert poly("x0", 1) not in J
