import random

import pytest

from hessrec import fixtures as fx
from hessrec.exactla import PrimeField, QQ
from hessrec.forward import (
    NoPointFound, NotSquarefree, generated_piece, hessian_variety, hilbert_probe,
    ideal_graded_piece, is_squarefree, linear_span, membership_test, minimal_generators,
    sample_point_on_hypersurface,
)
from hessrec.mpoly import GradedSubspace, HomogPoly, parse_poly, random_form
from hessrec.symsq import hessian_map_forms, hessian_matrix, zvar

FERMAT = parse_poly("x0^3+x1^3+x2^3", 3)


def test_fermat_cubic_linear_part():
    L = ideal_graded_piece(FERMAT, 1)
    # off-diagonal coordinates z01, z02, z12 vanish
    assert L == GradedSubspace.span([zvar(2, 1), zvar(2, 2), zvar(2, 4)])


def test_fermat_cubic_cubic_generator():
    model = hessian_variety(FERMAT, (1, 3))
    gens = minimal_generators(model)
    cubics = [g for g in gens if g.degree == 3]
    assert len(cubics) == 1
    assert cubics[0] == parse_poly("z0^3+z3^3+z5^3", 6)


def test_example_ideal_matches_reference_quadrics():
    F = parse_poly(fx.QUARTIC, 3)
    I2 = ideal_graded_piece(F, 2)
    assert I2.dim == 7
    assert I2 == GradedSubspace.span(fx.ideal_x(), 6, 2, QQ, "z")
    assert ideal_graded_piece(F, 1).dim == 0


def test_membership_examples():
    assert membership_test(zvar(2, 1), FERMAT) is not None
    assert membership_test(zvar(2, 0), FERMAT) is None
    assert membership_test(HomogPoly.zero(6, 1, prefix="z"), FERMAT) is not None


def test_squarefree_detection():
    assert is_squarefree(FERMAT)
    assert not is_squarefree(parse_poly("x0^2*x1+x1^3", 2) * HomogPoly.var(1, 2))
    assert is_squarefree(parse_poly("x0^2*x1+x1^3", 2))
    with pytest.raises(NotSquarefree):
        ideal_graded_piece(parse_poly("x0^2*x1", 2), 1)


def test_point_sampling():
    F7 = PrimeField(7)
    q = sample_point_on_hypersurface(parse_poly("x0^2-x1^2", 2, F7), seed=1)
    assert q[0] ** 2 == q[1] ** 2
    q = sample_point_on_hypersurface(parse_poly("x0", 2, F7), seed=2)
    assert q[0] == 0
    Fp = PrimeField(10007)
    G = random_form(3, 3, random.Random(5)).to_field(Fp)
    rng = random.Random(6)
    for _ in range(500):
        assert G(sample_point_on_hypersurface(G, rng)) == 0


def test_no_point_found_is_raised():
    F3 = PrimeField(3)
    # x0^2 + x1^2 has no nonzero point over F_3
    with pytest.raises(NoPointFound):
        sample_point_on_hypersurface(parse_poly("x0^2+x1^2", 2, F3), seed=0, tries=5)


def test_pieces_vanish_at_sampled_points():
    rng = random.Random(9)
    F = random_form(3, 4, rng)
    Fp = PrimeField(1000003)
    I2 = ideal_graded_piece(F, 2)
    Fq = F.to_field(Fp)
    h = hessian_map_forms(Fq)
    for _ in range(100):
        q = sample_point_on_hypersurface(Fq, rng)
        z = h(q)
        assert all(Q.to_field(Fp)(z) == 0 for Q in I2.forms())


def test_monotonicity_of_pieces():
    rng = random.Random(10)
    F = random_form(3, 3, rng)
    model = hessian_variety(F, (1, 2, 3))
    for e in (1, 2):
        assert model.piece(e + 1).contains_space(generated_piece(model.piece(e).forms(), e + 1))


def test_quadratic_forms_are_fixed():
    rng = random.Random(12)
    F = random_form(3, 2, rng)
    H = hessian_matrix(F)
    x = [HomogPoly.var(i, 3) for i in range(3)]
    total = HomogPoly.zero(3, 2)
    for i in range(3):
        for j in range(3):
            total = total + x[i] * x[j] * H[i][j]
    assert total == F * 2
    with pytest.raises(ValueError):
        ideal_graded_piece(F, 1)


def test_linear_span_and_hilbert_probe():
    gens = [zvar(2, 0), zvar(2, 3), zvar(2, 5), zvar(2, 1) * zvar(2, 2) * zvar(2, 4)]
    assert linear_span(gens).dim == 3
    probe = hilbert_probe(gens, (1, 2))
    assert probe == {1: 3, 2: 3 * 6 - 3}
