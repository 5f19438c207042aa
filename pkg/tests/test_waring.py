import pytest

from hessrec.mpoly import parse_poly, proportional
from hessrec.symsq import hessian_map_forms, sym_pairs
from hessrec.waring import (
    DegreeBudgetExceeded, DiagonalForm, fiber_enumerate, h_lambda, image_degree,
    image_polynomial, sign_classes, torus_check,
)


def test_h_lambda_examples():
    F = DiagonalForm(3, (1, 2, -1))
    assert [str(f) for f in h_lambda(F)] == ["x0", "2*x1", "-x2"]
    assert [str(f) for f in h_lambda(DiagonalForm(4, (1, 1)))] == ["x0^2", "x1^2"]


@pytest.mark.parametrize("d,lam", [(3, (1, 2, -1)), (4, (1, 3)), (5, (2, -1, 1))])
def test_h_lambda_is_the_diagonal_of_the_hessian(d, lam):
    F = DiagonalForm(d, lam)
    h = hessian_map_forms(F.poly())
    pairs = sym_pairs(F.k - 1)
    scale = d * (d - 1)
    for (i, j), hij in zip(pairs, h):
        if i == j:
            assert hij == h_lambda(F)[i] * scale
        else:
            assert hij.is_zero()


def test_image_degrees():
    assert image_degree(3, 2) == 3
    assert image_degree(3, 3) == 3
    assert image_degree(4, 2) == 2
    assert image_degree(4, 3) == 2
    assert image_degree(5, 2) == 5
    assert image_degree(5, 3) == 15
    for d, k in [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)]:
        assert image_polynomial(DiagonalForm(d, (1,) * k)).degree == image_degree(d, k)


def test_image_of_fermat_cubic_curve():
    P = image_polynomial(DiagonalForm(3, (1, 1, 1)))
    assert P == parse_poly("z0^3+z1^3+z2^3", 3)


@pytest.mark.parametrize("d,k,size", [(3, 3, 4), (3, 2, 2), (5, 2, 2), (4, 2, 1), (4, 3, 1)])
def test_fiber_sizes(d, k, size):
    assert len(fiber_enumerate(DiagonalForm(d, (1,) * k))) == size


def test_sign_classes_share_the_image():
    base = DiagonalForm(3, (1, 2, 3))
    target = image_polynomial(base)
    assert len(sign_classes(3)) == 4
    for s in sign_classes(3):
        assert proportional(image_polynomial(base.scaled(s)), target)


def test_non_sign_changes_separate():
    base = image_polynomial(DiagonalForm(3, (1, 1, 1)))
    for lam in [(1, 2, 1), (1, 1, 3), (5, 1, 1)]:
        assert not proportional(base, image_polynomial(DiagonalForm(3, lam)))
    even = image_polynomial(DiagonalForm(4, (1, 1, 1)))
    assert not proportional(even, image_polynomial(DiagonalForm(4, (1, -1, 1))))


@pytest.mark.parametrize("d,k", [(3, 3), (4, 3), (5, 2)])
def test_torus_check(d, k):
    assert torus_check(DiagonalForm(d, (1,) * k), points=200, seed=d) == 200


def test_degree_budget():
    with pytest.raises(DegreeBudgetExceeded):
        image_polynomial(DiagonalForm(5, (1, 1, 1)), budget=10)
    with pytest.raises(ValueError):
        DiagonalForm(2, (1, 1))
    with pytest.raises(ValueError):
        DiagonalForm(3, (1, 0))


@pytest.mark.slow
def test_quintic_plane_curve_fiber():
    assert len(fiber_enumerate(DiagonalForm(5, (1, 1, 1)))) == 4


def test_size_guard_rejects_huge_kernels():
    with pytest.raises(DegreeBudgetExceeded):
        image_polynomial(DiagonalForm(6, (1, 1, 1, 1)))
