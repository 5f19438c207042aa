import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hessrec import exactla as la
from hessrec.acceptance import cyclic_point_span
from hessrec.exactla import QQ
from hessrec.forward import ideal_graded_piece, is_squarefree
from hessrec.mpoly import GradedSubspace, HomogPoly, parse_poly, proportional, random_form
from hessrec.recover3 import (
    DegenerateConfiguration, EmptyFiber, NotUnique, OnTwistedCubic, QuadField,
    base_binary_cubic, binary_form, fiber_h31, gamma_lk_uniqueness, gamma_space,
    involution_iota, involution_matrix_psi, iota_quartics, recover_cubic, w_intersection_dim,
    w_space_matrix,
)
from hessrec.symsq import act, hessian_map_forms, rho_of, zvar


def random_cubic(nvars, rng):
    while True:
        F = random_form(nvars, 3, rng)
        if not F.is_zero() and is_squarefree(F):
            return F


@pytest.mark.parametrize("n", range(1, 7))
def test_gradient_tuple_space_dimension(n):
    assert len(la.kernel(w_space_matrix(n))) == comb(n + 3, 3)


@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_cubic_round_trip(seed, n):
    F = random_cubic(n + 1, random.Random(seed))
    assert proportional(recover_cubic(ideal_graded_piece(F, 1), n), F)


def test_cubic_round_trip_n4():
    rng = random.Random(2)
    for _ in range(5):
        F = random_cubic(5, rng)
        assert proportional(recover_cubic(ideal_graded_piece(F, 1), 4), F)


def test_triangle_example():
    z = [zvar(2, k) for k in range(6)]
    gens = [z[0], z[3], z[5], z[1] * z[2] * z[4]]
    F = recover_cubic(gens, 2)
    assert proportional(F, parse_poly("x0*x1*x2", 3))


def test_fermat_cubic_is_not_unique():
    with pytest.raises(NotUnique):
        recover_cubic(ideal_graded_piece(parse_poly("x0^3+x1^3+x2^3", 3), 1), 2)


def test_rank_two_cubic_is_not_unique():
    with pytest.raises(NotUnique):
        recover_cubic(ideal_graded_piece(parse_poly("x0^3+x1^3", 3), 1, check_squarefree=False), 2)


def test_full_linear_span_is_empty():
    everything = GradedSubspace.span([zvar(2, k) for k in range(6)])
    with pytest.raises(EmptyFiber):
        recover_cubic(everything, 2)


@pytest.mark.parametrize("k", range(3, 7))
def test_cyclic_cubic_uniqueness(k):
    span = cyclic_point_span(k, k)
    assert w_intersection_dim(span, k) == 1
    assert gamma_space(k, k, k) == span


@pytest.mark.parametrize("l,k,n", [(3, 3, 3), (2, 4, 4), (3, 5, 5), (2, 2, 2), (4, 4, 4)])
def test_gamma_uniqueness(l, k, n):
    assert gamma_lk_uniqueness(l, k, n)


# ---------------------------------------------------------------- binary cubics

EXAMPLE_POINTS = [[1, -1, 0], [0, -1, 1], [1, 0, -1]]


def test_binary_cubic_fiber_example():
    got = fiber_h31(EXAMPLE_POINTS)
    x0, x1 = HomogPoly.var(0, 2), HomogPoly.var(1, 2)
    want = [x0 * x1 * (x0 - x1), (x0 - 2 * x1) * (2 * x0 - x1) * (x0 + x1)]
    assert len(got) == 2
    assert all(any(proportional(w, g) for g in got) for w in want)
    a = [got[0].coeff((3 - i, i)) for i in range(4)]
    b = [got[1].coeff((3 - i, i)) for i in range(4)]
    assert la.rank([involution_iota(a), b]) == 1


def _rational_roots_cubic(rng):
    while True:
        roots = [(QQ(rng.randint(-5, 5)), QQ(rng.randint(-5, 5))) for _ in range(3)]
        if any(r == (0, 0) for r in roots) or la.rank([list(r) for r in roots[:2]]) < 2:
            continue
        if la.rank([list(roots[0]), list(roots[2])]) < 2 or la.rank([list(roots[1]), list(roots[2])]) < 2:
            continue
        F = HomogPoly.const(1, 2)
        for a, b in roots:
            F = F * HomogPoly.linear([b, -a])  # vanishes at (a, b)
        return F, roots


@given(st.integers(0, 10**6))
def test_binary_cubic_fiber_contains_the_cubic(seed):
    F, roots = _rational_roots_cubic(random.Random(seed))
    h = hessian_map_forms(F)
    points = [h(list(r)) for r in roots]
    got = fiber_h31(points)
    assert any(proportional(F, G) for G in got)


def test_irrational_fiber_over_quadratic_field():
    K = QuadField(3)
    s = K.sqrt
    g = [[K(1) + s, K(2)], [K(-2), K(-1) + s]]
    F = act(g, base_binary_cubic(K)).normalized()
    R = rho_of(g, K)
    hb = hessian_map_forms(base_binary_cubic())
    points = []
    for r in ([1, 0], [0, 1], [1, 1]):
        v = hb(r)
        w = [sum((R[i][j] * v[j] for j in range(3)), K.zero) for i in range(3)]
        piv = next(c for c in w if c != 0)
        w = [c / piv for c in w]
        assert all(c.is_rational() for c in w)
        points.append([c.a for c in w])
    got = fiber_h31(points)
    assert F in got
    other = next(G for G in got if G != F)
    # the two cubics are Galois conjugate and swapped by iota
    assert all(other.coeff(e) == c.conj() for e, c in F.terms.items())
    a = [F.coeff((3 - i, i)) for i in range(4)]
    b = [other.coeff((3 - i, i)) for i in range(4)]
    ia = involution_iota(a)
    k = next(i for i in range(4) if b[i] != 0)
    assert all(ia[i] * b[k] == b[i] * ia[k] for i in range(4))


def test_degenerate_configurations():
    with pytest.raises(DegenerateConfiguration):
        fiber_h31([[0, 0, 0], [0, -1, 1], [1, 0, -1]])
    with pytest.raises(DegenerateConfiguration):
        fiber_h31([[1, -1, 0], [2, -2, 0], [1, 0, -1]])


def test_iota_examples():
    assert la.rank([involution_iota([0, 1, -1, 0]), [2, -3, -3, 2]]) == 1
    with pytest.raises(OnTwistedCubic):
        involution_iota([1, 0, 0, 0])


def test_iota_is_an_involution():
    rng = random.Random(21)
    checked = 0
    while checked < 100:
        a = [QQ(rng.randint(-9, 9)) for _ in range(4)]
        try:
            back = involution_iota(involution_iota(a))
        except OnTwistedCubic:
            continue
        assert la.rank([a, back]) == 1
        checked += 1


def test_iota_vanishes_on_twisted_cubic():
    s, t = HomogPoly.var(0, 2), HomogPoly.var(1, 2)
    assert all(q.is_zero() for q in iota_quartics(s ** 3, 3 * s * s * t, 3 * s * t * t, t ** 3))


def test_double_root_stratum_maps_into_the_twisted_cubic():
    assert la.rank([involution_iota([0, 1, 0, 0]), [1, 0, 0, 0]]) == 1
    rng = random.Random(4)
    for _ in range(20):
        l1 = HomogPoly.linear([rng.randint(-4, 4) or 1, rng.randint(-4, 4)])
        l2 = HomogPoly.linear([rng.randint(-4, 4), rng.randint(-4, 4) or 1])
        if proportional(l1, l2):
            continue
        F = l1 * l1 * l2
        image = involution_iota(F)
        with pytest.raises(OnTwistedCubic):
            involution_iota(image)


def test_psi_matrix_example():
    assert involution_matrix_psi([0, 1, -1, 0]) == [[1, 2], [-2, -1]]


def discriminant(a0, a1, a2, a3):
    return (a1 ** 2 * a2 ** 2 - 4 * a0 * a2 ** 3 - 4 * a1 ** 3 * a3
            - 27 * a0 ** 2 * a3 ** 2 + 18 * a0 * a1 * a2 * a3)


def test_psi_properties_on_100_cubics():
    rng = random.Random(13)
    for _ in range(100):
        a = [QQ(rng.randint(-9, 9)) for _ in range(4)]
        P = involution_matrix_psi(a)
        P2 = la.matmul(P, P)
        assert P2[0][1] == 0 and P2[1][0] == 0 and P2[0][0] == P2[1][1]
        assert la.det(P) == 3 * discriminant(*a)
        F = binary_form(a)
        try:
            ia = involution_iota(a)
        except OnTwistedCubic:
            continue
        if la.det(P) != 0:
            moved = act(P, F)
            b = [moved.coeff((3 - i, i)) for i in range(4)]
            assert la.rank([b, ia]) == 1
