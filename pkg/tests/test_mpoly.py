import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessrec.exactla import PrimeField, QQ
from hessrec.mpoly import (
    GradedSubspace, HomogPoly, ParseError, format_poly, fp_is_squarefree, fp_univariate_roots,
    macaulay_matrix, monomials, parse_poly, proportional, random_form,
)


@st.composite
def forms(draw, nvars=None, degree=None):
    nv = draw(st.integers(1, 3)) if nvars is None else nvars
    d = draw(st.integers(0, 4)) if degree is None else degree
    mons = monomials(nv, d)
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                           min_size=len(mons), max_size=len(mons)))
    return HomogPoly(nv, d, dict(zip(mons, coeffs)))


def test_monomial_order_is_descending_lex():
    assert list(monomials(3, 2)) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomials(4, 3)) == 20


@given(forms())
def test_text_round_trip(f):
    g = parse_poly(format_poly(f), f.nvars, degree=f.degree) if not f.is_zero() else f
    assert g == f


def test_parse_examples():
    f = parse_poly("x0^3*x1+x1^3*x2+x2^3*x0+3*x0^2*x1*x2", 3)
    assert f.degree == 4 and f.coeff((2, 1, 1)) == 3
    z = parse_poly("1/2*z0*z5-z3^2", 6)
    assert z.prefix == "z" and z.coeff((1, 0, 0, 0, 0, 1)) == Fraction(1, 2)
    with pytest.raises(ParseError):
        parse_poly("x0^2+x1", 2)
    with pytest.raises(ParseError):
        parse_poly("x0^2+y1^2", 2)


@given(forms(nvars=3), forms(nvars=3), forms(nvars=3))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    if g.degree == h.degree:
        assert f * (g + h) == f * g + f * h


@given(forms(nvars=3, degree=3))
def test_euler_identity(f):
    s = HomogPoly.zero(3, 3)
    for i in range(3):
        s = s + HomogPoly.var(i, 3) * f.diff(i)
    assert s == f * 3


@given(forms(nvars=2, degree=3), forms(nvars=3, degree=2), forms(nvars=3, degree=2))
def test_substitution_is_a_ring_map(f, a, b):
    # (f o (a, b)) evaluated equals f evaluated at (a(x), b(x))
    x = [Fraction(1), Fraction(-2), Fraction(3)]
    assert f.subs([a, b])(x) == f([a(x), b(x)])


@given(forms(nvars=3, degree=3))
def test_linear_change_composes(f):
    m1 = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
    m2 = [[0, 1, 1], [1, 0, 2], [-1, 1, 0]]
    prod = [[sum(m1[i][k] * m2[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    # f(m1 (m2 x)) == f((m1 m2) x)
    assert f.linear_change(m1).linear_change(m2) == f.linear_change(prod)


def test_normalized_and_proportional():
    f = parse_poly("2*x0^2-4*x0*x1", 2)
    assert f.normalized() == parse_poly("x0^2-2*x0*x1", 2)
    assert proportional(f, f * Fraction(-3, 7))
    assert not proportional(f, parse_poly("x0^2+x1^2", 2))


def test_graded_subspace_operations():
    z = [HomogPoly.var(i, 3, prefix="z") for i in range(3)]
    S = GradedSubspace.span([z[0] * z[1], z[1] * z[1] + z[0] * z[1]])
    assert S.dim == 2
    assert S.contains(z[1] * z[1])
    assert not S.contains(z[2] * z[2])
    assert S == GradedSubspace.span([z[1] * z[1], z[0] * z[1] * 5])
    r = S.reduce(z[1] * z[1] + z[2] * z[2])
    assert r == z[2] * z[2]
    assert len(S.annihilator()) == S.ambient_dim - S.dim


def test_macaulay_matrix_spans_ideal_piece():
    x = [HomogPoly.var(i, 2) for i in range(2)]
    M = macaulay_matrix([x[0] * x[0]], 3)
    assert len(M) == 4 and len(M[0]) == 2
    assert GradedSubspace.from_vectors(list(zip(*M)), 2, 3, QQ, "x").dim == 2


def test_fp_roots_and_squarefree():
    p = 10007
    rng = random.Random(1)
    # (t-3)(t-5)(t^2+1) ; t^2+1 has no root since p = 3 mod 4
    coeffs = [15, -8, 16, -8, 1]
    assert fp_univariate_roots(coeffs, p, rng) == [3, 5]
    assert fp_is_squarefree(coeffs, p)
    assert not fp_is_squarefree([9, -6, 1], p)  # (t-3)^2


def test_random_form_and_field_change():
    f = random_form(3, 2, random.Random(0), bound=3)
    F = PrimeField(7)
    g = f.to_field(F)
    assert all(g.coeff(e) == F(c) for e, c in f.terms.items())
