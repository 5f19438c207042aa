import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessrec import exactla as la
from hessrec.exactla import DEFAULT_PRIME, PrimeField, QQ

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def matvec(m, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


@given(matrices())
def test_kernel_is_annihilated_and_has_complementary_dimension(m):
    K = la.kernel(m)
    assert len(K) + la.rank(m) == len(m[0])
    for v in K:
        assert all(x == 0 for x in matvec(m, v))


@given(matrices())
def test_kernel_over_prime_field(m):
    F = PrimeField(101)
    mp = la.coerce_matrix(m, F)
    K = la.kernel(mp, field=F)
    assert len(K) + la.rank(mp, F) == len(m[0])
    for v in K:
        assert all(sum((a * b for a, b in zip(row, v)), F.zero) == 0 for row in mp)


@given(matrices())
def test_rref_is_reduced(m):
    R, piv = la.rref(m)
    for i, (row, c) in enumerate(zip(R, piv)):
        assert row[c] == 1
        assert all(x == 0 for x in row[:c])
        assert all(R[k][c] == 0 for k in range(len(R)) if k != i)
    assert la.same_span(R, m)


def test_rref_matches_naive_elimination_on_random_cases():
    rng = random.Random(5)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(c)] for _ in range(r)]
        # naive Gauss-Jordan
        a = [row[:] for row in m]
        piv, row = [], 0
        for col in range(c):
            p = next((i for i in range(row, r) if a[i][col] != 0), None)
            if p is None:
                continue
            a[row], a[p] = a[p], a[row]
            a[row] = [x / a[row][col] for x in a[row]]
            for i in range(r):
                if i != row and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[row])]
            piv.append(col)
            row += 1
        assert la.rref(m) == (a[:row], piv)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_is_multiplicative(a, b):
    assert la.det(la.matmul(a, b)) == la.det(a) * la.det(b)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(a):
    if la.det(a) == 0:
        with pytest.raises(la.NoSolution):
            la.inverse(a)
    else:
        assert la.matmul(a, la.inverse(a)) == la.identity(3)


def test_solve_and_inconsistency():
    m = [[1, 2], [2, 4]]
    x = la.solve(m, [3, 6])
    assert matvec(m, x) == [3, 6]
    with pytest.raises(la.NoSolution):
        la.solve(m, [3, 7])


def test_prime_field_arithmetic():
    F = PrimeField(13)
    a, b = F(5), F(7)
    assert a + b == F(12) and a * b == F(9) and (a / b) * b == a
    assert F(Fraction(1, 2)) * 2 == F.one
    with pytest.raises(ValueError):
        PrimeField(15)


def test_miller_rabin():
    primes = [p for p in range(2, 200) if la.is_probable_prime(p)]
    assert primes[:10] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes) == 46
    assert la.is_probable_prime(DEFAULT_PRIME)
    assert not la.is_probable_prime(561)  # Carmichael


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_reconstruction(num, den):
    q = Fraction(num, den)
    m = DEFAULT_PRIME
    a = q.numerator * pow(q.denominator, -1, m) % m
    assert la.rational_reconstruct(a, m) == q


def test_crt_and_prime_stream():
    ps = list(zip(range(3), la.primes_below(1000)))
    assert [p for _, p in ps] == [997, 991, 983]
    x, m = la.crt_pair(3, 7, 5, 11)
    assert m == 77 and x % 7 == 3 and x % 11 == 5


def test_rank1_sym_factor():
    w = [Fraction(1), Fraction(-2), Fraction(3)]
    s = [[5 * a * b for b in w] for a in w]
    c, v = la.rank1_sym_factor(s)
    assert c == 5 and v == w
    with pytest.raises(la.NotRankOneSymmetric):
        la.rank1_sym_factor([[1, 0], [0, 1]])
    with pytest.raises(la.NotRankOneSymmetric):
        la.rank1_sym_factor([[1, 2], [3, 4]])


def test_echelon_basis_reports_independence():
    eb = la.EchelonBasis(QQ)
    assert eb.add([1, 2, 3])
    assert eb.add([0, 1, 1])
    assert not eb.add([2, 5, 7])
    assert eb.add([0, 0, 1])
    assert len(eb) == 3
