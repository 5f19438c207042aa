"""Recovering cubics from Hessian varieties, plus the binary-cubic fiber.

For a cubic F the Hessian map is linear: h_F(x) = sum_l x_l * gram(dF/dx_l),
so the linear part of the ideal cuts out the span of the partial
derivatives.  A cubic G is recovered from the unique point of
W cap span(dF)^(n+1), where W is the space of gradient tuples.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import exactla as la
from .exactla import QQ
from .mpoly import GradedSubspace, HomogPoly, monomials, proportional
from .symsq import SymCoords, act, gradient_span, n_from_dim, rho_of, sym_pairs
from .forward import ideal_graded_piece, linear_span, membership_test


class NotUnique(Exception):
    pass


class EmptyFiber(Exception):
    pass


class VerificationFailed(Exception):
    pass


class OnTwistedCubic(Exception):
    pass


class DegenerateConfiguration(Exception):
    pass


# ---------------------------------------------------------------- gradient tuples

def u_index(n, l, a, b):
    """Position of u^l_{ab} in the stacked (S^2 V)^(n+1) coordinates."""
    return l * len(sym_pairs(n)) + SymCoords(n).index(a, b)


def w_space_equations(n):
    """Pairs (i, j) meaning u_i = u_j; together they cut out the gradient tuples."""
    eqs = []
    for i in range(n + 1):
        for j in range(n + 1):
            if i < j:
                eqs.append((u_index(n, i, i, j), u_index(n, j, i, i)))
            elif j < i:
                eqs.append((u_index(n, i, j, i), u_index(n, j, i, i)))
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for l in range(j + 1, n + 1):
                eqs.append((u_index(n, l, i, j), u_index(n, j, i, l)))
                eqs.append((u_index(n, j, i, l), u_index(n, i, j, l)))
    return eqs


def _eq_rows(pairs, size, field=QQ):
    rows = []
    for a, b in pairs:
        r = [field.zero] * size
        r[a] = field.one
        r[b] = r[b] - field.one
        rows.append(r)
    return rows


def w_space_matrix(n, field=QQ):
    m = (n + 1) * len(sym_pairs(n))
    return _eq_rows(w_space_equations(n), m, field)


def gradient_tuple(G: HomogPoly):
    """Stacked gram coordinates of the partial derivatives of a cubic."""
    sc = SymCoords(G.nvars - 1)
    out = []
    for g in G.gradient():
        out.extend(sc.gram(g))
    return out


def cubic_from_tuple(u, n, field=QQ):
    """Inverse of ``gradient_tuple`` up to the Euler factor: sum x_l F_l."""
    sc = SymCoords(n)
    m = len(sym_pairs(n))
    F = HomogPoly.zero(n + 1, 3, field)
    for l in range(n + 1):
        q = sc.quadric(u[l * m:(l + 1) * m], field)
        F = F + HomogPoly.var(l, n + 1, field) * q
    return F


def _tuple_solutions(annihilators, n, field=QQ):
    """Kernel of W together with L(u^l) = 0 for every dual vector L."""
    m = len(sym_pairs(n))
    size = (n + 1) * m
    rows = w_space_matrix(n, field)
    for L in annihilators:
        for l in range(n + 1):
            r = [field.zero] * size
            r[l * m:(l + 1) * m] = list(L)
            rows.append(r)
    return la.kernel(rows, ncols=size, field=field)


def recover_cubic(X, n=None, verify=True):
    """The unique cubic F whose Hessian variety has the given ideal data.

    ``X`` is a HessianVarietyModel, a list of generators, or the degree-1
    GradedSubspace.  Raises NotUnique / EmptyFiber / VerificationFailed.
    """
    if isinstance(X, GradedSubspace):
        E = X
        extra = []
    else:
        E = linear_span(X)
        extra = [] if hasattr(X, "pieces") else [g for g in X if g.degree > 1]
    if n is None:
        n = n_from_dim(E.nvars)
    field = E.field
    # linear forms in E, as dual vectors on z
    ann = list(E.basis)
    sols = _tuple_solutions(ann, n, field)
    if not sols:
        raise EmptyFiber("no cubic has these linear equations")
    if len(sols) > 1:
        raise NotUnique(f"solution space has dimension {len(sols)}")
    F = cubic_from_tuple(sols[0], n, field).normalized()
    if F.is_zero():
        raise EmptyFiber("degenerate solution")
    if verify:
        if ideal_graded_piece(F, 1, check_squarefree=False) != E:
            raise VerificationFailed("linear part of the recovered ideal differs")
        for g in extra:
            if membership_test(g, F) is None:
                raise VerificationFailed(f"generator {g} does not vanish on the Hessian variety")
    return F


def w_intersection_dim(span: GradedSubspace, n):
    """Affine dimension of W cap span^(n+1) (1 means a single projective point)."""
    ann = la.kernel(span.basis, field=span.field) if span.basis else la.identity(len(sym_pairs(n)))
    return len(_tuple_solutions(ann, n, span.field))


def cyclic_cubic(k, n, field=QQ):
    """sum_{i<k} x_i^2 x_{i+1} + x_k^2 x_0 in n+1 variables."""
    x = [HomogPoly.var(i, n + 1, field) for i in range(n + 1)]
    F = x[k] * x[k] * x[0]
    for i in range(k):
        F = F + x[i] * x[i] * x[i + 1]
    return F


def cyclic_gradient_equations(k, n):
    """Equations (as index pairs / zero indices) for the span of the cyclic gradient."""
    sc = SymCoords(n)
    same, zero = [], []
    for i in range(k - 1):
        same.append((sc.index(i, i), sc.index(i + 1, i + 2)))
    same.append((sc.index(k - 1, k - 1), sc.index(0, k)))
    same.append((sc.index(k, k), sc.index(0, 1)))
    keep = {(i, i) for i in range(k + 1)} | {(i, i + 1) for i in range(k)} | {(0, k)}
    zero = [sc.index(i, j) for i, j in sc.pairs if (i, j) not in keep]
    return same, zero


def gamma_space(l, k, n, field=QQ) -> GradedSubspace:
    """The (k+1)-dimensional space Gamma_{l,k} of quadrics (2 <= l <= k <= n)."""
    sc = SymCoords(n)
    m = len(sc.pairs)
    if l == 2:
        x = [HomogPoly.var(i, n + 1, field) for i in range(n + 1)]
        forms = [x[1] * x[2], x[0] * x[2], x[0] * x[1]] + [x[0] * x[j] for j in range(3, k + 1)]
        return GradedSubspace.from_vectors([sc.gram(f) for f in forms], m, 1, field, "z")
    same = [(sc.index(i, i), sc.index(i + 1, i + 2)) for i in range(l - 1)]
    same.append((sc.index(l - 1, l - 1), sc.index(0, l)))
    same.append((sc.index(l, l), sc.index(0, 1)))
    keep = ({(i, i) for i in range(l + 1)} | {(i, i + 1) for i in range(l)}
            | {(0, j) for j in range(l, k + 1)})
    rows = _eq_rows(same, m, field)
    for i, j in sc.pairs:
        if (i, j) not in keep:
            r = [field.zero] * m
            r[sc.index(i, j)] = field.one
            rows.append(r)
    return GradedSubspace.from_vectors(la.kernel(rows, ncols=m, field=field), m, 1, field, "z")


def gamma_lk_uniqueness(l, k, n) -> bool:
    """Whether W meets Gamma_{l,k}^(n+1) in a single projective point."""
    return w_intersection_dim(gamma_space(l, k, n), n) == 1


# ---------------------------------------------------------------- quadratic extensions

def _strip_square(num: int):
    """Write num = s^2 * r with small square factors pulled out."""
    s = 1
    sign = -1 if num < 0 else 1
    num = abs(num)
    r = math.isqrt(num)
    if r * r == num:
        return r, sign
    q = 2
    while q * q <= num and q < 10000:
        while num % (q * q) == 0:
            num //= q * q
            s *= q
        q += 1
    return s, sign * num


class QuadField:
    """Q(sqrt(delta)) for a non-square integer delta (delta=1 means Q itself)."""

    def __init__(self, delta: int):
        self.delta = delta
        self.name = f"Q(sqrt({delta}))"

    def __call__(self, x):
        if isinstance(x, QuadExt):
            return x
        return QuadExt(Fraction(x), Fraction(0), self)

    @property
    def zero(self):
        return QuadExt(Fraction(0), Fraction(0), self)

    @property
    def one(self):
        return QuadExt(Fraction(1), Fraction(0), self)

    @property
    def sqrt(self):
        return QuadExt(Fraction(0), Fraction(1), self)

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.delta == self.delta

    def __hash__(self):
        return hash(("quad", self.delta))

    def __repr__(self):
        return self.name


class QuadExt:
    """a + b*sqrt(delta) with rational a, b."""
    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.field = field

    def _c(self, o):
        if isinstance(o, QuadExt):
            return o
        return QuadExt(Fraction(o), Fraction(0), self.field)

    def __add__(self, o):
        o = self._c(o)
        return QuadExt(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return QuadExt(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        d = self.field.delta
        return QuadExt(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def conj(self):
        return QuadExt(self.a, -self.b, self.field)

    def norm(self):
        return self.a * self.a - self.field.delta * self.b * self.b

    def __truediv__(self, o):
        o = self._c(o)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return self * o.conj() * QuadExt(1 / nrm, 0, self.field)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.field)

    def __pow__(self, e):
        out = QuadExt(1, 0, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        try:
            o = self._c(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def __str__(self):
        def q(x):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        if self.b == 0:
            return q(self.a)
        s = f"{q(self.b)}*sqrt({self.field.delta})"
        if self.a == 0:
            return s
        return f"({q(self.a)}{'' if self.b < 0 else '+'}{s})"

    __repr__ = __str__


def _binary_quadratic_roots(A, B, C, field):
    """Projective roots (a, c) of A a^2 + B a c + C c^2 over ``field``."""
    A, B, C = field(A), field(B), field(C)
    if A == 0 and B == 0 and C == 0:
        raise DegenerateConfiguration("quadratic vanishes identically")
    if A == 0:
        roots = [(field.one, field.zero)]
        if B != 0:
            roots.append((-C, B))
        return roots
    D = B * B - A * C * 4
    r = _sqrt_in(D, field)
    if r is None:
        raise DegenerateConfiguration("discriminant is not a square in the chosen field")
    out = [((-B + r) / (A * 2), field.one), ((-B - r) / (A * 2), field.one)]
    if r == 0:
        out = out[:1]
    return out


def _sqrt_in(D, field):
    if D == 0:
        return field.zero
    if D.b != 0:
        return None
    v = D.a
    num = v.numerator * v.denominator
    s, core = _strip_square(num)
    den = v.denominator
    if core == 1:
        return field(Fraction(s, den))
    if core == field.delta:
        return QuadExt(0, Fraction(s, den), field)
    return None


def _discriminant_core(A, B, C):
    D = Fraction(B) ** 2 - 4 * Fraction(A) * Fraction(C)
    if D == 0:
        return 1
    return _strip_square(D.numerator * D.denominator)[1]


# image points of x0 x1 (x0 - x1) under the Hessian map, as symmetric matrices
_BASE_POINTS = (
    ((1, -1), (-1, 0)),
    ((0, -1), (-1, 1)),
    ((1, 0), (0, -1)),
)


def base_binary_cubic(field=QQ):
    x0 = HomogPoly.var(0, 2, field)
    x1 = HomogPoly.var(1, 2, field)
    return x0 * x1 * (x0 - x1)


def _bil(Z, u, v):
    return sum(u[i] * Z[i][j] * v[j] for i in range(2) for j in range(2))


def _elimination_quadratics(P):
    """Coefficients of the quadratics cutting out the rows (a, c) and (b, d) of g."""
    (p10, p11, p12), (p20, p21, p22), (p30, p31, p32) = P
    ac = (p10 * p20 * p31 - p11 * p20 * p30,
          2 * (p11 * p20 * p30 - p10 * p21 * p30),
          p10 * p21 * p30 - p10 * p20 * p31)
    bd = (p11 * p22 * p32 - p12 * p22 * p31,
          2 * (p12 * p21 * p32 - p11 * p22 * p32),
          p12 * p22 * p31 - p12 * p21 * p32)
    return ac, bd


def _minors(r1, r2, P):
    """The 9 proportionality conditions rho_of(g) q_m ~ p_m."""
    out = []
    for Z, p in zip(_BASE_POINTS, P):
        img = (_bil(Z, r1, r1), _bil(Z, r1, r2), _bil(Z, r2, r2))
        out += [img[0] * p[1] - img[1] * p[0],
                img[1] * p[2] - img[2] * p[1],
                img[0] * p[2] - img[2] * p[0]]
    return out


def fiber_h31(points):
    """Binary cubics whose Hessian variety is the given 3-point set.

    ``points`` are three (z00, z01, z11) triples.  Returns two normalized cubics,
    with coefficients in Q or in a real/imaginary quadratic extension.
    """
    P = [tuple(Fraction(c) for c in p) for p in points]
    if len(P) != 3 or any(all(c == 0 for c in p) for p in P):
        raise DegenerateConfiguration("need three nonzero points")
    if len(set(tuple(la.row_space([list(p)])[0]) for p in P)) != 3:
        raise DegenerateConfiguration("need three distinct points")
    ac, bd = _elimination_quadratics(P)
    cores = {c for c in (_discriminant_core(*ac), _discriminant_core(*bd)) if c != 1}
    if len(cores) > 1:
        raise DegenerateConfiguration("rows live in different quadratic fields")
    delta = cores.pop() if cores else 1
    K = QuadField(delta) if delta != 1 else QuadField(1)
    rows1 = _binary_quadratic_roots(*ac, K)
    rows2 = _binary_quadratic_roots(*bd, K)
    Pk = [tuple(K(c) for c in p) for p in P]
    found = []
    for r1 in rows1:
        for w in rows2:
            for t in _scale_candidates(r1, w, Pk, K):
                r2 = (w[0] * t, w[1] * t)
                if all(m == 0 for m in _minors(r1, r2, Pk)):
                    g = [[r1[0], r1[1]], [r2[0], r2[1]]]
                    F = act(g, base_binary_cubic(K)).normalized()
                    if all(c.is_rational() for c in F.terms.values()):
                        F = HomogPoly(2, 3, {e: c.a for e, c in F.terms.items()})
                    if not any(F == G for G in found):
                        found.append(F)
    if len(found) != 2:
        raise DegenerateConfiguration(f"expected two preimages, found {len(found)}")
    return sorted(found, key=str)


def _scale_candidates(r1, w, P, K):
    """Scalars t making (r1, t*w) satisfy one of the conditions."""
    cands = []
    for Z, p in zip(_BASE_POINTS, P):
        A0, A1, A2 = _bil(Z, r1, r1), _bil(Z, r1, w), _bil(Z, w, w)
        # A0 p1 - t A1 p0 = 0 ; t A1 p2 - t^2 A2 p1 = 0 ; A0 p2 - t^2 A2 p0 = 0
        if A1 * p[0] != 0:
            cands.append(A0 * p[1] / (A1 * p[0]))
        if A2 * p[1] != 0 and A1 * p[2] != 0:
            cands.append(A1 * p[2] / (A2 * p[1]))
    out = []
    for t in cands:
        if t != 0 and t not in out:
            out.append(t)
    return out


def hessian_points_binary_cubic(F: HomogPoly, roots):
    """Images h_F(r) of the given roots (for test data with rational roots)."""
    from .symsq import hessian_map_forms
    h = hessian_map_forms(F)
    return [h(r) for r in roots]


# ---------------------------------------------------------------- the involution

def _coeffs4(F):
    if isinstance(F, HomogPoly):
        if F.nvars != 2 or F.degree != 3:
            raise ValueError("need a binary cubic")
        return [F.coeff((3 - i, i)) for i in range(4)]
    return [Fraction(c) if isinstance(c, (int, Fraction)) else c for c in F]


def iota_quartics(a0, a1, a2, a3):
    """The four quartic covariants; works for any ring elements."""
    return [
        -2 * a1 ** 3 + 9 * a0 * a1 * a2 - 27 * a0 ** 2 * a3,
        3 * (-a1 ** 2 * a2 + 6 * a0 * a2 ** 2 - 9 * a0 * a1 * a3),
        3 * (a1 * a2 ** 2 - 6 * a1 ** 2 * a3 + 9 * a0 * a2 * a3),
        2 * a2 ** 3 - 9 * a1 * a2 * a3 + 27 * a0 * a3 ** 2,
    ]


def involution_iota(F):
    """Quartic covariant map on binary cubics sum a_i x0^(3-i) x1^i."""
    out = iota_quartics(*_coeffs4(F))
    if all(c == 0 for c in out):
        raise OnTwistedCubic("cubic is a perfect cube")
    return out


def involution_matrix_psi(F):
    a0, a1, a2, a3 = _coeffs4(F)
    return [[9 * a3 * a0 - a1 * a2, 2 * a1 ** 2 - 6 * a2 * a0],
            [6 * a3 * a1 - 2 * a2 ** 2, a2 * a1 - 9 * a3 * a0]]


def binary_form(coeffs, field=QQ):
    d = len(coeffs) - 1
    return HomogPoly(2, d, {(d - i, i): c for i, c in enumerate(coeffs)}, field)
