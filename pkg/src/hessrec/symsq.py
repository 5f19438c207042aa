"""Symmetric-matrix coordinates, Hessian maps and the induced GL action.

Coordinates ``z_ij`` (i <= j) are ordered lexicographically:
(0,0), (0,1), ..., (0,n), (1,1), ..., (n,n).  A point ``z`` is the symmetric
matrix with entries ``z_ij``, i.e. the quadratic form
``sum z_ii x_i^2 + sum_{i<j} 2 z_ij x_i x_j``.

Group action conventions:
  act(g, F) = F(g^T x)
  rho_of(g) = matrix of Z -> g Z g^T on the z coordinates
so that  h_{act(g,F)}((g^T)^{-1} y) = rho_of(g) h_F(y)  exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import exactla as la
from .exactla import QQ, NotRankOneSymmetric
from .mpoly import GradedSubspace, HomogPoly


class NotInImage(Exception):
    pass


@lru_cache(maxsize=None)
def sym_pairs(n: int):
    """Index pairs (i, j), i <= j, for an (n+1)x(n+1) symmetric matrix."""
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def sym_index(n: int):
    return {p: k for k, p in enumerate(sym_pairs(n))}


def pair_index(n, i, j):
    return sym_index(n)[(min(i, j), max(i, j))]


def n_from_dim(m: int) -> int:
    """Recover n from the number of z coordinates ``(n+1)(n+2)/2``."""
    n = 0
    while (n + 1) * (n + 2) // 2 < m:
        n += 1
    if (n + 1) * (n + 2) // 2 != m:
        raise ValueError(f"{m} is not a triangular number")
    return n


@dataclass(frozen=True)
class SymCoords:
    n: int

    @property
    def pairs(self):
        return sym_pairs(self.n)

    @property
    def N(self):
        return len(self.pairs) - 1

    def index(self, i, j):
        return pair_index(self.n, i, j)

    def name(self, k):
        return f"z{k}"

    def to_matrix(self, z):
        m = [[None] * (self.n + 1) for _ in range(self.n + 1)]
        for (i, j), v in zip(self.pairs, z):
            m[i][j] = m[j][i] = v
        return m

    def from_matrix(self, m):
        return [m[i][j] for i, j in self.pairs]

    def quadric(self, z, field=QQ):
        """Quadratic form in x whose symmetric matrix has entries z."""
        terms = {}
        for (i, j), v in zip(self.pairs, z):
            e = [0] * (self.n + 1)
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = v if i == j else 2 * v
        return HomogPoly(self.n + 1, 2, terms, field)

    def gram(self, q: HomogPoly):
        """Inverse of ``quadric``: z coordinates of a quadratic form."""
        out = []
        for i, j in self.pairs:
            e = [0] * (self.n + 1)
            e[i] += 1
            e[j] += 1
            c = q.coeff(e)
            out.append(c if i == j else c / 2)
        return out


def zvar(n, k, field=QQ):
    return HomogPoly.var(k, len(sym_pairs(n)), field, "z")


@dataclass
class ProjMap:
    """A rational map given by forms of equal degree."""
    forms: tuple

    def __call__(self, point):
        return [f(point) for f in self.forms]

    def pullback(self, q: HomogPoly) -> HomogPoly:
        return q.subs(list(self.forms))

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, k):
        return self.forms[k]


def hessian_matrix(F: HomogPoly):
    grad = F.gradient()
    return [[gi.diff(j) for j in range(F.nvars)] for gi in grad]


def hessian_map_forms(F: HomogPoly) -> ProjMap:
    """The Hessian map x -> H_F(x) in z coordinates."""
    n = F.nvars - 1
    grad = F.gradient()
    return ProjMap(tuple(grad[i].diff(j) for i, j in sym_pairs(n)))


def gradient_span(F: HomogPoly) -> GradedSubspace:
    grad = F.gradient()
    return GradedSubspace.span(grad, F.nvars, F.degree - 1, F.field, "x")


def act(g, F: HomogPoly) -> HomogPoly:
    """F composed with g^T."""
    return F.linear_change(la.transpose(g))


def rho_of(g, field=None):
    """Matrix of Z -> g Z g^T in lex z coordinates."""
    if field is None:
        field = la.matrix_field(g)
    g = la.coerce_matrix(g, field)
    n = len(g) - 1
    pairs = sym_pairs(n)
    out = []
    # (gZg^T)_{ij} = sum_{k,l} g_ik g_jl Z_kl
    for i, j in pairs:
        row = []
        for k, l in pairs:
            v = g[i][k] * g[j][l]
            if k != l:
                v = v + g[i][l] * g[j][k]
            row.append(v)
        out.append(row)
    return out


def rho_inverse(A, field=None):
    """Recover g (up to sign) with ``A = mu * rho_of(g)`` for some scalar mu.

    Returns ``(g, mu)``; raises NotInImage if A is not of that form.
    """
    if field is None:
        field = la.matrix_field(A)
    A = la.coerce_matrix(A, field)
    m = len(A)
    n = n_from_dim(m)
    sc = SymCoords(n)
    col = lambda p: [A[r][p] for r in range(m)]
    ws, cs = [], []
    for k in range(n + 1):
        s = sc.to_matrix(col(sc.index(k, k)))
        try:
            c, w = la.rank1_sym_factor(s, field)
        except NotRankOneSymmetric as exc:
            raise NotInImage(f"column ({k},{k}) is not rank one: {exc}") from exc
        ws.append(w)
        cs.append(c)
    mu = cs[0]
    scales = [field.one]
    for l in range(1, n + 1):
        s = sc.to_matrix(col(sc.index(0, l)))
        w0, wl = ws[0], ws[l]
        # s = t (w0 wl^T + wl w0^T)
        t = None
        for i in range(n + 1):
            for j in range(n + 1):
                b = w0[i] * wl[j] + wl[i] * w0[j]
                if b != 0:
                    t = s[i][j] / b
                    break
            if t is not None:
                break
        if t is None or t == 0:
            raise NotInImage("degenerate off-diagonal column")
        scales.append(t / mu)
    g = [[scales[k] * ws[k][i] for k in range(n + 1)] for i in range(n + 1)]
    R = rho_of(g, field)
    if any(mu * R[i][j] != A[i][j] for i in range(m) for j in range(m)):
        raise NotInImage("matrix is not a scalar multiple of rho_of(g)")
    return g, mu


def rho_inverse_matrix(A, field=None):
    return rho_inverse(A, field)[0]


def transform_zspace(space: GradedSubspace, R) -> GradedSubspace:
    """Image of the subspace under ``Q -> Q o R^{-1}`` (for the variety moved by R)."""
    Rinv = la.inverse(R, space.field)
    forms = [HomogPoly.linear(row, space.field, "z") for row in Rinv]
    return space.transformed(forms)
