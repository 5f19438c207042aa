"""Recovering quartics from Hessian varieties (n even), and binary quartics.

Pipeline for n = 2k:
  I_2 -> J_2 (quadrics of the unique Veronese variety through X)
      -> minimal free resolution of R/J
      -> chart isomorphism phi : V -> P^n read off the last differential
      -> parametrization v : P^n -> V inverting phi
      -> quartic G = q o v for q in I_2 \\ J_2
      -> g from h_G o phi = rho_of(g), and F = act(g^-1, G).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import exactla as la
from .exactla import PrimeField, QQ
from .forward import ideal_graded_piece
from .mpoly import GradedSubspace, HomogPoly, macaulay_matrix, module_macaulay, monomials, split_module_vector
from .recover3 import VerificationFailed
from .symsq import SymCoords, act, hessian_map_forms, n_from_dim, rho_inverse, sym_pairs, NotInImage


class SyzygyRankMismatch(Exception):
    pass


class ResolutionShapeMismatch(Exception):
    pass


class ChartNotGeneric(Exception):
    pass


class ParametrizationFailed(Exception):
    pass


class RhoSolveAmbiguous(Exception):
    pass


class InconsistentPencil(Exception):
    pass


# ---------------------------------------------------------------- Veronese quadrics

def veronese_counts(n):
    """(a, b): number of quadrics and of linear syzygies of the quadratic Veronese of P^n."""
    N = comb(n + 2, 2) - 1
    a = comb(N + 2, 2) - comb(n + 4, 4)
    b = (N + 1) * a - comb(N + 3, 3) + comb(n + 6, 6)
    return a, b


def standard_veronese(n, field=QQ) -> GradedSubspace:
    """2x2 minors of the generic symmetric matrix."""
    sc = SymCoords(n)
    nz = len(sc.pairs)
    z = lambda i, j: HomogPoly.var(sc.index(i, j), nz, field, "z")
    forms = []
    m = n + 1
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    forms.append(z(i, k) * z(j, l) - z(i, l) * z(j, k))
    return GradedSubspace.span([f for f in forms if not f.is_zero()], nz, 2, field, "z")


def veronese_map(n, field=QQ):
    """x -> x x^T in z coordinates."""
    x = [HomogPoly.var(i, n + 1, field) for i in range(n + 1)]
    return [x[i] * x[j] for i, j in sym_pairs(n)]


def linear_syzygies(I2: GradedSubspace):
    gens = I2.forms()
    M = macaulay_matrix(gens, 3)
    return la.kernel(M, ncols=len(gens) * I2.nvars, field=I2.field)


def veronese_from_quadrics(I2: GradedSubspace, n=None) -> GradedSubspace:
    """The codimension-one subspace J_2 of I_2 spanned by linear-syzygy components."""
    nz = I2.nvars
    if n is None:
        n = n_from_dim(nz)
    a, b = veronese_counts(n)
    if I2.dim != a + 1:
        raise SyzygyRankMismatch(f"expected {a + 1} quadrics, got {I2.dim}")
    gens = I2.forms()
    Z = linear_syzygies(I2)
    if len(Z) != b:
        raise SyzygyRankMismatch(f"expected {b} linear syzygies, got {len(Z)}")
    comps = []
    for z in Z:
        for v in range(nz):
            coeffs = [z[i * nz + v] for i in range(len(gens))]
            if any(c != 0 for c in coeffs):
                q = HomogPoly.zero(nz, 2, I2.field, "z")
                for c, g in zip(coeffs, gens):
                    if c != 0:
                        q = q + g * c
                comps.append(q)
    J2 = GradedSubspace.span(comps, nz, 2, I2.field, "z")
    if J2.dim != a:
        raise SyzygyRankMismatch(f"syzygy components span {J2.dim} quadrics, expected {a}")
    return J2


# ---------------------------------------------------------------- resolution

@dataclass
class ModuleMap:
    """Map between graded free modules; ``cols[j][r]`` is a form or None."""
    cols: list
    src_twists: list
    tgt_twists: list

    def entry(self, r, j):
        return self.cols[j][r]

    def rows(self):
        return [[c[r] for c in self.cols] for r in range(len(self.tgt_twists))]


@dataclass
class GradedResolution:
    maps: list
    J2: GradedSubspace
    n: int

    @property
    def ranks(self):
        return [len(self.maps[0].tgt_twists)] + [len(m.src_twists) for m in self.maps]

    @property
    def twists(self):
        return [sorted(set(self.maps[0].tgt_twists))] + [sorted(set(m.src_twists)) for m in self.maps]

    @property
    def last(self):
        return self.maps[-1]


def _kernel_generators(prev: ModuleMap, degree, found, found_twists, nvars, field, prefix):
    """New minimal generators of ker(prev) in the given degree."""
    M = module_macaulay(prev.cols, prev.src_twists, prev.tgt_twists, degree, nvars, field)
    ncols = sum(len(monomials(nvars, degree - t)) for t in prev.src_twists)
    K = la.kernel(M, ncols=ncols, field=field) if M and M[0] else (
        la.identity(ncols, field) if ncols else [])
    basis = la.EchelonBasis(field)
    if found:
        G = module_macaulay(found, found_twists, prev.src_twists, degree, nvars, field)
        for v in la.transpose(G) if G and G[0] else []:
            basis.add(v)
    new = []
    for v in K:
        if basis.add(v):
            new.append(split_module_vector(v, prev.src_twists, degree, nvars, field, prefix))
    return new


def graded_resolution(J2: GradedSubspace, n=None, max_length=None) -> GradedResolution:
    """Minimal free resolution of R/J for J generated by the quadrics J_2."""
    nz = J2.nvars
    if n is None:
        n = n_from_dim(nz)
    if n % 2:
        raise ValueError("resolution shape is only pinned for even n")
    N = nz - 1
    k = n // 2
    reg = max(k, 1)
    r = N - n
    field = J2.field
    forms = J2.forms()
    maps = [ModuleMap([[q] for q in forms], [2] * len(forms), [0])]
    length = r if max_length is None else min(r, max_length)
    for i in range(2, length + 1):
        prev = maps[-1]
        cols, twists = [], []
        for D in range(i + 1, i + reg + 1):
            new = _kernel_generators(prev, D, cols, twists, nz, field, "z")
            cols += new
            twists += [D] * len(new)
        if not cols:
            raise ResolutionShapeMismatch(f"resolution stops at step {i}")
        maps.append(ModuleMap(cols, twists, list(prev.src_twists)))
    res = GradedResolution(maps, J2, n)
    if max_length is None:
        last = res.last
        if len(last.src_twists) != n + 1 or set(last.src_twists) != {N - k}:
            raise ResolutionShapeMismatch(
                f"last module has twists {last.src_twists}, expected {n + 1} copies of {N - k}")
    for m in maps:
        for col, s in zip(m.cols, m.src_twists):
            for e, t in zip(col, m.tgt_twists):
                if e is not None and not e.is_zero() and s == t:
                    raise ResolutionShapeMismatch("resolution is not minimal")
    return res


def poly_matmul(A: ModuleMap, B: ModuleMap):
    """Entries of A*B as a list of rows (None for zero)."""
    out = []
    for r in range(len(A.tgt_twists)):
        row = []
        for j in range(len(B.src_twists)):
            acc = None
            for m in range(len(A.src_twists)):
                a, b = A.cols[m][r], B.cols[j][m]
                if a is None or b is None or a.is_zero() or b.is_zero():
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc)
        out.append(row)
    return out


def is_complex(res: GradedResolution) -> bool:
    for A, B in zip(res.maps, res.maps[1:]):
        for row in poly_matmul(A, B):
            if any(e is not None and not e.is_zero() for e in row):
                return False
    return True


# ---------------------------------------------------------------- chart isomorphism

@dataclass
class ChartIso:
    forms: tuple
    s: int | None
    pivot: int

    def __call__(self, z):
        return [c(z) for c in self.forms]


def _linear_rows(Ar: ModuleMap):
    """Rows of A_r with linear entries, as lists of coefficient vectors (one per column)."""
    nz = None
    rows = []
    for r, t in enumerate(Ar.tgt_twists):
        if Ar.src_twists[0] - t != 1:
            continue
        row = []
        for col in Ar.cols:
            e = col[r]
            if nz is None and e is not None:
                nz = e.nvars
            row.append(e)
        rows.append(row)
    return rows


def _row_vectors(rows, nz, field):
    out = []
    for row in rows:
        vec = []
        for e in row:
            vec.append(e.coeff_vector() if e is not None and not e.is_zero() else [field.zero] * nz)
        out.append(vec)
    return out


def _chart_fixed(R, m, nz, s, p, field):
    """Solve z_s e_i - c_i e_p in the row span for each i != p; None if impossible."""
    nr = len(R)
    forms = [None] * m
    for i in range(m):
        if i == p:
            continue
        # unknowns: c (nz), mu (nr)
        rows, rhs = [], []
        for j in range(m):
            for v in range(nz):
                row = [field.zero] * (nz + nr)
                if j == p:
                    row[v] = -field.one
                for r in range(nr):
                    row[nz + r] = -R[r][j][v]
                rows.append(row)
                rhs.append(-field.one if (j == i and v == s) else field.zero)
        try:
            sol = la.solve(rows, rhs, field)
        except la.NoSolution:
            return None
        forms[i] = HomogPoly.from_vector(sol[:nz], nz, 1, field, "z")
    forms[p] = HomogPoly.var(s, nz, field, "z")
    return forms


def _chart_joint(R, m, nz, p, field, rng):
    """Shared unknown linear form lam with lam e_i - c_i e_p in the row span for all i."""
    nr = len(R)
    others = [i for i in range(m) if i != p]
    nblock = nz + nr
    size = nz + len(others) * nblock
    rows = []
    for bi, i in enumerate(others):
        off = nz + bi * nblock
        for j in range(m):
            for v in range(nz):
                row = [field.zero] * size
                if j == i:
                    row[v] = field.one
                if j == p:
                    row[off + v] = -field.one
                for r in range(nr):
                    row[off + nz + r] = -R[r][j][v]
                rows.append(row)
    K = la.kernel(rows, ncols=size, field=field)
    if not K:
        return None
    # keep only the chart-form coordinates; an echelon basis keeps them small
    proj = [vec[:nz] + [x for bi in range(len(others))
                        for x in vec[nz + bi * nblock:nz + bi * nblock + nz]] for vec in K]
    proj = la.row_space(proj, field)
    candidates = list(proj) + [la.random_combination(proj, field, rng) for _ in range(10)]
    for vec in candidates:
        lam = HomogPoly.from_vector(vec[:nz], nz, 1, field, "z")
        if lam.is_zero():
            continue
        forms = [None] * m
        forms[p] = lam
        for bi, i in enumerate(others):
            off = nz + bi * nz
            forms[i] = HomogPoly.from_vector(vec[off:off + nz], nz, 1, field, "z")
        if la.rank([f.coeff_vector() for f in forms], field) == m:
            # any basis of the span gives phi up to a linear change of P^n
            basis = la.row_space([f.coeff_vector() for f in forms], field)
            return [HomogPoly.from_vector(v, nz, 1, field, "z") for v in basis]
    return None


def chart_iso(res, s=None, pivot=None, seed=0) -> ChartIso:
    """phi : V -> P^n from degree-1 relations among the rows of the last differential.

    With ``s`` given, only the coordinate chart z_s is tried.  Otherwise every
    coordinate chart is tried and, failing those, a shared linear chart form
    is solved for jointly.
    """
    Ar = res.last if isinstance(res, GradedResolution) else res
    field = Ar.cols[0][0].field if Ar.cols[0][0] is not None else QQ
    m = len(Ar.src_twists)
    lin = _linear_rows(Ar)
    nz = next(e.nvars for row in lin for e in row if e is not None)
    field = next(e.field for row in lin for e in row if e is not None)
    R = _row_vectors(lin, nz, field)
    pivots = [pivot] if pivot is not None else list(range(m))
    charts = [s] if s is not None else list(range(nz))
    for p in pivots:
        for sv in charts:
            forms = _chart_fixed(R, m, nz, sv, p, field)
            if forms is not None:
                return ChartIso(tuple(forms), sv, p)
    if s is not None:
        raise ChartNotGeneric(f"chart z{s} admits no degree-1 relations")
    rng = la.rng_from(seed)
    for p in pivots:
        forms = _chart_joint(R, m, nz, p, field, rng)
        if forms is not None:
            return ChartIso(tuple(forms), None, p)
    raise ChartNotGeneric("no degree-1 chart relations found")


# ---------------------------------------------------------------- parametrization

def check_parametrization(F, J2: GradedSubspace, phi: ChartIso | None = None) -> bool:
    nz = len(F)
    field = J2.field
    if la.rank([f.coeff_vector() for f in F], field) != nz:
        return False
    for q in J2.forms():
        if not q.subs(list(F)).is_zero():
            return False
    if phi is not None:
        c = [f.subs(list(F)) for f in phi.forms]
        m = len(c)
        x = [HomogPoly.var(i, m, field) for i in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                if not (c[i] * x[j] - c[j] * x[i]).is_zero():
                    return False
    return True


def parametrize_veronese(phi: ChartIso, J2: GradedSubspace, seed=0, tries=5):
    """Quadrics (F_0..F_N) in n+1 variables with phi o F = id, landing on V(J_2).

    Solved as one linear system: c_i(F(x)) = l(F(x)) x_i is imposed in the
    form F_k(c(z)) = l(z) z_k mod J_2 for every k.
    """
    field = J2.field
    nz = J2.nvars
    m = len(phi.forms)
    c = list(phi.forms)
    xmons = monomials(m, 2)
    zq = monomials(nz, 2)
    zidx = {e: i for i, e in enumerate(zq)}
    P = []
    for w in xmons:
        prod = HomogPoly.const(1, nz, field, "z")
        for i, k in enumerate(w):
            for _ in range(k):
                prod = prod * c[i]
        P.append(prod.coeff_vector())
    J = [q.coeff_vector() for q in J2.forms()]
    nx = len(xmons)
    nj = len(J)
    size = nz * nx + nz + nz * nj
    rows = []
    for k in range(nz):
        for a in range(len(zq)):
            row = [field.zero] * size
            for wi in range(nx):
                row[k * nx + wi] = P[wi][a]
            for j, q in enumerate(J):
                row[nz * nx + nz + k * nj + j] = -q[a]
            rows.append(row)
        # - l(z) z_k
        for v in range(nz):
            e = [0] * nz
            e[v] += 1
            e[k] += 1
            rows_a = zidx[tuple(e)]
            rows[len(rows) - len(zq) + rows_a][nz * nx + v] -= field.one
    K = la.kernel(rows, ncols=size, field=field)
    Fk = la.row_space([v[:nz * nx] for v in K], field)
    if not Fk:
        raise ParametrizationFailed("no parametrization solves the chart equations")
    rng = la.rng_from(seed)
    for _ in range(tries):
        vec = Fk[0] if len(Fk) == 1 else la.random_combination(Fk, field, rng)
        F = [HomogPoly.from_vector(vec[k * nx:(k + 1) * nx], m, 2, field) for k in range(nz)]
        if check_parametrization(F, J2, phi):
            return F
    raise ParametrizationFailed(f"solution space of dimension {len(Fk)} gave no valid parametrization")


# ---------------------------------------------------------------- the quartic

def pick_extra_quadric(I2: GradedSubspace, J2: GradedSubspace) -> HomogPoly:
    for q in I2.forms():
        if not J2.contains(q):
            return J2.reduce(q)
    raise SyzygyRankMismatch("I_2 equals J_2")


def solve_rho_matrix(param, G: HomogPoly):
    """The matrix A with A v(y) = mu h_G(y), with a 1-dimensional solution check."""
    field = G.field
    nz = len(param)
    h = list(hessian_map_forms(G))
    ymons = monomials(G.nvars, 2)
    V = [f.coeff_vector() for f in param]
    H = [f.coeff_vector() if not f.is_zero() else [field.zero] * len(ymons) for f in h]
    size = nz * nz + 1
    rows = []
    for k in range(nz):
        for a in range(len(ymons)):
            row = [field.zero] * size
            for mm in range(nz):
                row[k * nz + mm] = V[mm][a]
            row[-1] = -H[k][a]
            rows.append(row)
    K = la.kernel(rows, ncols=size, field=field)
    if len(K) != 1:
        raise RhoSolveAmbiguous(f"solution space has dimension {len(K)}")
    v = K[0]
    mu = v[-1]
    if mu == 0:
        raise RhoSolveAmbiguous("degenerate solution")
    return [[v[k * nz + mm] / mu for mm in range(nz)] for k in range(nz)]


def recover_quartic(I2: GradedSubspace, n=None, seed=0, trace=None, verify=True,
                    method="auto", max_primes=12) -> HomogPoly:
    """The quartic F (n even) whose Hessian variety has the quadrics I_2.

    ``method`` is "direct" (run the chain in the field of I2), "modular" (run
    it modulo several primes, lift by CRT and rational reconstruction, then
    verify over Q) or "auto" (modular over Q, direct otherwise).
    """
    if method == "auto":
        method = "modular" if I2.field == QQ else "direct"
    if method == "modular":
        return _recover_quartic_modular(I2, n, seed, trace, max_primes)
    return _recover_quartic_direct(I2, n, seed, trace, verify)


def _lift(images, modulus):
    """Rational reconstruction of every coefficient, or None."""
    terms = {}
    for e, c in images.items():
        r = la.rational_reconstruct(c, modulus)
        if r is None:
            return None
        terms[e] = r
    return terms


def _recover_quartic_modular(I2, n, seed, trace, max_primes):
    """Chain over prime fields; the lifted answer is certified by the forward map over Q."""
    residues, modulus = None, 1
    used = 0
    for p in la.primes_below():
        if used >= max_primes:
            break
        K = PrimeField(p, check=False)
        try:
            Fp_ = _recover_quartic_direct(I2.to_field(K), n, seed, None, verify=False)
        except (ZeroDivisionError, SyzygyRankMismatch, ResolutionShapeMismatch, ChartNotGeneric,
                ParametrizationFailed, RhoSolveAmbiguous, VerificationFailed):
            continue  # unlucky prime
        used += 1
        image = {e: c.v for e, c in Fp_.terms.items()}
        if residues is None or set(image) != set(residues):
            if residues is not None and len(image) < len(residues):
                continue  # a coefficient vanished mod p
            residues, modulus = image, p
        else:
            residues = {e: la.crt_pair(residues[e], modulus, image[e], p)[0] for e in residues}
            modulus *= p
        terms = _lift(residues, modulus)
        if terms is None:
            continue
        F = HomogPoly(Fp_.nvars, Fp_.degree, terms, QQ).normalized()
        if ideal_graded_piece(F, 2, check_squarefree=False) == I2:
            if trace is not None:
                trace.update(primes=used, modulus=modulus)
            return F
    raise VerificationFailed(f"no certified lift after {used} primes")


def _recover_quartic_direct(I2, n, seed, trace, verify):
    nz = I2.nvars
    if n is None:
        n = n_from_dim(nz)
    if n % 2:
        raise ValueError("n must be even")
    J2 = veronese_from_quadrics(I2, n)
    res = graded_resolution(J2, n)
    phi = chart_iso(res, seed=seed)
    param = parametrize_veronese(phi, J2, seed=seed)
    q = pick_extra_quadric(I2, J2)
    G = q.subs(param)
    A = solve_rho_matrix(param, G)
    try:
        g, _ = rho_inverse(A, I2.field)
    except NotInImage as exc:
        raise VerificationFailed(f"composition is not induced by a linear map: {exc}") from exc
    F = act(la.inverse(g, I2.field), G).normalized()
    if trace is not None:
        trace.update(J2=J2, resolution=res, phi=phi, param=param, q_extra=q, G=G, A=A, g=g)
    if verify and ideal_graded_piece(F, 2, check_squarefree=False) != I2:
        raise VerificationFailed("quadrics of the recovered Hessian variety differ")
    return F


# ---------------------------------------------------------------- binary quartics

def h41_quadrics(a):
    """The two conics (in z00, z01, z11) through the Hessian image of sum a_i x0^(4-i) x1^i."""
    a0, a1, a2, a3, a4 = [Fraction(c) for c in a]
    mono = {"00,00": (2, 0, 0), "00,01": (1, 1, 0), "01,01": (0, 2, 0),
            "00,11": (1, 0, 1), "01,11": (0, 1, 1), "11,11": (0, 0, 2)}
    Q1 = HomogPoly(3, 2, {
        mono["00,00"]: 3 * a4, mono["00,01"]: -3 * a3, mono["01,01"]: 2 * a2,
        mono["00,11"]: a2, mono["01,11"]: -3 * a1, mono["11,11"]: 3 * a0}, prefix="z")
    Q2 = HomogPoly(3, 2, {
        mono["00,00"]: 9 * a3 ** 2,
        mono["00,01"]: -36 * a2 * a3 + 72 * a1 * a4,
        mono["01,01"]: 20 * a2 ** 2 - 144 * a0 * a4,
        mono["00,11"]: 16 * a2 ** 2 - 18 * a1 * a3,
        mono["01,11"]: -36 * a1 * a2 + 72 * a0 * a3,
        mono["11,11"]: 9 * a1 ** 2}, prefix="z")
    return Q1, Q2


def recover_h41(pencil):
    """Binary quartic coefficients (a0..a4) from the pencil of conics through its Hessian image."""
    if isinstance(pencil, GradedSubspace):
        space = pencil
    else:
        space = GradedSubspace.span(list(pencil), 3, 2, QQ, "z")
    if space.dim != 2 or space.nvars != 3 or space.degree != 2:
        raise InconsistentPencil("need a pencil of conics in three variables")
    forms = space.forms()
    cond = [q.coeff((0, 2, 0)) - 2 * q.coeff((1, 0, 1)) for q in forms]
    ker = la.kernel([cond], field=QQ)
    if len(ker) != 1:
        raise InconsistentPencil("the pencil lies inside the distinguished hyperplane")
    Q = forms[0] * ker[0][0] + forms[1] * ker[0][1]
    a = [Q.coeff((0, 0, 2)) / 3, -Q.coeff((0, 1, 1)) / 3, Q.coeff((1, 0, 1)),
         -Q.coeff((1, 1, 0)) / 3, Q.coeff((2, 0, 0)) / 3]
    if all(c == 0 for c in a):
        raise InconsistentPencil("distinguished conic is zero")
    lead = next(c for c in a if c != 0)
    a = [c / lead for c in a]
    Q1, Q2 = h41_quadrics(a)
    if not space.contains(Q1) or not space.contains(Q2):
        raise InconsistentPencil("pencil does not match the binary-quartic pattern")
    return a
