"""Forward direction: graded pieces of the ideal of a Hessian variety.

The degree-e piece is the set of forms Q in the z coordinates with
Q(h_F(x)) in the ideal (F), i.e. Q o h_F = c * F for some form c.  For a
reduced hypersurface this is exactly the degree-e part of the ideal of
the closure of h_F(V(F)).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import exactla as la
from .exactla import DEFAULT_PRIME, PrimeField, QQ
from .mpoly import GradedSubspace, HomogPoly, fp_is_squarefree, fp_univariate_roots, macaulay_matrix, monomials
from .symsq import hessian_map_forms


class NotSquarefree(Exception):
    pass


class NoPointFound(Exception):
    pass


@dataclass
class HessianVarietyModel:
    F: HomogPoly
    pieces: dict = dc_field(default_factory=dict)

    @property
    def n(self):
        return self.F.nvars - 1

    @property
    def d(self):
        return self.F.degree

    def piece(self, e):
        if e not in self.pieces:
            self.pieces[e] = ideal_graded_piece(self.F, e, check_squarefree=False)
        return self.pieces[e]


def _restrict_to_line(F, a, b, field):
    """Coefficients (low to high in s) of F(s*a + b)."""
    s = HomogPoly.var(0, 2, field)
    t = HomogPoly.var(1, 2, field)
    forms = [s * ai + t * bi for ai, bi in zip(a, b)]
    G = F.subs(forms)
    return [G.coeff((k, F.degree - k)).v for k in range(F.degree + 1)]


def is_squarefree(F: HomogPoly, seed=0, p=DEFAULT_PRIME, trials=3) -> bool:
    """Probabilistic test: the restriction to a random line is squarefree."""
    rng = la.rng_from(seed)
    field = F.field if isinstance(F.field, PrimeField) else PrimeField(p)
    Fp_ = F.to_field(field)
    if Fp_.is_zero():
        return False
    for _ in range(trials):
        a = [field.random(rng) for _ in range(F.nvars)]
        b = [field.random(rng) for _ in range(F.nvars)]
        coeffs = _restrict_to_line(Fp_, a, b, field)
        if coeffs[-1] == 0:
            continue
        if fp_is_squarefree(coeffs, field.p):
            return True
    return False


def sample_point_on_hypersurface(F: HomogPoly, seed=0, tries=50):
    """A random F_p-point of V(F) (F must have prime-field coefficients)."""
    rng = la.rng_from(seed)
    field = F.field
    if not isinstance(field, PrimeField):
        raise TypeError("sampling needs a prime field")
    for _ in range(tries):
        a = [field.random(rng) for _ in range(F.nvars)]
        b = [field.random(rng) for _ in range(F.nvars)]
        coeffs = _restrict_to_line(F, a, b, field)
        if all(c == 0 for c in coeffs):
            continue
        roots = fp_univariate_roots(coeffs, field.p, rng)
        rng.shuffle(roots)
        for r in roots:
            s = field(r)
            q = [s * ai + bi for ai, bi in zip(a, b)]
            if any(c != 0 for c in q):
                return q
    raise NoPointFound(f"no point found in {tries} random lines")


_COMPOSE_CACHE_LIMIT = 64


def _compose_monomials(h, e):
    """``{z-monomial: m o h}`` for all z-monomials of degree e."""
    nz = len(h)
    one = HomogPoly.const(1, h[0].nvars, h[0].field, h[0].prefix)
    layer = {(0,) * nz: one}
    for deg in range(1, e + 1):
        nxt = {}
        for m in monomials(nz, deg):
            i = next(k for k, v in enumerate(m) if v)
            prev = list(m)
            prev[i] -= 1
            nxt[m] = layer[tuple(prev)] * h[i]
        layer = nxt
    return layer


def pullback_piece(h, F: HomogPoly, e: int, prefix="z") -> GradedSubspace:
    """Degree-e forms Q in len(h) variables with Q o h in the ideal (F)."""
    h = list(h)
    nz = len(h)
    field = F.field
    xdeg = e * h[0].degree
    zmons = monomials(nz, e)
    comp = _compose_monomials(h, e)
    width = len(monomials(F.nvars, xdeg))
    cols = [comp[m].coeff_vector() if not comp[m].is_zero() else [field.zero] * width
            for m in zmons]
    if xdeg >= F.degree:
        cols += la.transpose(macaulay_matrix([-F], xdeg))
    ker = la.kernel(la.transpose(cols), ncols=len(cols), field=field)
    vecs = [v[:len(zmons)] for v in ker]
    return GradedSubspace.from_vectors(vecs, nz, e, field, prefix)


def ideal_graded_piece(F: HomogPoly, e: int, check_squarefree: bool = True,
                       seed=0) -> GradedSubspace:
    """Degree-e forms Q in the z coordinates with Q o h_F in (F)."""
    if F.degree < 3:
        raise ValueError("degree must be at least 3")
    if check_squarefree and not is_squarefree(F, seed):
        raise NotSquarefree("F is not squarefree")
    return pullback_piece(hessian_map_forms(F), F, e)


def hessian_variety(F: HomogPoly, degrees=(1, 2), check_squarefree=True, seed=0):
    if check_squarefree and not is_squarefree(F, seed):
        raise NotSquarefree("F is not squarefree")
    model = HessianVarietyModel(F)
    for e in degrees:
        model.pieces[e] = ideal_graded_piece(F, e, check_squarefree=False)
    return model


def linear_span(gens) -> GradedSubspace:
    """Span of the linear forms among ``gens`` (or of the model's degree-1 piece)."""
    if isinstance(gens, HessianVarietyModel):
        return gens.piece(1)
    gens = list(gens)
    lin = [g for g in gens if g.degree == 1]
    nz = gens[0].nvars
    field = gens[0].field
    return GradedSubspace.span(lin, nz, 1, field, "z")


def generated_piece(gens, e, nvars=None, field=None) -> GradedSubspace:
    """Degree-e piece of the ideal generated by ``gens``."""
    gens = [g for g in gens if g.degree <= e and not g.is_zero()]
    if not gens:
        return GradedSubspace(nvars, e, [], field or QQ, "z")
    M = macaulay_matrix(gens, e)
    return GradedSubspace.from_vectors(la.transpose(M), gens[0].nvars, e, gens[0].field, "z")


def hilbert_probe(gens, degrees):
    """Dimension of the degree-e part of the ideal generated by ``gens``."""
    return {e: generated_piece(gens, e).dim for e in degrees}


def minimal_generators(model: HessianVarietyModel, degrees=None):
    """Forms that generate the stored pieces, degree by degree."""
    degrees = sorted(degrees or model.pieces)
    gens = []
    for e in degrees:
        piece = model.piece(e)
        lower = generated_piece(gens, e, piece.nvars, piece.field) if gens else None
        basis = list(lower.basis) if lower else []
        for f in piece.forms():
            v = f.coeff_vector()
            if not la.in_span(v, basis, piece.field):
                gens.append(f)
                basis.append(v)
    return gens


def membership_test(Q: HomogPoly, F: HomogPoly):
    """Cofactor c with Q o h_F = c F, or None."""
    h = list(hessian_map_forms(F))
    R = Q.subs(h)
    if R.is_zero():
        return HomogPoly.zero(F.nvars, max(R.degree - F.degree, 0), F.field)
    cof_deg = R.degree - F.degree
    if cof_deg < 0:
        return None
    M = macaulay_matrix([F], R.degree)
    try:
        c = la.solve(M, R.coeff_vector(), F.field)
    except la.NoSolution:
        return None
    return HomogPoly.from_vector(c, F.nvars, cof_deg, F.field)
