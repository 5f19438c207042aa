"""Hessian maps of diagonal forms F = sum lambda_i x_i^d.

On a diagonal form the Hessian map lands in the diagonal z coordinates:
h_lambda(x) = [lambda_0 x_0^(d-2) : ... : lambda_{k-1} x_{k-1}^(d-2)].  The
image of V(F) is a hypersurface in P^{k-1}, cut out by one form F~.  For odd
d, the forms with the same F~ are exactly the sign classes of lambda.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from . import exactla as la
from .exactla import DEFAULT_PRIME, PrimeField, QQ
from .forward import pullback_piece, sample_point_on_hypersurface
from .mpoly import HomogPoly, proportional
from .recover3 import VerificationFailed

DEFAULT_DEGREE_BUDGET = 20
# dense kernels beyond this many unknown coefficients exhaust memory
MAX_UNKNOWNS = 200


class KernelNotUnique(Exception):
    pass


class DegreeBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalForm:
    d: int
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(QQ(c) for c in self.lam))
        if self.d < 3:
            raise ValueError("degree must be at least 3")
        if len(self.lam) < 1 or any(c == 0 for c in self.lam):
            raise ValueError("coefficients must be nonzero")

    @property
    def k(self):
        return len(self.lam)

    def poly(self, field=QQ) -> HomogPoly:
        terms = {}
        for i, c in enumerate(self.lam):
            e = [0] * self.k
            e[i] = self.d
            terms[tuple(e)] = c
        return HomogPoly(self.k, self.d, terms, field)

    def scaled(self, signs):
        return DiagonalForm(self.d, tuple(s * c for s, c in zip(signs, self.lam)))


def image_degree(d: int, k: int) -> int:
    """Degree of F~ for a diagonal form of degree d in k variables."""
    n = k - 1
    deg = d * (d - 2) ** (n - 1) if n >= 1 else 0
    if d % 2 == 0:
        deg //= 2 ** n
    return deg


def h_lambda(F: DiagonalForm, field=QQ):
    """The Hessian map restricted to the diagonal coordinates (up to d(d-1))."""
    out = []
    for i, c in enumerate(F.lam):
        e = [0] * F.k
        e[i] = F.d - 2
        out.append(HomogPoly(F.k, F.d - 2, {tuple(e): c}, field))
    return tuple(out)


def image_polynomial(F: DiagonalForm, budget: int = DEFAULT_DEGREE_BUDGET, field=QQ) -> HomogPoly:
    """The form F~ in the diagonal variables z_00, ..., z_(k-1)(k-1)."""
    if F.k < 2:
        raise ValueError("need at least two variables")
    deg = image_degree(F.d, F.k)
    if deg > budget:
        raise DegreeBudgetExceeded(f"image degree {deg} exceeds the budget {budget}")
    unknowns = comb(deg + F.k - 1, F.k - 1)
    if unknowns > MAX_UNKNOWNS:
        raise DegreeBudgetExceeded(f"degree {deg} in {F.k} variables needs {unknowns} unknowns (max {MAX_UNKNOWNS})")
    space = pullback_piece(h_lambda(F, field), F.poly(field), deg)
    if space.dim != 1:
        raise KernelNotUnique(f"kernel in degree {deg} has dimension {space.dim}")
    return space.forms()[0].normalized()


def sign_classes(k: int):
    """Sign vectors with first entry +1 (representatives modulo a global sign)."""
    return [(1,) + s for s in product((1, -1), repeat=k - 1)]


def fiber_enumerate(F: DiagonalForm, budget: int = DEFAULT_DEGREE_BUDGET, seed=0):
    """All diagonal forms with the same image hypersurface as F.

    Odd d: the 2^(k-1) sign classes.  Even d: F alone.  A non-sign
    perturbation is checked to give a different image as a control.
    """
    target = image_polynomial(F, budget)
    if F.d % 2:
        out = [F.scaled(s) for s in sign_classes(F.k)]
    else:
        out = [F]
    for G in out:
        if not proportional(image_polynomial(G, budget), target):
            raise VerificationFailed(f"sign class {G.lam} has a different image")
    rng = la.rng_from(seed)
    i = rng.randrange(F.k)
    factor = rng.choice([2, 3, 5])
    bump = [1] * F.k
    bump[i] = factor
    if proportional(image_polynomial(F.scaled(bump), budget), target):
        raise VerificationFailed("a non-sign perturbation has the same image")
    return out


def torus_check(F: DiagonalForm, points: int = 200, seed=0, p=DEFAULT_PRIME,
                budget: int = DEFAULT_DEGREE_BUDGET) -> int:
    """Count sampled F_p points of V(F) whose image is a zero of F~ (all should be)."""
    field = PrimeField(p)
    Ft = image_polynomial(F, budget).to_field(field)
    Fp_ = F.poly(field)
    h = h_lambda(F, field)
    rng = la.rng_from(seed)
    good = 0
    for _ in range(points):
        x = sample_point_on_hypersurface(Fp_, rng)
        if Ft([hi(x) for hi in h]) == 0:
            good += 1
    return good
