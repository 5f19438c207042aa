"""Acceptance criteria as runnable checks.

Each ``criterion_k`` returns a list of Check records; ``run_suite`` collects
them.  Shared by ``hessrec verify`` and tests/test_acceptance.py.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import exactla as la
from . import fixtures as fx
from .exactla import QQ
from .forward import ideal_graded_piece, is_squarefree
from .mpoly import GradedSubspace, HomogPoly, parse_poly, proportional, random_form
from .recover3 import (
    binary_form, fiber_h31, gamma_lk_uniqueness, involution_iota, iota_quartics,
    recover_cubic, w_intersection_dim, cyclic_cubic,
)
from .recover4 import (
    ChartIso, graded_resolution, h41_quadrics, is_complex, parametrize_veronese,
    recover_h41, recover_quartic, solve_rho_matrix, standard_veronese, veronese_from_quadrics,
)
from .symsq import SymCoords, act, gradient_span, hessian_map_forms, rho_inverse, rho_of
from .waring import DiagonalForm, fiber_enumerate, image_degree, image_polynomial

EXAMPLE_TIME_LIMIT = 30.0
ROUND_TRIP_TIME_LIMIT = 10.0
WARING_TIME_LIMIT = 60.0


@dataclass
class Check:
    criterion: int
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.criterion}. {self.name} [{self.seconds:.2f}s]{extra}"


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def random_group_element(n, rng, bound=3):
    while True:
        g = [[QQ(rng.randint(-bound, bound)) for _ in range(n + 1)] for _ in range(n + 1)]
        if la.det(g) != 0:
            return g


def matrices_proportional(a, b) -> bool:
    flat_a = [x for row in a for x in row]
    flat_b = [x for row in b for x in row]
    return la.rank([flat_a, flat_b]) == 1


def _random_poly(nvars, degree, rng):
    """Random squarefree form (samples with repeated factors are redrawn)."""
    while True:
        F = random_form(nvars, degree, rng, bound=5)
        if not F.is_zero() and is_squarefree(F, seed=rng.randrange(2**31)):
            return F


# ---------------------------------------------------------------- 1

def example_chain():
    """Intermediate data of the quartic pipeline on the worked example."""
    I2 = GradedSubspace.span(fx.ideal_x(), 6, 2, QQ, "z")
    trace = {}
    F = recover_quartic(I2, 2, trace=trace, method="direct")
    return I2, F, trace


def criterion_1(seed=0):
    out = []
    with _Timer() as t:
        I2, F, trace = example_chain()
    J_ref = GradedSubspace.span(fx.veronese_j(), 6, 2, QQ, "z")
    out.append(Check(1, "J_2 equals the reference Veronese ideal", trace["J2"] == J_ref,
                     f"dim {trace['J2'].dim}"))
    res = trace["resolution"]
    twists = [sorted(set(tw)) for tw in res.twists]
    shape_ok = res.ranks == [1, 6, 8, 3] and twists == [[0], [2], [3], [4]]
    out.append(Check(1, "resolution ranks (1,6,8,3), twists (0,2,3,4)", shape_ok,
                     f"ranks {res.ranks}"))
    target = parse_poly(fx.QUARTIC, 3)
    ok = proportional(F, target) and proportional(F, parse_poly(fx.FINAL_ANSWER, 3))
    out.append(Check(1, "recovered quartic matches the example", ok and t.seconds < EXAMPLE_TIME_LIMIT,
                     f"F = {F}", t.seconds))
    with _Timer() as t:
        G, A = forced_chart_pullback(I2, trace["J2"])
    ok = proportional(G, parse_poly(fx.PULLBACK_QUARTIC, 3))
    out.append(Check(1, "pullback quartic G with the reference chart forced", ok, f"G = {G}", t.seconds))
    return out


def forced_chart_pullback(I2, J2):
    """G and the rho matrix when the reference chart is imposed."""
    phi = ChartIso(tuple(fx.chart_forms()), fx.CHART_VARIABLE, fx.CHART_PIVOT)
    param = parametrize_veronese(phi, J2)
    q = next(f for f in I2.forms() if not J2.contains(f))
    G = q.subs(param)
    return G, solve_rho_matrix(param, G)


# ---------------------------------------------------------------- 2

def criterion_2(seed=0):
    out = []
    rng = la.rng_from(seed)
    bad = 0
    with _Timer() as t:
        for _ in range(20):
            F = _random_poly(3, 4, rng)
            I2 = ideal_graded_piece(F, 2)
            try:
                G = recover_quartic(I2, 2, seed=rng.randrange(2**31))
            except Exception:
                G = None
            bad += G is None or not proportional(F, G)
    out.append(Check(2, "20 random quartics, n=2, round trip", bad == 0 and t.seconds < ROUND_TRIP_TIME_LIMIT,
                     f"{bad} failures", t.seconds))
    for n in (2, 3, 4):
        bad = 0
        with _Timer() as t:
            for _ in range(50):
                F = _random_poly(n + 1, 3, rng)
                try:
                    G = recover_cubic(ideal_graded_piece(F, 1), n)
                except Exception:
                    G = None
                bad += G is None or not proportional(F, G)
        out.append(Check(2, f"50 random cubics, n={n}, round trip",
                         bad == 0 and t.seconds < ROUND_TRIP_TIME_LIMIT, f"{bad} failures", t.seconds))
    return out


# ---------------------------------------------------------------- 3

def criterion_3(seed=0):
    out = []
    rng = la.rng_from(seed)
    with _Timer() as t:
        got = fiber_h31([[1, -1, 0], [0, -1, 1], [1, 0, -1]])
    x0, x1 = HomogPoly.var(0, 2), HomogPoly.var(1, 2)
    expected = [x0 * x1 * (x0 - x1), (x0 - 2 * x1) * (2 * x0 - x1) * (x0 + x1)]
    ok = len(got) == 2 and all(any(proportional(e, g) for g in got) for e in expected)
    out.append(Check(3, "binary-cubic fiber of the three example points", ok,
                     "; ".join(str(g) for g in got), t.seconds))
    v = involution_iota([0, 1, -1, 0])
    out.append(Check(3, "iota(0,1,-1,0) is proportional to (2,-3,-3,2)",
                     la.rank([v, [2, -3, -3, 2]]) == 1, str([str(c) for c in v])))
    bad = 0
    with _Timer() as t:
        for _ in range(100):
            a = [QQ(rng.randint(-9, 9)) for _ in range(4)]
            try:
                back = involution_iota(involution_iota(a))
            except Exception:
                continue
            bad += la.rank([a, back]) != 1
    out.append(Check(3, "iota o iota = id on 100 random cubics", bad == 0, f"{bad} failures", t.seconds))
    s, u = HomogPoly.var(0, 2), HomogPoly.var(1, 2)
    quartics = iota_quartics(s ** 3, 3 * s * s * u, 3 * s * u * u, u ** 3)
    out.append(Check(3, "iota quartics vanish on the twisted cubic", all(q.is_zero() for q in quartics)))
    return out


# ---------------------------------------------------------------- 4

def criterion_4(seed=0):
    rng = la.rng_from(seed)
    bad = 0
    with _Timer() as t:
        for _ in range(50):
            F = _random_poly(2, 4, rng)
            a = [F.coeff((4 - i, i)) for i in range(5)]
            try:
                pencil = ideal_graded_piece(F, 2)
                Q1, _ = h41_quadrics(a)
                consistent = Q1.coeff((0, 2, 0)) == 2 * Q1.coeff((1, 0, 1))
                b = recover_h41(pencil)
                ok = consistent and la.rank([a, b]) == 1
            except Exception:
                ok = False
            bad += not ok
    return [Check(4, "50 random binary quartics round trip through the pencil", bad == 0,
                  f"{bad} failures", t.seconds)]


# ---------------------------------------------------------------- 5

def criterion_5(seed=0):
    out = []
    with _Timer() as total:
        cases = [(3, 3, 4), (5, 2, 2), (4, 2, 1), (4, 3, 1)]
        for d, k, expected in cases:
            with _Timer() as t:
                fib = fiber_enumerate(DiagonalForm(d, (1,) * k), seed=seed)
            out.append(Check(5, f"fiber of d={d}, k={k} has {expected} element(s)", len(fib) == expected,
                             f"got {len(fib)}", t.seconds))
        for d, k in [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)]:
            P = image_polynomial(DiagonalForm(d, (1,) * k))
            out.append(Check(5, f"image degree for d={d}, k={k}", P.degree == image_degree(d, k),
                             f"degree {P.degree}"))
        base = image_polynomial(DiagonalForm(3, (1, 1, 1)))
        pert = image_polynomial(DiagonalForm(3, (1, 2, 1)))
        out.append(Check(5, "non-sign perturbation changes the image", not proportional(base, pert)))
    out.append(Check(5, "waring checks within the time budget", total.seconds < WARING_TIME_LIMIT,
                     "", total.seconds))
    return out


# ---------------------------------------------------------------- 6

def equivariance_holds(g, F) -> bool:
    """rho(g) h_F(y) == h_{g.F}((g^T)^{-1} y) as forms."""
    R = rho_of(g)
    h = list(hessian_map_forms(F))
    lhs = []
    for row in R:
        acc = HomogPoly.zero(F.nvars, F.degree - 2)
        for c, f in zip(row, h):
            if c != 0:
                acc = acc + f * c
        lhs.append(acc)
    ginvT = la.inverse(la.transpose(g))
    rhs = [f.linear_change(ginvT) for f in hessian_map_forms(act(g, F))]
    return all(a == b for a, b in zip(lhs, rhs))


def euler_holds(F) -> bool:
    d = F.degree
    x = [HomogPoly.var(i, F.nvars) for i in range(F.nvars)]
    grad = F.gradient()
    s = HomogPoly.zero(F.nvars, d)
    for xi, gi in zip(x, grad):
        s = s + xi * gi
    return s == F * d


def grad_hess_rank_equal(F) -> bool:
    sc = SymCoords(F.nvars - 1)
    h = hessian_map_forms(F)
    pts = []
    for i in range(F.nvars):
        e = [QQ(0)] * F.nvars
        e[i] = QQ(1)
        pts.append(h(e))
    return la.rank(pts) == gradient_span(F).dim == len(la.row_space([sc.gram(g) for g in F.gradient()]))


def cyclic_point_span(k, n):
    F = cyclic_cubic(k, n)
    sc = SymCoords(n)
    return GradedSubspace.from_vectors([sc.gram(g) for g in F.gradient()], len(sc.pairs), 1, QQ, "z")


def criterion_6(seed=0):
    out = []
    rng = la.rng_from(seed)
    bad = 0
    with _Timer() as t:
        for i in range(50):
            n = 1 + i % 3
            F = _random_poly(n + 1, 3 + i % 2, rng)
            bad += not equivariance_holds(random_group_element(n, rng), F)
    out.append(Check(6, "equivariance identity on 50 random (g, F)", bad == 0, f"{bad} failures", t.seconds))
    bad = sum(not euler_holds(_random_poly(3, d, rng)) for d in (3, 4, 5) for _ in range(5))
    out.append(Check(6, "Euler identity", bad == 0, f"{bad} failures"))
    bad = sum(not grad_hess_rank_equal(_random_poly(n + 1, 3, rng)) for n in (1, 2, 3) for _ in range(5))
    bad += not grad_hess_rank_equal(parse_poly("x0^3+x1^3+x2^3", 3))
    out.append(Check(6, "gradient span rank equals Hessian image rank", bad == 0, f"{bad} failures"))
    with _Timer() as t:
        dims = {k: w_intersection_dim(cyclic_point_span(k, k), k) for k in range(3, 7)}
    out.append(Check(6, "cyclic cubic has a unique gradient tuple for k=n=3..6",
                     all(v == 1 for v in dims.values()), str(dims), t.seconds))
    cases = [(2, 4, 4), (3, 5, 5)]
    res = {c: gamma_lk_uniqueness(*c) for c in cases}
    out.append(Check(6, "Gamma_{l,k} uniqueness for (2,4,4) and (3,5,5)", all(res.values()), str(res)))
    with _Timer() as t:
        I2 = GradedSubspace.span(fx.ideal_x(), 6, 2, QQ, "z")
        res_ex = graded_resolution(veronese_from_quadrics(I2, 2), 2)
        res_std = graded_resolution(standard_veronese(2), 2)
    out.append(Check(6, "resolution differentials compose to zero",
                     is_complex(res_ex) and is_complex(res_std), "", t.seconds))
    bad = 0
    with _Timer() as t:
        for i in range(100):
            n = 1 + i % 3
            g = random_group_element(n, rng)
            try:
                g2, mu = rho_inverse(rho_of(g))
                bad += not matrices_proportional(g, g2)
            except Exception:
                bad += 1
    out.append(Check(6, "rho_inverse o rho_of = id on 100 group elements", bad == 0,
                     f"{bad} failures", t.seconds))
    return out


# ---------------------------------------------------------------- 7

def criterion_7(seed=0):
    out = []
    rng = la.rng_from(seed)
    bad = 0
    for i in range(20):
        n = 1 + i % 3
        g = random_group_element(n, rng)
        F = _random_poly(n + 1, 3 + i % 2, rng)
        bad += act(la.inverse(g), act(g, F)) != F
    out.append(Check(7, "act(g^-1, act(g, F)) = F", bad == 0, f"{bad} failures"))
    ref_A = fx.lex_matrix(fx.RHO_MATRIX)
    g, _ = rho_inverse(ref_A)
    out.append(Check(7, "rho_inverse of the reference matrix gives the reference g",
                     matrices_proportional(g, fx.GROUP_ELEMENT), str([[str(c) for c in r] for r in g])))
    I2 = GradedSubspace.span(fx.ideal_x(), 6, 2, QQ, "z")
    J2 = veronese_from_quadrics(I2, 2)
    G, A = forced_chart_pullback(I2, J2)
    gA, _ = rho_inverse(A)
    F = act(la.inverse(gA), G)
    ok = (matrices_proportional(A, ref_A) and matrices_proportional(gA, fx.GROUP_ELEMENT)
          and proportional(F, parse_poly(fx.FINAL_ANSWER, 3)))
    out.append(Check(7, "transpose chain reproduces the reference matrix, g and final quartic", ok))
    return out


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}


def run_suite(which="all", seed=0):
    keys = sorted(CRITERIA) if which == "all" else [int(k) for k in str(which).split(",")]
    checks = []
    for k in keys:
        try:
            checks += CRITERIA[k](seed)
        except Exception as exc:
            checks.append(Check(k, "criterion raised", False, f"{type(exc).__name__}: {exc}"))
    return checks
