"""Reference data for the plane quartic worked example.

The z strings below list coordinates in the order (00, 01, 11, 02, 12, 22);
``lex`` converts them to the package order (00, 01, 02, 11, 12, 22).
"""
from __future__ import annotations

from .mpoly import HomogPoly, parse_poly

QUARTIC = "x0^3*x1+x1^3*x2+x2^3*x0+3*x0^2*x1*x2"

IDEAL_X = [
    "z0^2-z0*z3+z2*z3+4*z0*z4-4*z2*z4-4*z3*z4+4*z1*z5+1/2*z2*z5-4*z4*z5-3*z5^2",
    "z0*z1+z2*z4-3/2*z0*z5+1/2*z2*z5+z3*z5",
    "z0*z2+4*z0*z4-4*z2*z4-4*z3*z4+2*z1*z5-2*z4*z5-z5^2",
    "z1^2+1/4*z0*z3-1/4*z2*z3-z1*z4-2*z1*z5-1/8*z2*z5+z4*z5+z5^2",
    "z1*z2-1/2*z0*z5-1/2*z2*z5",
    "z2^2+4*z0*z4-4*z2*z4-4*z3*z4+z5^2",
    "z1*z3+z2*z4-1/4*z5^2",
]

VERONESE_J = [
    "z0^2-z0*z3+z2*z3+4*z0*z4-4*z2*z4-4*z3*z4+4*z1*z5+1/2*z2*z5-4*z4*z5-3*z5^2",
    "z0*z1-z1*z3-3/2*z0*z5+1/2*z2*z5+z3*z5+1/4*z5^2",
    "z1^2+1/4*z0*z3-1/4*z2*z3-z1*z4-2*z1*z5-1/8*z2*z5+z4*z5+z5^2",
    "z0*z2+4*z0*z4-4*z2*z4-4*z3*z4+2*z1*z5-2*z4*z5-z5^2",
    "z1*z2-1/2*z0*z5-1/2*z2*z5",
    "z2^2+4*z0*z4-4*z2*z4-4*z3*z4+z5^2",
]

LAST_DIFFERENTIAL = [
    ["z2+4*z4", "-1/2*z5", "4*z4"],
    ["2*z5", "z2", "0"],
    ["-z1+3/2*z5", "-1/4*z3", "1/2*z5"],
    ["z0+4*z4", "-z1+z4+1/2*z5", "4*z4"],
    ["z3-4*z4", "-z1+z4+3/2*z5", "z2-4*z4"],
    ["4*z5", "z0-z3", "2*z5"],
    ["-1/2*z5", "1/4*z3+1/8*z5", "-z1+1/2*z5"],
    ["z3-4*z4+1/2*z5", "1/2*z5", "z0-4*z4"],
]

CHART = ["-4*z0-4*z2", "8*z1", "-2*z0+6*z2+4*z3+z5"]
CHART_VARIABLE = 1
CHART_PIVOT = 1

# values of the six coordinates, in the source order
PARAMETRIZATION = ["x0^2", "x1^2", "-x0^2-2*x0*x1", "x2^2", "x0*x2",
                   "8*x0^2+12*x0*x1+8*x1*x2-4*x2^2"]

PULLBACK_QUARTIC = ("2*x0^4-8*x0^3*x1+6*x0^2*x1^2+x0*x1^3+4*x0^3*x2-48*x0^2*x1*x2"
                    "+12*x0*x1^2*x2-96*x0*x1*x2^2-64*x1*x2^3")

RHO_MATRIX = [
    [0, 0, 1, 0, -4, 4],
    [0, -1, 0, 2, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -4, 8],
    [0, 0, 0, 4, 0, 0],
    [0, 0, 0, 0, 0, 16],
]

GROUP_ELEMENT = [[0, 1, -2], [-1, 0, 0], [0, 0, -4]]

FINAL_ANSWER = "-256*x0^3*x1-768*x0^2*x1*x2-256*x1^3*x2-256*x0*x2^3"

# source position -> lex position (it is an involution)
_PERM = [0, 1, 3, 2, 4, 5]


def lex(poly: HomogPoly) -> HomogPoly:
    """Rename z variables from the source order to lex order."""
    terms = {tuple(e[_PERM[i]] for i in range(6)): c for e, c in poly.terms.items()}
    return HomogPoly(6, poly.degree, terms, poly.field, "z")


def zpoly(text, field=None):
    from .exactla import QQ
    return lex(parse_poly(text, 6, field or QQ, prefix="z")) if text != "0" else None


def lex_vector(values):
    """Reorder a length-6 list from the source order to lex order."""
    return [values[_PERM[i]] for i in range(6)]


def lex_matrix(m):
    """Conjugate a 6x6 matrix on z coordinates into lex order."""
    return [[m[_PERM[i]][_PERM[j]] for j in range(6)] for i in range(6)]


def ideal_x():
    return [zpoly(s) for s in IDEAL_X]


def veronese_j():
    return [zpoly(s) for s in VERONESE_J]


def last_differential():
    return [[zpoly(s) for s in row] for row in LAST_DIFFERENTIAL]


def chart_forms():
    return [zpoly(s) for s in CHART]


def parametrization():
    return lex_vector([parse_poly(s, 3) for s in PARAMETRIZATION])
