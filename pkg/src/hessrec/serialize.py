"""JSON interchange: forms as text, numbers as "p/q" strings."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exactla import QQ, Fp
from .mpoly import GradedSubspace, HomogPoly, format_poly, parse_poly
from .symsq import sym_pairs

ZORDER = "lex-pairs"


def number_to_json(c):
    if isinstance(c, Fp):
        return str(c.v)
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, int):
        return str(c)
    return str(c)


def number_from_json(s, field=QQ):
    return field(Fraction(s))


def matrix_to_json(m):
    return [[number_to_json(c) for c in row] for row in m]


def matrix_from_json(rows, field=QQ):
    return [[number_from_json(c, field) for c in row] for row in rows]


def ideal_to_json(n, pieces=None, gens=None):
    """Ideal data in the interchange format."""
    return {
        "n": n,
        "zorder": ZORDER,
        "degree_pieces": {str(e): [format_poly(f) for f in sp.forms()]
                          for e, sp in sorted((pieces or {}).items())},
        "gens": [format_poly(g) for g in (gens or [])],
    }


def ideal_from_json(data, field=QQ):
    """Returns (n, {degree: GradedSubspace}, gens)."""
    if data.get("zorder", ZORDER) != ZORDER:
        raise ValueError(f"unsupported z order {data['zorder']!r}")
    n = int(data["n"])
    nz = len(sym_pairs(n))
    pieces = {}
    for e, forms in data.get("degree_pieces", {}).items():
        polys = [parse_poly(s, nz, field, degree=int(e), prefix="z") for s in forms]
        pieces[int(e)] = GradedSubspace.span(polys, nz, int(e), field, "z")
    gens = [parse_poly(s, nz, field, prefix="z") for s in data.get("gens", [])]
    return n, pieces, gens


def piece_of(pieces, gens, e, nz, field=QQ):
    """The degree-e piece, from the stored pieces or from the generators of degree e."""
    if e in pieces:
        return pieces[e]
    forms = [g for g in gens if g.degree == e]
    if not forms:
        raise KeyError(f"no degree-{e} data in the ideal file")
    return GradedSubspace.span(forms, nz, e, field, "z")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def load_json(path):
    return json.loads(Path(path).read_text())


def write_json(path, obj):
    Path(path).write_text(dumps(obj) + "\n")


def poly_to_json(f: HomogPoly) -> str:
    return format_poly(f)


def poly_from_json(s, nvars, field=QQ, prefix=None) -> HomogPoly:
    return parse_poly(s, nvars, field, prefix=prefix)
