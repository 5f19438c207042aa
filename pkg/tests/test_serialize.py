import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessrec import fixtures as fx
from hessrec.exactla import PrimeField, QQ
from hessrec.forward import hessian_variety, minimal_generators
from hessrec.mpoly import parse_poly
from hessrec.serialize import (
    dumps, ideal_from_json, ideal_to_json, matrix_from_json, matrix_to_json, number_from_json,
    number_to_json, piece_of, poly_from_json, poly_to_json,
)

fractions = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(fractions)
def test_number_round_trip(q):
    assert number_from_json(number_to_json(q)) == q


def test_number_formats():
    assert number_to_json(Fraction(3)) == "3"
    assert number_to_json(Fraction(-1, 2)) == "-1/2"
    F = PrimeField(7)
    assert number_to_json(F(-1)) == "6"
    assert number_from_json("1/2", F) * 2 == F.one


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=1, max_size=4))
def test_matrix_round_trip(m):
    assert matrix_from_json(json.loads(dumps(matrix_to_json(m)))) == m


def test_ideal_round_trip():
    F = parse_poly(fx.QUARTIC, 3)
    model = hessian_variety(F, (2,))
    gens = minimal_generators(model)
    data = json.loads(dumps(ideal_to_json(2, model.pieces, gens)))
    assert data["zorder"] == "lex-pairs"
    n, pieces, gens2 = ideal_from_json(data)
    assert n == 2
    assert pieces[2] == model.pieces[2]
    assert gens2 == gens
    assert piece_of({}, gens2, 2, 6) == model.pieces[2]
    with pytest.raises(KeyError):
        piece_of({}, gens2, 3, 6)


def test_unknown_z_order_is_rejected():
    with pytest.raises(ValueError):
        ideal_from_json({"n": 2, "zorder": "grevlex", "gens": []})


def test_poly_round_trip():
    f = parse_poly(fx.FINAL_ANSWER, 3)
    assert poly_from_json(poly_to_json(f), 3) == f


def test_dumps_is_deterministic():
    obj = {"b": [1, 2], "a": {"y": 1, "x": 2}}
    assert dumps(obj) == dumps(json.loads(dumps(obj)))
    assert dumps(obj).index('"a"') < dumps(obj).index('"b"')
