import json

import pytest

from hessrec import fixtures as fx
from hessrec.cli import run
from hessrec.serialize import ideal_to_json, write_json
from hessrec.mpoly import GradedSubspace, parse_poly, proportional
from hessrec.exactla import QQ


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_ideal_file(tmp_path):
    I2 = GradedSubspace.span(fx.ideal_x(), 6, 2, QQ, "z")
    path = tmp_path / "ideal.json"
    write_json(path, ideal_to_json(2, {2: I2}))
    return path


def test_forward_then_recover3(capsys, tmp_path):
    code, out, _ = call(capsys, "forward", "--d", "3", "--n", "2", "--poly", "x0*x1*x2",
                        "--degrees", "1,2", "--json")
    assert code == 0
    path = tmp_path / "cubic.json"
    path.write_text(out)
    code, out, _ = call(capsys, "recover3", "--ideal", str(path), "--json")
    assert code == 0
    assert proportional(parse_poly(json.loads(out)["F"], 3), parse_poly("x0*x1*x2", 3))


def test_json_output_is_deterministic(capsys):
    argv = ["forward", "--d", "4", "--n", "2", "--poly", fx.QUARTIC, "--degrees", "2", "--json"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second
    assert json.loads(first)["zorder"] == "lex-pairs"


def test_recover4_with_trace(capsys, tmp_path, example_ideal_file):
    trace = tmp_path / "trace"
    code, out, _ = call(capsys, "recover4", "--ideal", str(example_ideal_file), "--trace", str(trace), "--json")
    assert code == 0
    F = parse_poly(json.loads(out)["F"], 3)
    assert proportional(F, parse_poly(fx.QUARTIC, 3))
    names = {p.name for p in trace.iterdir()}
    assert names == {"J2.json", "resolution.json", "phi.json", "param.json", "q_extra.json",
                     "G.json", "A.json", "g.json"}
    res = json.loads((trace / "resolution.json").read_text())
    assert res["ranks"] == [1, 6, 8, 3]


def test_recover41_and_small_commands(capsys, tmp_path):
    pencil = tmp_path / "pencil.json"
    pencil.write_text(json.dumps({"gens": ["z0^2+z2^2", "z1^2"]}))
    assert call(capsys, "recover41", "--pencil", str(pencil))[1].strip() == "a = (1, 0, 0, 0, 1)"
    code, out, _ = call(capsys, "fiber31", "--points", "1,-1,0;0,-1,1;1,0,-1", "--json")
    assert code == 0 and len(json.loads(out)["fiber"]) == 2
    code, out, _ = call(capsys, "iota", "--coeffs", "0,1,-1,0", "--json")
    assert code == 0 and json.loads(out)["iota"] == ["-2", "3", "3", "-2"]
    code, out, _ = call(capsys, "waring", "--d", "3", "--lambda", "1,1,1", "--enumerate", "--json")
    assert code == 0 and len(json.loads(out)["fiber"]) == 4
    code, out, _ = call(capsys, "conventions", "--n", "2", "--json")
    assert [t["pair"] for t in json.loads(out)["table"]][:3] == [[0, 0], [0, 1], [0, 2]]


def test_exit_codes(capsys, tmp_path):
    # mathematical failure: a perfect cube has no partner
    assert call(capsys, "iota", "--coeffs", "1,0,0,0")[0] == 1
    # usage errors
    assert call(capsys, "iota", "--coeffs", "1,2")[0] == 2
    assert call(capsys, "iota", "--coeffs", "0,1,-1,0", "--field", "p:15")[0] == 2
    assert call(capsys, "recover3", "--ideal", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "waring", "--d", "5", "--lambda", "1,1,1", "--budget", "10")[0] == 1
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_seed_environment_override(capsys, monkeypatch):
    argv = ["waring", "--d", "3", "--lambda", "1,2", "--enumerate", "--json", "--seed", "5"]
    _, a, _ = call(capsys, *argv)
    monkeypatch.setenv("HESSREC_SEED", "5")
    _, b, _ = call(capsys, *argv[:-2])
    assert a == b
    monkeypatch.setenv("HESSREC_SEED", "x")
    assert call(capsys, *argv)[0] == 2


def test_prime_field_option(capsys, tmp_path, example_ideal_file):
    code, out, _ = call(capsys, "recover4", "--ideal", str(example_ideal_file), "--field", "p:1000003", "--json")
    assert code == 0
    assert "F" in json.loads(out)
