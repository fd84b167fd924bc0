import json

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from polyfibers.cli import main
from polyfibers.exactalg import BPoly
from polyfibers.parser import ParseError, format_polynomial, parse_polynomial

x, y = BPoly.gens()
BRIANCON_TEXT = ("y*(x*(x*y+1)+1)^3 + (x*(x*y+1)+1)^2*(x*y+1) - 5/3*(x*(x*y+1)+1)*(x*y+1)"
                 " - 1/3*(x*y+1)")


def test_parse_examples():
    assert parse_polynomial("x*(x*y+1)") == x**2 * y + x
    assert parse_polynomial("x") == x
    f = parse_polynomial(BRIANCON_TEXT)
    s, p = x * y + 1, x * (x * y + 1) + 1
    assert f.total_degree == 10
    assert f * 3 == 3 * y * p**3 + 3 * p**2 * s - 5 * p * s - s
    assert parse_polynomial("-(x - 2/4)^2") == -(x**2) + x - parse_polynomial("1/4")
    assert parse_polynomial("u^2 + v", vars=("u", "v")) == x**2 + y


@pytest.mark.parametrize("text, pos", [("2x", 1), ("x/y", 1), ("x +", 3), ("x^y", 2), ("z", 0),
                                       ("(x", 2), ("x $ y", 2), ("1/0", 0), ("x*y)", 3)])
def test_parse_errors_carry_a_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_polynomial(text)
    assert e.value.pos == pos


def test_parse_rejects_three_variables():
    with pytest.raises(ValueError):
        parse_polynomial("x", vars=("x", "y", "z"))


_mono = st.tuples(st.integers(-9, 9), st.integers(1, 4), st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=60, deadline=None)
@given(st.lists(_mono, max_size=6))
def test_round_trip(terms):
    f = BPoly()
    for a, b, i, j in terms:
        f = f + parse_polynomial(f"{a}/{b}") * x**i * y**j
    text = format_polynomial(f)
    assert parse_polynomial(text) == f
    assert format_polynomial(parse_polynomial(text)) == text


def _run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else None)


def test_cli_broughton(capsys, tmp_path):
    code, doc = _run(capsys, "analyze", "--expr", "x*(x*y+1)", "--dot", str(tmp_path))
    assert code == 0
    assert (doc["B_aff"], doc["B_inf"], doc["chi_generic"]) == ([], ["0"], 0)
    (fib,) = doc["fibers"]
    assert (fib["n"], fib["r"], fib["chi"], fib["acyclic"]) == (2, 2, 1, True)
    assert fib["j"] == {"injective": False, "surjective": True, "isomorphism": False, "rk_ker": 1}
    assert fib["monodromy"]["vanishing"] == {"W-1": 1, "W0": 0, "W1": 0, "W2": 0}
    dot = (tmp_path / "fiber0_Gbar_c.dot").read_text()
    assert dot.count("[label=") == len(fib["Gbar_c"]["vertices"]) == 3
    assert "+1" in dot


def test_cli_coordinate_writes_no_dot(capsys, tmp_path):
    code, doc = _run(capsys, "analyze", "--expr", "x", "--dot", str(tmp_path / "out"))
    assert code == 0 and doc["B"] == [] and doc["fibers"] == []
    assert list((tmp_path / "out").glob("*.dot")) == []


def test_cli_value_and_vars(capsys, tmp_path):
    code, doc = _run(capsys, "analyze", "--expr", "a*b", "--vars", "a,b", "--value", "0")
    assert code == 0 and doc["polynomial"] == "a*b"
    (fib,) = doc["fibers"]
    assert fib["value"] == "0" and fib["monodromy"]["rk_inv"] == 1
    poly = tmp_path / "f.txt"
    poly.write_text("x*y\n", encoding="utf-8")
    code, doc = _run(capsys, "analyze", "--poly", str(poly), "--value", "3/2")
    assert code == 0 and doc["fibers"][0]["j"]["isomorphism"]


@pytest.mark.parametrize("args", [["analyze", "--expr", "2x"], ["analyze", "--expr", "x^2*y"],
                                  ["analyze", "--expr", "x", "--value", "pi"],
                                  ["analyze", "--expr", "x", "--vars", "x"],
                                  ["analyze", "--poly", "/nonexistent/file"], ["analyze"], []])
def test_cli_input_errors(capsys, args):
    assert main(args) == 1


def test_cli_consistency_error_exit_code(capsys, monkeypatch):
    from polyfibers import cli
    from polyfibers.invariants import ConsistencyError

    def boom(*a, **k):
        raise ConsistencyError("forced")

    monkeypatch.setattr(cli, "analyze", boom)
    assert main(["analyze", "--expr", "x"]) == 2
    assert "forced" in capsys.readouterr().err


def test_cli_output_is_deterministic(capsys):
    _, a = _run(capsys, "analyze", "--expr", "x^3 + y^3 - 3*x*y", "--json-indent", "2")
    _, b = _run(capsys, "analyze", "--expr", "x^3 + y^3 - 3*x*y", "--json-indent", "2")
    assert a == b and a["B_aff"] == ["0", "-1"]
