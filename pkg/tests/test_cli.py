import io
import json
import random
from fractions import Fraction

import pytest

from corpus import random_connection, random_lattice
from holodiff.cli import main
from holodiff.errors import ParseError
from holodiff.lattices import Lattice, austere_reduce
from holodiff.parse import operator_kind, parse_operator, parse_ratfunc
from holodiff.serialize import matrix_in, matrix_out, series_in, series_out
from holodiff.skew import DifferenceOperator, DifferentialOperator
from holodiff.arith import LaurentTrunc, Poly, RatFunc


def run(job, *flags):
    """Run the CLI on a job; returns ``(exit code, raw output)``."""
    out = io.StringIO()
    text = job if isinstance(job, str) else json.dumps(job)
    code = main(list(flags), stdin=io.StringIO(text), stdout=out)
    return code, out.getvalue()


def report(job, *flags):
    code, raw = run(job, *flags)
    assert code == 0, raw
    return json.loads(raw)


def A_json(conn):
    return matrix_out(conn.A)


# -- documented examples ------------------------------------------------------------------

def test_mellin_op_example():
    assert report({"cmd": "mellin-op", "op": "x*Dx"}) == {"result": "z"}
    assert report({"cmd": "mellin-op", "op": "z"}) == {"result": "x*Dx"}
    assert report({"cmd": "mellin-op", "op": "T + T^-1"})["result"] == str(parse_operator("x + x^-1"))


def test_analyze_identity_is_a_vector_bundle():
    out = report({"cmd": "analyze", "A": [["1"]]})
    assert out["vector_bundle"] is True and out["rank"] == 1


def test_vanishing_example():
    out = report({"cmd": "vanishing", "A": [["z"]], "orbit": "0"})
    assert out["left"] == [1] and out["right"] == []


def test_every_command_runs():
    jobs = [
        {"cmd": "austere", "A": [["z/(z-1)"]], "orbit": "0"},
        {"cmd": "restrict", "op": "T - z", "orbit": "0"},
        {"cmd": "vanishing", "op": "z", "orbit": "0", "N": [1]},
        {"cmd": "vanishing", "A": [["z/(z-1/2)"]]},
        {"cmd": "glue", "op": "T^2 - z*T + z - 1", "orbit": "0"},
        {"cmd": "factor", "B": [["1", "1/(z*(1-z))"], ["0", "1"]]},
        {"cmd": "local-mellin", "C": [["1/2", "1"], ["0", "1/2"]], "p": "1/2"},
    ]
    outs = [report(j) for j in jobs]
    assert matrix_in(outs[0]["lattice"]) == matrix_in([["z-1"]])
    assert outs[1]["left"] == [1]
    assert outs[2]["hom_dimension"] == 1
    assert outs[3]["orbits"] == {"0": {"left": [1], "right": []}, "1/2": {"left": [], "right": [1]}}
    assert outs[4]["round_trip"] is True
    C = [[series_in(x).to_ratfunc() for x in r] for r in outs[5]["C"]]
    assert C == [[1, RatFunc(Poly.constant(1), Poly.z())], [0, 1]]
    assert outs[6] == {"partition": [2]}


def test_local_mellin_at_infinity():
    out = report({"cmd": "local-mellin", "C": [["-1/3"]], "p": "1/3", "at": "infinity"})
    assert out == {"partition": [1]}


# -- exit codes and errors ------------------------------------------------------------------

@pytest.mark.parametrize("job", [
    "not json",
    {"cmd": "nope"},
    ["cmd"],
    {"cmd": "analyze"},
    {"cmd": "analyze", "A": [["z", "1"]]},
    {"cmd": "analyze", "A": [["w"]]},
    {"cmd": "mellin-op", "op": "x*T"},
    {"cmd": "local-mellin", "C": [["z"]], "p": "0"},
    {"cmd": "vanishing", "A": [["z"]], "orbit": "1/0"},
])
def test_parse_errors_exit_2(job):
    code, raw = run(job)
    assert code == 2
    assert json.loads(raw)["error"] == "ParseError"


@pytest.mark.parametrize("job, name", [
    ({"cmd": "analyze", "A": [["z^2 - 2"]]}, "UnsupportedPoint"),
    ({"cmd": "analyze", "A": [["0"]]}, "SingularMatrix"),
    ({"cmd": "analyze", "op": "z - 1"}, "RankZero"),
    ({"cmd": "local-mellin", "C": [["0", "2"], ["1", "0"]], "p": "0"}, "IrrationalEigenvalue"),
    ({"cmd": "factor", "B": [["1", "1"], ["1", "1"]]}, "SingularInput"),
])
def test_domain_errors_exit_1(job, name):
    code, raw = run(job)
    assert code == 1
    out = json.loads(raw)
    assert out["error"] == name and "detail" in out


def test_job_file_and_flags(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"cmd": "factor", "B": [["1/(1-z)"]]}), encoding="utf-8")
    out = io.StringIO()
    assert main([str(path), "--order", "5", "--json-indent", "2"], stdout=out) == 0
    text = out.getvalue()
    assert text.startswith("{\n  ")
    data = json.loads(text)
    assert data["order"] == 5
    assert series_in(data["A"][0][0]).coefficients[:5] == (1,) * 5
    assert main([str(tmp_path / "missing.json")], stdout=io.StringIO()) == 2


# -- determinism and round trips ------------------------------------------------------------------

def test_output_is_deterministic():
    conn = random_connection(random.Random(61), 2)
    job = {"cmd": "analyze", "A": A_json(conn)}
    reordered = dict(reversed(list(job.items())))
    first = run(job)
    assert run(job) == first
    assert run(reordered) == first


def test_emitted_objects_reparse():
    rng = random.Random(62)
    for _ in range(4):
        conn, L = random_connection(rng, 2), random_lattice(rng, 2)
        assert matrix_in(json.loads(json.dumps(matrix_out(conn.A)))) == conn.A
        out = report({"cmd": "austere", "A": A_json(conn), "L": matrix_out(L.generators), "orbit": "0"})
        assert Lattice(matrix_in(out["lattice"])) == austere_reduce(conn, L, 0)
        for step in out["trace"]:
            Lattice(matrix_in(step["lattice"]))
    out = report({"cmd": "analyze", "A": [["1/z"]]})
    witness = Lattice(matrix_in(out["witness"]))
    # feeding the witness back gives a module with no zeroes at all
    again = report({"cmd": "analyze", "A": [["1/z"]], "L": matrix_out(witness.generators)})
    assert again["zeroes"] == []
    s = LaurentTrunc(Fraction(1, 2), -1, [1, Fraction(-2, 3)], 4)
    for t in (s, LaurentTrunc.zero(0), LaurentTrunc.zero(0, 5), LaurentTrunc.one(Fraction(1, 2))):
        back = series_in(json.loads(json.dumps(series_out(t))))
        assert back == t and back.precision == t.precision


# -- operator grammar ------------------------------------------------------------------------

def test_grammar_examples():
    z, T = DifferenceOperator.z(), DifferenceOperator.tau()
    assert parse_operator(" T^2 -  z*T+3/2 ") == T * T - z * T + DifferenceOperator.constant(Fraction(3, 2))
    assert parse_operator("T − z") == T - z
    assert parse_operator("(z + 1)^2 * T^-1") == (z + 1) * (z + 1) * DifferenceOperator.tau(-1)
    x, D = DifferentialOperator.x(), DifferentialOperator.d()
    assert parse_operator("x^2*Dx - x^-1") == x * x * D - DifferentialOperator.x(-1)
    assert operator_kind("3") is None
    assert parse_ratfunc("1/(z*(1-z))") == RatFunc(Poly.constant(1), Poly([0, 1, -1]))


@pytest.mark.parametrize("text", ["", "z +", "z ** 2", "T * x", "z / z", "Dx^-1", "q", "(z", "z $ 1"])
def test_grammar_rejects(text):
    with pytest.raises(ParseError):
        parse_operator(text)


def test_printed_operators_reparse():
    rng = random.Random(63)
    for _ in range(30):
        q = DifferenceOperator({i: Poly([Fraction(rng.randint(-3, 3), rng.choice([1, 2]))
                                         for _ in range(rng.randint(1, 3))])
                                for i in range(-2, 3) if rng.random() < 0.5})
        assert parse_operator(str(q), default="difference") == q
        d = DifferentialOperator({(j, k): Fraction(rng.randint(-3, 3), rng.choice([1, 3]))
                                  for j in range(3) for k in range(-2, 3) if rng.random() < 0.3})
        assert parse_operator(str(d), default="differential") == d
