"""Command-line interface: file format, subcommands, exit codes."""

import pytest

from evoalg.algebra import EvolutionAlgebra, graph_of
from evoalg.cli import (dispatch, emit_dot, parse_algebra_text,
                        write_algebra_text)
from evoalg.errors import AlgebraSyntaxError
from evoalg.fields import GF, QI, QQ

CHAIN4 = "field Q\ndim 4\nrow 0 1 0 0\nrow 0 0 1 0\nrow 0 0 0 1\nrow 0 0 0 0\n"


def algfile(tmp_path, text, name="a.alg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_round_trip():
    E = parse_algebra_text(CHAIN4)
    assert E.dim == 4 and E.field == QQ()
    assert write_algebra_text(E) == CHAIN4


def test_parse_comments_and_fields():
    text = "# demo\nfield GF 13  # the field\ndim 1\nrow 5\n"
    E = parse_algebra_text(text)
    assert E.field == GF(13)
    assert E.structure[0, 0] == GF(13).from_int(5)
    E2 = parse_algebra_text("field Qi\ndim 1\nrow 1/2+3i\n")
    Qi = QI()
    assert E2.structure[0, 0] == Qi.one() / Qi.from_int(2) \
        + Qi.from_int(3) * Qi.i()


def test_parse_errors_carry_position():
    with pytest.raises(AlgebraSyntaxError) as exc:
        parse_algebra_text("field Q\ndim 2\nrow 0 x\nrow 0 0\n")
    assert exc.value.line == 3
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra_text("")
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra_text("field Q\ndim 2\nrow 0 1\n")      # missing row
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra_text(CHAIN4 + "row 0 0 0 0\n")         # extra row
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra_text("field GF 13\ndim 1\nrow i\n")    # i over GF


def test_dot_golden_bytes():
    E = parse_algebra_text("field Qi\ndim 3\nrow 0 1 0\nrow 0 0 i\nrow 0 0 0\n")
    assert emit_dot(graph_of(E)) == (
        "digraph evolution {\n"
        "  1;\n  2;\n  3;\n"
        "  1 -> 2;\n"
        '  2 -> 3 [label="i"];\n'
        "}\n")


def test_cmd_type_and_classify(tmp_path, capsys):
    f = algfile(tmp_path, CHAIN4)
    assert dispatch(["type", f]) == 0
    assert capsys.readouterr().out == "[1,1,1,1]\n"
    assert dispatch(["classify", f]) == 0
    assert capsys.readouterr().out == "d4:[1,1,1,1]:v1\n"


def test_cmd_series(tmp_path, capsys):
    f = algfile(tmp_path, "field Q\ndim 2\nrow 0 1\nrow 0 0\n")
    assert dispatch(["series", f]) == 0
    out = capsys.readouterr().out
    assert "ann^1: dim 1" in out and "ann^2: dim 2" in out
    assert "U_1: indices 2" in out and "U_2: indices 1" in out


def test_cmd_iso_equal_and_differ(tmp_path, capsys):
    f1 = algfile(tmp_path, CHAIN4, "a.alg")
    # rescaled copy of the chain
    f2 = algfile(tmp_path,
                 "field Q\ndim 4\nrow 0 4 0 0\nrow 0 0 9 0\n"
                 "row 0 0 0 1\nrow 0 0 0 0\n", "b.alg")
    assert dispatch(["iso", f1, f2]) == 0
    out = capsys.readouterr().out
    assert out.startswith("labels equal: d4:[1,1,1,1]:v1\n")
    assert "witness:" in out
    f3 = algfile(tmp_path, "field Q\ndim 4\nrow 0 1 1 0\nrow 0 0 0 1\n"
                 "row 0 0 0 1\nrow 0 0 0 0\n", "c.alg")
    assert dispatch(["iso", f1, f3]) == 0
    assert "labels differ" in capsys.readouterr().out


def test_cmd_iso_oracle(tmp_path, capsys):
    t = "field GF 3\ndim 2\nrow 0 1\nrow 0 0\n"
    f1 = algfile(tmp_path, t, "a.alg")
    f2 = algfile(tmp_path, "field GF 3\ndim 2\nrow 0 2\nrow 0 0\n", "b.alg")
    assert dispatch(["iso", f1, f2, "--oracle", "exhaustive"]) == 0
    assert "witness:" in capsys.readouterr().out


def test_cmd_family_output_round_trips(tmp_path, capsys):
    assert dispatch(["family", "--kind", "ubg", "--field", "GF 13",
                     "--b", "1,2,3", "--g", "0,1,2"]) == 0
    out = capsys.readouterr().out
    E = parse_algebra_text(out)
    assert E.dim == 5 and E.field == GF(13)
    assert dispatch(["type", algfile(tmp_path, out)]) == 0
    assert capsys.readouterr().out == "[1,1,3]\n"


def test_cmd_decompose(tmp_path, capsys):
    f = algfile(tmp_path, "field Q\ndim 4\nrow 0 1 0 0\nrow 0 0 0 0\n"
                "row 0 0 0 1\nrow 0 0 0 0\n")
    assert dispatch(["decompose", f]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Decomposable\n")
    assert "ideal I:" in out and "ideal J:" in out


def test_cmd_dot(tmp_path, capsys):
    f = algfile(tmp_path, "field Q\ndim 2\nrow 0 1\nrow 0 0\n")
    assert dispatch(["dot", f]) == 0
    assert capsys.readouterr().out == \
        "digraph evolution {\n  1;\n  2;\n  1 -> 2;\n}\n"


def test_exit_codes(tmp_path, capsys):
    bad = algfile(tmp_path, "field Q\ndim 2\nrow 0 x\nrow 0 0\n")
    assert dispatch(["type", bad]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:") and "line 3" in err
    assert dispatch(["type", str(tmp_path / "missing.alg")]) == 1
    capsys.readouterr()
    assert dispatch(["nosuchcommand"]) == 2
    assert dispatch([]) == 2
    capsys.readouterr()
    # classify of a non-nilpotent algebra is a domain error
    f = algfile(tmp_path, "field Q\ndim 1\nrow 1\n", "d.alg")
    assert dispatch(["classify", f]) == 1
