import json
import subprocess
import sys
from fractions import Fraction

import pytest

from equitable.cli import (
    EXIT_OK, EXIT_PARSE, EXIT_RECOGNITION, EXIT_RESOURCE, EXIT_USAGE, parse_d, run,
)
from equitable.exactla import ExactMatrix
from equitable.matrixio import dumps_matrix, dumps_triple, loads_matrix, loads_triple
from equitable.repkit import ALL_BASES, BasisId, Generator, SpaceId, build_canonical, family, rep
from equitable.scalars import Q, set_term_bound, term_bound


def ok(argv):
    status, out, err = run(argv)
    assert status == EXIT_OK, err
    return out


def test_parse_d():
    assert parse_d("3") == (3,)
    assert parse_d("0..4") == (0, 1, 2, 3, 4)
    for bad in ("-1", "4..2", "x", "1..", ""):
        with pytest.raises(Exception):
            parse_d(bad)


def test_emit_family_e_d3():
    assert loads_matrix(ok(["emit", "--family", "E", "--d", "3"])) == build_canonical(family("E"), 3)
    out = ok(["emit", "--family", "E", "--d", "3"])
    assert '["q^-3", "q^3 - q^-3", "0", "0"]' in out


def test_emit_rep_and_k0():
    assert loads_matrix(ok(["emit", "--rep", "V:[y]row:x", "--d", "2"])) == build_canonical(family("E"), 2)
    assert loads_matrix(ok(["emit", "--family", "K", "--d", "0"])) == ExactMatrix([[1]])
    assert ok(["emit", "--family", "K", "--d", "0", "--format", "table"]).strip() == "[ 1 ]"


def test_emit_variant_names():
    m = loads_matrix(ok(["emit", "--family", "ZE_{q^-1}^tZ", "--d", "3"]))
    assert m == build_canonical(family("E", t=True, inv=True, z=True), 3)


@pytest.mark.parametrize("argv", [
    ["emit", "--family", "W", "--d", "2"],
    ["emit", "--rep", "V:[w]row:x", "--d", "2"],
    ["emit", "--d", "2"],
    ["emit", "--family", "E", "--d", "-1"],
    ["verify", "--suite", "nonsense", "--d", "1"],
    ["emit", "--family", "E", "--d", "2", "--backend", "rational", "--q", "1"],
    ["emit", "--family", "E", "--d", "2", "--scalars", "xy*=0"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    status, out, err = run(argv)
    assert status == EXIT_USAGE


def test_unknown_family_lists_choices():
    status, _, err = run(["emit", "--family", "W", "--d", "2"])
    assert status == EXIT_USAGE and "K" in err and "P" in err


@pytest.mark.parametrize("d", [0, 2, 3])
def test_emit_round_trip_every_rep(d):
    for b in ALL_BASES:
        for g in ("x", "y", "z", "n_x", "n_y", "n_z"):
            for s in ("V", "V*"):
                text = ok(["emit", "--rep", f"{s}:{b}:{g}", "--d", str(d)])
                sid = SpaceId.V if s == "V" else SpaceId.V_dual
                assert loads_matrix(text) == rep(sid, b, Generator(g), d)


def test_emit_other_objects():
    for argv in (["--basis", "V:[x]col"], ["--eta", "V*:z"], ["--gram", "[x]row:[x]inv_col"],
                 ["--transition", "V:[x]row:[y]row"], ["--rotator", "V*:[z]inv_row"]):
        loads_matrix(ok(["emit", *argv, "--d", "3"]))
    g = loads_matrix(ok(["emit", "--gram", "[x]row:[x]inv_col", "--d", "3"]))
    assert g == ExactMatrix.identity(4)


def test_transition_and_gram_commands():
    m = loads_matrix(ok(["transition", "--space", "V", "--from", "[y]row", "--to", "[y]col", "--d", "1"]))
    assert m == ExactMatrix.diag([1, -1])
    g = loads_matrix(ok(["gram", "--v", "[y]row", "--dual", "[y]row", "--d", "1"]))
    assert g == ExactMatrix([[0, 1], [-1, 0]])


def test_numeric_backend_output():
    m = loads_matrix(ok(["emit", "--family", "K", "--d", "2", "--backend", "rational", "--q", "2"]))
    assert m == ExactMatrix.diag([4, 1, Fraction(1, 4)])


def test_out_file(tmp_path):
    path = tmp_path / "e.json"
    status, out, err = run(["emit", "--family", "N", "--d", "3", "--out", str(path)])
    assert status == EXIT_OK and out == ""
    assert loads_matrix(path.read_text()) == build_canonical(family("N"), 3)


def test_verify_passes_and_is_deterministic():
    a = run(["verify", "--suite", "all", "--d", "0..2"])
    b = run(["verify", "--suite", "all", "--d", "0..2"])
    assert a[0] == EXIT_OK
    assert a == b
    assert a[1].splitlines()[-1] == "all checks passed"


def test_verify_rational_and_scalars():
    ok(["verify", "--suite", "algebra", "--d", "0..12", "--backend", "rational", "--q", "2"])
    out = ok(["verify", "--suite", "all", "--d", "3", "--scalars", "xy*=2,yz*=3,zx*=5,yx*=7,zy*=1/2"])
    assert "[FAIL]" not in out


def test_verify_resource_guard():
    old = term_bound()
    try:
        set_term_bound(3)
        status, _, err = run(["verify", "--suite", "algebra", "--d", "6"])
    finally:
        set_term_bound(old)
    assert status == EXIT_RESOURCE and "d=6" in err


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_recognize_quantum(tmp_path):
    b = BasisId.parse("[x]row")
    mats = [rep(SpaceId.V, b, g, 3, Fraction(2)) * 3 for g in (Generator.x, Generator.y, Generator.z)]
    path = _write(tmp_path, "t.json", dumps_triple(*mats))
    doc = json.loads(ok(["recognize", path]))
    assert doc["branch"] == "quantum" and doc["b"] == "1/4" and doc["q"] == "2"
    assert doc["irreducible"] is True
    assert "quantum" in ok(["recognize", path, "--format", "table"])


def test_recognize_classical(tmp_path):
    text = dumps_triple(ExactMatrix.diag([-1, 1]), ExactMatrix([[1, 0], [1, -1]]), ExactMatrix([[1, -4], [0, -1]]))
    path = _write(tmp_path, "cl.json", text)
    doc = json.loads(ok(["recognize", path, "--b", "1"]))
    assert doc["branch"] == "classical_sl2"
    status, out, err = run(["recognize", path])
    assert status == EXIT_RECOGNITION and "underdetermined" in (out + err)


def test_recognize_errors(tmp_path):
    assert run(["recognize", _write(tmp_path, "bad.json", "{not json")])[0] == EXIT_PARSE
    assert run(["recognize", _write(tmp_path, "f.json", '{"X": {"rows": 1, "cols": 1, "entries": [[0.5]]}}')])[0] \
        == EXIT_PARSE
    shape = dumps_triple(ExactMatrix.identity(2), ExactMatrix.identity(2), ExactMatrix([[1, 0], [1, 1]]))
    assert run(["recognize", _write(tmp_path, "s.json", shape)])[0] == EXIT_PARSE
    x = ExactMatrix.diag([4, 1, Fraction(1, 4)])
    y = ExactMatrix([[9, 0, 0], [1, 3, 0], [0, 1, 1]])
    z = ExactMatrix([[Fraction(1, 4), 1, 0], [0, 1, 1], [0, 0, 4]])
    assert run(["recognize", _write(tmp_path, "m.json", dumps_triple(x, y, z))])[0] == EXIT_RECOGNITION
    assert run(["recognize", str(tmp_path / "missing.json")])[0] in (EXIT_PARSE, EXIT_USAGE)


def test_matrix_file_round_trip():
    m = ExactMatrix([[Q / (Q ** 2 + 1), Fraction(-3, 7)], [0, Q ** -5 - 2]])
    assert loads_matrix(dumps_matrix(m)) == m
    x, y, z = (build_canonical(family(k), 2) for k in ("K", "E", "N"))
    assert loads_triple(dumps_triple(x, y, z)) == (x, y, z)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "equitable", "emit", "--family", "P", "--d", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert loads_matrix(proc.stdout) == ExactMatrix([[0, 1], [-1, 1]])
