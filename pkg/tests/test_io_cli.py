import json

import numpy as np
import pytest

from auslander.cli import main
from auslander.io import (FormatError, format_module, load_algebra, load_module, parse_relation,
                          save_based_algebra)
from auslander.modcat import is_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_relation():
    r = parse_relation("a*b - c*d")
    assert [(c, tuple(n)) for c, n in r.terms] == [(1, ("a", "b")), (-1, ("c", "d"))]
    with pytest.raises(ValueError):
        parse_relation("")


def test_algebra_file_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices 2\nfrobnicate 1\n")
    with pytest.raises(FormatError, match="bad.alg:2"):
        load_algebra(bad)
    bad.write_text("arrow a 1 2\n")
    with pytest.raises(FormatError, match="vertices"):
        load_algebra(bad)
    with pytest.raises(FormatError, match="field 101"):
        load_algebra("a2.alg", p=7)
    with pytest.raises(FileNotFoundError):
        load_algebra(tmp_path / "missing.alg")


def test_module_round_trip(tmp_path, a3, a3_ct):
    path = tmp_path / "x.mod"
    path.write_text(format_module(a3_ct, "a3rad2.alg"))
    back = load_module(path)
    assert back.dims == a3_ct.dims and np.array_equal(back.action, a3_ct.action)


def test_module_dims_mismatch(tmp_path, a2):
    path = tmp_path / "m.mod"
    path.write_text("dims 1 1 1\n")
    with pytest.raises(FormatError, match="3 dims"):
        load_module(path, a2)
    path.write_text("dims 1 1\nmap a1 = [[1, 2]]\n")
    with pytest.raises(FormatError):
        load_module(path, a2)


def test_based_algebra_round_trip(tmp_path, auslander_a2, a2_all):
    G = auslander_a2.algebra
    path = tmp_path / "g.balg"
    save_based_algebra(G, path)
    G2 = load_algebra(path)
    assert G2.labels == G.labels and np.array_equal(G2.mult, G.mult)
    M = auslander_a2.summands[0]
    from auslander.functors import apply_F
    FM = apply_F(auslander_a2, M)
    mpath = tmp_path / "fm.mod"
    mpath.write_text(format_module(FM, str(path)))
    back = load_module(mpath)
    assert back.algebra.n == 5 and np.array_equal(back.action, FM.action)


def test_cli_examples(capsys):
    code, out = run(capsys, "gldim", "examples/a2.alg")
    assert code == 0 and out.splitlines()[1] == "gl.dim = 1"
    code, out = run(capsys, "domdim", "examples/kx2.alg", "--cutoff", "10")
    assert code == 0 and "dom.dim >= 10" in out
    code, out = run(capsys, "roundtrip", "--d", "2", "examples/a3rad2.alg", "examples/a3rad2_ct.mod")
    assert code == 0 and "PASS (Γ dim 7, fingerprint match)" in out


def test_cli_commands(capsys, tmp_path):
    assert "= 1" in run(capsys, "ext", "--i", "1", "a2.alg", "a2_s1.mod", "a2_s2.mod")[1]
    out = run(capsys, "check-ct", "--d", "2", "--indecomposables", "a3rad2_indec", "a3rad2.alg", "a3rad2_ct.mod")[1]
    assert "true" in out
    out = run(capsys, "resolve", "--direction", "proj", "a2.alg", "a2_s1.mod")[1]
    assert "P" in out or "[" in out
    balg = tmp_path / "g.balg"
    assert run(capsys, "endo", "a2.alg", "a2_all.mod", "--out", str(balg))[0] == 0
    out = run(capsys, "check-auslander", "--d", "1", str(balg))[1]
    assert "1-Auslander: true" in out
    code, out = run(capsys, "recover-ct", "--d", "1", str(balg))
    assert code == 0 and "3" in out
    code, out = run(capsys, "c-resolve", "--d", "2", "--direction", "left", "a3rad2.alg", "a3rad2_ct.mod",
                    "a3rad2_s2.mod")
    assert code == 0
    assert run(capsys, "verify-apt", "--d", "2", "--e", "1", "a2.alg", "a2_s1.mod")[0] == 0
    assert run(capsys, "verify-extiso", "--d", "1", "--e", "1,2", "a2.alg", "a2_s1.mod", "a2_s2.mod")[0] == 0


def test_cli_exit_codes(capsys):
    assert run(capsys, "gldim", "nope.alg")[0] == 1
    code, out = run(capsys, "--p", "7", "gldim", "a2.alg")
    assert code == 1 and "field 101" in out
    code, out = run(capsys, "ext", "--i", "5", "--cutoff", "2", "a3rad2.alg", "a3rad2_s1.mod", "a3rad2_s3.mod")
    assert code == 2
    # a negative verdict is still a computed answer
    assert run(capsys, "check-ct", "--d", "2", "a3rad2.alg", "a3rad2_ct_s2.mod")[0] == 0


def test_machine_output_deterministic(capsys):
    argv = ["--format", "machine", "--seed", "3", "roundtrip", "--d", "2", "a3rad2.alg", "a3rad2_ct.mod"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b
    data = json.loads(a)
    assert data["passed"] is True and data["exit_code"] == 0 and data["config"]["seed"] == 3


def test_global_options_after_subcommand(capsys):
    code, out = run(capsys, "domdim", "kx2.alg", "--cutoff", "7", "--format", "machine")
    assert code == 0 and json.loads(out)["config"]["cutoff"] == 7
