import json

import pytest

from icchord.cli import main


@pytest.fixture
def files(tmp_path):
    sat = tmp_path / "sat.cnf"
    sat.write_text("p cnf 2 1\n1 2 0\n")
    unsat = tmp_path / "unsat.cnf"
    unsat.write_text("p cnf 1 2\n1 0\n-1 0\n")
    hook = tmp_path / "hook.txt"
    hook.write_text("vertices 3\n0 0/1 0/1\n1 1/1 0/1\n2 0/1 1/10\nedges 2\n0 1\n1 2\n")
    return tmp_path, sat, unsat, hook


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_find_verify_extract(files, capsys):
    tmp, sat, _, _ = files
    gamma, tree = tmp / "g.txt", tmp / "t.txt"
    assert run(capsys, "reduce", "--input", sat, "--output", gamma)[0] == 0
    assert run(capsys, "find-tree", "--input", gamma, "--output", tree)[0] == 0
    code, out, _ = run(capsys, "verify-tree", "--input", gamma, "--tree", tree)
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "extract", "--input", sat, "--tree", tree)
    assert code == 0 and out.startswith("v ")


def test_witness(files, capsys):
    tmp, sat, unsat, _ = files
    assert run(capsys, "witness", "--input", unsat)[0] == 1
    wit = tmp / "w.txt"
    assert run(capsys, "witness", "--input", sat, "--output", wit)[0] == 0
    gamma = tmp / "g.txt"
    run(capsys, "reduce", "--input", sat, "--output", gamma)
    assert run(capsys, "verify-tree", "--input", gamma, "--tree", wit)[0] == 0


def test_unsat_tree_and_budget(files, capsys):
    tmp, _, unsat, _ = files
    gamma = tmp / "g.txt"
    run(capsys, "reduce", "--input", unsat, "--output", gamma)
    assert run(capsys, "find-tree", "--input", gamma)[0] == 1
    assert run(capsys, "find-tree", "--input", gamma, "--budget", 3)[0] == 2


def test_paths(files, capsys):
    _, _, _, hook = files
    assert run(capsys, "verify-path", "--input", hook, "--path", "0,1")[0] == 0
    assert run(capsys, "verify-path", "--input", hook, "--path", "0 1 2")[0] == 1
    assert run(capsys, "find-path", "--input", hook, "--source", 0, "--target", 2)[0] == 1
    code, out, _ = run(capsys, "find-path", "--input", hook, "--source", 1, "--target", 2)
    assert (code, out) == (0, "1 2\n")
    assert run(capsys, "verify-path", "--input", hook, "--path", "0 2")[0] == 3
    assert run(capsys, "verify-tree", "--input", hook)[0] == 1


def test_gadget_path(files, capsys):
    tmp, sat, unsat, _ = files
    code, out, _ = run(capsys, "gadget-path", "--input", sat, "--drawing", tmp / "d.txt")
    report = json.loads(out)
    assert code == 0 and report["result"] == "path" and (tmp / "d.txt").exists()
    assert run(capsys, "gadget-path", "--input", unsat)[0] == 1


def test_roundtrip(capsys):
    code, out, _ = run(capsys, "roundtrip", "--alpha-max", 1, "--beta-max", 2)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 8
    assert json.loads(lines[-1])["summary"].startswith("7/7 agree")
    assert run(capsys, "roundtrip", "--alpha-max", 2, "--beta-max", 1, "--budget", 1)[0] == 2


def test_render(files, capsys):
    tmp, sat, _, hook = files
    gamma, svg = tmp / "g.txt", tmp / "g.svg"
    run(capsys, "reduce", "--input", sat, "--output", gamma)
    assert run(capsys, "render", "--input", gamma, "--output", svg, "--show-envelope")[0] == 0
    first = svg.read_text()
    assert 'class="envelope"' in first
    run(capsys, "render", "--input", gamma, "--output", svg, "--show-envelope")
    assert svg.read_text() == first
    assert run(capsys, "render", "--input", hook, "--show-envelope")[0] == 3


@pytest.mark.parametrize(
    "args",
    [
        ["render", "--input", "/nonexistent/file"],
        ["no-such-command"],
        ["find-path", "--input", "/dev/null", "--source", "0"],
    ],
)
def test_input_errors(args, capsys):
    assert run(capsys, *args)[0] == 3


def test_bad_dimacs(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 4 1\n1 2 3 4 0\n")
    assert run(capsys, "reduce", "--input", bad)[0] == 3


def test_internal_assertion_maps_to_4(files, capsys, monkeypatch):
    from icchord import cli
    from icchord.reduction import ConstructionError

    def broken(_):
        raise ConstructionError("forced")

    monkeypatch.setattr(cli, "build_gamma", broken)
    _, sat, _, _ = files
    assert run(capsys, "reduce", "--input", sat)[0] == 4


def test_help(capsys):
    assert run(capsys, "--help")[0] == 0
