from __future__ import annotations

import io
import subprocess
import sys

import pytest

from corpus import BY_NAME
from pseudosolvable.cli import main
from pseudosolvable.graph import format_graph


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def graph_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.graph"
        path.write_text(format_graph(BY_NAME[name].gamma))
        return str(path)

    return write


def test_classify_realizable(graph_file):
    code, out = run("classify", graph_file("catp35_fig3_only"))
    assert code == 0
    assert out.startswith("Realizable CatP35\n") and "heads fig3" in out


def test_classify_not_three_colorable(graph_file):
    code, out = run("classify", graph_file("unreal_k4"))
    assert code == 1
    assert out == "Unrealizable: complement not 3-colorable\n"


def test_classify_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("v a\ne a b\n")
    assert run("classify", str(bad))[0] == 2
    assert "line 2" in capsys.readouterr().err
    assert run("classify", str(tmp_path / "missing.graph"))[0] == 2


def test_construct_and_materialize(graph_file):
    code, out = run("construct", graph_file("cat235_with_scaffold"), "--materialize")
    assert code == 0
    assert out.startswith("head A5\n")
    assert "witness prime graph equals input" in out


def test_construct_unrealizable(graph_file):
    code, out = run("construct", graph_file("unreal_f4b"))
    assert code == 1 and out.startswith("Unrealizable:")


def test_primegraph_of_a_group_file(tmp_path):
    path = tmp_path / "sl25.mat"
    path.write_text("mat 2 mod 5\n1 1\n0 1\n\n0 4\n1 0\n")
    code, out = run("primegraph", str(path))
    assert code == 0
    assert out == "v 2\nv 3\nv 5\ne 2 3\ne 2 5\n"


def test_primegraph_bad_group_file(tmp_path):
    path = tmp_path / "bad.perm"
    path.write_text("perm 3\n(1 7)\n")
    assert run("primegraph", str(path))[0] == 2


def test_tables_check():
    code, out = run("tables", "--check")
    assert code == 0
    assert out.rstrip().endswith("0 mismatches")


def test_roundtrip_exit_codes(graph_file):
    code, out = run("roundtrip", graph_file("catp35_fig2_only"))
    assert code == 0 and "PASS compare" in out
    code, out = run("roundtrip", graph_file("unreal_f2b_with_f3c"))
    assert code == 1 and out.startswith("PASS classify: Unrealizable")


def test_verify_rep():
    code, out = run("verify-rep", "gamma3")
    assert code == 0 and "MISMATCH" not in out
    assert run("verify-rep", "rho2", "--modulus", "7")[0] == 1


def test_verify_rep_unknown_name():
    assert run("verify-rep", "rho5")[0] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_module_entry_point(graph_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pseudosolvable", "classify", graph_file("cat235_bare_triangle")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("Realizable Cat235")
