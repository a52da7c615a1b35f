import io
import subprocess
import sys

import pytest

from symideal.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_phi():
    assert call("phi", "E10") == (0, "x1+x2+x3\n", "")


def test_sym_fixed_point():
    assert call("sym", "L") == (0, "L\n", "")


def test_sym_average():
    code, out, _ = call("sym", "x1")
    assert out == "1/3*x1+1/3*x2+1/3*x3\n"


def test_eform():
    assert call("eform", "x1*d1+x2*d2+x3*d3", "--no-cache") == (0, "-E11+E10*E01\n", "")


def test_eform_rejects_non_invariant():
    code, _, err = call("eform", "x1", "--no-cache")
    assert code == 2
    assert "not multisymmetric" in err


def test_parse_error_reports_position():
    code, out, err = call("phi", "E10+")
    assert code == 2 and out == ""
    assert "position 4" in err


def test_unknown_variable():
    code, _, err = call("phi", "E10+z")
    assert code == 2
    assert "position 4" in err


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("verify", "nonsense")[0] == 2
    assert call("phi", "E10", "--format", "yaml")[0] == 2
    assert call("phi", "E10", "--out", "/no/such/dir/x.txt")[0] == 2


def test_missing_file():
    code, _, err = call("gb", "/no/such/file.txt")
    assert code == 2
    assert "file not found" in err


@pytest.fixture
def system_file(tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("# twisted cubic\nx-t\ny-t^2\nz-t^3\n")
    return f


def test_gb_eliminate_reduce(system_file, tmp_path):
    common = ("--vars", "t,z,y,x", "--cache", str(tmp_path / "cache"))
    code, out, _ = call("gb", str(system_file), *common)
    assert code == 0
    assert out.splitlines() == ["t-x", "z-x^3", "y-x^2"]
    code, out, _ = call("eliminate", "1", str(system_file), *common)
    assert out.splitlines() == ["z-x^3", "y-x^2"]
    assert call("reduce", "t^4", str(system_file), *common)[1] == "x^4\n"
    assert call("eliminate", "9", str(system_file), *common)[0] == 2


def test_auto_ring_detection(tmp_path):
    f = tmp_path / "e.txt"
    f.write_text("E10^2-E20\nE01-L\n")
    code, out, _ = call("gb", str(f), "--no-cache")
    assert code == 0
    assert out.splitlines() == ["E20-E10^2", "E01-L"]


def test_out_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert call("verify", "relations", "--out", str(a))[0] == 0
    assert call("verify", "relations", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert "sec5/eq5.7/f01 pass-with-corrections" in a.read_text()


def test_records_format():
    code, out, _ = call("verify", "phi-kernel", "--format", "records")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t")[:2] == ["thm2.2/phi-kernel/control-E10", "pass"]
    assert all(len(ln.split("\t")) == 3 for ln in lines)


def test_verify_kernel(tmp_path):
    code, out, _ = call("verify", "kernel", "--cache", str(tmp_path))
    assert code == 0
    assert "thm2.2/ideal-eq pass" in out
    # warm cache gives byte-identical output
    code2, out2, _ = call("verify", "kernel", "--cache", str(tmp_path))
    assert (code2, out2) == (code, out)


def test_catalog_lists_entries():
    code, out, _ = call("catalog", "--format", "records")
    assert code == 0
    assert "p0\tx1^2+x2^2+x3^2-L^2" in out.splitlines()
    assert "e[1,0]\tx1+x2+x3" in out.splitlines()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symideal.cli", "phi", "E01"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "d1+d2+d3\n"
