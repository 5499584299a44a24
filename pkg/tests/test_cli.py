import subprocess
import sys
from pathlib import Path

from rchull.cli import main
from rchull.io import read_polygon, read_trace
from rchull.engine import replay_trace
from rchull.polygon import make_region_pair

DATA = Path(__file__).parent / "data"
A = str(DATA / "demo_A.poly")
B = str(DATA / "demo_B.poly")


def test_rch_validate_oracle(tmp_path, capsys):
    out, trace, svg = tmp_path / "o.poly", tmp_path / "t.txt", tmp_path / "f.svg"
    code = main(["rch", "--inner", A, "--outer", B, "--out", str(out), "--trace", str(trace),
                 "--svg", str(svg), "--validate", "--oracle", "--oracle-cap", "40"])
    text = capsys.readouterr().out
    assert code == 0
    assert "RESULT PASS" in text and "oracle_vertex_set PASS" in text
    pair = make_region_pair(read_polygon(A), read_polygon(B))
    assert replay_trace(read_trace(trace.read_text()), pair) == list(read_polygon(out).vertices)
    assert svg.read_text().startswith("<?xml")


def test_rch_is_deterministic(tmp_path):
    blobs = []
    for k in range(2):
        out, trace = tmp_path / f"o{k}", tmp_path / f"t{k}"
        assert main(["rch", "--inner", A, "--outer", B, "--out", str(out),
                     "--trace", str(trace)]) == 0
        blobs.append((out.read_bytes(), trace.read_bytes()))
    assert blobs[0] == blobs[1]


def test_rch_stdout(capsys):
    assert main(["rch", "--inner", A, "--outer", B]) == 0
    assert capsys.readouterr().out.startswith("POLY 18\n")


def test_not_nested_is_input_error(tmp_path, capsys):
    far = tmp_path / "far.poly"
    far.write_text("POLY 3\n100 100\n100 101\n101 100\n")
    assert main(["rch", "--inner", str(far), "--outer", B]) == 2
    assert "not contained" in capsys.readouterr().err


def test_bad_file_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.poly"
    bad.write_text("POLY 4\n0 0\n1 0\n1 1\n")
    assert main(["rch", "--inner", str(bad), "--outer", B]) == 2
    assert "line 5" in capsys.readouterr().err
    assert main(["rch", "--inner", str(tmp_path / "missing"), "--outer", B]) == 2
    assert main(["rch"]) == 2


def test_touching_flag(tmp_path):
    outer = tmp_path / "o.poly"
    inner = tmp_path / "i.poly"
    outer.write_text("POLY 4\n0 0\n0 10\n10 10\n10 0\n")
    inner.write_text("POLY 3\n0 2\n2 4\n4 2\n")
    assert main(["rch", "--inner", str(inner), "--outer", str(outer)]) == 2
    assert main(["rch", "--inner", str(inner), "--outer", str(outer), "--touching"]) == 0


def test_validation_failure_exit_code(tmp_path, monkeypatch):
    import rchull.cli as cli
    from rchull.polygon import Polygon

    real = cli.compute

    def broken(pair):
        res = real(pair)
        res.polygon = Polygon(tuple(pair.inner.vertices))
        return res

    monkeypatch.setattr(cli, "compute", broken)
    assert main(["rch", "--inner", A, "--outer", B, "--validate"]) == 1


def test_guard_exit_code(monkeypatch):
    import rchull.cli as cli
    from rchull.engine import NonTerminationError

    def stuck(pair):
        raise NonTerminationError("stuck")

    monkeypatch.setattr(cli, "compute", stuck)
    assert main(["rch", "--inner", A, "--outer", B]) == 3


def test_gen(tmp_path, capsys):
    prefix = tmp_path / "sub" / "pair"
    assert main(["gen", "--family", "GridContinuum", "--seed", "3", "--inner-n", "9",
                 "--outer-m", "4", "--out-prefix", str(prefix)]) == 0
    a = read_polygon(f"{prefix}_A.poly")
    b = read_polygon(f"{prefix}_B.poly")
    make_region_pair(a, b)
    assert main(["gen", "--family", "Bogus", "--seed", "3", "--inner-n", "9",
                 "--outer-m", "4", "--out-prefix", str(prefix)]) == 2


def test_fuzz_small(capsys):
    assert main(["fuzz", "--count", "40", "--seed", "7", "--oracle-cap", "12"]) == 0
    assert "failures=0 guard=0" in capsys.readouterr().out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rchull", "rch", "--inner", A, "--outer", B],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("POLY")
