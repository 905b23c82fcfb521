import json
import subprocess
import sys

import pytest

from wordlab import catalog_spec, generate
from wordlab.cli import RunConfig, main
from wordlab.errors import InvalidParameter
from wordlab.io import read_word_file

FIB34 = "0100101001001010010100100101001001"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--periodic", "12", "--len", "6")
    assert code == 0 and out.splitlines()[-1] == "121212"
    path = tmp_path / "fib.txt"
    code, out, _ = run(capsys, "gen", "--subst", "0:01,1:0", "--seed", "0", "--len", "34", "-o", str(path))
    assert code == 0 and "length=34" in out
    assert str(read_word_file(path)) == FIB34
    code, out, _ = run(capsys, "gen", "--rot-binary", "--alpha", "1/4", "--x", "0", "--len", "8")
    assert out.splitlines()[-1] == "00010001"


def test_gen_roundtrip_is_byte_exact(capsys, tmp_path):
    path = tmp_path / "rt.txt"
    run(capsys, "gen", "--catalog", "rotation-ternary", "--len", "5000", "-o", str(path))
    assert read_word_file(path) == generate(catalog_spec("rotation-ternary", 5000))
    first = path.read_bytes()
    run(capsys, "gen", "--catalog", "rotation-ternary", "--len", "5000", "-o", str(path))
    assert path.read_bytes() == first


def test_gen_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.txt"
    spec.write_text("type = rotation-binary\nalpha = 2 - phi\nx = 2 - phi\nlength = 34\n")
    code, out, _ = run(capsys, "gen", "--spec-file", str(spec))
    assert code == 0 and out.splitlines()[-1] == FIB34


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "--len", "5")[0] == 1
    assert run(capsys, "gen", "--subst", "0:1,1:01", "--seed", "0", "--len", "5")[0] == 2


def test_profile(capsys, tmp_path):
    path = tmp_path / "fib.txt"
    run(capsys, "gen", "--catalog", "fibonacci", "--len", "2000", "-o", str(path))
    code, out, _ = run(capsys, "profile", str(path), "--n-max", "10")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert code == 0 and len(rows) == 10
    assert all(int(r[1]) == int(r[0]) + 1 and r[2] == "2" for r in rows)
    p12 = tmp_path / "p12.txt"
    p12.write_text("#alphabet:12\n" + "12" * 20 + "\n")
    code, out, _ = run(capsys, "profile", str(p12), "--n-max", "4")
    assert [line.split(",")[2] for line in out.strip().splitlines()[1:]] == ["2", "1", "2", "1"]
    code, out, _ = run(capsys, "profile", str(p12), "--n-max", "4", "--format", "json")
    assert json.loads(out)["rows"][1]["abelian"] == 1


def test_profile_empty_file(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    assert run(capsys, "profile", str(path))[0] == 2


def test_relation(capsys):
    code, out, _ = run(capsys, "relation", "--freqs", "1/2,1/3,1/6", "--bound", "3")
    doc = json.loads(out)
    assert code == 0 and doc["coefficients"] == [1, -1, -1] and doc["certificate"]
    doc = json.loads(run(capsys, "relation", "--catalog", "rotation-ternary")[1])
    assert doc["coefficients"] is None


def test_induce_writes_sidecar(capsys, tmp_path):
    src, out = tmp_path / "t.txt", tmp_path / "ind.txt"
    run(capsys, "gen", "--catalog", "tribonacci", "--len", "10000", "-o", str(src))
    code, _, _ = run(capsys, "induce", str(src), "--ell", "2", "-o", str(out))
    side = json.loads((tmp_path / "ind.txt.json").read_text())
    assert code == 0 and side["block_length"] == 2
    assert side["classes"] == [[1, 0, 1], [1, 1, 0], [2, 0, 0]]
    assert side["matrix"] == [[1, 1, 2], [0, 1, 0], [1, 0, 0]]
    assert side["det_or_rank"]["rank"] == 3
    assert read_word_file(out).length == 5000


def test_decolor(capsys, tmp_path):
    src, out = tmp_path / "w.txt", tmp_path / "d.txt"
    src.write_text("123123\n")
    assert run(capsys, "decolor", str(src), "--keep", "2", "-o", str(out))[0] == 0
    assert str(read_word_file(out)) == "020020"
    assert run(capsys, "decolor", str(src), "--keep", "7")[0] == 2


def test_conflict(capsys):
    code, out, _ = run(capsys, "conflict", "--alpha", "1/2", "--beta", "1/2", "--x", "0", "--y", "1/2", "--n-max", "1000")
    doc = json.loads(out)
    assert code == 0 and doc["n_found"] is None and doc["hit_fraction"] == 0.0 and doc["box_area"] == 0.25
    assert run(capsys, "conflict", "--alpha", "0", "--beta", "1/2")[0] == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--max-length", "3", "--all-letters")
    doc = json.loads(out)
    assert code == 0 and doc["counts_by_length"]["3"] == 6 and "disclaimer" in doc
    assert run(capsys, "search", "--max-length", "12", "--node-budget", "50")[0] == 2


def test_verify(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "lemma16", "--word", "tribonacci", "--ell", "2", "-o", str(out))
    assert code == 0 and json.loads(out.read_text())["ok"]
    assert run(capsys, "verify", "bogus")[0] == 1


def test_verify_all_default_catalog(capsys):
    code, out, _ = run(capsys, "verify", "all")
    assert code == 0 and json.loads(out)["ok"]


def test_deterministic_output(capsys):
    a = run(capsys, "search", "--max-length", "8")[1]
    b = run(capsys, "search", "--max-length", "8")[1]
    assert a == b


def test_run_config_validation(monkeypatch):
    with pytest.raises(InvalidParameter):
        RunConfig(precision_digits=8)
    with pytest.raises(InvalidParameter):
        RunConfig(prefix_length=10, n_max=20)
    monkeypatch.setenv("WORDLAB_PRECISION", "40")
    assert RunConfig.from_env().precision_digits == 40


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wordlab", "gen", "--periodic", "12", "--len", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1] == "1212"
    proc = subprocess.run([sys.executable, "-m", "wordlab", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 1
