import json

import pytest

from prympair import coverspec
from prympair.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_family_a(capsys):
    code, out, _ = run(capsys, "analyze", "bundled:family_a", "--format", "machine")
    assert code == 0
    r = json.loads(out)
    assert r["schema"] == "prympair.analyze/1"
    assert r["genus"] == {"X": 12, "X1": 4, "X2": 4}
    assert r["prym_type"] == [6, 6, 6, 6]
    assert r["family"] == "A" and r["seshadri_bound"] == "2"
    assert r["kernels"]["K(L)"]["invariants"] == [2] * 8
    assert r["kernel_splitting"] and r["exponent_endomorphism"]["ok"]


def test_analyze_family_b(capsys):
    code, out, _ = run(capsys, "analyze", "bundled:family_b", "--format", "machine")
    assert code == 0
    r = json.loads(out)
    assert r["genus"] == {"X": 16, "X1": 5, "X2": 6}
    assert r["prym_type"] == [6] * 5
    assert r["regime"] == "etale" and r["family"] == "B"
    assert r["seshadri_bound"] == "16/7"
    assert r["composed"]["order"] == 6 and r["composed"]["galois"] and not r["composed"]["abelian"]


def test_analyze_human(capsys):
    code, out, _ = run(capsys, "analyze", "bundled:family_b")
    assert code == 0 and "(6, 6, 6, 6, 6)" in out


@pytest.mark.parametrize(
    "text, code, fragment",
    [
        ("x\n", 2, "line 1, column 1"),
        ("[g1]\ndegree = 2\na = (1 2)\nb = (1 2)\n[g2]\ndegree = 2\na = (1 2)\nb = (1 2)\n", 4, "inconsistent input"),
    ],
)
def test_analyze_bad_input(capsys, tmp_path, text, code, fragment):
    f = tmp_path / "bad.cover"
    f.write_text(text)
    got, _, err = run(capsys, "analyze", str(f))
    assert got == code and fragment in err


def test_analyze_missing_file(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "nope.cover"))[0] == 2
    assert run(capsys, "analyze", "bundled:family_z")[0] == 2


def test_usage_errors_return_two(capsys):
    assert main(["search", "3", "2"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_classify_machine(capsys):
    code, out, _ = run(capsys, "classify", "--max-d", "6", "--max-r", "12", "--min-dim", "5", "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "prympair.classify/1"
    fams = sorted((row["family"], row["r1"]) for row in doc["rows"])
    assert fams == sorted([("A", r) for r in range(7, 13)] + [("B", r) for r in range(7, 13)])


def test_classify_case_bounds_human(capsys):
    code, out, _ = run(capsys, "classify", "--max-d", "8", "--max-r", "20", "--case-bounds", "--delimiter", ",")
    assert code == 0
    assert out.splitlines()[0].startswith("d1,d2,r1")
    assert "VIOLATED" not in out and "ramified:d2=3" in out


def test_search_then_analyze(capsys, tmp_path):
    out_file = tmp_path / "w.cover"
    code, _, _ = run(capsys, "search", "3", "2", "7", "7", "7", "0", "-o", str(out_file))
    assert code == 0
    g1, g2 = coverspec.load(out_file)
    assert (g1.degree, g2.degree) == (3, 2)
    code, out, _ = run(capsys, "analyze", str(out_file), "--format", "machine")
    r = json.loads(out)
    assert code == 0 and r["family"] == "B" and r["dim_p"] == 5


def test_search_failures(capsys):
    code, out, _ = run(capsys, "search", "3", "2", "2", "1", "1", "2", "--regime", "etale", "--format", "machine")
    assert code == 3 and json.loads(out)["exhausted"]
    code, _, err = run(capsys, "search", "3", "2", "6", "5", "5", "3")
    assert code == 4 and "inconsistent" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["schema"] == "prympair.verify/1"
    assert all(p["ok"] for p in doc["properties"])
