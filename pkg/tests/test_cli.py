import json

import pytest

from cdcodes import codefile
from cdcodes.cli import main
from cdcodes.constructions import lifted_mrd, theorem2
from cdcodes.matrix import rref


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_codefile_round_trip():
    mats = list(lifted_mrd(3, 4, 2, 1).members(limit=20))
    text = codefile.render(3, 4, 2, mats)
    q, n, k, back = codefile.parse(text)
    assert (q, n, k, len(back)) == (3, 4, 2, 20)
    assert back == [rref(M) for M in mats]
    assert text.splitlines()[0] == "3 4 2 20"


def test_codefile_rejects_bad_input():
    with pytest.raises(codefile.CodeFileError):
        codefile.parse("")
    with pytest.raises(codefile.CodeFileError):
        codefile.parse("2 3 1 1\n\n0 1 2\n")
    with pytest.raises(codefile.CodeFileError):
        codefile.parse("2 3 1 2\n\n0 1 1\n")


def test_codefile_bilateral_members_are_reduced():
    mats = list(theorem2(2, 2).members(limit=3))
    _, _, _, back = codefile.parse(codefile.render(2, 12, 6, mats))
    assert back == [rref(M) for M in mats]


def test_bound_values(capsys):
    assert run(capsys, "bound", "--which", "corollary2", "--q", "2")[1].strip() == "9271545225290474496"
    assert run(capsys, "bound", "--which", "gaussian", "--q", "2", "--n", "4", "--k", "2")[1].strip() == "35"
    assert run(capsys, "bound", "--which", "corollary4", "--q", "3", "--old")[1].strip() == "984822786754900790910"
    code, out, _ = run(capsys, "bound", "--which", "upper-lemma1", "--q", "2", "--n", "8", "--k", "3", "--delta", "3")
    assert code == 0 and out.strip() == "33"


def test_bound_ratio(capsys):
    code, out, _ = run(capsys, "bound", "--which", "ratio", "--q", "3")
    assert code == 0
    assert "decimal = 0.999957" in out
    assert "singleton" in out


def test_bound_usage_errors(capsys):
    assert run(capsys, "bound", "--which", "nope", "--q", "2")[0] == 2
    assert run(capsys, "bound", "--which", "gaussian", "--q", "2")[0] == 2
    assert run(capsys, "bound", "--which", "upper-lemma1", "--q", "2", "--n", "20", "--k", "8", "--delta", "2")[0] == 2
    assert run(capsys)[0] == 2


def test_table1_exit_codes(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 1  # five printed cells disagree with their own columns
    assert "mismatch" in out
    code, out, _ = run(capsys, "table1", "--q", "3", "4")
    assert code == 0
    code, out, _ = run(capsys, "table1", "--q")
    assert code == 0 and out.strip() == "q n d k new old diff status"
    code, out, _ = run(capsys, "table1", "--q", "3", "--row", "17,6,6", "--json")
    rows = json.loads(out)
    assert len(rows) == 1 and rows[0]["new"] == "984822786754906111880"


def test_construct_and_verify(tmp_path, capsys):
    f = tmp_path / "lmrd.txt"
    code, out, _ = run(capsys, "construct", "--construction", "lifted-mrd", "--q", "2", "--n", "6", "--k", "3",
                       "--delta", "2", "--out", str(f))
    assert code == 0 and "formula size: 64" in out and "written: 64" in out
    q, n, k, mats = codefile.parse(f.read_text())
    assert len(mats) == 64
    code, out, _ = run(capsys, "verify", "--in", str(f), "--distance", "4")
    assert code == 0 and "PASS" in out

    lines = f.read_text().splitlines()
    lines[3] = "0 0 0 0 0 0"  # zero one row of the first block
    g = tmp_path / "bad.txt"
    g.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--in", str(g), "--distance", "4")
    assert code == 1 and "FAIL" in out


def test_construct_limit(tmp_path, capsys):
    f = tmp_path / "t2.txt"
    code, out, _ = run(capsys, "construct", "--construction", "theorem2", "--q", "2", "--out", str(f), "--limit", "10")
    assert code == 0
    assert "formula size: 9271545225290474496" in out and "written: 10" in out
    assert f.read_text().splitlines()[0] == "2 18 9 10"
    again = tmp_path / "t2b.txt"
    run(capsys, "construct", "--construction", "theorem2", "--q", "2", "--out", str(again), "--limit", "10")
    assert again.read_text() == f.read_text()


def test_construct_budget_refusal(tmp_path, capsys):
    code, _, err = run(capsys, "construct", "--construction", "theorem2", "--q", "2", "--out", str(tmp_path / "x"))
    assert code == 2 and "refused" in err


def test_verify_inline_sampled(capsys):
    args = ("verify", "--construction", "parallel", "--q", "2", "--n", "6", "--k", "3", "--delta", "2",
            "--mode", "sampled", "--seed", "3", "--samples", "200", "--json")
    code, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert code == 0 and out1 == out2
    assert json.loads(out1)["pairs_checked"] == 200


def test_verify_usage(tmp_path, capsys):
    assert run(capsys, "verify", "--distance", "4")[0] == 2
    assert run(capsys, "verify", "--construction", "parallel")[0] == 2
    f = tmp_path / "f.txt"
    f.write_text("2 4 2 0\n")
    assert run(capsys, "verify", "--in", str(f), "--mode", "sampled", "--distance", "2")[0] == 2
