import pytest

from flatcomp.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main
from flatcomp.config import DEFAULT_DB_PATH, settings


@pytest.fixture
def t3_file(tmp_path, t3_text):
    path = tmp_path / "t3.txt"
    path.write_text(t3_text)
    return path


@pytest.fixture
def broken_file(tmp_path, broken_text):
    path = tmp_path / "broken.txt"
    path.write_text(broken_text)
    return path


def test_validate_ok(t3_file, capsys):
    assert main(["validate", str(t3_file)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "T3: ok (3 points over rplus)" in out
    assert "module M: ok" in out


def test_validate_reports_triangle(broken_file, capsys):
    assert main(["validate", str(broken_file)]) == EXIT_VIOLATION
    out = capsys.readouterr().out
    assert "BAD: 1 violation(s)" in out
    assert "- triangle (a,b,c)" in out


def test_missing_file(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.txt")]) == EXIT_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_parse_error_names_the_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("space S over rplus\npoints a\nd a z 1\n")
    assert main(["validate", str(path)]) == EXIT_INPUT
    assert "line 3" in capsys.readouterr().err


def test_complete_writes_files(t3_file, tmp_path):
    out, table, embedding = tmp_path / "c.txt", tmp_path / "table.tsv", tmp_path / "emb.tsv"
    argv = ["complete", str(t3_file), "--notion", "p1", "-o", str(out), "--table", str(table), "--embedding", str(embedding)]
    assert main(argv) == EXIT_OK
    text = out.read_text()
    assert text.splitlines()[:2] == ["space T3_p1 over rplus", "points {a} {b} {c} {a,b} {a,c} {b,c} {a,b,c}"]
    assert table.read_text().startswith("point\tgenerator\ta\tb\tc\n")
    assert embedding.read_text() == "a\t{a}\nb\t{b}\nc\t{c}\n"

    again = tmp_path / "again.txt"
    assert main(["complete", str(t3_file), "--notion", "p1", "-o", str(again)]) == EXIT_OK
    assert again.read_text() == text


def test_complete_to_stdout(t3_file, capsys):
    assert main(["complete", str(t3_file), "--notion", "p2"]) == EXIT_OK
    assert "points {a} {b} {c}\n" in capsys.readouterr().out


def test_complete_rejects_bool_notion(t3_file, capsys):
    assert main(["complete", str(t3_file), "--notion", "dmn"]) == EXIT_INPUT
    assert "needs a bool space" in capsys.readouterr().err


def test_complete_rejects_invalid_space(broken_file, capsys):
    assert main(["complete", str(broken_file), "--notion", "p1"]) == EXIT_INPUT
    assert "is not valid" in capsys.readouterr().err


def test_flat_table(t3_file, capsys):
    assert main(["flat", str(t3_file), "--module", "M", "--notion", "p2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "notion\tclosed_form\toracle\tchecked"
    assert lines[1].startswith("p2\tnot_flat\tnot_flat\t")
    assert lines[2].startswith("# p2: meet of")


def test_flat_all_notions(t3_file, capsys):
    assert main(["flat", str(t3_file), "--module", "M"]) == EXIT_OK
    rows = [line.split("\t")[:3] for line in capsys.readouterr().out.splitlines()[1:4]]
    assert rows == [["p1", "flat", "flat"], ["p2", "not_flat", "not_flat"], ["p0", "not_flat", "not_flat"]]


def test_flat_rejects_right_module(t3_file, capsys):
    assert main(["flat", str(t3_file), "--module", "R"]) == EXIT_INPUT
    assert "right module" in capsys.readouterr().err


def test_flat_budget(t3_file, capsys):
    assert main(["--budget", "3", "flat", str(t3_file), "--module", "M", "--notion", "p2"]) == EXIT_BUDGET
    assert "budget exceeded" in capsys.readouterr().err


def test_nonpositive_budget(t3_file):
    assert main(["--budget", "0", "validate", str(t3_file)]) == EXIT_INPUT


def test_dist(t3_file, capsys):
    assert main(["dist", str(t3_file), "{a,b}", "{b}"]) == EXIT_OK
    assert capsys.readouterr().out == "1\n"
    assert main(["dist", str(t3_file), "F", "N"]) == EXIT_OK
    assert capsys.readouterr().out == "1\n"


def test_dist_unknown_operand(t3_file, capsys):
    assert main(["dist", str(t3_file), "F", "G"]) == EXIT_INPUT
    assert "no filter or module named 'G'" in capsys.readouterr().err


def test_verify_with_mutation_then_history(ledger, capsys):
    argv = ["verify", "--max-points", "1", "--suite", "fac_r", "--mutate", "hom"]
    assert main(argv) == EXIT_VIOLATION
    out = capsys.readouterr().out
    assert out.startswith("suite\tchecked\tfailures\tstatus\n")
    assert "\tFAIL" in out

    assert main(["history"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id\ttimestamp\texit_status\tfailures\tparameters"
    assert len(lines) == 2
    assert lines[1].split("\t")[2] == "1"
    assert "mutations=hom" in lines[1]


def test_verify_passes_and_can_skip_the_ledger(ledger, capsys):
    argv = ["verify", "--max-points", "1", "--suite", "residuation", "--suite", "space_laws", "--no-record"]
    assert main(argv) == EXIT_OK
    assert "residuation\t" in capsys.readouterr().out
    assert main(["history"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[1:] == []


def test_verify_budget_exceeded(ledger, capsys):
    argv = ["--budget", "1", "verify", "--max-points", "1", "--suite", "flatness_oracle", "--no-record"]
    assert main(argv) == EXIT_BUDGET
    assert "\tskipped" in capsys.readouterr().out


def test_verify_rejects_large_catalog(ledger, capsys):
    assert main(["verify", "--max-points", "9", "--no-record"]) == EXIT_INPUT
    assert "max_points" in capsys.readouterr().err


def test_verify_help_names_the_ledger(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    out = capsys.readouterr().out
    assert "QC_DB_PATH" in out
    assert DEFAULT_DB_PATH in out


def test_verify_ledger_file_lands_in_the_working_directory(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(settings, "db_path", DEFAULT_DB_PATH)
    argv = ["verify", "--max-points", "1", "--suite", "residuation"]
    assert main([*argv, "--no-record"]) == EXIT_OK
    assert not (tmp_path / DEFAULT_DB_PATH).exists()
    assert main(argv) == EXIT_OK
    assert (tmp_path / DEFAULT_DB_PATH).exists()
