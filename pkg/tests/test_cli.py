import json

import pytest

from optbranch.cli import main

from paper_cases import TUTTE_EDGES


@pytest.fixture()
def files(tmp_path):
    tutte = tmp_path / "tutte.edgelist"
    tutte.write_text(
        "# tutte graph\n" + "".join(f"{u+1} {v+1}\n" for u, v in TUTTE_EDGES)
    )
    fig1 = tmp_path / "fig1.edgelist"
    fig1.write_text("1 5\n1 4\n2 5\n3 4\n4 5\n")
    empty10 = tmp_path / "empty10.edgelist"
    empty10.write_text("10\n")
    return {"tutte": str(tutte), "fig1": str(fig1), "empty10": str(empty10),
            "dir": tmp_path}


class TestSolve:
    def test_tutte(self, files, capsys):
        assert main(["solve", files["tutte"]]) == 0
        out = capsys.readouterr().out
        assert out.startswith("mis_size=19 branches=")

    def test_empty_ten(self, files, capsys):
        assert main(["solve", files["empty10"]]) == 0
        assert capsys.readouterr().out.strip() == "mis_size=10 branches=0"

    def test_json_fields(self, files, capsys):
        assert main(["solve", files["tutte"], "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["mis_size"] == 19
        assert set(payload) == {"mis_size", "branch_count", "time_ms"}

    def test_lp_flag(self, files, capsys):
        assert main(["solve", files["fig1"], "--lp", "--measure", "vc"]) == 0
        assert "mis_size=3" in capsys.readouterr().out

    def test_missing_file_is_input_error(self, capsys):
        assert main(["solve", "/nope.edgelist"]) == 2


class TestDiscover:
    def test_fig1_session(self, files, capsys):
        rc = main(["discover", files["fig1"], "--region", "a,b,c,d,e",
                   "--boundary", "a,b,c"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "candidate clauses (14)" in out
        assert "optimal_rule: (¬a ∧ ¬b ∧ c ∧ ¬d ∧ e) ∨ (a ∧ b ∧ c ∧ ¬d ∧ ¬e) ∨ (¬a ∧ ¬c ∧ d ∧ ¬e)" in out
        assert "branching_vector: [5, 5, 4]" in out
        assert "γ: 1.2671683045421243" in out

    def test_numeric_region_tokens(self, files, capsys):
        rc = main(["discover", files["fig1"], "--region", "1,2,3,4,5",
                   "--boundary", "1,2,3"])
        assert rc == 0
        assert "γ: 1.2671683045421243" in capsys.readouterr().out

    def test_bad_region_vertex(self, files, capsys):
        assert main(["discover", files["fig1"], "--region", "1,99"]) == 2


class TestBench:
    def test_small_run_writes_csv(self, files, capsys):
        out = str(files["dir"] / "report.csv")
        rc = main(["bench", "--gen", "3regular", "--sizes", "12:16:4",
                   "--trials", "2", "--seed", "5", "--out", out])
        assert rc == 0
        text = (files["dir"] / "report.csv").read_text()
        assert text.startswith("n,trial,seed,mis,branches,time_ms\n")
        assert "# fitted_gamma," in text
        stdout = capsys.readouterr().out
        assert "fitted_gamma=" in stdout

    def test_comma_sizes(self, files, capsys):
        out = str(files["dir"] / "r2.csv")
        rc = main(["bench", "--gen", "grid", "--sizes", "9,12", "--trials", "1",
                   "--seed", "1", "--out", out])
        assert rc == 0

    def test_bad_sizes_spec(self, files):
        assert main(["bench", "--gen", "grid", "--sizes", "10:5:1",
                     "--trials", "1", "--out", "x.csv"]) == 2


class TestExitCodes:
    def test_unknown_flag_exits_two(self, files):
        assert main(["solve", files["fig1"], "--bogus"]) == 2

    def test_unknown_command_exits_two(self):
        assert main(["frobnicate"]) == 2

    def test_self_loop_file_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.edgelist"
        bad.write_text("1 1\n")
        assert main(["solve", str(bad)]) == 2
        assert "error" in capsys.readouterr().err
