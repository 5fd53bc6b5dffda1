import json
import subprocess
import sys

import pytest

from circrank.cli import main
from circrank.graph import read_pairwise_csv, write_pairwise_csv
from circrank.instances import eight_node_conflict_example, four_node_example


@pytest.fixture
def four_csv(tmp_path):
    p = tmp_path / "four.csv"
    p.write_text(write_pairwise_csv(four_node_example()))
    return str(p)


@pytest.fixture
def eight_csv(tmp_path):
    p = tmp_path / "eight.csv"
    p.write_text(write_pairwise_csv(eight_node_conflict_example()))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_aggregate_json(capsys, four_csv):
    code, out, _ = run(capsys, "aggregate", four_csv)
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == [["1", "2"], ["1", "3"], ["1", "4"], ["2", "3"], ["4", "3"]]
    assert doc["value"] == "3/1"
    assert doc["certificate"]["verdict"] == "pass"


def test_aggregate_algorithm1(capsys, four_csv):
    code, out, _ = run(capsys, "aggregate", four_csv, "--method", "algorithm1")
    doc = json.loads(out)
    assert code == 0 and "certificate" not in doc
    assert doc["circulation"]["1->2"] == "1/2"


def test_empty_input(capsys, tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    code, out, _ = run(capsys, "aggregate", str(p))
    assert code == 0 and json.loads(out)["order"] == []


def test_compare(capsys, eight_csv):
    code, out, _ = run(capsys, "compare", eight_csv)
    assert code == 0
    doc = json.loads(out)
    assert doc["minmax"]["conflict"]["pair"] == ["1", "3"]
    assert doc["minmax"]["weight"] == "6/1"
    assert doc["strong"]["conflicts"] == []
    assert doc["strong"]["order"] == [["2", "3"], ["2", "5"], ["4", "1"], ["4", "7"], ["6", "1"], ["6", "5"],
                                      ["8", "3"], ["8", "7"]]


def test_kemeny_json_shape(capsys, four_csv):
    code, out, _ = run(capsys, "kemeny", four_csv)
    doc = json.loads(out)
    assert code == 0
    assert doc["kemeny"]["weight"] == "1/1"
    assert ["1", "2", "4", "3"] in doc["kemeny"]["orders"]
    assert doc["relax_kem"]["objective"] == "3/1"
    assert set(doc["relax_kem"]["scores"]) == {"1", "2", "3", "4"}


def test_relax_kem_method(capsys, four_csv):
    code, out, _ = run(capsys, "aggregate", four_csv, "--method", "relax-kem")
    assert code == 0 and list(json.loads(out)) == ["relax_kem"]


def test_minmax(capsys, eight_csv):
    code, out, _ = run(capsys, "minmax", eight_csv)
    doc = json.loads(out)["minmax"]
    assert code == 0 and doc["weight"] == "6/1" and len(doc["circulations"]) == 2
    assert doc["conflicts"]


def test_oracle_only_appends(capsys, four_csv):
    _, plain, _ = run(capsys, "aggregate", four_csv)
    code, checked, _ = run(capsys, "aggregate", four_csv, "--oracle")
    assert code == 0
    doc = json.loads(checked)
    assert doc.pop("oracle")["status"] == "agree"
    assert doc == json.loads(plain)
    for fmt in ("text", "dot"):
        _, a, _ = run(capsys, "aggregate", four_csv, "--to", fmt)
        _, b, _ = run(capsys, "aggregate", four_csv, "--to", fmt, "--oracle")
        assert b.startswith(a) and len(b) > len(a)


def test_deterministic(capsys, eight_csv):
    outs = {run(capsys, "compare", eight_csv, "--to", fmt)[1] for fmt in ("json",) for _ in range(3)}
    assert len(outs) == 1


def test_dot(capsys, four_csv):
    code, out, _ = run(capsys, "aggregate", four_csv, "--to", "dot")
    assert code == 0 and out.startswith("digraph")
    assert '"1" -> "3" [style=dashed];' in out


def test_text(capsys, four_csv):
    code, out, _ = run(capsys, "aggregate", four_csv, "--to", "text")
    assert code == 0 and "order: 1>2, 1>3, 1>4, 2>3, 4>3" in out


def test_ballots(capsys, tmp_path):
    p = tmp_path / "b.txt"
    p.write_text("3: A > B > C\n2: C > A\n")
    code, out, _ = run(capsys, "aggregate", str(p), "--format", "ballots")
    assert code == 0 and json.loads(out)["order"] == [["A", "B"], ["A", "C"], ["B", "C"]]


def test_output_file(capsys, four_csv, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "aggregate", four_csv, "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["value"] == "3/1"


class TestExitCodes:
    def test_parse_error(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("from,to,count\n1,1,1\n")
        code, _, err = run(capsys, "aggregate", str(p))
        assert code == 1 and "self-loop" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "aggregate", str(tmp_path / "nope.csv"))[0] == 1

    def test_bad_flag(self, capsys, four_csv):
        assert run(capsys, "aggregate", four_csv, "--method", "borda")[0] == 1

    def test_kemeny_too_large(self, capsys, tmp_path):
        p = tmp_path / "big.csv"
        p.write_text("from,to,count\n" + "".join(f"{i},{i + 1},1\n" for i in range(10)))
        code, out, err = run(capsys, "kemeny", str(p))
        assert code == 2 and out == "" and "max-n" in err
        assert run(capsys, "kemeny", str(p), "--max-n", "11")[0] == 0

    def test_minmax_budget(self, capsys, eight_csv):
        assert run(capsys, "minmax", eight_csv, "--limit", "10")[0] == 2

    def test_minmax_rational(self, capsys, tmp_path):
        p = tmp_path / "r.csv"
        p.write_text("from,to,count\n1,2,1/2\n2,1,1\n")
        assert run(capsys, "minmax", str(p))[0] == 2

    def test_certificate_failure(self, capsys, four_csv, monkeypatch):
        import circrank.cli as cli
        from circrank.strong import Certificate

        def broken(g, x, y):
            a = g.arcs[0]
            return Certificate(g, x, tuple(y), {}, False, (a, 3))

        monkeypatch.setattr(cli, "check_strong_cs", broken)
        code, _, err = run(capsys, "aggregate", four_csv)
        assert code == 3 and "condition 3" in err


class TestReduceFas:
    def test_one_arc(self, capsys, tmp_path):
        p = tmp_path / "fas.txt"
        p.write_text("a b\nK 1\n")
        code, out, _ = run(capsys, "reduce-fas", str(p))
        assert code == 0
        assert out.splitlines()[0] == "# K' = 4"
        g = read_pairwise_csv(out)
        assert g.m == 6 and g.n == 6

    def test_k_zero(self, capsys, tmp_path):
        p = tmp_path / "fas.txt"
        p.write_text("a b\nb a\nK 0\n")
        _, out, _ = run(capsys, "reduce-fas", str(p))
        assert "t,s" not in out and "# K' = 0" in out

    def test_two_cycle_then_minmax(self, capsys, tmp_path):
        p = tmp_path / "fas.txt"
        p.write_text("a b\nb a\nK 1\n")
        red = tmp_path / "red.csv"
        assert run(capsys, "reduce-fas", str(p), "-o", str(red))[0] == 0
        code, out, _ = run(capsys, "minmax", str(red), "--limit", "100000")
        assert code == 0 and json.loads(out)["minmax"]["weight"] == "4/1"

    def test_bad_file(self, capsys, tmp_path):
        p = tmp_path / "fas.txt"
        p.write_text("a b\n")
        assert run(capsys, "reduce-fas", str(p))[0] == 1


def test_rand_seeded(capsys):
    _, a, _ = run(capsys, "rand", "--seed", "5", "--index", "2")
    _, b, _ = run(capsys, "rand", "--seed", "5", "--index", "2")
    _, c, _ = run(capsys, "rand", "--seed", "6", "--index", "2")
    assert a == b and a != c
    assert a.startswith("# seed=5 index=2")


def test_module_entry_point(four_csv):
    proc = subprocess.run([sys.executable, "-m", "circrank.cli", "aggregate", four_csv, "--to", "text"],
                          capture_output=True, text=True, env={"CIRCRANK_LOG": "debug", "PATH": ""})
    assert proc.returncode == 0
    assert "loaded 4 alternatives" in proc.stderr
