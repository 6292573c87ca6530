import json
import shutil
import subprocess
import sys
from collections import Counter

import pytest

from treetrop.cli import main
from treetrop.dissim import d_weighted, vector_from_json
from treetrop.tree import parse_newick
from treetrop.verify import DATA_DIR, load_golden

E1_SPLIT_METRIC = "((1:0,2:0):0,(3:0,4:0):0,((5:0,6:0):0,7:0):1);"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return _write


def test_dissim_star(capsys, write):
    p = write("star.nwk", "(1:1,2:1,3:1,4:1);")
    code, out, _ = run(capsys, "dissim", p, 3, "--kind", "weighted")
    assert code == 0
    assert set(json.loads(out)["entries"].values()) == {"6"}


def test_dissim_new_edge_row(capsys, write):
    p = write("e1.nwk", E1_SPLIT_METRIC)
    code, out, _ = run(capsys, "dissim", p, 4, "--kind", "classic")
    row = vector_from_json(out).values
    assert code == 0
    assert Counter(load_golden("classic").rows)[row] == 1
    assert row.count(0) == 1


def test_dissim_errors(capsys, write):
    p = write("star.nwk", "(1:1,2:1,3:1,4:1);")
    code, _, err = run(capsys, "dissim", p, 5)
    assert code == 2 and "error" in err
    bad = write("bad.nwk", "((1,2),3")
    assert run(capsys, "dissim", bad, 2)[0] == 2
    assert run(capsys, "dissim", p.with_name("missing.nwk"), 2)[0] == 2


def test_dissim_d2_and_output_file(capsys, write, tmp_path):
    p = write("q.nwk", "((1:1,2:1):1,3:1,4:1);")
    out = tmp_path / "v.json"
    assert run(capsys, "dissim", p, 2, "--kind", "d2", "-o", out)[0] == 0
    assert json.loads(out.read_text())["entries"]["1,2"] == "2"


def test_check_and_recover(capsys, write, tmp_path):
    t = parse_newick("((1:1,2:2):3,(3:1,4:1):1,(5:2,6:1/2):1,7:4);")
    vec = write("v.json", d_weighted(t, 4).to_json())
    code, out, _ = run(capsys, "check", vec)
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    tree_out = tmp_path / "out.nwk"
    code, out, _ = run(capsys, "recover", vec, tree_out, "--all-A")
    assert code == 0
    assert parse_newick(tree_out.read_text()).same_tree(t)
    assert json.loads(out)["mode"]["four_point"] == "all_A"


def test_check_failure_exit_1(capsys, write, tmp_path):
    w = d_weighted(parse_newick("((1:1,2:2):3,(3:1,4:1):1,(5:2,6:1/2):1,7:4);"), 4)
    vec = write("v.json", w.replace((1, 2, 3, 4), 100).to_json())
    code, out, _ = run(capsys, "check", vec)
    data = json.loads(out)
    assert code == 1 and data["verdict"] == "fail" and data["cube_violations"]
    assert run(capsys, "recover", vec, tmp_path / "t.nwk")[0] == 1
    assert not (tmp_path / "t.nwk").exists()


def test_check_decimals(capsys, write):
    vec = write("f.json", '{"n":4,"r":2,"entries":{"1,2":1.5,"1,3":2.5,"1,4":2.5,"2,3":2.5,"2,4":2.5,"3,4":1.5}}')
    code, _, err = run(capsys, "check", vec)
    assert code == 2 and "promotion" in err
    code, out, _ = run(capsys, "check", vec, "--promote-decimals")
    assert code == 0
    tree = parse_newick(json.loads(out)["witness_tree"])
    assert tree.same_tree(parse_newick("((1:3/4,2:3/4):1,3:3/4,4:3/4);"))


def test_check_range_error(capsys, write):
    vec = write("v.json", '{"n":4,"r":3,"entries":{"1,2,3":1,"1,2,4":1,"1,3,4":1,"2,3,4":1}}')
    assert run(capsys, "check", vec)[0] == 2


def test_paper_verify(capsys):
    code, out, _ = run(capsys, "paper-verify", "--json")
    report = json.loads(out)
    assert code == 0 and report["status"] == "ok"
    assert [c["status"] for c in report["checks"]] == ["ok"] * 6
    code, out, _ = run(capsys, "paper-verify")
    assert code == 0 and out.count("ok") >= 6


def test_paper_verify_tampered(capsys, tmp_path):
    for f in DATA_DIR.glob("*.txt"):
        shutil.copy(f, tmp_path / f.name)
    path = tmp_path / "weighted_7_4.txt"
    lines = path.read_text().splitlines()
    first = lines[0].split()
    first[0] = str(int(first[0]) + 1)
    lines[0] = " ".join(first)
    path.write_text("\n".join(lines) + "\n")
    code, out, err = run(capsys, "paper-verify", "--json", "--golden-dir", tmp_path)
    report = json.loads(out)
    assert code == 1
    assert "weighted_matrix" in report["failed"]
    assert "classic_matrix" not in report["failed"]
    assert "weighted_matrix" in err


def test_audit(capsys):
    code, out, err = run(capsys, "audit", 5, 2)
    assert code == 0 and len(json.loads(out)) == 10
    code, out, _ = run(capsys, "audit", 6, 4, "--kind", "classic", "--assert-balanced")
    assert code == 1
    assert sum(not r["dependent_mod_base"] for r in json.loads(out)) == 60
    assert run(capsys, "audit", 9, 4)[0] == 2


def test_algebra(capsys):
    code, out, _ = run(capsys, "algebra", "--trials", 2, "--n", 6, "--r", 3, "--seed", 5)
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["seed"] == 5
    assert run(capsys, "algebra", "--n", 6, "--r", 4)[0] == 2


def test_cubes(capsys):
    code, out, _ = run(capsys, "cubes")
    assert code == 0 and len(out.splitlines()) == 15
    assert out.splitlines()[0] == " 0  B: 123 145 246 356  W: 124 135 236 456"
    code, out, _ = run(capsys, "cubes", "--json")
    assert len(json.loads(out)) == 15


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys, write):
    p = write("t.nwk", "((1:1,2:2):3,(3:1,4:1):1,(5:2,6:1/2):1,7:4);")
    first = run(capsys, "dissim", p, 3)[1]
    assert run(capsys, "dissim", p, 3)[1] == first
    a = run(capsys, "algebra", "--trials", 2)[1]
    assert run(capsys, "algebra", "--trials", 2)[1] == a


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "treetrop", "cubes"], capture_output=True, text=True)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 15
