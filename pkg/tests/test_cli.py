import json
import subprocess
import sys

import pytest

from vizlab.cli import main
from vizlab.formats import from_graph6
from vizlab.graph import Graph

C4 = "Cl"  # 0-1-2-3-0
K2 = "A_"
P4 = "Ch"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_recognize(capsys):
    code, out, _ = run(capsys, "recognize", C4)
    assert code == 0 and out.splitlines() == ["cograph: yes", "cotree: J(U(0,2),U(1,3))"]
    code, out, _ = run(capsys, "recognize", P4)
    assert code == 0 and "P4 witness: (0,1,2,3)" in out


def test_gamma(capsys):
    code, out, _ = run(capsys, "gamma", C4)
    assert code == 0 and out.splitlines()[0] == "gamma: 2"
    code, out, _ = run(capsys, "gamma", C4, "--json")
    assert json.loads(out) == {"gamma": 2, "kind": "plain", "witness": [0, 1]}
    code, out, _ = run(capsys, "gamma", C4, "--jk", "1,2", "--json")
    assert json.loads(out)["j"] == 1 and json.loads(out)["k"] == 2
    assert run(capsys, "gamma", C4, "--jk", "2,1")[0] == 2


def test_gamma_reads_edge_list_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# a star\n4\n0 1\n0 2\n0 3\n")
    code, out, _ = run(capsys, "gamma", f"@{path}")
    assert code == 0 and out.startswith("gamma: 1")


def test_product(capsys):
    code, out, _ = run(capsys, "product", K2, K2)
    assert code == 0 and out.strip() == "Cr"
    code, out, _ = run(capsys, "product", C4, K2, "--gamma")
    assert code == 0 and "gamma(GxH)=2 bound=2 inequality=holds" in out
    code, out, _ = run(capsys, "product", K2, K2, "--format", "edge-list")
    assert out.splitlines() == ["4", "0 1", "0 2", "1 3", "2 3"]
    assert run(capsys, "product", C4, C4, "--max-vertices", "10")[0] == 2


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", C4, K2, "--gamma-set", "0,2", "--dom-set", "(0,0),(2,1)")
    data = json.loads(out)
    assert code == 0
    assert data["certificate"]["certified"] and data["certificate"]["count_ok"]
    code2, out2, _ = run(capsys, "certify", C4, K2, "--gamma-set", "0,2", "--dom-set", "0,6")
    assert code2 == 0 and json.loads(out2) == data
    code, out, _ = run(capsys, "certify", C4, K2, "--trace")
    assert code == 0 and "stages" in json.loads(out)


def test_certify_failures(capsys):
    cr = "Cr"  # 0-1, 0-2, 1-3, 2-3
    code, out, _ = run(capsys, "certify", cr, cr, "--gamma-set", "0,3", "--dom-set", "(0,0),(3,0),(1,3),(2,3)")
    assert code == 1 and not json.loads(out)["certificate"]["certified"]
    code, _, err = run(capsys, "certify", C4, K2, "--dom-set", "(1,0)")
    assert code == 2 and "uncovered" in err
    assert run(capsys, "certify", C4, K2, "--gamma-set", "0,x")[0] == 2


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "claim1", C4, "--gamma-set", "0,2", "--u", "1")
    res = json.loads(out)
    assert code == 1 and res[0]["outcome"] == "fails-with-counterexample"
    assert res[0]["payload"]["preamble_holds"] is False
    code, out, _ = run(capsys, "audit", "claim1", "Bw")
    assert code == 0 and [r["outcome"] for r in json.loads(out)] == ["not-applicable"]
    code, out, _ = run(capsys, "audit", "claim2", C4, K2, "--gamma-set", "0,2", "--dom-set", "(0,0),(2,1)")
    assert code == 0 and json.loads(out)[0]["outcome"] == "holds-with-witness"
    assert run(capsys, "audit", "claim2", C4)[0] == 2
    assert run(capsys, "audit", "claim1", C4, "--u", "1")[0] == 2
    assert run(capsys, "audit", "claim1", P4)[0] == 2


def test_sweep_writes_report(capsys, tmp_path):
    out_path = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "sweep", "--max-ng", "3", "--max-nh", "3", "--min-ng", "2", "--min-nh", "2",
                       "--out", str(out_path))
    assert code == 0
    agg = json.loads(out)
    assert agg["inequality_violations"] == 0
    lines = out_path.read_text().splitlines()
    assert json.loads(lines[0])["type"] == "header" and json.loads(lines[-1]) == {"type": "aggregate", **agg}
    code, _, _ = run(capsys, "sweep", "--max-ng", "3", "--max-nh", "2", "--g-family", "random-cographs",
                     "--h-family", "random", "--count", "4", "--seed", "3", "--all", "--out", str(out_path))
    assert code == 0


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "gamma")[0] == 2
    assert run(capsys, "gamma", "not-graph6!")[0] == 2
    assert run(capsys, "sweep", "--max-ng", "9", "--max-nh", "2", "--out", "x")[0] == 2
    assert run(capsys, "recognize", "@/no/such/file")[0] == 2


def test_stdin_and_module_entry():
    proc = subprocess.run([sys.executable, "-m", "vizlab", "gamma", "-"], input=C4,
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("gamma: 2")
    assert from_graph6(C4) == Graph.cycle(4)


@pytest.mark.parametrize("argv", [["--help"], ["gamma", "--help"]])
def test_help_exits_zero(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_recognize_p4_edge_list(capsys, tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text("4\n0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "recognize", f"@{path}")
    assert code == 0 and out.splitlines() == ["cograph: no", "P4 witness: (0,1,2,3)"]
