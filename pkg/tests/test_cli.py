import json
from pathlib import Path

import pytest

from clustermirror import cli

FIXTURES = Path(__file__).parent / "fixtures"


def run(argv):
    return cli.main(argv)


def test_seed_mutate_five_step(tmp_path, capsys):
    out = tmp_path / "out.json"
    rc = run(["seed", "mutate", "--seed", str(FIXTURES / "a2_seed.json"),
              "--sequence", "1,2,1,2,1", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    # frozen five-step oracle value: the k=1 mutation of the input
    assert doc["psi"] == [[-1, 0], [0, 1]]


def test_seed_mutate_bad_index():
    rc = run(["seed", "mutate", "--seed", str(FIXTURES / "a2_seed.json"),
              "--sequence", "3"])
    assert rc == 2


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = run(["seed", "mutate", "--seed", str(bad), "--sequence", "1"])
    assert rc == 2
    missing = tmp_path / "missing" / "x.json"
    assert run(["seed", "graph", "--seed", str(missing), "--depth", "1"]) == 2


def test_seed_graph_and_model(tmp_path):
    g = tmp_path / "g.json"
    assert run(["seed", "graph", "--seed", str(FIXTURES / "a2_seed.json"),
                "--depth", "6", "--out", str(g)]) == 0
    doc = json.loads(g.read_text())
    assert len(doc["nodes"]) == 46 and not doc["truncated"]
    m = tmp_path / "m.json"
    assert run(["seed", "model", "--seed", str(FIXTURES / "a2_seed.json"),
                "--out", str(m)]) == 0
    assert json.loads(m.read_text())["chi"] == [[0, 1], [-1, 0]]


def test_budget_truncates(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERMIRROR_BUDGET", "7")
    g = tmp_path / "g.json"
    assert run(["seed", "graph", "--seed", str(FIXTURES / "a2_seed.json"),
                "--depth", "6", "--out", str(g)]) == 0
    doc = json.loads(g.read_text())
    assert doc["truncated"] and len(doc["nodes"]) == 7


def test_base_syz_deterministic(tmp_path):
    outs = []
    for name in ("one.svg", "two.svg"):
        out = tmp_path / name
        assert run(["base", "syz", "--seed", str(FIXTURES / "a2_seed.json"),
                    "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0] == (FIXTURES / "a2_syz.svg").read_bytes()


def test_base_syz_convention(tmp_path):
    out = tmp_path / "b.svg"
    j = tmp_path / "b.json"
    assert run(["base", "syz", "--seed", str(FIXTURES / "a2_seed.json"),
                "--out", str(out), "--json", str(j),
                "--convention", "cocharacter"]) == 0
    doc = json.loads(j.read_text())
    assert doc["convention"] == "cocharacter"
    assert doc["singularities"][0]["monodromy"] == [[1, 0], [-1, 1]]


def test_base_trade_with_skeleton(tmp_path):
    out = tmp_path / "bl.svg"
    assert run(["base", "trade", "--polytope", str(FIXTURES / "bl0c2_polytope.json"),
                "--trades", str(FIXTURES / "bl0c2_trades.json"),
                "--skeleton", "--out", str(out)]) == 0
    assert out.read_bytes() == (FIXTURES / "bl0c2_double.svg").read_bytes()


def test_base_trade_infeasible_exit_3(tmp_path):
    rc = run(["base", "trade", "--polytope", str(FIXTURES / "parallel_polytope.json"),
              "--trades", str(FIXTURES / "parallel_trades.json"),
              "--skeleton", "--out", str(tmp_path / "x.svg")])
    assert rc == 3


def test_skeleton_build_and_surgery(tmp_path):
    sk = tmp_path / "sk.json"
    assert run(["skeleton", "build", "--seed", str(FIXTURES / "a2_seed.json"),
                "--out", str(sk)]) == 0
    out = tmp_path / "sk2.json"
    assert run(["skeleton", "surgery", "--skeleton", str(sk),
                "--handle", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["handles"][0]["psi"] == [-1, 0]
    assert run(["skeleton", "surgery", "--skeleton", str(sk),
                "--handle", "9", "--out", str(out)]) == 2


def test_locsys_commands(tmp_path):
    ls = tmp_path / "ls.json"
    ls.write_text(json.dumps(
        {"rank": 1, "loops": 2, "holonomies": [[["2"]], [["3"]]]}))
    out = tmp_path / "out.json"
    assert run(["locsys", "mutate", "--locsys", str(ls),
                "--handle-class", "1,0", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["adapted"] == [[["2"]], [["-3"]]]
    stuck = tmp_path / "stuck.json"
    stuck.write_text(json.dumps(
        {"rank": 1, "loops": 2, "holonomies": [[["1"]], [["3"]]]}))
    assert run(["locsys", "mutate", "--locsys", str(stuck),
                "--handle-class", "1,0", "--out", str(out)]) == 3
    t = tmp_path / "t.txt"
    assert run(["locsys", "transition", "--seed", str(FIXTURES / "a2_seed.json"),
                "--k", "1", "--out", str(t)]) == 0
    assert "x1'" in t.read_text()


def test_verify_pass(tmp_path):
    rep = tmp_path / "rep.json"
    rc = run(["verify", "--suite", "all", "--prng", "42", "--cases", "25",
              "--report", str(rep)])
    assert rc == 0
    doc = json.loads(rep.read_text())
    assert doc["passed"] and len(doc["suites"]) == 5


def test_verify_failure_serializes_counterexample(tmp_path, monkeypatch, capsys):
    import clustermirror.verify as V

    def broken(rng, cases=None):
        return {"suite": "epsilon", "cases": 1, "passed": False,
                "failures": [{"seed": "witness"}]}

    monkeypatch.setitem(cli.SUITES, "epsilon", broken)
    rep = tmp_path / "rep.json"
    rc = run(["verify", "--suite", "epsilon", "--prng", "1", "--report", str(rep)])
    assert rc == 1
    doc = json.loads(rep.read_text())
    assert doc["suites"][0]["failures"] == [{"seed": "witness"}]


def test_verify_reports_deterministic(tmp_path):
    reps = []
    for name in ("r1.json", "r2.json"):
        rep = tmp_path / name
        assert run(["verify", "--suite", "dictionary", "--prng", "7",
                    "--cases", "30", "--report", str(rep)]) == 0
        reps.append(rep.read_bytes())
    assert reps[0] == reps[1]
