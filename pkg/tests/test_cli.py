import json
import subprocess
import sys


from engelgraph.cli import analyze_group, engel_path, main
from engelgraph import catalog
from engelgraph.digraph import parse_dot


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_s4_json(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "S4")
    assert code == 0
    rep = json.loads(out)
    g = rep["gamma"]
    assert g["strongly_connected"] and g["diameter"] <= 4
    assert g["vertex_count"] == rep["order"] - rep["z_infty_order"] == 23
    assert rep["flags"]["soluble"] and rep["fitting_order"] == 4 and rep["j_order"] == 12


def test_analyze_examples(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "D8")
    assert code == 0 and json.loads(out)["gamma"]["degenerate"]
    code, out, _ = run(capsys, "analyze", "--group", "PSL2(13)")
    rep = json.loads(out)
    assert not rep["gamma"]["strongly_connected"] and rep["gamma"]["diameter"] == "infinite"
    assert rep["prime_graph"]["components"] == [[2, 3], [7], [13]]


def test_analyze_text_and_dot(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "S3", "--format", "text")
    assert code == 0 and "strongly connected: no" in out
    code, out, _ = run(capsys, "analyze", "--group", "S3", "--format", "dot")
    nodes, arcs, sym = parse_dot(out)
    assert len(nodes) == 5 and not sym


def test_analyze_is_deterministic_across_jobs(capsys):
    outs = {run(capsys, "analyze", "--group", g, "--jobs", j)[1] for g in ["A5"] for j in ("1", "3")}
    assert len(outs) == 1


def test_report_invariants():
    for name in ("S4", "A5", "C2xS4", "SL(2,3)", "D10"):
        rep = analyze_group(catalog.build(name))
        g = rep.gamma
        assert g["strongly_connected"] == (g["diameter"] != "infinite")
        assert g["vertex_count"] == rep.order - rep.z_infty_order


def test_usage_errors(capsys):
    assert run(capsys, "analyze", "--group", "Monster")[0] == 2
    assert run(capsys, "analyze")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "analyze", "--group", "S5", "--budget", "10")[0] == 2
    assert run(capsys, "export-dot", "--group", "S3", "--kind", "bogus", "--out", "/tmp/x.dot")[0] == 2
    assert run(capsys, "analyze", "--group", "S4", "--jobs", "0")[0] == 2


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("ENGELGRAPH_BUDGET", "5")
    code, _, err = run(capsys, "analyze", "--group", "S4")
    assert code == 2 and "budget" in err
    monkeypatch.setenv("ENGELGRAPH_BUDGET", "lots")
    assert run(capsys, "analyze", "--group", "S4")[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "alt-identity")
    assert code == 0 and "summary:" in out
    code, out, _ = run(capsys, "verify", "--suite", "prime-graph", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert any(c["status"] == "fail" for c in data[0]["claims"])


def test_trace_proof(capsys):
    code, out, _ = run(capsys, "trace-proof", "--group", "C2xS4")
    assert code == 0 and "Zinf != 1" in out and "equals" in out
    code, out, _ = run(capsys, "trace-proof", "--group", "A6")
    assert code == 0 and "almost simple" in out and "bound: 16" in out


def test_engel_path(capsys):
    code, out, _ = run(capsys, "engel-path", "--group", "S3", "--from", "(1,2)", "--to", "(1,2,3)")
    assert code == 0 and "length 1" in out and "depth 2" in out
    code, out, _ = run(capsys, "engel-path", "--group", "S3", "--from", "(1,2,3)", "--to", "(1,2)")
    assert code == 0 and "unreachable" in out
    code, _, err = run(capsys, "engel-path", "--group", "C2xS4", "--from", "(5,6)", "--to", "(1,2)")
    assert code == 2 and "not a vertex" in err
    code, _, err = run(capsys, "engel-path", "--group", "S3", "--from", "(1,2", "--to", "(1,2)")
    assert code == 2


def test_engel_path_is_shortest():
    from engelgraph.digraph import bfs_distances
    from engelgraph.graphs import build_gamma
    G = catalog.build("S4")
    D = build_gamma(G)
    for i in range(0, len(D), 5):
        dist = bfs_distances(D, i)
        for j in range(len(D)):
            if i == j:
                continue
            path = engel_path(G, int(D.vertex_ids[i]), int(D.vertex_ids[j]))
            assert len(path) == dist[j]
            assert all(d >= 1 for _, _, d in path)


def test_export_dot(capsys, tmp_path):
    out = tmp_path / "s3.dot"
    assert run(capsys, "export-dot", "--group", "S3", "--kind", "gamma", "--out", str(out))[0] == 0
    assert len(parse_dot(out.read_text())[0]) == 5
    out = tmp_path / "a5.dot"
    assert run(capsys, "export-dot", "--group", "A5", "--kind", "commuting", "--out", str(out))[0] == 0
    nodes, _, sym = parse_dot(out.read_text())
    assert len(nodes) == 59 and sym
    out = tmp_path / "d8.dot"
    code, _, err = run(capsys, "export-dot", "--group", "D8", "--kind", "gamma", "--out", str(out))
    assert code == 0 and "degenerate" in err and parse_dot(out.read_text())[0] == {}
    out = tmp_path / "s4g2.dot"
    assert run(capsys, "export-dot", "--group", "S4", "--kind", "gamma_n:2", "--out", str(out))[0] == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "engelgraph.cli", "analyze", "--group", "S3", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "group: S3" in proc.stdout
