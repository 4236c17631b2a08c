import json
import subprocess
import sys

import pytest

P3_EDGES = "3 undirected\n0 1\n1 2\n"
C4_EDGES = "4 undirected\n0 1\n1 2\n2 3\n0 3\n"
K2_EDGES = "2 undirected\n0 1\n"


def run_cli(*argv, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "gcrsolver", *argv],
        capture_output=True,
        text=True,
        input=stdin,
        timeout=120,
    )


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.edges"
    path.write_text(P3_EDGES)
    return str(path)


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.edges"
    path.write_text(C4_EDGES)
    return str(path)


def test_solve_p3_reports_placement_and_values(p3_file):
    res = run_cli("solve", p3_file)
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["placement"]["value"] == 1
    assert doc["placement"]["cop_placement"] == 1
    by_state = {
        (r["pursuer_loc"], r["evader_loc"], r["mover"]): r["value"]
        for r in doc["label_table"]["states"]
    }
    assert by_state[(0, 2, 1)] == 3


def test_solve_is_byte_deterministic(p3_file):
    first = run_cli("solve", p3_file)
    second = run_cli("solve", p3_file)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_solve_ignores_edge_presentation_order(tmp_path):
    a = tmp_path / "a.edges"
    b = tmp_path / "b.edges"
    a.write_text("4 undirected\n0 1\n1 2\n2 3\n0 3\n")
    b.write_text("4 undirected\n0 3\n2 3\n0 1\n1 2\n")
    out_a = run_cli("solve", str(a)).stdout
    out_b = run_cli("solve", str(b)).stdout
    assert json.loads(out_a)["label_table"] == json.loads(out_b)["label_table"]


def test_solve_empty_file_is_a_parse_error(tmp_path):
    empty = tmp_path / "empty.edges"
    empty.write_text("")
    res = run_cli("solve", str(empty))
    assert res.returncode == 2
    assert "parse error" in res.stderr


def test_solve_c4_prints_infinity(c4_file):
    res = run_cli("solve", c4_file)
    doc = json.loads(res.stdout)
    assert doc["placement"]["value"] == "infinity"


def test_solve_variant_flag_validation(p3_file):
    res = run_cli("solve", p3_file, "--variant", "distance-k")
    assert res.returncode == 2
    assert "--k" in res.stderr


def test_classify_c4(c4_file):
    res = run_cli("classify", c4_file)
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["pwin_count"] == 16
    assert doc["ewin_count"] == 16
    assert doc["levels"][0] == sorted(doc["levels"][0])


def test_verify_p3_passes(p3_file):
    res = run_cli("verify", p3_file)
    assert res.returncode == 0
    checks = [line for line in res.stdout.splitlines() if line.startswith("check ")]
    assert len(checks) == 4
    assert all(line.endswith(": pass") for line in checks)
    assert "seed: 1729" in res.stdout
    assert "result: pass" in res.stdout


def test_verify_corrupted_labels_fail_and_name_the_state(p3_file, tmp_path):
    labels_path = tmp_path / "labels.json"
    res = run_cli("export", p3_file, "--format", "labels", "--output", str(labels_path))
    assert res.returncode == 0
    doc = json.loads(labels_path.read_text())
    victim = next(r for r in doc["states"] if r["value"] == 3)
    victim["value"] = 2
    labels_path.write_text(json.dumps(doc))

    res = run_cli("verify", p3_file, "--labels", str(labels_path))
    assert res.returncode == 1
    assert "FAIL" in res.stdout
    assert f"first: {victim['id']}" in res.stdout


def test_verify_round_trips_exported_labels(p3_file, tmp_path):
    labels_path = tmp_path / "labels.json"
    run_cli("export", p3_file, "--format", "labels", "--output", str(labels_path))
    direct = run_cli("verify", p3_file)
    loaded = run_cli("verify", p3_file, "--labels", str(labels_path))
    assert loaded.returncode == 0
    # identical check results modulo the header
    assert direct.stdout.splitlines()[2:] == loaded.stdout.splitlines()[2:]


def test_verify_oracle_cap(p3_file):
    res = run_cli("verify", p3_file, "--oracle-cap", "10")
    assert res.returncode == 3
    assert "state space too large for oracle" in res.stdout
    assert "check optimality-equations: pass" in res.stdout


def test_export_family_round_trip(p3_file, tmp_path):
    fam_path = tmp_path / "family.json"
    res = run_cli("export", p3_file, "--format", "family", "--output", str(fam_path))
    assert res.returncode == 0
    doc = json.loads(fam_path.read_text())
    assert doc["locations1"] == 3 and doc["locations2"] == 3

    # solving the exported family gives the same label table as the graph
    res_graph = run_cli("solve", p3_file)
    res_family = run_cli("solve", str(fam_path))
    assert (
        json.loads(res_graph.stdout)["label_table"]
        == json.loads(res_family.stdout)["label_table"]
    )


def test_export_dot(p3_file):
    res = run_cli("export", p3_file, "--format", "dot")
    assert res.returncode == 0
    assert res.stdout.startswith("digraph")
    assert "color=red" in res.stdout


def test_family_input_rejects_variant_flags(p3_file, tmp_path):
    fam_path = tmp_path / "family.json"
    run_cli("export", p3_file, "--output", str(fam_path))
    res = run_cli("solve", str(fam_path), "--variant", "classic")
    assert res.returncode == 2


def test_solve_accepts_dot_input(tmp_path):
    dot = tmp_path / "p3.dot"
    dot.write_text("graph { 0 -- 1; 1 -- 2 }\n")
    res = run_cli("solve", str(dot))
    assert res.returncode == 0
    assert json.loads(res.stdout)["placement"]["value"] == 1


def test_missing_input_file():
    res = run_cli("solve", "/no/such/file.edges")
    assert res.returncode == 2
    assert "cannot read" in res.stderr


def test_directed_flag_mismatch(p3_file):
    res = run_cli("solve", p3_file, "--directed")
    assert res.returncode == 2
    assert "undirected" in res.stderr


# -- interactive play ------------------------------------------------------------


def test_play_human_evader_on_k2_is_captured_immediately(tmp_path):
    k2 = tmp_path / "k2.edges"
    k2.write_text(K2_EDGES)
    # machine cop moves first from (0,1,1) and captures at turn 1
    res = run_cli("play", str(k2), "--side", "2", "--start", "0,1,1", stdin="")
    assert res.returncode == 0
    assert "captured at turn 1" in res.stdout


def test_play_illegal_input_reprompts(p3_file):
    # human cop at (0,2,1): '9' is no move; then a legal step to vertex 1,
    # after which the optimal machine evader still loses by turn 3
    res = run_cli("play", p3_file, "--side", "1", "--start", "0,2", stdin="9\n1\n2\n2\n")
    assert res.returncode == 0
    assert "no such move '9'" in res.stdout
    assert "captured at turn 3" in res.stdout


def test_play_human_pursuer_on_c4_reaches_evasion_certificate(c4_file):
    # chase the optimal evader with a cop that always stays: certified evasion
    moves = "\n".join(["0"] * 40) + "\n"
    res = run_cli("play", c4_file, "--side", "1", "--start", "0,2", "--max-turns", "12", stdin=moves)
    assert res.returncode == 0
    assert "evasion certified: 12 turns without capture" in res.stdout


def test_play_eof_mid_game(p3_file):
    res = run_cli("play", p3_file, "--side", "1", "--start", "0,2", stdin="")
    assert res.returncode == 2
    assert "stdin closed" in res.stderr


def test_play_cop_team_takes_comma_separated_vertices(p3_file):
    # two cops at (0,2) (location index 0*3+2), robber at 1: moving the
    # team to (1,1) lands on the robber
    res = run_cli(
        "play",
        p3_file,
        "--variant",
        "k-cops",
        "--cops",
        "2",
        "--side",
        "1",
        "--start",
        "2,1,1",
        stdin="1,1\n",
    )
    assert res.returncode == 0
    assert "captured at turn 1" in res.stdout


def test_verify_petersen_three_cops_caps_the_oracle():
    import pathlib
    import tempfile

    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    text = "10 undirected\n" + "".join(f"{u} {v}\n" for u, v in sorted(edges))
    with tempfile.TemporaryDirectory() as tmp:
        path = pathlib.Path(tmp) / "petersen.edges"
        path.write_text(text)
        res = run_cli("verify", str(path), "--variant", "k-cops", "--cops", "3")
    assert res.returncode == 3
    assert "check optimality-equations: pass" in res.stdout
    assert "check finitization-index: pass" in res.stdout
    assert "state space too large for oracle" in res.stdout


def test_serve_port_busy_is_an_environment_error(p3_file):
    import socket

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = str(sock.getsockname()[1])
    try:
        res = run_cli("serve", p3_file, "--port", port)
        assert res.returncode == 4
        assert "cannot bind" in res.stderr
    finally:
        sock.close()
