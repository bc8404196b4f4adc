"""Command line behavior: outputs, exit codes, and file handling."""

import json

import numpy as np
import pytest

from paulicrit import load_state
from paulicrit.cli import main

EIGHT = "xxx\nyxx\nxyx\nyyx\nxxy\nyxy\nxyy\nyyy\n"


@pytest.fixture()
def sigma3_file(tmp_path):
    path = tmp_path / "sigma3.txt"
    path.write_text(EIGHT)
    return str(path)


@pytest.fixture()
def sigma15_file(tmp_path):
    path = tmp_path / "sigma15.txt"
    assert main(["generate", "--cp", "1xxxz,1zxxz,1zxzz", "-o", str(path)]) == 0
    return str(path)


@pytest.fixture()
def pair_file(tmp_path):
    path = tmp_path / "pair.txt"
    path.write_text("zz\nxx\n")
    return str(path)


def test_generate_cp_writes_expansion(sigma15_file):
    lines = open(sigma15_file).read().splitlines()
    assert len(lines) == 15
    assert lines[0] == "1xxxz"
    assert "z1zxx" in lines


def test_generate_cp_to_stdout(capsys):
    assert main(["generate", "--cp", "xy"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert sorted(out) == ["xy", "yx"]


def test_generate_cp_dedups(capsys):
    assert main(["generate", "--cp", "xx,xx"]) == 0
    assert capsys.readouterr().out == "xx\n"


def test_generate_cp_bad_pattern(capsys):
    assert main(["generate", "--cp", "qq"]) == 2
    assert "error:" in capsys.readouterr().err


def test_generate_cp_identity_pattern(capsys):
    assert main(["generate", "--cp", "11"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bounds_table(sigma3_file, capsys):
    assert main(["bounds", sigma3_file]) == 0
    out = capsys.readouterr().out
    assert "full_separability: 1" in out
    assert "any_bipartition: 2" in out
    assert "quantum_lower: 4" in out
    assert "quantum_upper: not computed" in out
    assert "A|BC" in out
    assert "note: symmetry group order 6" in out


def test_bounds_quantum_upper_flag(sigma3_file, capsys):
    assert main(["bounds", sigma3_file, "--quantum-upper"]) == 0
    assert "quantum_upper: 4" in capsys.readouterr().out


def test_bounds_json(sigma3_file, capsys):
    assert main(["bounds", sigma3_file, "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["class_bounds"] == {"full_separability": 1, "any_bipartition": 2}
    assert obj["quantum"]["lower"] == 4
    assert obj["quantum"]["upper"] is None
    assert len(obj["partitions"]) == 4
    assert "verification" not in obj


def test_bounds_json_is_stable(sigma15_file, capsys):
    assert main(["bounds", sigma15_file, "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["bounds", sigma15_file, "--json"]) == 0
    assert capsys.readouterr().out == first


def test_bounds_verify_json(pair_file, capsys):
    assert (
        main(["bounds", pair_file, "--verify", "--json", "--restarts", "4"]) == 0
    )
    obj = json.loads(capsys.readouterr().out)
    rows = obj["verification"]
    # width 2 has a single distinct partition to check
    assert [row["partition"] for row in rows] == ["A|B"]
    assert rows[0]["graph_bound"] == 1
    assert rows[0]["saturated"] is True
    assert rows[0]["violation"] is False


def test_bounds_missing_file(capsys):
    assert main(["bounds", "/no/such/sigma.txt"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bounds_unparseable_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("xx\nqq\n")
    assert main(["bounds", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err


def test_bounds_cap_exit_code(sigma3_file, capsys):
    assert main(["bounds", sigma3_file, "--clique-cap", "3"]) == 3
    assert "error:" in capsys.readouterr().err


def test_graph_dot_output(sigma3_file, capsys):
    assert main(["graph", sigma3_file, "--relation", "anticommute"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph sigma {")
    assert out.count('[label="') == 8
    assert out.count("--") == 16


def test_graph_json_matches_library(sigma15_file, capsys):
    assert (
        main(["graph", sigma15_file, "--cut", "A|BCDE", "--relation", "commute",
              "--json"])
        == 0
    )
    obj = json.loads(capsys.readouterr().out)
    assert len(obj["labels"]) == 15
    from paulicrit import OperatorSet, build_graph, parse_partition

    sigma = OperatorSet.from_file(sigma15_file)
    expected = build_graph(sigma, parse_partition("A|BCDE", 5), "commute")
    assert obj["edges"] == [[i, j] for i, j in expected.edges()]


def test_graph_output_file(sigma3_file, tmp_path):
    out_path = tmp_path / "graph.dot"
    assert main(["graph", sigma3_file, "-o", str(out_path)]) == 0
    assert out_path.read_text().startswith("graph sigma {")


def test_graph_bad_cut(sigma3_file, capsys):
    assert main(["graph", sigma3_file, "--cut", "A|B"]) == 2
    assert "error:" in capsys.readouterr().err


def test_graph_bad_relation_is_usage_error(sigma3_file):
    with pytest.raises(SystemExit) as info:
        main(["graph", sigma3_file, "--relation", "adjacent"])
    assert info.value.code == 2


def test_eval_ghz_table(sigma3_file, capsys):
    assert main(["eval", sigma3_file, "--state", "ghz"]) == 0
    out = capsys.readouterr().out
    assert "Q = 4.0000000000" in out
    assert "claim: genuinely multipartite entangled (bound 2)" in out
    assert "claim: entangled (not fully separable) (bound 1)" in out


def test_eval_basis_state_no_claims(sigma15_file, capsys):
    # every member carries an x somewhere, so |00000> scores zero
    assert main(["eval", sigma15_file, "--state", "basis:00000"]) == 0
    out = capsys.readouterr().out
    assert "Q = 0.0000000000" in out
    assert "claim: none (no bound exceeded)" in out


def test_eval_json(sigma3_file, capsys):
    assert main(["eval", sigma3_file, "--state", "w", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert set(obj) == {"q", "verdict"}
    assert obj["q"]["value"] == pytest.approx(obj["verdict"]["q_value"])
    assert len(obj["q"]["contributions"]) == 8


def test_eval_state_file(sigma3_file, tmp_path, capsys):
    state_path = tmp_path / "state.json"
    from paulicrit import named_state, save_state

    save_state(named_state("ghz", 3), state_path)
    assert main(["eval", sigma3_file, "--state", str(state_path), "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["q"]["value"] == pytest.approx(4.0)


def test_eval_state_width_mismatch(sigma15_file, tmp_path, capsys):
    state_path = tmp_path / "narrow.json"
    from paulicrit import named_state, save_state

    save_state(named_state("ghz", 3), state_path)
    assert main(["eval", sigma15_file, "--state", str(state_path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_eval_missing_state_file(sigma3_file, capsys):
    assert main(["eval", sigma3_file, "--state", "/no/such/state.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_eval_smolin_weight_filtered_set(tmp_path, capsys):
    sigma_path = tmp_path / "weight2.txt"
    sigma_path.write_text("zz11\nz1z1\nz11z\n1zz1\n1z1z\n11zz\n")
    assert main(["eval", str(sigma_path), "--state", "smolin", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["q"]["value"] == pytest.approx(0.0, abs=1e-12)
    assert obj["verdict"]["claims"] == []


def test_verify_table(pair_file, capsys):
    assert main(["verify", pair_file, "--restarts", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split() == [
        "partition",
        "graph_bound",
        "oracle_value",
        "gap",
        "saturated",
    ]
    assert len(out) == 2
    assert out[1].startswith("A|B")
    assert "yes" in out[1]


def test_verify_json_three_qubit(sigma3_file, capsys):
    assert main(["verify", sigma3_file, "--json", "--restarts", "8"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [row["partition"] for row in rows] == ["A|B|C", "A|BC"]
    assert all(row["saturated"] for row in rows)
    assert all(not row["violation"] for row in rows)


def test_verify_reports_violation(pair_file, capsys, monkeypatch):
    import paulicrit.cli as cli_module
    from paulicrit import Partition, VerificationRecord

    fake = VerificationRecord(
        partition=Partition.finest(2),
        graph_bound=1,
        oracle_value=1.5,
        gap=-0.5,
        saturated=True,
        violation=True,
    )
    monkeypatch.setattr(cli_module, "verify_bound", lambda *a, **k: fake)
    assert main(["verify", pair_file]) == 1
    captured = capsys.readouterr()
    assert "VIOLATION" in captured.out
    assert "error:" in captured.err


def test_generate_clique_state_chain(sigma15_file, tmp_path, capsys):
    state_path = tmp_path / "clique_state.json"
    assert (
        main(["generate", "--clique-state", sigma15_file, "-o", str(state_path)])
        == 0
    )
    state = load_state(state_path)
    assert state.width == 5
    assert state.is_pure
    assert main(["eval", sigma15_file, "--state", str(state_path), "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["q"]["value"] == pytest.approx(5.0, abs=1e-8)
    claims = [c["claim"] for c in obj["verdict"]["claims"]]
    assert "genuinely multipartite entangled" in claims


def test_generate_requires_a_source():
    with pytest.raises(SystemExit) as info:
        main(["generate"])
    assert info.value.code == 2


def test_no_command_is_usage_error():
    with pytest.raises(SystemExit):
        main([])
