import json

import pytest

from virtbraid.cli import run


def _json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_homs_vb3_nonabelian(capsys):
    code, rep = _json(capsys, ["homs", "--family", "VB", "--n", "3", "--target", "3", "--filter", "nonabelian"])
    assert code == 0
    assert rep["results"]["count"] == 8
    assert rep["results"]["total_homs"] == 60
    assert {c["matched_name"] for c in rep["results"]["classes"]} == {f"psi_{i}" for i in range(1, 9)}
    assert set(rep) == {"command", "inputs", "results", "status"}


def test_degree_cap_exit_code(capsys):
    assert run(["homs", "--family", "VB", "--n", "5", "--target", "5"]) == 2
    assert "capped" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 2


def test_malformed_dsl(tmp_path, capsys):
    path = tmp_path / "bad.dsl"
    path.write_text("group G\ngen a\nrel a ^\n")
    assert run(["homs", "--file", str(path), "--target", "2"]) == 2
    assert "line 3" in capsys.readouterr().err


def test_dsl_file_input(tmp_path, capsys):
    path = tmp_path / "s3.dsl"
    path.write_text("group S3\ngen a inv\ngen b inv\nrel a b a = b a b\n")
    code, rep = _json(capsys, ["homs", "--file", str(path), "--target", "3"])
    assert code == 0 and rep["results"]["total_homs"] == 10


def test_json_is_deterministic_and_round_trips(capsys):
    argv = ["kernel-ab", "--family", "VB", "--n", "3", "--hom", "psi_1", "--json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert json.loads(json.dumps(data, sort_keys=True, indent=2)) == data
    assert data["results"]["gap_format"] == "[ 0, 0, 0, 0, 3, 3, 3 ]"
    assert "elapsed_ms" not in data


def test_timing_flag(capsys):
    code, rep = _json(capsys, ["catalog", "list", "--timing"])
    assert code == 0 and isinstance(rep["elapsed_ms"], int)


def test_character_rationals_as_strings(capsys):
    code, rep = _json(capsys, ["character", "--n", "4", "isotypic", "1,3,4"])
    assert rep["results"]["rank"] == 9
    assert rep["results"]["quotient"]["character"] == ["3", "-1", "-1", "1", "0"]
    assert any("/" in x for row in rep["results"]["projector"] for x in row)


@pytest.mark.parametrize("argv, key, value", [
    (["reidemeister", "lattice", "--matrix", "[[0,1],[1,0]]"], "classes", "INFINITE"),
    (["reidemeister", "finite", "--group", "cyclic", "--k", "5", "--multiplier", "2"], "classes", 1),
    (["crystal", "--family", "VB", "--n", "3", "order", "v1 v2"], "order", 3),
    (["characteristic", "--family", "VB", "--n", "3", "--target", "psi_2"], "offenders", ["psi_3", "psi_4"]),
    (["descend", "--family", "WB", "--n", "4"], "descending", ["delta_1", "delta_2", "delta_3", "delta_4"]),
])
def test_subcommands(capsys, argv, key, value):
    code, rep = _json(capsys, argv)
    assert code == 0
    assert rep["results"][key] == value


def test_failed_identity_exits_one(capsys):
    assert run(["crystal", "--family", "VB", "--n", "3", "identity", "v1", "v2"]) == 1


def test_tower_size_cap(capsys):
    assert run(["reidemeister", "tower", "--family", "VB", "--n", "3", "--ks", "4"]) == 2


def test_verify_section_text(capsys):
    assert run(["verify-paper", "--section", "4.2"]) == 0
    out = capsys.readouterr().out
    assert "8/8 claims reproduced" in out
