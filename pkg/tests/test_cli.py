import json

import pytest

from nilgenus.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def tuple_json(tmp_path, name, type_id, entries):
    path = tmp_path / name
    path.write_text(json.dumps({"type": type_id, "t": entries}))
    return str(path)


S551 = {"123": 5, "134": 5, "124": 1}
T552 = {"123": 5, "134": 5, "124": 2}


def test_equiv_files(tmp_path, capsys):
    s = tuple_json(tmp_path, "s.json", "2,1,1", S551)
    t = tuple_json(tmp_path, "t.json", "2,1,1", T552)
    code, out, _ = run_cli(capsys, "equiv", s, t)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True
    assert data["witnesses"] == [{"p": 5, "w": 3, "moduli": {"w": 5}}]


def test_equiv_inline_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "equiv",
        json.dumps({"type": "2,1,1", "t": S551}),
        json.dumps({"type": "2,1,1", "t": {"123": 5, "134": 5, "124": 0}}),
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is False
    assert data["failures"][0]["p"] == 5


def test_validate_canonical(capsys):
    code, out, _ = run_cli(
        capsys, "validate", json.dumps({"type": "2,1,1", "t": T552}), "--canonical"
    )
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_validate_reports_violation(capsys):
    code, out, _ = run_cli(
        capsys,
        "validate",
        json.dumps({"type": "3,1,1", "t": {"124": 1, "145": 0}}),
    )
    assert code == 0
    data = json.loads(out)
    assert data["valid"] is False
    assert any("c145" in v["constraint"] for v in data["violations"])


def test_canonicalize_command(capsys):
    code, out, _ = run_cli(
        capsys, "canonicalize", json.dumps({"type": "2,1,1", "t": {"123": 5, "134": 5, "124": 7}})
    )
    assert code == 0
    data = json.loads(out)
    assert data["canonical"]["t"]["124"] == 2
    assert data["changed"] is True


def test_genus_command(capsys):
    code, out, _ = run_cli(capsys, "genus", json.dumps({"type": "2,1,1", "t": S551}))
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 2
    assert [m["t"]["124"] for m in data["members"]] == [1, 2]


def test_table_command(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--type", "2,1,1", "--primes", "3", "5", "7", "11"
    )
    assert code == 0
    data = json.loads(out)
    assert [row["genus_size"] for row in data["sizes"]] == [1, 2, 3, 5]


def test_orbits_command_global(capsys):
    code, out, _ = run_cli(capsys, "orbits", "2", "4", "2")
    assert code == 0
    data = json.loads(out)
    assert sorted(map(len, data["orbits"])) == [1, 1, 2]


def test_orbits_command_local(capsys):
    code, out, _ = run_cli(capsys, "orbits", "2", "4", "2", "--prime", "2")
    assert code == 0
    data = json.loads(out)
    assert data["prime"] == 2


def test_unsupported_type_exits_1(capsys):
    code, _, err = run_cli(
        capsys, "validate", json.dumps({"type": "2,2", "t": {}})
    )
    assert code == 1
    assert "one-element genus" in err


def test_missing_file_exits_1(capsys):
    code, _, err = run_cli(capsys, "genus", "/nonexistent/file.json")
    assert code == 1
    assert "no such file" in err


def test_malformed_json_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "validate", str(bad))
    assert code == 1
    assert "JSON" in err


def test_type_mismatch_exits_1(capsys):
    code, _, err = run_cli(
        capsys,
        "equiv",
        json.dumps({"type": "2,1,1", "t": S551}),
        json.dumps({"type": "2,1,2", "t": {"123": 2, "134": 2, "235": 4}}),
    )
    assert code == 1
    assert "different types" in err


def test_primes_override_is_flagged(capsys):
    code, out, _ = run_cli(
        capsys,
        "equiv",
        json.dumps({"type": "2,1,1", "t": S551}),
        json.dumps({"type": "2,1,1", "t": T552}),
        "--primes", "3",
    )
    assert code == 0
    data = json.loads(out)
    assert any("overridden" in c for c in data["caveats"])


def test_output_is_byte_deterministic(capsys):
    args = ("genus", json.dumps({"type": "2,1,1", "t": S551}))
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_text_format(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "text", "table", "--type", "2,1,1", "--primes", "5"
    )
    assert code == 0
    assert "genus_size: 2" in out


def test_equiv_with_isomorphism_flag(capsys):
    code, out, _ = run_cli(
        capsys,
        "equiv",
        json.dumps({"type": "2,1,1", "t": S551}),
        json.dumps({"type": "2,1,1", "t": T552}),
        "--isomorphism",
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True
    assert data["z_equivalent"]["equivalent"] is False
