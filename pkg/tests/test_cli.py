"""Command-line interface: exit codes, schemas, determinism."""

import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from wittcoh.cli import main

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "report-schema.json").read_text()
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_prime_7(capsys):
    code, out = run(capsys, "verify", "--prime", "7")
    assert code == 0
    report = json.loads(out)
    assert report["dims"]["H2_res"] == 8
    assert report["all_pass"] is True
    jsonschema.validate(report, SCHEMA)


def test_verify_prime_3_skips_p_dependent_checks(capsys):
    code, out = run(capsys, "verify", "--prime", "3")
    assert code == 0
    report = json.loads(out)
    assert report["dims"]["H2_res"] == 3
    skipped = [c["name"] for c in report["checks"] if c["skipped"]]
    assert "ordinary.explicit_cocycles" in skipped
    jsonschema.validate(report, SCHEMA)


def test_verify_rejects_composite(capsys):
    code, _ = run(capsys, "verify", "--prime", "9")
    assert code == 2
    code, _ = run(capsys, "verify", "--prime", "2")
    assert code == 2
    code, _ = run(capsys, "verify", "--primes", "nonsense")
    assert code == 2


def test_verify_deterministic_across_jobs(capsys):
    code1, out1 = run(capsys, "verify", "--primes", "5..7", "--jobs", "1")
    code2, out2 = run(capsys, "verify", "--primes", "5..7", "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    reports = [json.loads(line) for line in out1.splitlines()]
    assert [r["prime"] for r in reports] == [5, 7]
    for r in reports:
        jsonschema.validate(r, SCHEMA)


def test_verify_env_var_fallback(capsys, monkeypatch):
    monkeypatch.setenv("WITTCOH_PRIME", "5")
    code, out = run(capsys, "verify")
    assert code == 0
    assert json.loads(out)["prime"] == 5


def test_cocycles_phi10(capsys):
    code, out = run(capsys, "cocycles", "--prime", "5", "--which", "phi10")
    assert code == 0
    assert json.loads(out)["phi"] == {"(-1,1)": 1}

    code, out = run(capsys, "cocycles", "--prime", "7", "--which", "phi10")
    assert code == 0
    assert json.loads(out)["phi"] == {"(-1,1)": 1, "(3,4)": 5}


def test_cocycles_omega(capsys):
    code, out = run(capsys, "cocycles", "--prime", "5", "--which", "omega", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["omega"] == {"-1": 0, "0": 1, "1": 0, "2": 0, "3": 0}


def test_cocycles_all(capsys):
    code, out = run(capsys, "cocycles", "--prime", "5", "--which", "all")
    assert code == 0
    payload = json.loads(out)
    assert set(payload["omega"]) == {"-1", "0", "1", "2", "3"}
    assert payload["phi10"] == {"(-1,1)": 1}


def test_cocycles_bad_selectors(capsys):
    assert run(capsys, "cocycles", "--prime", "5", "--which", "omega", "7")[0] == 2
    assert run(capsys, "cocycles", "--prime", "5", "--which", "omega", "x")[0] == 2
    assert run(capsys, "cocycles", "--prime", "3", "--which", "phi10")[0] == 2
    assert run(capsys, "cocycles", "--prime", "5", "--which", "nope")[0] == 2


def test_extension_virasoro_contains_expected_triples(capsys):
    code, out = run(capsys, "extension", "--prime", "5", "--which", "virasoro")
    assert code == 0
    payload = json.loads(out)
    assert ["e1", "e-1", "e0", 3] in payload["brackets"]
    assert ["e1", "e-1", "c", 4] in payload["brackets"]
    assert payload["verification"]["pass"] is True


def test_extension_omega_pmap_rows(capsys):
    code, out = run(capsys, "extension", "--prime", "5", "--which", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["pmap"]["e0"] == {"e0": 1}
    assert payload["pmap"]["e2"] == {"c": 1}
    assert payload["pmap"]["e1"] == {}
    assert payload["pmap"]["c"] == {}


def test_extension_bad_selectors(capsys):
    assert run(capsys, "extension", "--prime", "4", "--which", "0")[0] == 2
    assert run(capsys, "extension", "--prime", "5", "--which", "9")[0] == 2
    assert run(capsys, "extension", "--prime", "5", "--which", "bogus")[0] == 2
    assert run(capsys, "extension", "--prime", "3", "--which", "virasoro")[0] == 2


def test_extension_csv_format(capsys):
    code, out = run(capsys, "extension", "--prime", "5", "--which", "virasoro", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "left,right,component,coefficient"
    assert "e1,e-1,e0,3" in lines
    assert "e1,e-1,c,4" in lines


def test_extension_output_file(tmp_path, capsys):
    target = tmp_path / "ext.json"
    code, out = run(capsys, "extension", "--prime", "5", "--which", "-1", "--output", str(target))
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["pmap"]["e-1"] == {"c": 1}
    assert payload["pmap"]["e0"] == {"e0": 1}


def test_extension_deterministic(capsys):
    _, out1 = run(capsys, "extension", "--prime", "7", "--which", "virasoro")
    _, out2 = run(capsys, "extension", "--prime", "7", "--which", "virasoro")
    assert out1 == out2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
