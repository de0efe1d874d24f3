from __future__ import annotations

import json
import subprocess
import sys
from dataclasses import replace as dc_replace

import numpy as np
import pytest

from zxcal import cli
from zxcal.diagram import Z, from_json
from zxcal.rules import RuleRegistry, registry_algebraic
from zxcal.semantics import matrix_from_json


def _lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_interpret(fixtures, capsys):
    assert cli.run(["interpret", "--in", str(fixtures / "hadamard.json")]) == 0
    (obj,) = _lines(capsys.readouterr().out)
    assert np.allclose(matrix_from_json(obj), np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_interpret_exact_to_file(fixtures, tmp_path):
    out = tmp_path / "m.json"
    rc = cli.run(["interpret", "--in", str(fixtures / "z_chain.json"), "--backend", "exact", "--out", str(out)])
    assert rc == 0
    assert _lines(out.read_text())


def test_check_rules(capsys):
    assert cli.run(["check-rules", "--set", "algebraic", "--samples", "3"]) == 0
    rows = _lines(capsys.readouterr().out)
    assert rows[-1]["totals"]["passed"] == 16
    assert all(r["pass"] for r in rows[:-1])


def test_check_rules_zh(capsys):
    assert cli.run(["check-rules", "--set", "zh", "--samples", "2", "--threads", "0"]) == 0
    regs = {r["registry"] for r in _lines(capsys.readouterr().out)}
    assert regs == {"zh", "zh->zx"}


def test_catalogue(capsys):
    assert cli.run(["check-rules", "--set", "legacy", "--catalogue"]) == 0
    assert len(_lines(capsys.readouterr().out)) == 25


def test_check_rules_failure_exit(monkeypatch, capsys):
    s1 = registry_algebraic()["S1"]
    bad = dc_replace(s1, rhs=lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] + v["b"]))
    monkeypatch.setattr(cli, "_registries", lambda name: [RuleRegistry("bad", (bad,))])
    assert cli.run(["check-rules", "--samples", "5"]) == 1
    rows = _lines(capsys.readouterr().out)
    assert rows[0]["pass"] is False and rows[0]["counterexample"] is not None


def test_translate(fixtures, capsys):
    assert cli.run(["translate", "--in", str(fixtures / "hbox.json")]) == 0
    (obj,) = _lines(capsys.readouterr().out)
    assert obj["nodes"] and all(n["kind"] != "HBox" for n in obj["nodes"])
    from_json(obj)


def test_translate_rejects_zx(fixtures, capsys):
    assert cli.run(["translate", "--in", str(fixtures / "and_gate.json")]) == 2
    assert "NotZH" in capsys.readouterr().err


def test_simplify(fixtures, capsys):
    assert cli.run(["simplify", "--in", str(fixtures / "z_chain.json")]) == 0
    rows = _lines(capsys.readouterr().out)
    assert rows[-1]["complete"] is True
    assert len(from_json(rows[-1]["diagram"]).nodes) == 1


def test_fuzz(capsys):
    assert cli.run(["fuzz", "--iterations", "20", "--seed", "3"]) == 0
    (summary,) = _lines(capsys.readouterr().out)
    assert summary["violations"] == 0


def test_replay(fixtures, capsys):
    assert cli.run(["replay", "--in", str(fixtures / "script_inv.json")]) == 0
    capsys.readouterr()
    assert cli.run(["replay", "--in", str(fixtures / "script_broken.json")]) == 1
    assert _lines(capsys.readouterr().out)[-1]["first_failure"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["interpret"],
        ["interpret", "--in", "/nonexistent.json"],
        ["check-rules", "--tol", "-1"],
        ["check-rules", "--capacity", "99"],
        ["check-rules", "--samples", "-3"],
        ["fuzz", "--threads", "-1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_malformed_input(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert cli.run(["interpret", "--in", str(p)]) == 2
    p.write_text(json.dumps({"nodes": [{"id": "a", "kind": "Z", "n": 1, "m": 1}], "edges": []}))
    assert cli.run(["interpret", "--in", str(p)]) == 2


def test_capacity_flag(fixtures, capsys):
    assert cli.run(["interpret", "--in", str(fixtures / "bell.json"), "--capacity", "1"]) == 2
    assert "CapacityExceeded" in capsys.readouterr().err


def test_module_entry_point(fixtures):
    proc = subprocess.run(
        [sys.executable, "-m", "zxcal", "interpret", "--in", str(fixtures / "hadamard.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)
