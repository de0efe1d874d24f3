from __future__ import annotations

import json
import math
from dataclasses import replace as dc_replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxcal.diagram import Z, sequence, validate
from zxcal.errors import Degenerate
from zxcal.harness import (
    DerivationScript,
    composable_pair,
    delete_node,
    fuzz_rewrites,
    p_rule_angles,
    p_rule_constant,
    random_diagram,
    replay,
    sweep,
    with_exact_params,
)
from zxcal.rules import registry_algebraic
from zxcal.scalars import is_exact
from zxcal.semantics import interpret


@given(st.integers(0, 10**6))
def test_random_diagrams_valid(seed):
    d = random_diagram(seed, 8, 6)
    assert validate(d) == []
    assert len(d.nodes) <= 8 and d.n_in + d.n_out <= 6


def test_random_diagram_deterministic():
    assert random_diagram(7).shape == random_diagram(7).shape
    assert sorted(random_diagram(7).nodes) == sorted(random_diagram(7).nodes)


@given(st.integers(0, 10**6))
def test_composable_pairs(seed):
    d1, d2 = composable_pair(seed)
    assert d1.n_in == d2.n_out
    e = with_exact_params(d1, seed)
    assert all(is_exact(nd.param) for nd in e.nodes.values() if nd.param is not None)
    interpret(e, "exact")


def test_sweep_report():
    rep = sweep([registry_algebraic()], samples=5)
    assert rep.ok and rep.passed == 16
    json.dumps(rep.to_json())


def test_sweep_threads_agree():
    one = sweep([registry_algebraic()], samples=4, threads=1).to_json()
    many = sweep([registry_algebraic()], samples=4, threads=4).to_json()
    assert one == many


def test_delete_node_keeps_validity():
    d = sequence(Z(1, 2), Z(2, 1))
    out = delete_node(d, 0)
    assert validate(out) == []
    assert len(out.nodes) == 1


def test_fuzz_clean():
    rep = fuzz_rewrites(60, seed=1)
    assert rep.ok and rep.applied > 0
    json.dumps(rep.to_json())


def test_fuzz_finds_and_shrinks_broken_rule():
    s1 = registry_algebraic()["S1"]
    bad = dc_replace(s1, rhs=lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] + v["b"]))
    rep = fuzz_rewrites(80, seed=2, rules=[bad])
    assert not rep.ok
    v = rep.violations[0]
    assert len(v.reproducer.nodes) <= len(v.diagram.nodes)
    assert len(v.reproducer.nodes) == 2


def _script(fixtures, name):
    return DerivationScript.from_json(json.loads((fixtures / name).read_text()))


def test_replay_good_scripts(fixtures):
    for name in ("script_inv.json", "script_fusion.json"):
        rep = replay(_script(fixtures, name))
        assert rep.ok and rep.first_failure is None


def test_replay_broken_script(fixtures):
    rep = replay(_script(fixtures, "script_broken.json"))
    assert not rep.ok and rep.first_failure == 1


def test_script_arity_checked():
    with pytest.raises(ValueError):
        DerivationScript("x", [Z(1, 1), Z(1, 2)])


def test_script_roundtrip(fixtures):
    s = _script(fixtures, "script_fusion.json")
    again = DerivationScript.from_json(json.loads(json.dumps(s.to_json())))
    assert again.rules == s.rules and len(again.steps) == len(s.steps)


angle = st.floats(-math.pi, math.pi, allow_nan=False)


@settings(max_examples=200)
@given(angle, angle, angle)
def test_p_rule_proportional(a, b, g):
    try:
        out = p_rule_angles(a, b, g)
    except Degenerate:
        return
    assert p_rule_constant((a, b, g), out, 1e-6) is not None


def test_p_rule_degenerate():
    with pytest.raises(Degenerate):
        p_rule_angles(math.pi / 2, 0.0, math.pi / 2)
