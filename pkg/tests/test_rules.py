from __future__ import annotations

import json
import math
from dataclasses import replace as dc_replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxcal.diagram import H, X, Z, compose, sequence, structural_eq, tensor
from zxcal.errors import MissingParameter, SideConditionViolated
from zxcal.harness import random_diagram
from zxcal.rules import (
    check_soundness,
    get_registry,
    instantiate,
    match,
    registry_algebraic,
    registry_all,
    registry_derived,
    registry_legacy,
    rewrite,
)
from zxcal.rules.algebraic import _s1_rhs
from zxcal.scalars import ExactScalar
from zxcal.semantics import interpret, matrices_equal
from zxcal.zh import registry_zh

r2 = math.sqrt(2)

ALL = registry_all().rules + registry_zh().rules


def test_registry_sizes():
    assert len(registry_algebraic()) == 16
    assert len(registry_legacy()) == 25
    assert len(registry_derived()) == 35
    assert len(registry_zh()) == 11
    assert len(registry_all()) == 76


def test_get_registry_unknown():
    with pytest.raises(KeyError):
        get_registry("nope")


def test_instantiate_fusion():
    lhs, rhs = instantiate(registry_algebraic()["S1"], {"n1": 1, "m1": 0, "n2": 0, "m2": 1, "a": 2, "b": 3})
    assert structural_eq(rhs, Z(1, 1, 6))
    assert lhs.shape == (1, 1)


def test_missing_parameter():
    with pytest.raises(MissingParameter):
        instantiate(registry_algebraic()["S1"], {"n1": 1, "m1": 0, "n2": 0, "m2": 1, "a": 2})


def test_leg_limit():
    with pytest.raises(SideConditionViolated):
        instantiate(registry_algebraic()["S1"], {"n1": 5, "m1": 0, "n2": 0, "m2": 5, "a": 2, "b": 3})


def test_weighted_sum_rule_checks_supplied_pair():
    rule = registry_legacy()["2o"]
    base = {"lam1": 1, "lam2": 1, "alpha": Fraction(0), "beta": Fraction(1, 2)}
    with pytest.raises(SideConditionViolated):
        instantiate(rule, {**base, "lam": 1, "gamma": Fraction(0)})
    lhs, rhs = instantiate(rule, {**base, "lam": math.sqrt(2), "gamma": math.pi / 4})
    assert matrices_equal(interpret(lhs), interpret(rhs), 1e-9)


def test_weighted_sum_rule_cancelling_branch():
    rule = registry_legacy()["2o"]
    lhs, rhs = instantiate(rule, {"lam1": 1, "lam2": 1, "alpha": Fraction(0), "beta": Fraction(1)})
    assert np.allclose(interpret(rhs, "float"), [[1], [0]])
    assert matrices_equal(interpret(lhs, "exact"), interpret(rhs, "exact"))


# frozen oracles, computed by hand from the generator definitions


def test_hopf_oracle():
    lhs, rhs = instantiate(registry_derived()["Hopf"], {})
    want = np.array([[1 / r2, 1 / r2], [0, 0]])
    assert np.allclose(interpret(lhs), want)
    assert np.allclose(interpret(rhs), want)


def test_pi_copy_oracle():
    lhs, rhs = instantiate(registry_derived()["Picp"], {})
    want = np.array([[0], [0], [0], [2]])
    assert np.allclose(interpret(lhs), want)
    assert np.allclose(interpret(rhs), want)


def test_commutation_oracle():
    lhs, rhs = instantiate(registry_derived()["Com"], {})
    want = np.array([[0, 1], [0, 0], [0, 0], [1, 0]])
    assert np.allclose(interpret(lhs), want)
    assert np.allclose(interpret(rhs), want)


@pytest.mark.parametrize("rule", ALL, ids=lambda r: f"{r.language}-{r.name}")
def test_every_rule_sound(rule):
    assert check_soundness(rule, samples=10, backend="float", seed=3).passed


@pytest.mark.parametrize("rule", ALL, ids=lambda r: f"{r.language}-{r.name}")
def test_every_rule_sound_exact(rule):
    rep = check_soundness(rule, samples=3, backend="exact", seed=5)
    assert rep.passed, rep.to_json()


def test_broken_fusion_caught():
    s1 = registry_algebraic()["S1"]
    bad = dc_replace(
        s1, name="S1-broken", rhs=lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] + v["b"])
    )
    rep = check_soundness(bad, samples=20)
    assert not rep.passed
    assert rep.counterexample is not None
    json.dumps(rep.to_json())


def test_zero_samples_still_checks_edges():
    s1 = registry_algebraic()["S1"]
    rep = check_soundness(s1, samples=0)
    assert rep.passed and rep.checked > 0
    bad = dc_replace(s1, rhs=lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] + v["b"]))
    assert not check_soundness(bad, samples=0).passed


def test_exact_report_is_exact():
    rep = check_soundness(registry_derived()["K2"], samples=5, backend="exact")
    assert rep.passed and rep.worst_deviation == 0


def test_catalogue_serialisable():
    for reg in (registry_all(), registry_zh()):
        cat = reg.catalogue()
        assert len(cat) == len(reg)
        json.dumps(cat)
    entry = {e["name"]: e for e in registry_legacy().catalogue()}
    assert entry["2o"]["matchable"] is False
    assert entry["1a"]["variadic"] is True


def test_rewrite_fusion_in_context():
    host = sequence(H(), Z(1, 1, 2), Z(1, 1, 3), H())
    s1 = registry_algebraic()["S1"]
    found = match(s1, host)
    assert len(found) == 1
    emb, vals = found[0]
    out = rewrite(host, s1, emb, vals)
    assert structural_eq(out, sequence(H(), Z(1, 1, 6), H()))


def test_rewrite_hopf():
    host = tensor(compose(X(2, 1, 1), Z(1, 2, 1)), H())
    rule = registry_derived()["Hopf"]
    (emb, vals), = match(rule, host)
    out = rewrite(host, rule, emb, vals)
    assert matrices_equal(interpret(out), interpret(host))
    assert len(out.nodes) == 3


def test_exact_values_in_rhs():
    v = {"n1": 0, "m1": 1, "n2": 1, "m2": 0, "a": ExactScalar((Fraction(1, 2), 0)), "b": ExactScalar((4, 0))}
    assert structural_eq(_s1_rhs(v), Z(1, 1, ExactScalar((2, 0))))


MATCHABLE = [r for r in registry_all() if r.match is not None]


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(0, len(MATCHABLE) - 1))
def test_rewrites_preserve_semantics(seed, k):
    host = random_diagram(seed, 6, 4)
    rule = MATCHABLE[k]
    ref = interpret(host)
    for emb, vals in match(rule, host)[:3]:
        out = rewrite(host, rule, emb, vals)
        assert matrices_equal(interpret(out), ref, 1e-7)
