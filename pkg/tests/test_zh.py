from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxcal.diagram import HBox, Kind, X, Z, compose, from_json, identity, structural_eq, tensor
from zxcal.errors import NotZH
from zxcal.rules import check_soundness
from zxcal.semantics import interpret, matrices_equal
from zxcal.zh import (
    hbox_gadget,
    interpret_zh,
    is_zh,
    registry_zh,
    registry_zh_translated,
    translate,
    zh_and,
    zh_not,
    zh_one,
    zh_xor,
)

from strategies import complex_params


def test_hbox_oracle():
    # entry a at the all-ones index, 1 elsewhere
    assert np.allclose(interpret(HBox(1, 1, 3)), [[1, 1], [1, 3]])
    assert np.allclose(interpret(HBox(0, 2, -1)), [[1], [1], [1], [-1]])


def test_gates():
    assert np.allclose(interpret(zh_and()), 2 * np.array([[1, 1, 1, 0], [0, 0, 0, 1]]))
    assert np.allclose(interpret(zh_xor()), 2 * np.array([[1, 0, 0, 1], [0, 1, 1, 0]]))
    assert np.allclose(interpret(zh_one()), [[0], [2]])
    assert np.allclose(interpret(zh_not()), 4 * np.array([[0, 1], [1, 0]]))


def test_not_zh():
    assert not is_zh(X(1, 1, 1))
    assert not is_zh(Z(1, 1, 2))
    with pytest.raises(NotZH):
        interpret_zh(X(1, 1, 1))
    with pytest.raises(NotZH):
        translate(Z(1, 1, 2))


@pytest.mark.parametrize("n,m", [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_gadget_matches_hbox(n, m):
    for a in (0, 1, -1, 2.5, 1j, 0.3 - 0.7j):
        assert matrices_equal(interpret(hbox_gadget(n, m, a)), interpret(HBox(n, m, a)), 1e-9)


@settings(max_examples=50)
@given(complex_params, st.integers(0, 3), st.integers(0, 2))
def test_translation_preserves_meaning(a, n, m):
    d = tensor(HBox(n, m, a), Z(1, 2))
    out = translate(d)
    assert not any(nd.kind is Kind.HBOX for nd in out.nodes.values())
    assert matrices_equal(interpret(out), interpret(d), 1e-9)


def test_translate_fixture(fixtures):
    for name in ("hbox.json", "hbox_state.json"):
        d = from_json(json.loads((fixtures / name).read_text()))
        assert matrices_equal(interpret(translate(d)), interpret_zh(d), 1e-9)


def test_translate_leaves_zx_only_diagrams():
    d = compose(Z(1, 1), identity(1))
    assert translate(d) is d


def test_registry_contents():
    names = registry_zh().names()
    assert len(names) == 11
    assert all(r.language == "zh" for r in registry_zh())
    assert all(r.language == "zx" for r in registry_zh_translated())


@pytest.mark.parametrize("rule", list(registry_zh()) + list(registry_zh_translated()), ids=lambda r: r.name)
@pytest.mark.parametrize("backend", ["float", "exact"])
def test_zh_rules_sound(rule, backend):
    rep = check_soundness(rule, samples=5 if backend == "exact" else 20, backend=backend)
    assert rep.passed, rep.to_json()


@st.composite
def zh_diagrams(draw):
    """Random ZH diagrams: a few layers of H-boxes and white spiders."""
    width = draw(st.integers(1, 3))
    d = identity(width)
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(1, d.n_out))
        m = draw(st.integers(0, 2))
        node = HBox(k, m, draw(complex_params)) if draw(st.booleans()) else Z(k, m)
        d = compose(tensor(node, identity(d.n_out - k)), d)
        if d.n_out == 0:
            d = tensor(d, HBox(0, 1, draw(complex_params)))
    return d


@settings(max_examples=60)
@given(zh_diagrams(), zh_diagrams())
def test_translation_functorial(d1, d2):
    assert structural_eq(translate(tensor(d1, d2)), tensor(translate(d1), translate(d2)))
    if d1.n_in == d2.n_out:
        assert structural_eq(translate(compose(d1, d2)), compose(translate(d1), translate(d2)))


@settings(max_examples=60)
@given(zh_diagrams())
def test_random_zh_translation(d):
    assert matrices_equal(interpret(translate(d)), interpret_zh(d), 1e-9)
