from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import diagrams
from zxcal.diagram import (
    H,
    HBox,
    T,
    Td,
    Tinv,
    X,
    Z,
    adjoint,
    cap,
    circle,
    compose,
    cup,
    empty,
    identity,
    swap,
    tensor,
    transpose,
)
from zxcal.errors import CapacityExceeded, InexactParameter, ShapeMismatch, ZeroReference
from zxcal.harness import random_diagram
from zxcal.scalars import ExactScalar
from zxcal.semantics import (
    interpret,
    matrices_equal,
    matrix_from_json,
    matrix_to_json,
    proportional,
    to_float_matrix,
)

R = 1 / np.sqrt(2)
HALF_ROOT2 = ExactScalar(0, Fraction(1, 2))


def ex(rows):
    """Object array of ExactScalars from nested ints/ExactScalars."""
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = ExactScalar.coerce(v)
    return out


def test_generators_exact():
    assert matrices_equal(interpret(H(), "exact"), ex([[HALF_ROOT2, HALF_ROOT2], [HALF_ROOT2, -HALF_ROOT2]]))
    assert matrices_equal(interpret(T(), "exact"), ex([[1, 1], [0, 1]]))
    assert matrices_equal(interpret(Tinv(), "exact"), ex([[1, -1], [0, 1]]))
    assert matrices_equal(interpret(Td(), "exact"), ex([[1, 0], [1, 1]]))
    assert matrices_equal(interpret(swap(), "exact"), ex([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
    assert matrices_equal(interpret(cap(), "exact"), ex([[1], [0], [0], [1]]))
    assert matrices_equal(interpret(cup(), "exact"), ex([[1, 0, 0, 1]]))


def test_spiders():
    np.testing.assert_allclose(interpret(Z(1, 1, 1)), np.eye(2))
    np.testing.assert_allclose(interpret(Z(0, 2, 5)), [[1], [0], [0], [5]])
    np.testing.assert_allclose(interpret(X(1, 1, -1)), [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(interpret(X(0, 0, 3)), [[4]])
    np.testing.assert_allclose(interpret(HBox(1, 1, 7)), [[1, 1], [1, 7]])
    np.testing.assert_allclose(interpret(HBox(0, 0, 2 + 1j)), [[2 + 1j]])


def test_x_spider_formula():
    # 2^{-k/2} (1 + a (-1)^{|x|}) on every index
    a = 0.3 - 1.2j
    m = interpret(X(2, 1, a))
    for out in range(2):
        for inp in range(4):
            bits = bin(out).count("1") + bin(inp).count("1")
            assert abs(m[out, inp] - 2 ** -1.5 * (1 + a * (-1) ** bits)) < 1e-12


def test_loops_empty_and_identity():
    np.testing.assert_allclose(interpret(circle()), [[2]])
    np.testing.assert_allclose(interpret(empty()), [[1]])
    np.testing.assert_allclose(interpret(identity(2)), np.eye(4))


def test_matrices_equal_examples():
    m = interpret(Z(2, 1, 3))
    assert matrices_equal(m, m, 0)
    assert matrices_equal(interpret(compose(H(), H())), interpret(identity(1)), 1e-12)
    assert not matrices_equal(interpret(Z(1, 1, 2)), interpret(Z(1, 1, 3)), 1e-9)
    with pytest.raises(ShapeMismatch):
        matrices_equal(interpret(Z(1, 1)), interpret(Z(1, 2)), 1e-9)


def test_proportional():
    m = interpret(X(1, 2, 0.5j))
    assert abs(proportional(2 * m, m) - 2) < 1e-12
    assert abs(proportional(m, m) - 1) < 1e-12
    assert proportional(interpret(Z(1, 1, 2)), interpret(Z(1, 1, 3))) is None
    with pytest.raises(ZeroReference):
        proportional(m, 0 * m)


def test_inexact_and_capacity():
    with pytest.raises(InexactParameter):
        interpret(Z(1, 1, 0.5), "exact")
    with pytest.raises(CapacityExceeded):
        interpret(Z(7, 6), "float")
    with pytest.raises(CapacityExceeded):
        interpret(Z(5, 4), "exact")
    assert interpret(Z(5, 4), "exact", capacity=10).shape == (16, 32)


def test_capacity_env(monkeypatch):
    monkeypatch.setenv("ZXCAL_CAPACITY", "2")
    with pytest.raises(CapacityExceeded):
        interpret(Z(2, 1))


def test_matrix_json_round_trip():
    m = interpret(H(), "exact")
    assert matrices_equal(matrix_from_json(matrix_to_json(m)), m)
    f = interpret(X(1, 2, 1j))
    assert matrices_equal(matrix_from_json(matrix_to_json(f)), f, 0)


def _exact_diagram(seed):
    d = random_diagram(seed, 5, 4)
    from zxcal.diagram import Diagram, Node
    import random

    rng = random.Random(seed)
    nodes = {}
    for nid, nd in d.nodes.items():
        p = nd.param
        if p is not None:
            p = ExactScalar((Fraction(rng.randint(-6, 6), 4), Fraction(rng.randint(-6, 6), 4)))
        nodes[nid] = Node(nd.kind, nd.n, nd.m, p)
    return Diagram(nodes, d.edges, d.n_in, d.n_out, d.loops)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_functoriality_exact(s1, s2):
    a, b = _exact_diagram(s1), _exact_diagram(s2)
    ma, mb = interpret(a, "exact"), interpret(b, "exact")
    kron = np.kron(ma, mb)
    assert matrices_equal(interpret(tensor(a, b), "exact"), kron)
    if a.n_in == b.n_out:
        assert matrices_equal(interpret(compose(a, b), "exact"), ma.dot(mb))


@given(diagrams(max_nodes=6, max_wires=6))
def test_transpose_and_adjoint(d):
    m = interpret(d)
    assert matrices_equal(interpret(transpose(d)), m.T, 1e-9)
    assert matrices_equal(interpret(adjoint(d)), m.conj().T, 1e-9)


@given(st.integers(0, 10**6))
def test_backends_agree(seed):
    d = _exact_diagram(seed)
    assert matrices_equal(to_float_matrix(interpret(d, "exact")), interpret(d, "float"), 1e-9)


@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_order_independence(seed, rnd):
    d = random_diagram(seed, 6, 4)
    ids = list(d.nodes)
    rnd.shuffle(ids)
    from zxcal.diagram import Diagram

    mp = {old: new for new, old in enumerate(ids)}
    shuffled = Diagram(
        {mp[i]: nd for i, nd in d.nodes.items()},
        [tuple(("n", mp[e[1]], e[2]) if e[0] == "n" else e for e in edge) for edge in d.edges],
        d.n_in,
        d.n_out,
        d.loops,
    )
    assert matrices_equal(interpret(d), interpret(shuffled), 1e-9)
