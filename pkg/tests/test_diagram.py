from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from strategies import diagrams
from zxcal.diagram import (
    Diagram,
    H,
    HBox,
    Kind,
    Node,
    T,
    X,
    Z,
    adjoint,
    cap,
    compose,
    cup,
    empty,
    from_json,
    identity,
    make_generator,
    port_end,
    structural_eq,
    tensor,
    to_json,
    transpose,
    validate,
)
from zxcal.errors import ArityMismatch, IllegalArity
from zxcal.semantics import interpret


def test_make_generator():
    d = make_generator(Kind.Z, 1, 1, 1)
    assert d.shape == (1, 1) and len(d.nodes) == 1
    with pytest.raises(IllegalArity):
        make_generator(Kind.H, 2, 1)
    hb = make_generator(Kind.HBOX, 0, 2)
    assert hb.shape == (0, 2) and hb.nodes[0].param == -1
    assert validate(hb) == []


def test_compose_identity_unit():
    d = Z(1, 1, 3)
    assert structural_eq(compose(identity(1), d), d)
    assert structural_eq(compose(d, identity(1)), d)


def test_compose_hadamards_and_arity_mismatch():
    d = compose(H(), H())
    assert d.shape == (1, 1) and len(d.nodes) == 2
    with pytest.raises(ArityMismatch):
        compose(Z(2, 1), Z(1, 1))


def test_cup_after_cap_is_a_loop():
    d = compose(cup(), cap())
    assert d.shape == (0, 0) and d.loops == 1 and not d.nodes and not d.edges


def test_tensor_units_and_shapes():
    d = Z(2, 1, 5)
    assert structural_eq(tensor(d, empty()), d)
    assert structural_eq(tensor(empty(), d), d)
    assert structural_eq(tensor(identity(1), identity(1)), identity(2))
    two = tensor(Z(0, 1, 2), Z(0, 1, 3))
    assert two.shape == (0, 2) and len(two.nodes) == 2


def test_transpose():
    t = transpose(T())
    assert t.shape == (1, 1)
    assert np.allclose(interpret(t), [[1, 0], [1, 1]])
    assert structural_eq(transpose(cap()), cup())
    d = compose(Z(1, 2, 2), X(3, 1, 1j))
    assert structural_eq(transpose(transpose(d)), d)


def test_adjoint():
    assert structural_eq(adjoint(Z(1, 1, 1j)), Z(1, 1, -1j))
    assert structural_eq(adjoint(H()), H())
    assert structural_eq(adjoint(Z(0, 2, 2 + 3j)), Z(2, 0, 2 - 3j))


def test_validate_reports_unwired_port():
    nodes = {3: Node(Kind.Z, 1, 2, 1)}
    edges = [(("i", 0), port_end(3, 0)), (("o", 0), port_end(3, 1))]
    d = Diagram(nodes, edges, 1, 1)
    assert validate(d) == ["port (n3,2) unwired"]


def test_validate_duplicate_boundary():
    nodes = {0: Node(Kind.Z, 0, 2, 1)}
    edges = [(("o", 0), port_end(0, 0)), (("o", 0), port_end(0, 1))]
    d = Diagram(nodes, edges, 0, 1)
    assert len(validate(d)) == 1


def test_structural_eq():
    d = compose(Z(1, 2, 2), X(1, 1, 3))
    relabeled = Diagram({7 + k: nd for k, nd in d.nodes.items()}, [
        tuple(("n", e[1] + 7, e[2]) if e[0] == "n" else e for e in edge) for edge in d.edges
    ], d.n_in, d.n_out)
    assert structural_eq(d, relabeled)
    assert not structural_eq(Z(1, 1, 2), X(1, 1, 2))


def test_structural_eq_distinguishes_wirings():
    # same node multiset, different wiring
    a = compose(tensor(Z(1, 1, 2), Z(1, 1, 3)), Z(0, 2, 1))
    b = tensor(compose(Z(1, 1, 2), Z(0, 1, 1)), Z(0, 1, 3))
    assert not structural_eq(a, b)


def test_json_round_trip_and_defaults():
    d = compose(tensor(HBox(1, 1, 3), Z(1, 1)), cap())
    assert structural_eq(from_json(to_json(d)), d)
    obj = {
        "nodes": [{"id": "a", "kind": "HBox", "n": 1, "m": 1}, {"id": "b", "kind": "X", "n": 1, "m": 1}],
        "edges": [[{"node": "a", "port": 1}, {"node": "b", "port": 0}]],
        "inputs": [{"node": "a", "port": 0}],
        "outputs": [{"node": "b", "port": 1}],
    }
    d = from_json(obj)
    params = sorted(nd.param for nd in d.nodes.values())
    assert params == [-1, 1]


def test_closed_loops_survive_json():
    d = tensor(compose(cup(), cap()), Z(1, 1))
    back = from_json(to_json(d))
    assert back.loops == 1 and structural_eq(back, d)


@given(diagrams(), diagrams(), diagrams())
def test_tensor_associative(a, b, c):
    assert structural_eq(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))


@given(diagrams())
def test_generated_diagrams_are_valid(d):
    assert validate(d) == []
    assert validate(tensor(d, d)) == []
    assert structural_eq(transpose(transpose(d)), d)
    assert structural_eq(adjoint(adjoint(d)), d)


@given(diagrams())
def test_compose_associative_on_square_pieces(d):
    k = d.n_in
    left = identity(d.n_out)
    right = identity(k)
    assert structural_eq(compose(compose(left, d), right), compose(left, compose(d, right)))
