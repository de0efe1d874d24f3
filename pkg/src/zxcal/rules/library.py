"""Composite diagrams shared by several rule sets."""

from __future__ import annotations

from ..diagram import (
    Diagram,
    T,
    Td,
    Tdinv,
    Tinv,
    X,
    Z,
    compose,
    identity,
    scalar,
    sequence,
    swap,
    tensor,
    tensor_all,
    transpose,
)

I1 = identity


def sqrt2() -> Diagram:
    """The scalar sqrt(2) as a green effect on a red state."""
    return compose(Z(1, 0, 1), X(0, 1, 1))


def with_sqrt2(d: Diagram) -> Diagram:
    return tensor(d, sqrt2())


def not_gate() -> Diagram:
    return X(1, 1, -1)


def W() -> Diagram:
    """1->2 W node: |0> -> |00>/sqrt2, |1> -> (|01>+|10>)/sqrt2."""
    merge = compose(Z(2, 0, -1), tensor(T(), T()))
    return sequence(
        X(1, 2, 1),
        tensor(Z(1, 2, 1), Z(1, 2, 1)),
        tensor_all(identity(1), swap(), identity(1)),
        tensor_all(identity(2), merge),
    )


def Wt() -> Diagram:
    """2->1 transpose of :func:`W`."""
    return transpose(W())


def AND() -> Diagram:
    return sequence(tensor(T(), T()), Z(2, 1, 1), Tinv())


def OR() -> Diagram:
    return sequence(tensor(Td(), Td()), Z(2, 1, 1), Tdinv())


def state_z(a) -> Diagram:
    """The vector (1, a)."""
    return Z(0, 1, a)


def effect_z(a) -> Diagram:
    return Z(1, 0, a)


def ket1_sqrt2() -> Diagram:
    """sqrt(2)|1>."""
    return X(0, 1, -1)


def ket0_sqrt2() -> Diagram:
    """sqrt(2)|0>."""
    return X(0, 1, 1)


def closed(state: Diagram, effect: Diagram) -> Diagram:
    return compose(effect, state)


__all__ = [
    "AND",
    "OR",
    "I1",
    "W",
    "Wt",
    "closed",
    "effect_z",
    "ket0_sqrt2",
    "ket1_sqrt2",
    "not_gate",
    "scalar",
    "sqrt2",
    "state_z",
    "with_sqrt2",
]
