"""The sixteen algebraic rules with complex parameters a, b."""

from __future__ import annotations

from fractions import Fraction

from ..diagram import (
    H,
    T,
    Td,
    Tinv,
    X,
    Z,
    cap,
    compose,
    empty,
    identity,
    scalar,
    sequence,
    swap,
    tensor,
    tensor_all,
)
from ..scalars import I, phase
from .core import MatchSpec, Param, RewriteRule, RuleRegistry
from .library import AND, OR, W, with_sqrt2

A = Param("a")
B = Param("b")
LEGS = tuple(Param(n, "int") for n in ("n1", "m1", "n2", "m2"))
LEG_LIMIT = 8


def fused_pair(v, a, b):
    """Two Z spiders sharing one wire, with free legs (n1,m1) and (n2,m2)."""
    n1, m1, n2, m2 = v["n1"], v["m1"], v["n2"], v["m2"]
    first = tensor(Z(n1, m1 + 1, a), identity(n2))
    second = tensor(identity(m1), Z(1 + n2, m2, b))
    return compose(second, first)


def legs_fit(v) -> bool:
    return v["n1"] + v["m1"] + v["n2"] + v["m2"] <= LEG_LIMIT


FUSION_MATCH = MatchSpec(fixed={"n1": 0, "m1": 0, "n2": 0, "m2": 0}, open={0: 0, 1: 0})


def _s1_rhs(v):
    return Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] * v["b"])


S1 = RewriteRule(
    "S1",
    LEGS + (A, B),
    lambda v: fused_pair(v, v["a"], v["b"]),
    _s1_rhs,
    side_condition=legs_fit,
    side_tag="n1+m1+n2+m2 <= 8",
    match=FUSION_MATCH,
    variadic=True,
)

S2 = RewriteRule("S2", (), lambda v: Z(1, 1, 1), lambda v: identity(1))

S3 = RewriteRule("S3", (), lambda v: Z(0, 2, 1), lambda v: cap())

Ept = RewriteRule(
    "Ept",
    (),
    lambda v: tensor(compose(X(1, 0, -1), X(0, 1, -1)), scalar(Fraction(1, 2))),
    lambda v: empty(),
)

B1 = RewriteRule(
    "B1",
    (),
    lambda v: with_sqrt2(compose(Z(1, 2, 1), X(0, 1, 1))),
    lambda v: tensor(X(0, 1, 1), X(0, 1, 1)),
)


def bialgebra_lhs():
    return sequence(
        tensor(Z(1, 2, 1), Z(1, 2, 1)),
        tensor_all(identity(1), swap(), identity(1)),
        tensor(X(2, 1, 1), X(2, 1, 1)),
    )


B2 = RewriteRule(
    "B2",
    (),
    lambda v: with_sqrt2(bialgebra_lhs()),
    lambda v: compose(Z(1, 2, 1), X(2, 1, 1)),
)


def euler_lhs():
    return sequence(Z(1, 1, I), X(1, 1, I), Z(1, 1, I))


EU = RewriteRule(
    "EU",
    (),
    lambda v: euler_lhs(),
    lambda v: tensor(H(), scalar(phase(Fraction(1, 4)))),
)


def demorgan_or():
    pi = X(1, 1, -1)
    return sequence(tensor(pi, pi), AND(), pi)


Brk = RewriteRule("Brk", (), lambda v: OR(), lambda v: demorgan_or())

Bas0 = RewriteRule("Bas0", (), lambda v: compose(T(), X(0, 1, 1)), lambda v: X(0, 1, 1))

Bas1 = RewriteRule(
    "Bas1",
    (),
    lambda v: compose(T(), X(0, 1, -1)),
    lambda v: with_sqrt2(Z(0, 1, 1)),
)

Suc = RewriteRule(
    "Suc",
    (A,),
    lambda v: compose(Td(), Z(0, 1, v["a"])),
    lambda v: Z(0, 1, v["a"] + 1),
)

Inv = RewriteRule("Inv", (), lambda v: compose(T(), Tinv()), lambda v: identity(1))

Zero = RewriteRule(
    "Zero",
    (),
    lambda v: with_sqrt2(Z(0, 1, 0)),
    lambda v: X(0, 1, 1),
)

Pcy = RewriteRule(
    "Pcy",
    (A,),
    lambda v: compose(tensor(Z(1, 1, v["a"]), Z(1, 1, v["a"])), W()),
    lambda v: compose(W(), Z(1, 1, v["a"])),
)

Sym = RewriteRule("Sym", (), lambda v: compose(swap(), W()), lambda v: W())

Aso = RewriteRule(
    "Aso",
    (),
    lambda v: compose(tensor(W(), identity(1)), W()),
    lambda v: compose(tensor(identity(1), W()), W()),
)


def registry_algebraic() -> RuleRegistry:
    return RuleRegistry(
        "algebraic",
        (S1, S2, S3, Ept, B1, B2, EU, Brk, Bas0, Bas1, Suc, Inv, Zero, Pcy, Sym, Aso),
    )


__all__ = ["registry_algebraic", "fused_pair", "bialgebra_lhs", "euler_lhs"]
