"""Consequences of the algebraic rules, each checked against the semantics.

The last block holds small bookkeeping identities (inverse triangles, red
identity, self-loops, loop scalars) that the simplifier relies on.
"""

from __future__ import annotations

from fractions import Fraction

from ..diagram import (
    H,
    T,
    Td,
    Tdinv,
    Tinv,
    X,
    Z,
    cap,
    circle,
    compose,
    cup,
    empty,
    identity,
    scalar,
    sequence,
    swap,
    tensor,
    tensor_all,
)
from ..scalars import INV_SQRT2
from .algebraic import A, B, FUSION_MATCH, LEGS, demorgan_or, legs_fit
from .core import MatchSpec, Param, RewriteRule, RuleRegistry
from .library import AND, OR, Wt, sqrt2, with_sqrt2

PI = -1


def _nonzero(name):
    return lambda v: complex(v[name]) != 0


def _red_pi_state():
    return X(0, 1, -1)


Hopf = RewriteRule(
    "Hopf",
    (),
    lambda v: compose(X(2, 1, 1), Z(1, 2, 1)),
    lambda v: tensor(Z(0, 1, 0), X(1, 0, 0)),
)

Ivs = RewriteRule(
    "Ivs",
    (A,),
    lambda v: tensor(
        compose(Z(1, 0, v["a"]), _red_pi_state()),
        compose(Z(1, 0, 1 / v["a"]), _red_pi_state()),
    ),
    lambda v: compose(X(1, 0, -1), _red_pi_state()),
    side_condition=_nonzero("a"),
    side_tag="a != 0",
)

Picp = RewriteRule(
    "Picp",
    (),
    lambda v: with_sqrt2(compose(Z(1, 2, 1), _red_pi_state())),
    lambda v: tensor(_red_pi_state(), _red_pi_state()),
)

Com = RewriteRule(
    "Com",
    (),
    lambda v: compose(Z(1, 2, 1), X(1, 1, PI)),
    lambda v: compose(tensor(X(1, 1, PI), X(1, 1, PI)), Z(1, 2, 1)),
)

RedPiDot = RewriteRule(
    "RedPiDot",
    (),
    lambda v: compose(Z(1, 0, 1), _red_pi_state()),
    lambda v: compose(Z(1, 0, 1), X(0, 1, 1)),
)

K2 = RewriteRule(
    "K2",
    (A,),
    lambda v: compose(X(1, 1, PI), Z(1, 1, v["a"])),
    lambda v: tensor(compose(Z(1, 1, 1 / v["a"]), X(1, 1, PI)), scalar(v["a"])),
    side_condition=_nonzero("a"),
    side_tag="a != 0",
)

Sca = RewriteRule(
    "Sca",
    (A, B),
    lambda v: tensor(scalar(v["a"]), scalar(v["b"])),
    lambda v: scalar(v["a"] * v["b"]),
)

Zos = RewriteRule("Zos", (), lambda v: Z(0, 0, 0), lambda v: empty())

Sml = RewriteRule(
    "Sml",
    (A, B),
    lambda v: tensor(scalar(v["a"]), compose(Z(1, 0, v["b"]), _red_pi_state())),
    lambda v: compose(Z(1, 0, v["a"] * v["b"]), _red_pi_state()),
)

Irt = RewriteRule(
    "Irt",
    (),
    lambda v: tensor(sqrt2(), scalar(INV_SQRT2)),
    lambda v: empty(),
)

Bas1p = RewriteRule(
    "Bas1'",
    (),
    lambda v: _red_pi_state(),
    lambda v: with_sqrt2(compose(Tinv(), Z(0, 1, 1))),
)

IVT = RewriteRule(
    "IVT",
    (),
    lambda v: sequence(Z(1, 1, -1), T(), Z(1, 1, -1), T()),
    lambda v: identity(1),
)

Zrp = RewriteRule(
    "Zrp",
    (),
    lambda v: with_sqrt2(compose(Td(), Z(0, 1, -1))),
    lambda v: X(0, 1, 1),
)

Zerop = RewriteRule(
    "Zero'",
    (),
    lambda v: Z(1, 1, 0),
    lambda v: tensor(compose(X(0, 1, 1), X(1, 0, 1)), scalar(Fraction(1, 2))),
)

Bas0p = RewriteRule(
    "Bas0'",
    (),
    lambda v: compose(Tinv(), X(0, 1, 1)),
    lambda v: X(0, 1, 1),
)

TR4g = RewriteRule(
    "TR4g",
    (),
    lambda v: compose(Z(2, 1, 1), tensor(identity(1), compose(T(), _red_pi_state()))),
    lambda v: with_sqrt2(identity(1)),
)

Hopfgtr = RewriteRule(
    "Hopfgtr",
    (),
    lambda v: sequence(Z(1, 2, 1), tensor(T(), identity(1)), Z(2, 1, 1)),
    lambda v: identity(1),
)

TR19 = RewriteRule(
    "TR19",
    (),
    lambda v: compose(Td(), X(0, 1, 1)),
    lambda v: with_sqrt2(Z(0, 1, 1)),
)

TrHopfFlip = RewriteRule(
    "TrHopfFlip",
    (),
    lambda v: with_sqrt2(sequence(X(1, 2, 1), tensor(Td(), identity(1)), Z(2, 1, 1))),
    lambda v: Td(),
)

PiTinv = RewriteRule(
    "PiTinv",
    (),
    lambda v: compose(X(1, 1, PI), Tinv()),
    lambda v: compose(Tdinv(), X(1, 1, PI)),
)

ADp = RewriteRule(
    "AD'",
    (A, B),
    lambda v: with_sqrt2(compose(Wt(), tensor(Z(0, 1, v["a"]), Z(0, 1, v["b"])))),
    lambda v: Z(0, 1, v["a"] + v["b"]),
)

TRPh = RewriteRule(
    "TRPh",
    (A,),
    lambda v: compose(T(), Z(0, 1, v["a"])),
    lambda v: tensor(Z(0, 1, v["a"] / (1 + v["a"])), scalar(1 + v["a"])),
    side_condition=lambda v: complex(v["a"]) != -1,
    side_tag="a != -1",
)

H2 = RewriteRule(
    "H2",
    (),
    lambda v: with_sqrt2(H()),
    lambda v: sequence(T(), Z(1, 1, -2), Td()),
)

BiA = RewriteRule(
    "BiA",
    (),
    lambda v: compose(Z(1, 2, 1), AND()),
    lambda v: sequence(
        tensor(Z(1, 2, 1), Z(1, 2, 1)),
        tensor_all(identity(1), swap(), identity(1)),
        tensor(AND(), AND()),
    ),
)

Dis = RewriteRule(
    "Dis",
    (),
    lambda v: compose(AND(), tensor(identity(1), X(2, 1, 1))),
    lambda v: sequence(
        tensor(Z(1, 2, 1), identity(2)),
        tensor_all(identity(1), swap(), identity(1)),
        tensor(AND(), AND()),
        X(2, 1, 1),
    ),
)

BiAr = RewriteRule(
    "BiAr",
    (),
    lambda v: compose(AND(), tensor(_red_pi_state(), identity(1))),
    lambda v: with_sqrt2(identity(1)),
)

Brkp = RewriteRule(
    "Brkp",
    (A,),
    lambda v: compose(Z(1, 0, v["a"]), OR()),
    lambda v: compose(Z(1, 0, v["a"]), demorgan_or()),
)

Brk1p = RewriteRule(
    "Brk1'",
    (),
    lambda v: sequence(
        Z(1, 3, 1),
        tensor_all(identity(1), compose(Td(), Td()), identity(1)),
        tensor(identity(1), cup()),
    ),
    lambda v: identity(1),
)

NM = (Param("n", "int"), Param("m", "int"), A)


def _hadamards(k):
    return tensor_all(*[H() for _ in range(k)])


XDef = RewriteRule(
    "XDef",
    NM,
    lambda v: X(v["n"], v["m"], v["a"]),
    lambda v: sequence(_hadamards(v["n"]), Z(v["n"], v["m"], v["a"]), _hadamards(v["m"])),
    side_condition=lambda v: v["n"] + v["m"] <= 8,
    side_tag="n+m <= 8",
    match=MatchSpec(fixed={"n": 1, "m": 1}),
    variadic=True,
)


def _red_pair(v, a, b):
    n1, m1, n2, m2 = v["n1"], v["m1"], v["n2"], v["m2"]
    first = tensor(X(n1, m1 + 1, a), identity(n2))
    second = tensor(identity(m1), X(1 + n2, m2, b))
    return compose(second, first)


XFuse = RewriteRule(
    "XFuse",
    LEGS + (A, B),
    lambda v: _red_pair(v, v["a"], v["b"]),
    lambda v: X(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] * v["b"]),
    side_condition=legs_fit,
    side_tag="n1+m1+n2+m2 <= 8",
    match=FUSION_MATCH,
    variadic=True,
)

# -- bookkeeping identities used by the simplifier --------------------------

InvP = RewriteRule("Inv'", (), lambda v: compose(Tinv(), T()), lambda v: identity(1))

Xid = RewriteRule("Xid", (), lambda v: X(1, 1, 1), lambda v: identity(1))


def _self_loop(d):
    return sequence(cap(), tensor(d, identity(1)), cup())


ZLoop = RewriteRule(
    "ZLoop",
    (A,),
    lambda v: _self_loop(Z(1, 1, v["a"])),
    lambda v: Z(0, 0, v["a"]),
    match=MatchSpec(open={0: 0}),
)

XLoop = RewriteRule(
    "XLoop",
    (A,),
    lambda v: _self_loop(X(1, 1, v["a"])),
    lambda v: X(0, 0, v["a"]),
    match=MatchSpec(open={0: 0}),
)

LoopSca = RewriteRule(
    "LoopSca",
    (A,),
    lambda v: tensor(circle(), scalar(v["a"])),
    lambda v: scalar(2 * v["a"]),
)


def registry_derived() -> RuleRegistry:
    return RuleRegistry(
        "derived",
        (
            Hopf, Ivs, Picp, Com, RedPiDot, K2, Sca, Zos, Sml, Irt, Bas1p, IVT, Zrp,
            Zerop, Bas0p, TR4g, Hopfgtr, TR19, TrHopfFlip, PiTinv, ADp, TRPh, H2,
            BiA, Dis, BiAr, Brkp, Brk1p, XDef, XFuse, InvP, Xid, ZLoop, XLoop, LoopSca,
        ),
    )  # fmt: skip
