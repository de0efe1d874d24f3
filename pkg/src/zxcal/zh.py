"""ZH diagrams: white spiders and H-boxes, their meaning and their ZX image.

A ZH diagram is an ordinary :class:`Diagram` whose nodes are phase-free Z
spiders or H-boxes.  ``translate`` replaces each H-box(n, m, a) by a
Z spider with parameter ``a - 1`` carrying a triangle on every input leg and
an upside-down triangle on every output leg.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import numpy as np

from .diagram import (
    Diagram,
    End,
    HBox,
    Kind,
    T,
    Td,
    Z,
    _partner_of,
    compose,
    identity,
    sequence,
    splice,
    swap,
    tensor,
    tensor_all,
)
from .errors import NotZH
from .params import is_symbolic
from .rules.algebraic import A, B, FUSION_MATCH, LEGS, fused_pair, legs_fit
from .rules.core import RewriteRule, RuleRegistry
from .scalars import values_close
from .semantics import interpret


def zh_problems(d: Diagram) -> list[str]:
    out = []
    for nid, nd in d.nodes.items():
        if nd.kind is Kind.HBOX:
            continue
        if nd.kind is Kind.Z and (is_symbolic(nd.param) or values_close(nd.param, 1)):
            continue
        out.append(f"node n{nid} ({nd.kind.value}) is not a white spider or H-box")
    return out


def is_zh(d: Diagram) -> bool:
    return not zh_problems(d)


def interpret_zh(d: Diagram, backend: str = "float", capacity: int | None = None) -> np.ndarray:
    probs = zh_problems(d)
    if probs:
        raise NotZH("; ".join(probs))
    return interpret(d, backend, capacity)


def hbox_gadget(n: int, m: int, a) -> Diagram:
    """The ZX image of H-box(n, m, a)."""
    return sequence(
        tensor_all(*[T() for _ in range(n)]) if n else identity(0),
        Z(n, m, a - 1),
        tensor_all(*[Td() for _ in range(m)]) if m else identity(0),
    )


def substitute(d: Diagram, gadgets: Mapping[int, Diagram]) -> Diagram:
    """Replace node ``u`` by ``gadgets[u]`` for each key, gluing port k to slot k."""
    nodes = {nid: nd for nid, nd in d.nodes.items() if nid not in gadgets}
    edges: list[tuple[End, End]] = list(d.edges)
    glue: dict[End, End] = {}
    nxt = max(list(d.nodes) + [-1]) + 1
    for u, g in gadgets.items():
        n = d.nodes[u].n
        if g.shape != (n, d.nodes[u].m):
            raise ValueError(f"gadget shape {g.shape} does not fit node n{u}")
        remap = {}
        for gid, nd in g.nodes.items():
            remap[gid] = nxt
            nodes[nxt] = nd
            nxt += 1

        def tag(e: End, u=u, remap=remap) -> End:
            if e[0] == "n":
                return ("n", remap[e[1]], e[2])
            return ("g", u, e[0], e[1])

        edges += [(tag(a), tag(b)) for a, b in g.edges]
        for k in range(g.n_in):
            glue[("g", u, "i", k)] = ("n", u, k)
        for j in range(g.n_out):
            glue[("g", u, "o", j)] = ("n", u, n + j)
        for a, b in list(glue.items()):
            glue[b] = a
    new_edges, loops = splice(_partner_of(edges), glue)
    extra = sum(g.loops for g in gadgets.values())
    return Diagram(nodes, new_edges, d.n_in, d.n_out, d.loops + loops + extra)


def translate(d: Diagram) -> Diagram:
    probs = zh_problems(d)
    if probs:
        raise NotZH("; ".join(probs))
    gadgets = {
        nid: hbox_gadget(nd.n, nd.m, nd.param) for nid, nd in d.nodes.items() if nd.kind is Kind.HBOX
    }
    return substitute(d, gadgets) if gadgets else d


# -- ZH building blocks ------------------------------------------------------


def zh_xor() -> Diagram:
    """2 -> 1, twice the parity map."""
    return sequence(tensor(HBox(1, 1), HBox(1, 1)), Z(2, 1), HBox(1, 1))


def zh_and() -> Diagram:
    """2 -> 1, twice the AND gate."""
    return compose(HBox(1, 1), HBox(2, 1))


def zh_one() -> Diagram:
    """The state 2|1>."""
    return compose(HBox(1, 1), HBox(0, 1))


def zh_not() -> Diagram:
    """Four times the NOT gate."""
    return compose(zh_xor(), tensor(identity(1), zh_one()))


def zh_scalar(c) -> Diagram:
    return HBox(0, 0, c)


def _copy_pairs() -> Diagram:
    """(x, y) -> (x, y, x, y)."""
    return compose(tensor_all(identity(1), swap(), identity(1)), tensor(Z(1, 2), Z(1, 2)))


ZS1 = RewriteRule(
    "ZS1",
    LEGS,
    lambda v: fused_pair(v, 1, 1),
    lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"]),
    side_condition=legs_fit,
    side_tag="n1+m1+n2+m2 <= 8",
    match=FUSION_MATCH,
    language="zh",
    variadic=True,
)

ZS2 = RewriteRule("ZS2", (), lambda v: Z(1, 1), lambda v: identity(1), language="zh")

HS1 = RewriteRule(
    "HS1",
    (A,),
    lambda v: sequence(HBox(2, 1, v["a"]), HBox(1, 1), HBox(1, 2)),
    lambda v: tensor(HBox(2, 2, v["a"]), zh_scalar(2)),
    language="zh",
)

HS2 = RewriteRule(
    "HS2",
    (),
    lambda v: compose(HBox(1, 1), HBox(1, 1)),
    lambda v: tensor(identity(1), zh_scalar(2)),
    language="zh",
)

BA1 = RewriteRule(
    "BA1",
    (),
    lambda v: compose(tensor(zh_xor(), zh_xor()), _copy_pairs()),
    lambda v: tensor(compose(Z(1, 2), zh_xor()), zh_scalar(2)),
    language="zh",
)

BA2 = RewriteRule(
    "BA2",
    (),
    lambda v: tensor(compose(Z(1, 2), zh_and()), zh_scalar(2)),
    lambda v: compose(tensor(zh_and(), zh_and()), _copy_pairs()),
    language="zh",
)

M = RewriteRule(
    "M",
    (A, B),
    lambda v: compose(tensor(HBox(2, 0, v["a"]), HBox(2, 0, v["b"])), _copy_pairs()),
    lambda v: HBox(2, 0, v["a"] * v["b"]),
    language="zh",
)

U = RewriteRule(
    "U",
    (),
    lambda v: HBox(1, 1, 1),
    lambda v: compose(Z(0, 1), Z(1, 0)),
    language="zh",
)

AVG = RewriteRule(
    "A",
    (A, B),
    lambda v: tensor(
        sequence(
            Z(1, 2),
            tensor(HBox(1, 1, v["a"]), HBox(1, 1, v["b"])),
            tensor(HBox(1, 1), HBox(1, 1)),
            Z(2, 1),
            HBox(1, 0),
        ),
        zh_scalar(Fraction(1, 4)),
    ),
    lambda v: HBox(1, 0, (v["a"] + v["b"]) / 2),
    language="zh",
)

INTRO = RewriteRule(
    "I",
    (A,),
    lambda v: HBox(1, 1, v["a"]),
    lambda v: compose(HBox(2, 1, v["a"]), Z(1, 2)),
    language="zh",
)

ORTHO = RewriteRule(
    "O",
    (A,),
    lambda v: sequence(Z(1, 2), tensor(identity(1), zh_not()), HBox(2, 0, v["a"])),
    lambda v: tensor(Z(1, 0), zh_scalar(4)),
    language="zh",
)


def registry_zh() -> RuleRegistry:
    return RuleRegistry("zh", (ZS1, ZS2, HS1, HS2, BA1, BA2, M, U, AVG, INTRO, ORTHO))


def translated(rule: RewriteRule) -> RewriteRule:
    """The same rule with both sides pushed through :func:`translate`."""
    return RewriteRule(
        rule.name,
        rule.params,
        lambda v: translate(rule.lhs(v)),
        lambda v: translate(rule.rhs(v)),
        side_condition=rule.side_condition,
        side_tag=rule.side_tag,
        derive=rule.derive,
        match=None,
        language="zx",
        variadic=rule.variadic,
    )


def registry_zh_translated() -> RuleRegistry:
    return RuleRegistry("zh->zx", tuple(translated(r) for r in registry_zh()))
