"""Greedy simplification with a terminating rule subset.

Every rule below strictly lowers ``nodes + edges + loops``, and each step is
also required to lower ``(nodes, edges + loops)`` lexicographically, so the
loop finishes within ``size(d)`` steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram
from .rules import registry_algebraic, registry_derived, registry_legacy
from .rules.core import RuleRegistry, match, rewrite

_SUBSET = (
    ("algebraic", "S1"),
    ("derived", "XFuse"),
    ("algebraic", "S2"),
    ("derived", "Xid"),
    ("legacy", "1d"),
    ("algebraic", "Inv"),
    ("derived", "Inv'"),
    ("derived", "Hopf"),
    ("derived", "ZLoop"),
    ("derived", "XLoop"),
    ("derived", "Zos"),
    ("derived", "Sca"),
    ("derived", "LoopSca"),
)


def registry_simplify() -> RuleRegistry:
    regs = {
        "algebraic": registry_algebraic(),
        "derived": registry_derived(),
        "legacy": registry_legacy(),
    }
    return RuleRegistry("simplify", tuple(regs[r][n] for r, n in _SUBSET))


def size(d: Diagram) -> tuple[int, int]:
    return len(d.nodes), len(d.edges) + d.loops


@dataclass
class SimplifyResult:
    diagram: Diagram
    log: list[dict] = field(default_factory=list)
    complete: bool = True  # False when max_steps ran out first

    def __iter__(self):
        # allows ``d, log = simplify(...)``
        return iter((self.diagram, self.log))


def _step(d: Diagram, registry: RuleRegistry):
    before = size(d)
    for rule in registry:
        found = match(rule, d)
        found.sort(key=lambda ev: ev[0].sort_key())
        for emb, vals in found:
            new = rewrite(d, rule, emb, vals)
            if size(new) < before:
                return rule, emb, new
    return None


def simplify(d: Diagram, max_steps: int = 1000, registry: RuleRegistry | None = None) -> SimplifyResult:
    """Apply the first applicable rule (registry order, lowest node ids) until none applies."""
    registry = registry or registry_simplify()
    log: list[dict] = []
    for k in range(max_steps):
        hit = _step(d, registry)
        if hit is None:
            return SimplifyResult(d, log, True)
        rule, emb, d = hit
        log.append(
            {
                "step": k,
                "rule": rule.name,
                "nodes": sorted(emb.node_map.values()),
                "size": list(size(d)),
            }
        )
    return SimplifyResult(d, log, _step(d, registry) is None)
