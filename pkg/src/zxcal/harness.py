"""Soundness sweeps, rewrite fuzzing, derivation replay and the (P)-rule angles."""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .diagram import (
    FIXED_ARITY,
    Diagram,
    Kind,
    Node,
    X,
    Z,
    from_json,
    identity,
    port_end,
    sequence,
    structural_eq,
    to_json,
    validate,
)
from .errors import CapacityExceeded, Degenerate, ZXError
from .rules import registry_algebraic, registry_all, registry_derived, registry_legacy
from .rules.core import RewriteRule, RuleRegistry, SoundnessReport, check_soundness, match, rewrite
from .scalars import ExactScalar
from .semantics import interpret, matrices_equal, max_deviation, proportional

KIND_WEIGHTS = {
    Kind.Z: 0.35,
    Kind.X: 0.25,
    Kind.H: 0.1,
    Kind.T: 0.1,
    Kind.TINV: 0.05,
    Kind.HBOX: 0.15,
}
EDGE_PARAMS = (0, 1, -1, 1j, 1 + 1j)


def _workers(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


def _pmap(fn, items: Sequence, threads: int) -> list:
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(_workers(threads)) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepReport:
    results: list[SoundnessReport]
    seed: int
    backend: str
    tol: float
    samples: int

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> list[SoundnessReport]:
        return [r for r in self.results if not r.passed]

    def totals(self) -> dict:
        return {
            "rules": len(self.results),
            "passed": self.passed,
            "failed": self.failed,
            "checked": sum(r.checked for r in self.results),
            "skipped": sum(r.skipped for r in self.results),
        }

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "backend": self.backend,
            "tol": self.tol,
            "samples": self.samples,
            "totals": self.totals(),
            "results": [r.to_json() for r in self.results],
        }


def sweep(
    registries: Iterable[RuleRegistry],
    samples: int = 200,
    tol: float = 1e-9,
    backend: str = "float",
    seed: int = 42,
    threads: int = 1,
) -> SweepReport:
    rules = [r for reg in registries for r in reg]
    results = _pmap(lambda r: check_soundness(r, samples, backend, tol, seed), rules, threads)
    return SweepReport(results, seed, backend, tol, samples)


# ---------------------------------------------------------------------------
# random diagrams


def _random_param(rng: np.random.Generator):
    if rng.random() < 0.3:
        return EDGE_PARAMS[int(rng.integers(len(EDGE_PARAMS)))]
    r = 2.0 * math.sqrt(rng.random())
    return cmath.rect(r, 2 * math.pi * rng.random())


def random_diagram(seed: int, max_nodes: int = 10, max_wires: int = 8) -> Diagram:
    """Sample a valid diagram.

    Distribution: the node count is uniform on ``[0, max_nodes]``; kinds follow
    ``KIND_WEIGHTS``; spiders and H-boxes get total arity uniform on 0..4 split
    uniformly into inputs and outputs; parameters are an edge value with
    probability 0.3, otherwise uniform on the disk of radius 2.  The number of
    open wires is uniform on the values ``<= max_wires`` with the right parity,
    split uniformly into inputs and outputs, and all ends are paired by a
    uniform random perfect matching.
    """
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, max_nodes + 1))
    if k == 0:
        return identity(max_wires // 2)
    kinds = list(KIND_WEIGHTS)
    probs = np.array([KIND_WEIGHTS[x] for x in kinds])
    nodes: dict[int, Node] = {}
    for nid in range(k):
        kind = kinds[int(rng.choice(len(kinds), p=probs / probs.sum()))]
        if kind in FIXED_ARITY:
            nodes[nid] = Node(kind, 1, 1, None)
            continue
        total = int(rng.integers(0, 5))
        n = int(rng.integers(0, total + 1))
        nodes[nid] = Node(kind, n, total - n, _random_param(rng))
    ends = [port_end(nid, p) for nid, nd in nodes.items() for p in range(nd.arity)]
    parity = len(ends) % 2
    options = [b for b in range(max_wires + 1) if b % 2 == parity]
    if not options:
        # odd number of ports and no room for a boundary wire: drop a leg
        nid = next(i for i, nd in nodes.items() if nd.kind not in FIXED_ARITY and nd.arity)
        nd = nodes[nid]
        nodes[nid] = Node(nd.kind, nd.n, nd.m - 1, nd.param) if nd.m else Node(nd.kind, nd.n - 1, 0, nd.param)
        ends = [port_end(i, p) for i, x in nodes.items() for p in range(x.arity)]
        options = [0]
    b = options[int(rng.integers(len(options)))]
    n_in = int(rng.integers(0, b + 1))
    n_out = b - n_in
    ends += [("i", j) for j in range(n_in)] + [("o", j) for j in range(n_out)]
    order = rng.permutation(len(ends))
    edges = [(ends[order[2 * j]], ends[order[2 * j + 1]]) for j in range(len(ends) // 2)]
    return Diagram(nodes, edges, n_in, n_out)


def with_exact_params(d: Diagram, seed: int) -> Diagram:
    """Same wiring with every parameter replaced by a random Gaussian rational k/4."""
    rng = np.random.default_rng(seed)
    nodes = {}
    for nid, nd in d.nodes.items():
        p = nd.param
        if p is not None:
            re, im = (Fraction(int(rng.integers(-6, 7)), 4) for _ in range(2))
            p = ExactScalar((re, im))
        nodes[nid] = Node(nd.kind, nd.n, nd.m, p)
    return Diagram(nodes, d.edges, d.n_in, d.n_out, d.loops)


def composable_pair(seed: int, max_nodes: int = 6, max_wires: int = 6) -> tuple[Diagram, Diagram]:
    """``(d1, d2)`` with ``d1.n_in == d2.n_out``, both sampled by :func:`random_diagram`."""
    d2 = random_diagram(seed, max_nodes, max_wires)
    k = 1
    while True:
        d1 = random_diagram(seed + 7919 * k, max_nodes, max_wires)
        if d1.n_in == d2.n_out and d1.n_out + d2.n_in <= max_wires:
            return d1, d2
        k += 1


# ---------------------------------------------------------------------------
# fuzzing


@dataclass
class Violation:
    iteration: int
    seed: int
    rule: str
    deviation: float
    diagram: Diagram
    reproducer: Diagram

    def to_json(self) -> dict:
        return {
            "iteration": self.iteration,
            "seed": self.seed,
            "rule": self.rule,
            "deviation": self.deviation,
            "diagram": to_json(self.diagram),
            "reproducer": to_json(self.reproducer),
        }


@dataclass
class FuzzReport:
    iterations: int
    seed: int
    tol: float
    applied: int = 0
    no_match: int = 0
    skipped: int = 0
    rule_counts: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "iterations": self.iterations,
            "seed": self.seed,
            "tol": self.tol,
            "applied": self.applied,
            "no_match": self.no_match,
            "skipped": self.skipped,
            "rule_counts": dict(sorted(self.rule_counts.items())),
            "violations": [v.to_json() for v in self.violations],
        }


def default_fuzz_rules() -> list[RewriteRule]:
    from .zh import registry_zh

    return list(registry_all()) + list(registry_zh())


def _violating(d: Diagram, rule: RewriteRule, tol: float) -> Optional[float]:
    """Deviation of the first unsound application of ``rule`` in ``d``, if any."""
    try:
        before = interpret(d)
        for emb, vals in match(rule, d):
            after = interpret(rewrite(d, rule, emb, vals))
            if not matrices_equal(before, after, tol):
                return max_deviation(before, after)
    except ZXError:
        return None
    return None


def delete_node(d: Diagram, nid: int) -> Diagram:
    """Remove a node; its dangling neighbours are joined in pairs, any odd one out becomes an output."""
    nodes = {i: nd for i, nd in d.nodes.items() if i != nid}
    gone = {port_end(nid, p) for p in range(d.nodes[nid].arity)}
    edges = [(a, b) for a, b in d.edges if a not in gone and b not in gone]
    loose = [d.partner[e] for e in sorted(gone) if d.partner[e] not in gone]
    edges += [(loose[j], loose[j + 1]) for j in range(0, len(loose) - 1, 2)]
    n_out = d.n_out
    if len(loose) % 2:
        edges.append((loose[-1], ("o", n_out)))
        n_out += 1
    return Diagram(nodes, edges, d.n_in, n_out, d.loops)


def shrink(d: Diagram, rule: RewriteRule, tol: float, max_wires: int = 12) -> Diagram:
    """Greedy single-node deletion while the violation persists."""
    changed = True
    while changed:
        changed = False
        for nid in list(d.nodes):
            cand = delete_node(d, nid)
            if cand.n_in + cand.n_out > max_wires or validate(cand):
                continue
            if _violating(cand, rule, tol) is not None:
                d = cand
                changed = True
                break
    return d


def _fuzz_one(i: int, seed: int, tol: float, rules: list[RewriteRule], max_nodes: int, max_wires: int):
    s = seed * 100_003 + i
    d = random_diagram(s, max_nodes, max_wires)
    rng = np.random.default_rng(s)
    options = []
    for rule in rules:
        try:
            options += [(rule, emb, vals) for emb, vals in match(rule, d)]
        except ZXError:
            continue
    if not options:
        return ("none", None)
    rule, emb, vals = options[int(rng.integers(len(options)))]
    try:
        new = rewrite(d, rule, emb, vals)
        before, after = interpret(d), interpret(new)
    except CapacityExceeded:
        return ("skip", rule.name)
    if matrices_equal(before, after, tol):
        return ("ok", rule.name)
    dev = max_deviation(before, after)
    return ("bad", Violation(i, s, rule.name, dev, d, shrink(d, rule, tol)))


def fuzz_rewrites(
    iterations: int = 500,
    seed: int = 42,
    tol: float = 1e-9,
    rules: Optional[Sequence[RewriteRule]] = None,
    max_nodes: int = 10,
    max_wires: int = 8,
    threads: int = 1,
) -> FuzzReport:
    rules = list(rules) if rules is not None else default_fuzz_rules()
    report = FuzzReport(iterations, seed, tol)
    outcomes = _pmap(lambda i: _fuzz_one(i, seed, tol, rules, max_nodes, max_wires), range(iterations), threads)
    for status, info in outcomes:
        if status == "none":
            report.no_match += 1
        elif status == "skip":
            report.skipped += 1
        elif status == "ok":
            report.applied += 1
            report.rule_counts[info] = report.rule_counts.get(info, 0) + 1
        else:
            report.applied += 1
            report.rule_counts[info.rule] = report.rule_counts.get(info.rule, 0) + 1
            report.violations.append(info)
    return report


# ---------------------------------------------------------------------------
# derivation scripts


@dataclass
class DerivationScript:
    name: str
    steps: list[Diagram]
    rules: list[Optional[str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rules:
            self.rules = [None] * max(len(self.steps) - 1, 0)
        if len(self.rules) != max(len(self.steps) - 1, 0):
            raise ValueError("need one annotation per adjacent pair of steps")
        shapes = {s.shape for s in self.steps}
        if len(shapes) > 1:
            raise ValueError(f"steps have different boundary arities: {sorted(shapes)}")

    @classmethod
    def from_json(cls, obj: dict) -> DerivationScript:
        return cls(obj["name"], [from_json(s) for s in obj["steps"]], list(obj.get("rules") or []))

    def to_json(self) -> dict:
        return {"name": self.name, "steps": [to_json(s) for s in self.steps], "rules": list(self.rules)}


@dataclass
class ReplayReport:
    name: str
    steps: list[dict]

    @property
    def ok(self) -> bool:
        return all(s["semantic"] for s in self.steps)

    @property
    def first_failure(self) -> Optional[int]:
        for s in self.steps:
            if not s["semantic"]:
                return s["index"]
        return None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.ok, "first_failure": self.first_failure, "steps": self.steps}


def _rule_lookup(name: str) -> Optional[RewriteRule]:
    from .zh import registry_zh

    for reg in (registry_algebraic(), registry_derived(), registry_legacy(), registry_zh()):
        if name in reg:
            return reg[name]
    return None


def _connects(rule: RewriteRule, a: Diagram, b: Diagram) -> bool:
    for src, dst in ((a, b), (b, a)):
        for emb, vals in match(rule, src):
            try:
                if structural_eq(rewrite(src, rule, emb, vals), dst):
                    return True
            except ZXError:
                continue
    return False


def replay(script: DerivationScript, tol: float = 1e-9, backend: str = "float") -> ReplayReport:
    """Check each adjacent pair semantically; rule annotations are checked best-effort."""
    out = []
    mats = [interpret(s, backend) for s in script.steps]
    for k, name in enumerate(script.rules):
        entry: dict[str, Any] = {"index": k + 1, "rule": name}
        entry["semantic"] = bool(matrices_equal(mats[k], mats[k + 1], tol))
        if name is not None:
            rule = _rule_lookup(name)
            entry["rule_known"] = rule is not None
            entry["rule_applies"] = bool(rule and _connects(rule, script.steps[k], script.steps[k + 1]))
        out.append(entry)
    return ReplayReport(script.name, out)


# ---------------------------------------------------------------------------
# the (P) rule


def p_rule_angles(alpha1: float, beta1: float, gamma1: float) -> tuple[float, float, float]:
    """Angles making X(a2) Z(b2) X(g2) proportional to Z(a1) X(b1) Z(g1)."""
    half_b = beta1 / 2
    z = complex(
        math.cos(half_b) * math.cos((alpha1 + gamma1) / 2),
        math.sin(half_b) * math.cos((alpha1 - gamma1) / 2),
    )
    z1 = complex(
        math.cos(half_b) * math.sin((alpha1 + gamma1) / 2),
        -math.sin(half_b) * math.sin((alpha1 - gamma1) / 2),
    )
    eps = 1e-12
    if abs(z1) < eps:
        raise Degenerate("z1 = 0, arg z1 is undefined")
    if abs(z) < eps:
        raise Degenerate("z = 0, arg z is undefined")
    two_pi = 2 * math.pi
    alpha2 = (cmath.phase(z) + cmath.phase(z1)) % two_pi
    beta2 = (2 * cmath.phase(complex(abs(z / z1), 1.0))) % two_pi
    gamma2 = (cmath.phase(z) - cmath.phase(z1)) % two_pi
    return alpha2, beta2, gamma2


def _ph(t: float) -> complex:
    return cmath.exp(1j * t)


def p_rule_lhs(alpha1: float, beta1: float, gamma1: float) -> Diagram:
    """Green alpha1, then red beta1, then green gamma1 on one wire."""
    return sequence(Z(1, 1, _ph(alpha1)), X(1, 1, _ph(beta1)), Z(1, 1, _ph(gamma1)))


def p_rule_rhs(alpha2: float, beta2: float, gamma2: float) -> Diagram:
    return sequence(X(1, 1, _ph(alpha2)), Z(1, 1, _ph(beta2)), X(1, 1, _ph(gamma2)))


def p_rule_constant(angles1: Sequence[float], angles2: Sequence[float], tol: float = 1e-7) -> Optional[complex]:
    """``c`` with lhs = c * rhs, or ``None`` when the two sides are not proportional."""
    lhs = interpret(p_rule_lhs(*angles1))
    rhs = interpret(p_rule_rhs(*angles2))
    return proportional(lhs, rhs, tol)


def wrap_angle(t: float) -> float:
    return t % (2 * math.pi)


P_RULE_INSTANCE = (math.pi / 4, -math.pi / 4, math.pi / 2)
P_RULE_EXPECTED = (
    (math.atan(-math.sqrt(2)), -math.pi / 3, math.atan(-1 / math.sqrt(2))),
    (math.pi - math.atan(math.sqrt(2)), math.pi / 3, math.pi - math.atan(1 / math.sqrt(2))),
)


def angle_distance(a: float, b: float) -> float:
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def matches_stated(angles: Sequence[float], tol: float = 1e-9) -> Optional[int]:
    """Index of the stated triple that ``angles`` reproduces, if any."""
    for k, triple in enumerate(P_RULE_EXPECTED):
        if all(angle_distance(a, b) <= tol for a, b in zip(angles, triple)):
            return k
    return None


__all__ = [
    "P_RULE_EXPECTED",
    "P_RULE_INSTANCE",
    "DerivationScript",
    "FuzzReport",
    "ReplayReport",
    "SweepReport",
    "Violation",
    "delete_node",
    "fuzz_rewrites",
    "matches_stated",
    "p_rule_angles",
    "p_rule_constant",
    "p_rule_lhs",
    "p_rule_rhs",
    "random_diagram",
    "replay",
    "shrink",
    "sweep",
    "with_exact_params",
    "composable_pair",
]
