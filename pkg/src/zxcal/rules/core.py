"""Rewrite rules, registries, soundness checking and rule application."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator, Mapping, Optional

import numpy as np

from ..diagram import Diagram, Node, port_end
from ..errors import CapacityExceeded, MissingParameter, SideConditionViolated, ZXError
from ..matching import Embedding, check_embedding, find_matches, replace
from ..params import Var, as_angle, is_real_nonneg
from ..scalars import ExactScalar
from ..semantics import capacity_for, interpret, matrices_equal, max_deviation

DOMAINS = ("complex", "nonneg", "angle", "int")

EDGE_VALUES: dict[str, tuple] = {
    "complex": tuple(ExactScalar(g) for g in ((0, 0), (1, 0), (-1, 0), (0, 1), (1, 1))),
    "nonneg": (0, 1, 2, 3, Fraction(1, 2)),
    "angle": (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2)),
    "int": (0, 1, 2, 3, 4),
}

DEFAULTS: dict[str, Any] = {
    "complex": ExactScalar((2, 0)),
    "nonneg": 1,
    "angle": Fraction(1, 4),
    "int": 1,
}


@dataclass(frozen=True)
class Param:
    name: str
    domain: str = "complex"
    derived: bool = False  # determined from the other parameters

    def __post_init__(self) -> None:
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")


@dataclass(frozen=True)
class MatchSpec:
    """How a rule is used for rewriting.

    ``fixed`` supplies values for parameters that cannot be read off a host
    (leg counts); ``open`` maps open LHS nodes to the RHS node that receives
    their surplus legs.
    """

    fixed: Mapping[str, Any] = field(default_factory=dict)
    open: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class RewriteRule:
    name: str
    params: tuple[Param, ...]
    lhs: Callable[[Mapping[str, Any]], Diagram]
    rhs: Callable[[Mapping[str, Any]], Diagram]
    side_condition: Optional[Callable[[Mapping[str, Any]], bool]] = None
    side_tag: str = ""
    derive: Optional[Callable[[Mapping[str, Any]], dict]] = None
    match: Optional[MatchSpec] = field(default_factory=MatchSpec)
    language: str = "zx"
    variadic: bool = False

    @property
    def free_params(self) -> tuple[Param, ...]:
        return tuple(p for p in self.params if not p.derived)

    def catalogue_entry(self) -> dict:
        d0 = dict(DEFAULTS)
        vals = {p.name: d0[p.domain] for p in self.free_params}
        try:
            lhs, rhs = instantiate(self, vals)
            arity = [lhs.n_in, lhs.n_out]
        except ZXError:
            arity = None
        return {
            "name": self.name,
            "arity": arity,
            "params": [{"name": p.name, "domain": p.domain, "derived": p.derived} for p in self.params],
            "side_condition": self.side_tag or None,
            "variadic": self.variadic,
            "matchable": self.match is not None,
            "language": self.language,
        }


@dataclass(frozen=True)
class RuleRegistry:
    name: str
    rules: tuple[RewriteRule, ...]

    def __post_init__(self) -> None:
        names = [r.name for r in self.rules]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate rule names in registry {self.name}")

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[RewriteRule]:
        return iter(self.rules)

    def __getitem__(self, name: str) -> RewriteRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(r.name == name for r in self.rules)

    def names(self) -> list[str]:
        return [r.name for r in self.rules]

    def with_rule(self, rule: RewriteRule) -> RuleRegistry:
        return RuleRegistry(self.name, self.rules + (rule,))

    def catalogue(self) -> list[dict]:
        return [r.catalogue_entry() for r in self.rules]


# ---------------------------------------------------------------------------
# instantiation


def _check_domain(p: Param, v) -> Any:
    if p.domain == "nonneg":
        if not is_real_nonneg(v):
            raise SideConditionViolated(f"{p.name}={v!r} must be a nonnegative real")
        if isinstance(v, complex):
            return max(v.real, 0.0)
    elif p.domain == "angle":
        a = as_angle(v)
        if a is None:
            raise SideConditionViolated(f"{p.name}={v!r} must be a real angle")
        return a
    elif p.domain == "int":
        if not isinstance(v, (int, np.integer)) or v < 0:
            raise SideConditionViolated(f"{p.name}={v!r} must be a nonnegative integer")
        return int(v)
    return v


def complete_values(rule: RewriteRule, values: Mapping[str, Any]) -> dict:
    vals = dict(values)
    for p in rule.free_params:
        if p.name not in vals:
            raise MissingParameter(f"rule {rule.name} needs parameter {p.name}")
        vals[p.name] = _check_domain(p, vals[p.name])
    if rule.derive is not None:
        vals.update(rule.derive(vals))
    if rule.side_condition is not None and not rule.side_condition(vals):
        raise SideConditionViolated(f"rule {rule.name}: {rule.side_tag or 'side condition'} fails")
    return vals


def instantiate(rule: RewriteRule, values: Mapping[str, Any]) -> tuple[Diagram, Diagram]:
    vals = complete_values(rule, values)
    return rule.lhs(vals), rule.rhs(vals)


# ---------------------------------------------------------------------------
# soundness


@dataclass
class SoundnessReport:
    rule: str
    passed: bool
    worst_deviation: float
    checked: int
    skipped: int
    counterexample: Optional[dict] = None
    error: Optional[str] = None

    def to_json(self) -> dict:
        from ..scalars import scalar_to_json

        def enc(v):
            if isinstance(v, (int, Fraction, ExactScalar, complex, float)) and not isinstance(v, bool):
                if isinstance(v, float):
                    return v
                return scalar_to_json(v)
            return repr(v)

        return {
            "rule": self.rule,
            "pass": self.passed,
            "worst_deviation": self.worst_deviation,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexample": None
            if self.counterexample is None
            else {k: enc(v) for k, v in self.counterexample.items()},
            "error": self.error,
        }


def draw_value(domain: str, rng: np.random.Generator, exact: bool):
    if domain == "complex":
        if exact:
            re, im = (Fraction(int(rng.integers(-6, 7)), 4) for _ in range(2))
            return ExactScalar((re, im))
        r = 2.0 * math.sqrt(rng.random())
        return cmath.rect(r, 2 * math.pi * rng.random())
    if domain == "nonneg":
        return Fraction(int(rng.integers(0, 13)), 4) if exact else 3.0 * rng.random()
    if domain == "angle":
        return Fraction(int(rng.integers(0, 8)), 4) if exact else 2 * math.pi * rng.random()
    return int(rng.integers(0, 5))


def edge_assignments(rule: RewriteRule) -> list[dict]:
    ps = rule.free_params
    if not ps:
        return [{}]
    total = 1
    for p in ps:
        total *= len(EDGE_VALUES[p.domain])
    if total <= 125:
        return [
            dict(zip((p.name for p in ps), combo))
            for combo in itertools.product(*(EDGE_VALUES[p.domain] for p in ps))
        ]
    base = {p.name: DEFAULTS[p.domain] for p in ps}
    out = []
    for p in ps:
        for v in EDGE_VALUES[p.domain]:
            out.append({**base, p.name: v})
    return out


def extend_node(d: Diagram, nid: int, add_in: int, add_out: int) -> Diagram:
    """Give node ``nid`` extra legs wired to new trailing boundary slots."""
    nd = d.nodes[nid]
    new = Node(nd.kind, nd.n + add_in, nd.m + add_out, nd.param)

    def shift(e):
        if e[0] == "n" and e[1] == nid and e[2] >= nd.n:
            return ("n", nid, e[2] + add_in)
        return e

    edges = [(shift(a), shift(b)) for a, b in d.edges]
    for k in range(add_in):
        edges.append((("i", d.n_in + k), port_end(nid, nd.n + k)))
    for k in range(add_out):
        edges.append((("o", d.n_out + k), port_end(nid, nd.n + add_in + nd.m + k)))
    nodes = dict(d.nodes)
    nodes[nid] = new
    return Diagram(nodes, edges, d.n_in + add_in, d.n_out + add_out, d.loops)


def open_extensions(rule: RewriteRule, lhs: Diagram, rhs: Diagram) -> list[tuple[Diagram, Diagram]]:
    """Instances with surplus legs on open nodes, mirrored on their anchors."""
    if rule.match is None or not rule.match.open:
        return []
    out = []
    for add_in, add_out in ((1, 0), (0, 1), (1, 1)):
        l2, r2 = lhs, rhs
        grow: dict[int, list[int]] = {}
        for u, r in rule.match.open.items():
            l2 = extend_node(l2, u, add_in, add_out)
            grow.setdefault(r, []).append(u)
        for r, us in grow.items():
            r2 = extend_node(r2, r, add_in * len(us), add_out * len(us))
        out.append((l2, r2))
    return out


def _compare(lhs: Diagram, rhs: Diagram, backend: str, tol: float) -> tuple[bool, float]:
    a = interpret(lhs, backend)
    b = interpret(rhs, backend)
    dev = max_deviation(a, b)
    return matrices_equal(a, b, tol), dev


def check_soundness(
    rule: RewriteRule,
    samples: int = 200,
    backend: str = "float",
    tol: float = 1e-9,
    seed: int = 42,
) -> SoundnessReport:
    """Compare both sides at random draws plus the deterministic edge set."""
    rng = np.random.default_rng(seed)
    exact = backend == "exact"
    assignments = edge_assignments(rule)
    for _ in range(samples):
        assignments.append({p.name: draw_value(p.domain, rng, exact) for p in rule.free_params})
    worst, checked, skipped = 0.0, 0, 0
    for k, vals in enumerate(assignments):
        try:
            lhs, rhs = instantiate(rule, vals)
        except SideConditionViolated:
            skipped += 1
            continue
        except ZeroDivisionError:
            skipped += 1
            continue
        pairs = [(lhs, rhs)]
        # open-leg variants for the first few assignments are enough
        if k < 8:
            pairs += open_extensions(rule, lhs, rhs)
        for l, r in pairs:
            try:
                ok, dev = _compare(l, r, backend, tol)
            except CapacityExceeded:
                skipped += 1
                continue
            except ZXError as exc:
                return SoundnessReport(rule.name, False, math.inf, checked, skipped, dict(vals), str(exc))
            checked += 1
            worst = max(worst, dev)
            if not ok:
                return SoundnessReport(rule.name, False, dev if dev else math.inf, checked, skipped, dict(vals))
    return SoundnessReport(rule.name, True, worst, checked, skipped)


# ---------------------------------------------------------------------------
# matching and rewriting

_PATTERNS: dict[int, Optional[Diagram]] = {}


def pattern_of(rule: RewriteRule) -> Optional[Diagram]:
    """The LHS with symbolic parameters, or ``None`` when the rule cannot match."""
    key = id(rule)
    if key in _PATTERNS:
        return _PATTERNS[key]
    pat = None
    if rule.match is not None:
        vals: dict[str, Any] = {}
        for p in rule.free_params:
            vals[p.name] = rule.match.fixed.get(p.name, Var(p.name))
        try:
            pat = rule.lhs(vals)
        except (TypeError, ZXError):
            pat = None
    _PATTERNS[key] = pat
    return pat


def match(rule: RewriteRule, host: Diagram) -> list[tuple[Embedding, dict]]:
    """Embeddings of the rule's LHS whose bindings satisfy its conditions."""
    pat = pattern_of(rule)
    if pat is None:
        return []
    out = []
    for emb in find_matches(pat, host, rule.match.open):
        vals = dict(rule.match.fixed)
        vals.update(emb.bindings)
        try:
            vals = complete_values(rule, vals)
        except (SideConditionViolated, MissingParameter, ZeroDivisionError):
            continue
        out.append((emb, vals))
    return out


def rewrite(
    host: Diagram, rule: RewriteRule, emb: Embedding, values: Optional[Mapping[str, Any]] = None
) -> Diagram:
    vals = dict(rule.match.fixed if rule.match else {})
    vals.update(emb.bindings)
    if values:
        vals.update(values)
    lhs, rhs = instantiate(rule, vals)
    check_embedding(host, lhs, emb)
    return replace(host, emb, rhs, rule.match.open if rule.match else None)


def capacity_ok(d: Diagram, backend: str) -> bool:
    return d.n_in + d.n_out <= capacity_for(backend)
