"""Rule registries and the machinery to check and apply them."""

from __future__ import annotations

from .algebraic import registry_algebraic
from .core import (
    DEFAULTS,
    DOMAINS,
    EDGE_VALUES,
    MatchSpec,
    Param,
    RewriteRule,
    RuleRegistry,
    SoundnessReport,
    check_soundness,
    complete_values,
    instantiate,
    match,
    rewrite,
)
from .derived import registry_derived
from .legacy import registry_legacy


def registry_all() -> RuleRegistry:
    """Every ZX-level rule: algebraic first, then derived, then legacy."""
    rules = registry_algebraic().rules + registry_derived().rules + registry_legacy().rules
    return RuleRegistry("all", rules)


def get_registry(name: str) -> RuleRegistry:
    if name == "zh":
        from ..zh import registry_zh

        return registry_zh()
    table = {
        "algebraic": registry_algebraic,
        "legacy": registry_legacy,
        "derived": registry_derived,
        "all": registry_all,
    }
    if name not in table:
        raise KeyError(f"unknown registry {name!r}")
    return table[name]()


REGISTRY_NAMES = ("algebraic", "legacy", "derived", "zh", "all")

__all__ = [
    "DEFAULTS",
    "DOMAINS",
    "EDGE_VALUES",
    "REGISTRY_NAMES",
    "MatchSpec",
    "Param",
    "RewriteRule",
    "RuleRegistry",
    "SoundnessReport",
    "check_soundness",
    "complete_values",
    "get_registry",
    "instantiate",
    "match",
    "registry_algebraic",
    "registry_all",
    "registry_derived",
    "registry_legacy",
    "rewrite",
]
