"""Rewrite fuzzing at several seeds, plus a planted bug to show shrinking at work."""

from __future__ import annotations

import argparse
from dataclasses import replace

from zxcal.diagram import Z
from zxcal.harness import fuzz_rewrites
from zxcal.rules import registry_algebraic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iterations", type=int, default=500)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3, 42])
    args = ap.parse_args()

    for seed in args.seeds:
        rep = fuzz_rewrites(args.iterations, seed=seed, threads=0)
        top = sorted(rep.rule_counts.items(), key=lambda kv: -kv[1])[:5]
        print(f"seed {seed}: applied={rep.applied} no_match={rep.no_match} violations={len(rep.violations)} top={top}")

    s1 = registry_algebraic()["S1"]
    planted = replace(s1, name="S1+", rhs=lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], v["a"] + v["b"]))
    rep = fuzz_rewrites(200, seed=7, rules=[planted])
    print(f"planted bug: {len(rep.violations)} violations")
    if rep.violations:
        v = rep.violations[0]
        print(f"  first at iteration {v.iteration}: {len(v.diagram.nodes)} nodes shrunk to {len(v.reproducer.nodes)}")
        print(f"  reproducer: {v.reproducer!r}")


if __name__ == "__main__":
    main()
