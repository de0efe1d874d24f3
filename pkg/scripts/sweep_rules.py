"""Soundness sweep over every registry, float and exact, with a summary table."""

from __future__ import annotations

import argparse
import json
import time

from zxcal.harness import sweep
from zxcal.rules import registry_algebraic, registry_derived, registry_legacy
from zxcal.zh import registry_zh, registry_zh_translated


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--exact-samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--threads", type=int, default=0)
    ap.add_argument("--json", help="write the full report here")
    args = ap.parse_args()

    regs = [registry_algebraic(), registry_legacy(), registry_derived(), registry_zh(), registry_zh_translated()]
    full = {}
    print(f"{'registry':<10} {'backend':<6} {'rules':>5} {'pass':>5} {'worst':>9} {'secs':>6}")
    for reg in regs:
        for backend, n in (("float", args.samples), ("exact", args.exact_samples)):
            t0 = time.perf_counter()
            rep = sweep([reg], n, 1e-9, backend, args.seed, args.threads)
            worst = max((r.worst_deviation for r in rep.results), default=0.0)
            print(
                f"{reg.name:<10} {backend:<6} {len(reg):>5} {rep.passed:>5} {worst:>9.1e} "
                f"{time.perf_counter() - t0:>6.1f}"
            )
            for r in rep.failures():
                print("   FAIL", json.dumps(r.to_json()))
            full[f"{reg.name}/{backend}"] = rep.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(full, fh, indent=1)


if __name__ == "__main__":
    main()
