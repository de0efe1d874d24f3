"""Compare every small H-box with its ZX translation, float and exact."""

from __future__ import annotations

import argparse
from fractions import Fraction

import numpy as np

from zxcal.diagram import HBox
from zxcal.scalars import ExactScalar
from zxcal.semantics import interpret, matrices_equal, max_deviation
from zxcal.zh import interpret_zh, translate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-legs", type=int, default=5)
    ap.add_argument("--draws", type=int, default=50)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>2} {'m':>2} {'worst float':>12} {'exact ok':>9} {'ZX nodes':>9}")
    for total in range(args.max_legs + 1):
        for n in range(total + 1):
            m = total - n
            worst, exact_ok = 0.0, 0
            for _ in range(args.draws):
                d = HBox(n, m, complex(rng.normal(), rng.normal()))
                worst = max(worst, max_deviation(interpret(translate(d)), interpret_zh(d)))
                q = ExactScalar((Fraction(int(rng.integers(-8, 9)), 4), Fraction(int(rng.integers(-8, 9)), 4)))
                e = HBox(n, m, q)
                exact_ok += matrices_equal(interpret(translate(e), "exact"), interpret_zh(e, "exact"))
            size = len(translate(HBox(n, m, 2)).nodes)
            print(f"{n:>2} {m:>2} {worst:>12.1e} {exact_ok:>5}/{args.draws:<3} {size:>9}")


if __name__ == "__main__":
    main()
