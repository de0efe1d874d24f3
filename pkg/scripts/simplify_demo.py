"""Run the terminating simplifier on sample and random diagrams and report size reductions."""

from __future__ import annotations

import argparse

from zxcal.diagram import H, T, Tinv, X, Z, compose, sequence
from zxcal.harness import random_diagram
from zxcal.semantics import interpret, matrices_equal
from zxcal.simplify import simplify, size


def samples():
    yield "green chain", sequence(Z(1, 1, 2), Z(1, 1, 3), Z(1, 1, 5))
    yield "hadamard sandwich", sequence(H(), Z(1, 1, 2), H(), H(), Z(1, 1, 3), H())
    yield "triangle inverses", sequence(T(), Tinv(), T(), Tinv())
    yield "hopf", compose(X(2, 1, 1), Z(1, 2, 1))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=200)
    args = ap.parse_args()

    for name, d in samples():
        res = simplify(d)
        ok = matrices_equal(interpret(res.diagram), interpret(d), 1e-9)
        print(f"{name:<18} {size(d)} -> {size(res.diagram)}  rules={[e['rule'] for e in res.log]} sound={ok}")

    shrunk, steps, bad = 0, 0, 0
    for seed in range(args.random):
        d = random_diagram(seed, 8, 4)
        res = simplify(d)
        steps += len(res.log)
        shrunk += size(res.diagram) < size(d)
        bad += not matrices_equal(interpret(res.diagram), interpret(d), 1e-7)
    print(f"random: {shrunk}/{args.random} reduced, {steps} steps total, {bad} semantic mismatches")


if __name__ == "__main__":
    main()
