"""Evaluate the Euler-angle exchange formula at (pi/4, -pi/4, pi/2) and nearby."""

from __future__ import annotations

import math

import numpy as np

from zxcal.harness import (
    P_RULE_EXPECTED,
    P_RULE_INSTANCE,
    angle_distance,
    p_rule_angles,
    p_rule_constant,
)


def fmt(t) -> str:
    return "(" + ", ".join(f"{x: .6f}" for x in t) + ")"


def main() -> None:
    got = p_rule_angles(*P_RULE_INSTANCE)
    print("input            ", fmt(P_RULE_INSTANCE))
    print("computed         ", fmt(got))
    c = p_rule_constant(P_RULE_INSTANCE, got)
    print("constant         ", None if c is None else f"{c:.6f} (|c|={abs(c):.6f}, arg={np.angle(c) / math.pi:.4f} pi)")
    for k, t in enumerate(P_RULE_EXPECTED):
        dist = [angle_distance(a, b) for a, b in zip(got, t)]
        prop = p_rule_constant(P_RULE_INSTANCE, t)
        print(f"stated triple {k}  ", fmt(t), " per-angle distance", fmt(dist), " proportional:", prop is not None)

    # which beta2 would make the stated outer angles work?
    for k, (a2, _, g2) in enumerate(P_RULE_EXPECTED):
        hits = [
            round(float(b) / math.pi, 4)
            for b in np.linspace(-math.pi, math.pi, 25)
            if p_rule_constant(P_RULE_INSTANCE, (a2, b, g2), 1e-6) is not None
        ]
        print(f"triple {k} outer angles are proportional with beta2/pi in {hits}")

    rng = np.random.default_rng(0)
    ok = 0
    for _ in range(1000):
        t = tuple(rng.uniform(-math.pi, math.pi, 3))
        ok += p_rule_constant(t, p_rule_angles(*t)) is not None
    print(f"random inputs proportional: {ok}/1000")


if __name__ == "__main__":
    main()
