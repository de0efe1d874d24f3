"""Earlier phase-based rule sets (1a-1j) and triangle/lambda rules (2a-2o)."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from ..diagram import (
    H,
    T,
    Td,
    Tinv,
    X,
    Z,
    cap,
    compose,
    cup,
    empty,
    identity,
    scalar,
    sequence,
    tensor,
    tensor_all,
)
from ..errors import SideConditionViolated
from ..scalars import angle_to_float, is_exact, phase, values_close
from .algebraic import LEGS, bialgebra_lhs, euler_lhs, fused_pair, legs_fit
from .core import MatchSpec, Param, RewriteRule, RuleRegistry
from .library import W, Wt, with_sqrt2

ALPHA = Param("alpha", "angle")
BETA = Param("beta", "angle")
LAM = Param("lam", "nonneg")
LAM1 = Param("lam1", "nonneg")
LAM2 = Param("lam2", "nonneg")
PI = -1  # X spider parameter for the red pi phase


def _sum_angles(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a + b) % 2
    return (angle_to_float(a) + angle_to_float(b)) % (2 * math.pi)


def _neg_angle(a):
    if isinstance(a, Fraction):
        return (-a) % 2
    return (-angle_to_float(a)) % (2 * math.pi)


R1a = RewriteRule(
    "1a",
    LEGS + (ALPHA, BETA),
    lambda v: fused_pair(v, phase(v["alpha"]), phase(v["beta"])),
    lambda v: Z(v["n1"] + v["n2"], v["m1"] + v["m2"], phase(_sum_angles(v["alpha"], v["beta"]))),
    side_condition=legs_fit,
    side_tag="n1+m1+n2+m2 <= 8",
    match=MatchSpec(fixed={"n1": 0, "m1": 0, "n2": 0, "m2": 0}, open={0: 0, 1: 0}),
    variadic=True,
)

R1b = RewriteRule("1b", (), lambda v: X(0, 2, 1), lambda v: Z(0, 2, 1))

R1c = RewriteRule("1c", (), lambda v: Z(1, 1, 1), lambda v: identity(1))

R1d = RewriteRule("1d", (), lambda v: compose(H(), H()), lambda v: identity(1))

R1e = RewriteRule(
    "1e",
    (),
    lambda v: compose(tensor(H(), identity(1)), cap()),
    lambda v: compose(tensor(identity(1), H()), cap()),
)

R1f = RewriteRule(
    "1f",
    (),
    lambda v: H(),
    lambda v: tensor(euler_lhs(), scalar(phase(Fraction(-1, 4)))),
)

R1g = RewriteRule(
    "1g",
    (),
    lambda v: with_sqrt2(compose(Z(1, 2, 1), X(0, 1, 1))),
    lambda v: tensor(X(0, 1, 1), X(0, 1, 1)),
)

R1h = RewriteRule(
    "1h",
    (),
    lambda v: with_sqrt2(bialgebra_lhs()),
    lambda v: compose(Z(1, 2, 1), X(2, 1, 1)),
)

R1i = RewriteRule(
    "1i",
    (ALPHA,),
    lambda v: compose(X(1, 1, PI), Z(1, 1, phase(v["alpha"]))),
    lambda v: tensor(
        compose(Z(1, 1, phase(_neg_angle(v["alpha"]))), X(1, 1, PI)),
        scalar(phase(v["alpha"])),
    ),
)

R1j = RewriteRule(
    "1j",
    (),
    lambda v: sequence(Z(0, 1, 1), T(), Z(1, 0, -1)),
    lambda v: empty(),
)

R2a = RewriteRule(
    "2a",
    (LAM,),
    lambda v: compose(Z(1, 2, 1), Z(1, 1, v["lam"])),
    lambda v: Z(1, 2, v["lam"]),
)

R2b = RewriteRule("2b", (), lambda v: Z(1, 1, 1), lambda v: identity(1))

R2c = RewriteRule(
    "2c",
    (LAM1, LAM2),
    lambda v: compose(Z(1, 1, v["lam1"]), Z(1, 1, v["lam2"])),
    lambda v: Z(1, 1, v["lam1"] * v["lam2"]),
)

R2d = RewriteRule(
    "2d",
    (),
    lambda v: sequence(T(), Z(1, 1, -1), T()),
    lambda v: Z(1, 1, -1),
)

R2e = RewriteRule(
    "2e",
    (),
    lambda v: compose(T(), Z(1, 1, -1)),
    lambda v: compose(Z(1, 1, -1), Tinv()),
)

R2f = RewriteRule("2f", (), lambda v: compose(T(), X(0, 1, 1)), lambda v: X(0, 1, 1))

R2g = RewriteRule(
    "2g",
    (),
    lambda v: compose(T(), X(0, 1, -1)),
    lambda v: with_sqrt2(Z(0, 1, 1)),
)

R2h = RewriteRule(
    "2h",
    (),
    lambda v: sequence(Z(1, 1, -1), T(), Z(1, 1, -1)),
    lambda v: Tinv(),
)

R2i = RewriteRule(
    "2i",
    (),
    lambda v: compose(tensor(T(), identity(1)), cap()),
    lambda v: compose(tensor(identity(1), Td()), cap()),
)

R2j = RewriteRule(
    "2j",
    (),
    lambda v: with_sqrt2(sequence(Z(1, 2, 1), tensor(T(), identity(1)), X(2, 1, 1))),
    lambda v: T(),
)

R2k = RewriteRule(
    "2k",
    (),
    lambda v: sequence(Z(1, 2, 1), tensor(T(), T()), Z(2, 1, 1)),
    lambda v: T(),
)

R2l = RewriteRule(
    "2l",
    (),
    lambda v: sequence(Z(1, 2, 1), tensor(Td(), Td()), Z(2, 1, 1)),
    lambda v: Td(),
)

R2m = RewriteRule(
    "2m",
    (),
    lambda v: sequence(
        Z(1, 3, 1),
        tensor_all(identity(1), compose(T(), T()), identity(1)),
        tensor(identity(1), cup()),
    ),
    lambda v: identity(1),
)


def _polar(v):
    return v["lam"] * phase(v["alpha"])


R2n = RewriteRule(
    "2n",
    (LAM, ALPHA),
    lambda v: compose(tensor(Z(1, 1, _polar(v)), Z(1, 1, _polar(v))), W()),
    lambda v: compose(W(), Z(1, 1, _polar(v))),
    match=None,
)


def _weighted_sum(v):
    return v["lam1"] * phase(v["alpha"]) + v["lam2"] * phase(v["beta"])


def derive_2o(v) -> dict:
    """Solve the side condition for (lam, gamma); check them if supplied."""
    s = _weighted_sum(v)
    lam = abs(complex(s))
    gamma = 0.0 if lam == 0 else cmath.phase(complex(s)) % (2 * math.pi)
    if values_close(s, 0) and is_exact(s):
        lam, gamma = 0, Fraction(0)
    out = {"lam": lam, "gamma": gamma, "sum": s}
    if "lam" in v or "gamma" in v:
        lam_in = v.get("lam", lam)
        gamma_in = v.get("gamma", gamma)
        if complex(lam_in).imag != 0 or complex(lam_in).real < 0:
            raise SideConditionViolated("lam must be a nonnegative real")
        lhs = complex(lam_in) * complex(phase(gamma_in))
        if abs(lhs - complex(s)) > 1e-9 * max(1.0, abs(complex(s))):
            raise SideConditionViolated(
                "lam e^{i gamma} must equal lam1 e^{i alpha} + lam2 e^{i beta}"
            )
        out = {"lam": lam_in, "gamma": gamma_in, "sum": s}
    return out


def _rhs_2o(v):
    s = v["sum"]
    # exact sums are used as they are; otherwise the polar pair is authoritative
    val = s if is_exact(s) else v["lam"] * phase(v["gamma"])
    return Z(0, 1, val)


R2o = RewriteRule(
    "2o",
    (LAM1, LAM2, ALPHA, BETA, Param("lam", "nonneg", derived=True), Param("gamma", "angle", derived=True)),
    lambda v: with_sqrt2(
        compose(Wt(), tensor(Z(0, 1, v["lam1"] * phase(v["alpha"])), Z(0, 1, v["lam2"] * phase(v["beta"]))))
    ),
    _rhs_2o,
    side_tag="lam e^{i gamma} = lam1 e^{i alpha} + lam2 e^{i beta}",
    derive=derive_2o,
    match=None,
)


def registry_legacy() -> RuleRegistry:
    return RuleRegistry(
        "legacy",
        (
            R1a, R1b, R1c, R1d, R1e, R1f, R1g, R1h, R1i, R1j,
            R2a, R2b, R2c, R2d, R2e, R2f, R2g, R2h, R2i, R2j, R2k, R2l, R2m, R2n, R2o,
        ),
    )  # fmt: skip

