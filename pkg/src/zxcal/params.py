"""Symbolic spider parameters used when a rule's left-hand side is a pattern.

A pattern parameter is an :class:`Expr` tree over named variables.  Unary
steps with a constant operand can be inverted, so a host value can be solved
back to the variable it came from; anything else is only checked after all
variables have been bound.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional

from .scalars import ExactScalar, angle_of, conj, phase


class Expr:
    def __add__(self, c):
        return _combine(self, c, "add")

    def __radd__(self, c):
        return _combine(self, c, "add")

    def __sub__(self, c):
        return _combine(self, c, "sub")

    def __rsub__(self, c):
        return _combine(self, c, "rsub")

    def __mul__(self, c):
        return _combine(self, c, "mul")

    def __rmul__(self, c):
        return _combine(self, c, "mul")

    def __truediv__(self, c):
        return _combine(self, c, "div")

    def __rtruediv__(self, c):
        return _combine(self, c, "rdiv")

    def __neg__(self):
        return Unary("neg", None, self)

    def conjugate(self):
        return Unary("conj", None, self)

    def evaluate(self, env: Mapping[str, Any]):
        raise NotImplementedError

    def variables(self) -> set[str]:
        raise NotImplementedError


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name

    def evaluate(self, env):
        return env[self.name]

    def variables(self):
        return {self.name}

    def __repr__(self):
        return self.name


_APPLY: dict[str, Callable] = {
    "add": lambda x, c: x + c,
    "sub": lambda x, c: x - c,
    "rsub": lambda x, c: c - x,
    "mul": lambda x, c: x * c,
    "div": lambda x, c: x / c,
    "rdiv": lambda x, c: c / x,
    "neg": lambda x, c: -x,
    "conj": lambda x, c: conj(x),
    "phase": lambda x, c: phase(x),
}

# inverse of each step: given the output value y, recover the input
_SOLVE: dict[str, Callable] = {
    "add": lambda y, c: y - c,
    "sub": lambda y, c: y + c,
    "rsub": lambda y, c: c - y,
    "mul": lambda y, c: y / c,
    "div": lambda y, c: y * c,
    "rdiv": lambda y, c: c / y,
    "neg": lambda y, c: -y,
    "conj": lambda y, c: conj(y),
    "phase": lambda y, c: angle_of(y),
}


class Unary(Expr):
    __slots__ = ("op", "const", "child")

    def __init__(self, op: str, const, child: Expr) -> None:
        self.op, self.const, self.child = op, const, child

    def evaluate(self, env):
        return _APPLY[self.op](self.child.evaluate(env), self.const)

    def variables(self):
        return self.child.variables()

    def solve(self, y):
        if self.op in ("mul", "rdiv") and _is_zero(self.const if self.op == "mul" else y):
            return None
        if self.op == "div" and _is_zero(self.const):
            return None
        try:
            return _SOLVE[self.op](y, self.const)
        except ZeroDivisionError:
            return None

    def __repr__(self):
        return f"{self.op}({self.child!r}, {self.const!r})"


class Binary(Expr):
    """Combination of two expressions; evaluable but never solved for."""

    __slots__ = ("op", "left", "right")

    def __init__(self, op: str, left: Expr, right: Expr) -> None:
        self.op, self.left, self.right = op, left, right

    def evaluate(self, env):
        return _APPLY[self.op](self.left.evaluate(env), self.right.evaluate(env))

    def variables(self):
        return self.left.variables() | self.right.variables()


def _combine(e: Expr, c, op: str) -> Expr:
    if isinstance(c, Expr):
        if op == "rsub":
            return Binary("sub", c, e)
        if op == "rdiv":
            return Binary("div", c, e)
        return Binary(op, e, c)
    return Unary(op, c, e)


def unary(e: Expr, op: str) -> Expr:
    return Unary(op, None, e)


def _is_zero(x) -> bool:
    return abs(complex(x)) == 0.0


def is_symbolic(x) -> bool:
    return isinstance(x, Expr)


def evaluate(x, env: Mapping[str, Any]):
    return x.evaluate(env) if isinstance(x, Expr) else x


def solve_for(expr: Expr, value) -> Optional[tuple[str, Any]]:
    """Solve ``expr == value`` for its single variable, or return ``None``."""
    node, y = expr, value
    while isinstance(node, Unary):
        y = node.solve(y)
        if y is None:
            return None
        node = node.child
    if isinstance(node, Var):
        return node.name, y
    return None


def is_real_nonneg(x, tol: float = 1e-12) -> bool:
    if isinstance(x, ExactScalar):
        return x.p[1] == 0 and x.q[1] == 0 and complex(x).real >= 0
    if isinstance(x, (int, Fraction)):
        return x >= 0
    c = complex(x)
    return abs(c.imag) <= tol and c.real >= -tol


def as_angle(x, tol: float = 1e-9):
    """Interpret a bound value as an angle in [0, 2pi)."""
    if isinstance(x, Fraction):
        return x % 2
    c = complex(x)
    if abs(c.imag) > tol:
        return None
    return c.real % (2 * math.pi)

