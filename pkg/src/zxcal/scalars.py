"""Scalar backends: exact arithmetic in Q(i)(sqrt 2) and plain complex floats.

An :class:`ExactScalar` is ``p + q*sqrt(2)`` where ``p`` and ``q`` are Gaussian
rationals, each stored as a ``(re, im)`` pair of :class:`~fractions.Fraction`.
The float backend uses Python's built-in ``complex``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InexactParameter

GaussianRational = tuple[Fraction, Fraction]

# sqrt(2) to ~100 bits, used only for correctly rounded float conversion
_SQRT2_NUM = math.isqrt(2 << 200)
_SQRT2_FRAC = Fraction(_SQRT2_NUM, 1 << 100)

_ZERO = Fraction(0)


def _g(x) -> GaussianRational:
    if isinstance(x, tuple):
        return (Fraction(x[0]), Fraction(x[1]))
    return (Fraction(x), _ZERO)


def _gadd(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return (x[0] + y[0], x[1] + y[1])


def _gmul(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gneg(x: GaussianRational) -> GaussianRational:
    return (-x[0], -x[1])


class ExactScalar:
    """Immutable element ``p + q*sqrt(2)`` of Q(i)(sqrt 2)."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0) -> None:
        object.__setattr__(self, "p", _g(p))
        object.__setattr__(self, "q", _g(q))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- construction -------------------------------------------------
    @classmethod
    def coerce(cls, x) -> ExactScalar:
        """Convert ints, Fractions and ExactScalars; reject floats."""
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            return cls(Fraction(x))
        if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
            return cls((int(x.real), int(x.imag)))
        raise InexactParameter(f"{x!r} is not representable in Q(i)(sqrt 2)")

    @classmethod
    def gaussian(cls, re, im=0) -> ExactScalar:
        return cls((re, im))

    # -- arithmetic ---------------------------------------------------
    def _other(self, other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return ExactScalar(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return ExactScalar(_gadd(self.p, o.p), _gadd(self.q, o.q))

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar(_gneg(self.p), _gneg(self.q))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        # (p1 + q1 r)(p2 + q2 r) = (p1 p2 + 2 q1 q2) + (p1 q2 + q1 p2) r,  r = sqrt 2
        two_qq = _gmul(self.q, o.q)
        p = _gadd(_gmul(self.p, o.p), (2 * two_qq[0], 2 * two_qq[1]))
        q = _gadd(_gmul(self.p, o.q), _gmul(self.q, o.p))
        return ExactScalar(p, q)

    __rmul__ = __mul__

    def sqrt2_conjugate(self) -> ExactScalar:
        """Galois conjugate ``p - q*sqrt(2)``."""
        return ExactScalar(self.p, _gneg(self.q))

    def conjugate(self) -> ExactScalar:
        return ExactScalar((self.p[0], -self.p[1]), (self.q[0], -self.q[1]))

    def inverse(self) -> ExactScalar:
        if self.is_zero():
            raise ZeroDivisionError("ExactScalar division by zero")
        g = self.sqrt2_conjugate()
        n = self * g  # Gaussian rational: q == 0
        re, im = n.p
        mod2 = re * re + im * im
        inv_n = ExactScalar((re / mod2, -im / mod2))
        return g * inv_n

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> ExactScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ExactScalar(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.p == (0, 0) and self.q == (0, 0)

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self) -> int:
        if self.q == (0, 0) and self.p[1] == 0:
            return hash(self.p[0])
        return hash((self.p, self.q))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conversion ---------------------------------------------------
    def __complex__(self) -> complex:
        re = self.p[0] + self.q[0] * _SQRT2_FRAC
        im = self.p[1] + self.q[1] * _SQRT2_FRAC
        return complex(float(re), float(im))

    def to_float(self) -> complex:
        return complex(self)

    def to_json(self) -> dict:
        def enc(g: GaussianRational) -> list[int]:
            return [g[0].numerator, g[0].denominator, g[1].numerator, g[1].denominator]

        return {"p": enc(self.p), "q": enc(self.q)}

    @classmethod
    def from_json(cls, obj: dict) -> ExactScalar:
        def dec(v) -> GaussianRational:
            return (Fraction(v[0], v[1]), Fraction(v[2], v[3]))

        return cls(dec(obj["p"]), dec(obj.get("q", [0, 1, 0, 1])))

    def __repr__(self) -> str:
        return f"ExactScalar({_gstr(self.p)}, {_gstr(self.q)})"

    def __str__(self) -> str:
        if self.q == (0, 0):
            return _gstr(self.p)
        if self.p == (0, 0):
            return f"{_gstr(self.q, paren=True)}√2"
        return f"{_gstr(self.p)} + {_gstr(self.q, paren=True)}√2"


def _gstr(g: GaussianRational, paren: bool = False) -> str:
    re, im = g
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}i"
    s = f"{re}{'+' if im > 0 else '-'}{abs(im)}i"
    return f"({s})" if paren else s


Scalar = Union[ExactScalar, complex, float, int, Fraction]

ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar((0, 1))
SQRT2 = ExactScalar(0, 1)
INV_SQRT2 = ExactScalar(0, Fraction(1, 2))


def exact_mul(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    return x * y


def exact_to_float(x: ExactScalar) -> complex:
    return complex(x)


def to_complex(x: Scalar) -> complex:
    return complex(x)


def float_close(x: Scalar, y: Scalar, tol: float) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(complex(x) - complex(y)) <= tol


def is_exact(x) -> bool:
    return isinstance(x, ExactScalar) or (
        isinstance(x, (int, Rational)) and not isinstance(x, bool)
    )


def values_close(x: Scalar, y: Scalar, rtol: float = 1e-9) -> bool:
    """Exact equality when both sides are exact, else a relative float check."""
    if is_exact(x) and is_exact(y):
        return ExactScalar.coerce(x) == ExactScalar.coerce(y)
    cx, cy = complex(x), complex(y)
    return abs(cx - cy) <= rtol * max(1.0, abs(cx), abs(cy))


# exact eighth roots of unity e^{i pi k/4}
_H = Fraction(1, 2)
_ROOTS8 = [
    ExactScalar(1),
    ExactScalar(0, (_H, _H)),
    I,
    ExactScalar(0, (-_H, _H)),
    ExactScalar(-1),
    ExactScalar(0, (-_H, -_H)),
    -I,
    ExactScalar(0, (_H, -_H)),
]


def phase(angle):
    """``e^{i*angle}``.

    A :class:`Fraction` angle is read as a multiple of pi and gives an exact
    result when it is a multiple of 1/4; any other number is radians.
    """
    from .params import Expr, unary

    if isinstance(angle, Expr):
        return unary(angle, "phase")
    if isinstance(angle, Fraction):
        k = angle * 4
        if k.denominator == 1:
            return _ROOTS8[int(k) % 8]
        return cmath.exp(1j * math.pi * float(angle))
    return cmath.exp(1j * float(angle))


def angle_of(z) -> Union[Fraction, float]:
    """Inverse of :func:`phase`; exact eighth roots map back to Fractions of pi."""
    if isinstance(z, ExactScalar):
        for k, r in enumerate(_ROOTS8):
            if r == z:
                return Fraction(k, 4)
    return cmath.phase(complex(z)) % (2 * math.pi)


def angle_to_float(angle) -> float:
    if isinstance(angle, Fraction):
        return math.pi * float(angle)
    return float(angle)


def scalar_to_json(x: Scalar) -> dict:
    if is_exact(x):
        return ExactScalar.coerce(x).to_json()
    c = complex(x)
    return {"re": c.real, "im": c.imag}


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, (int, float)):
        return obj if isinstance(obj, int) else complex(obj)
    if "p" in obj:
        return ExactScalar.from_json(obj)
    return complex(obj["re"], obj.get("im", 0.0))


def conj(x: Scalar) -> Scalar:
    if isinstance(x, ExactScalar):
        return x.conjugate()
    if isinstance(x, (int, Fraction)):
        return x
    return complex(x).conjugate()
