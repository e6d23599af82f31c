"""Second-order forward-mode jets.

A :class:`Jet2` carries ``(f, f', f'')`` of a scalar profile with respect to
the profile coordinate.  Arithmetic follows the Leibniz and chain rules, so
lifting the coordinate once and evaluating a formula yields exact first and
second derivatives at double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

__all__ = [
    "Jet2",
    "JetDomainError",
    "jet_arith",
    "jet_elem",
    "lift",
    "const",
    "finite_difference_oracle",
    "DEFAULT_FD_STEP",
]

DEFAULT_FD_STEP = 1e-4


class JetDomainError(ValueError):
    """Raised when a jet operation leaves its domain (division by zero, sqrt of a non-positive value...)."""

    def __init__(self, op: str, value: float, message: str = ""):
        self.op = op
        self.value = value
        super().__init__(message or f"{op}: argument {value!r} outside domain")


@dataclass(frozen=True)
class Jet2:
    val: float
    d1: float = 0.0
    d2: float = 0.0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        return Jet2(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return Jet2(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Jet2(-self.val, -self.d1, -self.d2)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = _coerce(other)
        return Jet2(
            self.val * o.val,
            self.d1 * o.val + self.val * o.d1,
            self.d2 * o.val + 2.0 * self.d1 * o.d1 + self.val * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def __pow__(self, other):
        return _pow(self, _coerce(other))

    def __rpow__(self, other):
        return _pow(_coerce(other), self)

    def reciprocal(self) -> "Jet2":
        if self.val == 0.0:
            raise JetDomainError("div", self.val, "division by a jet with zero value")
        inv = 1.0 / self.val
        return Jet2(inv, -self.d1 * inv * inv, (2.0 * self.d1 * self.d1 * inv - self.d2) * inv * inv)

    # -- elementary functions ---------------------------------------------
    def sqrt(self) -> "Jet2":
        if not self.val > 0.0:
            raise JetDomainError("sqrt", self.val, f"sqrt requires a positive argument, got {self.val!r}")
        r = math.sqrt(self.val)
        return _chain(self, r, 0.5 / r, -0.25 / (r * self.val))

    def sin(self) -> "Jet2":
        s, c = math.sin(self.val), math.cos(self.val)
        return _chain(self, s, c, -s)

    def cos(self) -> "Jet2":
        s, c = math.sin(self.val), math.cos(self.val)
        return _chain(self, c, -s, -c)

    def __abs__(self) -> "Jet2":
        if self.val == 0.0:
            raise JetDomainError("abs", self.val, "abs is not differentiable at 0")
        return self if self.val > 0.0 else -self

    def is_finite(self) -> bool:
        return all(math.isfinite(x) for x in (self.val, self.d1, self.d2))

    def __iter__(self):
        yield self.val
        yield self.d1
        yield self.d2


Scalar = Union[Jet2, float, int]


def _coerce(x: Scalar) -> Jet2:
    if isinstance(x, Jet2):
        return x
    return Jet2(float(x), 0.0, 0.0)


def _chain(x: Jet2, f0: float, f1: float, f2: float) -> Jet2:
    # (f∘x)' = f1 x',  (f∘x)'' = f2 x'^2 + f1 x''
    return Jet2(f0, f1 * x.d1, f2 * x.d1 * x.d1 + f1 * x.d2)


def _pow(base: Jet2, expo: Jet2) -> Jet2:
    if expo.d1 == 0.0 and expo.d2 == 0.0 and float(expo.val).is_integer():
        n = int(expo.val)
        if n == 0:
            return Jet2(1.0)
        if n < 0:
            return _pow(base, Jet2(float(-n))).reciprocal()
        x = base.val
        f0 = x**n
        f1 = n * x ** (n - 1)
        f2 = n * (n - 1) * x ** (n - 2) if n >= 2 else 0.0
        return _chain(base, f0, f1, f2)
    if not base.val > 0.0:
        raise JetDomainError(
            "pow", base.val, f"non-integer power requires a positive base, got {base.val!r}"
        )
    if expo.d1 == 0.0 and expo.d2 == 0.0:
        p, x = expo.val, base.val
        return _chain(base, x**p, p * x ** (p - 1), p * (p - 1) * x ** (p - 2))
    # variable exponent: exp(expo * log(base))
    lg = _chain(base, math.log(base.val), 1.0 / base.val, -1.0 / (base.val * base.val))
    u = expo * lg
    e = math.exp(u.val)
    return _chain(u, e, e, e)


_ARITH = {
    "add": Jet2.__add__,
    "sub": Jet2.__sub__,
    "mul": Jet2.__mul__,
    "div": Jet2.__truediv__,
    "pow": Jet2.__pow__,
}

_ELEM = {
    "sqrt": Jet2.sqrt,
    "sin": Jet2.sin,
    "cos": Jet2.cos,
    "abs": Jet2.__abs__,
    "neg": Jet2.__neg__,
}


def jet_arith(lhs: Scalar, rhs: Scalar, op: str) -> Jet2:
    """Combine two jets with one of ``add, sub, mul, div, pow``."""
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown jet operation {op!r}") from None
    return fn(_coerce(lhs), _coerce(rhs))


def jet_elem(x: Scalar, fn: str) -> Jet2:
    """Apply one of ``sqrt, sin, cos, abs, neg`` through the chain rule."""
    try:
        f = _ELEM[fn]
    except KeyError:
        raise ValueError(f"unknown jet function {fn!r}") from None
    return f(_coerce(x))


def lift(t: float) -> Jet2:
    """The identity function at ``t``: ``(t, 1, 0)``."""
    return Jet2(float(t), 1.0, 0.0)


def const(c: float) -> Jet2:
    return Jet2(float(c), 0.0, 0.0)


def finite_difference_oracle(
    f: Callable[[float], float], t: float, h: float = DEFAULT_FD_STEP
) -> tuple[float, float]:
    """Central-difference estimates ``(f'(t), f''(t))`` with step ``h``."""
    if not h > 0.0:
        raise ValueError("finite difference step must be positive")
    fp, f0, fm = f(t + h), f(t), f(t - h)
    return (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)
