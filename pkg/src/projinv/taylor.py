"""Truncated Taylor arithmetic ("jets").

A :class:`TaylorJet` carries the derivatives ``f(t0), f'(t0), ..., f^(n)(t0)``
of a scalar function at a base point.  Arithmetic on jets propagates all
derivatives exactly (up to rounding), so any closed-form expression built
from jets yields its own derivatives without finite differencing.

Public coefficients use the derivative convention.  Internally the
normalized Taylor coefficients ``c_k = f^(k)(t0) / k!`` are used, because
the product, quotient and power recurrences are simplest in that form.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DepthExhausted,
    DivisionByNearZero,
    DomainError,
    NegativeBaseFractionalPower,
)

__all__ = [
    "TaylorJet",
    "settings",
    "variable",
    "constant",
    "jet_add",
    "jet_sub",
    "jet_mul",
    "jet_div",
    "jet_powf",
    "jet_rpow",
    "jet_cbrt",
    "jet_elem",
    "sin",
    "cos",
    "tan",
    "exp",
    "log",
    "sqrt",
    "atan",
]


@dataclass
class Settings:
    eps_div: float = 1e-12
    eps_pow: float = 1e-12
    default_order: int = 10


def _order_from_env(default=10):
    raw = os.environ.get("PROJINV_JET_ORDER")
    if not raw:
        return default
    order = int(raw)
    if order < 0:
        raise ValueError("PROJINV_JET_ORDER must be non-negative")
    return order


settings = Settings(default_order=_order_from_env())

_FACT = np.array([math.factorial(k) for k in range(40)], dtype=float)


def _fact(n):
    if n < len(_FACT):
        return _FACT[:n]
    return np.array([math.factorial(k) for k in range(n)], dtype=float)


class TaylorJet:
    """Derivatives of a scalar function at ``base_point``, up to ``order``."""

    __slots__ = ("base_point", "_c")

    def __init__(self, base_point, coeffs):
        d = np.asarray(coeffs, dtype=float)
        if d.ndim != 1 or d.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(d)):
            raise ValueError("jet coefficients must be finite")
        self.base_point = float(base_point)
        self._c = d / _fact(d.size)

    @classmethod
    def _from_taylor(cls, base_point, c):
        jet = cls.__new__(cls)
        jet.base_point = base_point
        jet._c = c
        return jet

    @property
    def order(self):
        return self._c.size - 1

    @property
    def coeffs(self):
        """Derivatives ``d^k f / dt^k`` at the base point, k = 0..order."""
        return self._c * _fact(self._c.size)

    @property
    def value(self):
        return float(self._c[0])

    def __getitem__(self, k):
        return float(self._c[k] * math.factorial(k))

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f"TaylorJet(t0={self.base_point!r}, coeffs={self.coeffs.tolist()!r})"

    # -- structural helpers -------------------------------------------------

    def truncate(self, order):
        if order > self.order:
            raise DepthExhausted(f"cannot raise jet order {self.order} to {order}")
        return TaylorJet._from_taylor(self.base_point, self._c[: order + 1].copy())

    def derivative(self):
        """Jet of ``f'`` (one order lower)."""
        if self.order < 1:
            raise DepthExhausted("jet of order 0 has no derivative information")
        k = np.arange(1, self._c.size)
        return TaylorJet._from_taylor(self.base_point, self._c[1:] * k)

    def integrate(self, value):
        """Jet of the antiderivative taking ``value`` at the base point."""
        c = np.empty(self._c.size + 1)
        c[0] = value
        c[1:] = self._c / np.arange(1, self._c.size + 1)
        return TaylorJet._from_taylor(self.base_point, c)

    def allclose(self, other, rtol=1e-12, atol=0.0):
        n = min(self.order, other.order) + 1
        return np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=rtol, atol=atol)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TaylorJet):
            if other.base_point != self.base_point:
                raise ValueError(
                    f"base points differ: {self.base_point} vs {other.base_point}"
                )
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return None
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = self._c.copy()
            c[0] += other
            return TaylorJet._from_taylor(self.base_point, c)
        n = min(self._c.size, o._c.size)
        return TaylorJet._from_taylor(self.base_point, self._c[:n] + o._c[:n])

    __radd__ = __add__

    def __neg__(self):
        return TaylorJet._from_taylor(self.base_point, -self._c)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return self + (-other)
        n = min(self._c.size, o._c.size)
        return TaylorJet._from_taylor(self.base_point, self._c[:n] - o._c[:n])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return TaylorJet._from_taylor(self.base_point, self._c * other)
        n = min(self._c.size, o._c.size)
        c = np.convolve(self._c[:n], o._c[:n])[:n]
        return TaylorJet._from_taylor(self.base_point, c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            if abs(other) < settings.eps_div:
                raise DivisionByNearZero(f"division by scalar {other!r}")
            return TaylorJet._from_taylor(self.base_point, self._c / other)
        return _div(self, o)

    def __rtruediv__(self, other):
        return _div(constant(other, self.base_point, self.order), self)

    def __pow__(self, r):
        if isinstance(r, TaylorJet):
            return exp(r * log(self))
        return jet_powf(self, r)

    def __float__(self):
        return self.value


def variable(t0, order=None):
    """Jet of the identity function ``t`` at ``t0``."""
    order = settings.default_order if order is None else order
    d = np.zeros(order + 1)
    d[0] = t0
    if order >= 1:
        d[1] = 1.0
    return TaylorJet(t0, d)


def constant(value, t0, order=None):
    order = settings.default_order if order is None else order
    d = np.zeros(order + 1)
    d[0] = value
    return TaylorJet(t0, d)


# ---------------------------------------------------------------------------
# recurrences (normalized coefficients)


def _div(a, b):
    b0 = b._c[0]
    if abs(b0) < settings.eps_div:
        raise DivisionByNearZero(f"divisor value {b0!r} below eps_div")
    n = min(a._c.size, b._c.size)
    ac, bc = a._c, b._c
    q = np.empty(n)
    for k in range(n):
        # q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0
        s = ac[k]
        if k:
            s -= np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k])
        q[k] = s / b0
    return TaylorJet._from_taylor(a.base_point, q)


def _pow_series(ac, r, b0):
    n = ac.size
    b = np.empty(n)
    b[0] = b0
    a0 = ac[0]
    for k in range(1, n):
        j = np.arange(1, k + 1)
        b[k] = np.dot(((r + 1.0) * j - k) * ac[1 : k + 1], b[k - j]) / (k * a0)
    return b


def _ipow(a, n):
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def jet_add(a, b):
    return a + b


def jet_sub(a, b):
    return a - b


def jet_mul(a, b):
    return a * b


def jet_div(a, b):
    return a / b


def jet_powf(a, r):
    """Jet of ``a(t)**r`` for real ``r``."""
    r = float(r)
    a0 = a._c[0]
    if r.is_integer():
        ri = int(r)
        if ri == 0:
            return constant(1.0, a.base_point, a.order)
        if ri < 0:
            # invert first so the guard sees the base, not its power
            return _ipow(1.0 / a, -ri)
        return _ipow(a, ri)
    if a0 <= settings.eps_pow:
        raise NegativeBaseFractionalPower(
            f"fractional power {r} of base {a0!r} (need > {settings.eps_pow})"
        )
    return TaylorJet._from_taylor(a.base_point, _pow_series(a._c, r, a0**r))


def jet_rpow(a, num, den=1):
    """Real power ``a**(num/den)`` for odd ``den``, defined for either sign.

    Uses the real odd root, i.e. ``cbrt(a)**num`` when ``den == 3``.  Every
    polynomial identity in ``cbrt(a)`` then holds for negative ``a`` too.
    """
    if den % 2 == 0:
        raise ValueError("jet_rpow needs an odd denominator")
    a0 = a._c[0]
    if abs(a0) <= settings.eps_pow:
        raise NegativeBaseFractionalPower(f"odd root of near-zero base {a0!r}")
    sign = 1.0 if a0 > 0 else -1.0
    mag = jet_powf(a * sign, num / den)
    return mag * (sign**num)


def jet_cbrt(a):
    return jet_rpow(a, 1, 3)


def _exp_series(ac):
    n = ac.size
    b = np.empty(n)
    b[0] = math.exp(ac[0])
    for k in range(1, n):
        j = np.arange(1, k + 1)
        b[k] = np.dot(j * ac[1 : k + 1], b[k - j]) / k
    return b


def _sincos_series(ac):
    n = ac.size
    s = np.empty(n)
    c = np.empty(n)
    s[0] = math.sin(ac[0])
    c[0] = math.cos(ac[0])
    for k in range(1, n):
        j = np.arange(1, k + 1)
        w = j * ac[1 : k + 1]
        s[k] = np.dot(w, c[k - j]) / k
        c[k] = -np.dot(w, s[k - j]) / k
    return s, c


def exp(a):
    return TaylorJet._from_taylor(a.base_point, _exp_series(a._c))


def sin(a):
    return TaylorJet._from_taylor(a.base_point, _sincos_series(a._c)[0])


def cos(a):
    return TaylorJet._from_taylor(a.base_point, _sincos_series(a._c)[1])


def tan(a):
    s, c = _sincos_series(a._c)
    return _div(TaylorJet._from_taylor(a.base_point, s), TaylorJet._from_taylor(a.base_point, c))


def log(a):
    a0 = a._c[0]
    if a0 <= 0:
        raise DomainError(f"log of non-positive value {a0!r}")
    if a.order == 0:
        return constant(math.log(a0), a.base_point, 0)
    return (a.derivative() / a.truncate(a.order - 1)).integrate(math.log(a0))


def sqrt(a):
    a0 = a._c[0]
    if a0 < 0:
        raise DomainError(f"sqrt of negative value {a0!r}")
    if a0 <= settings.eps_pow:
        raise DomainError(f"sqrt is not differentiable at {a0!r}")
    return jet_powf(a, 0.5)


def atan(a):
    if a.order == 0:
        return constant(math.atan(a._c[0]), a.base_point, 0)
    low = a.truncate(a.order - 1)
    return (a.derivative() / (low * low + 1.0)).integrate(math.atan(a._c[0]))


_ELEMENTARY = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "atan": atan,
}


def jet_elem(a, fn):
    """Apply the named elementary function (sin, cos, tan, exp, log, sqrt, atan)."""
    try:
        f = _ELEMENTARY[fn]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None
    return f(a)
