"""Exact Gaussian rationals ``re + im*i`` with arbitrary-precision parts."""

from __future__ import annotations

import re as _re

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_scalar"]

_Q0 = mpq(0)
_MPQ = type(_Q0)
_new = object.__new__


def _q(value) -> mpq:
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


class Scalar:
    """An element of Q(i).

    Both parts are ``gmpy2.mpq`` values, so they are always in lowest terms
    with a positive denominator.  Treat instances as immutable; they are
    hashable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is _MPQ else _q(re)
        self.im = im if type(im) is _MPQ else _q(im)

    @staticmethod
    def _raw(re: mpq, im: mpq) -> "Scalar":
        obj = _new(Scalar)
        obj.re = re
        obj.im = im
        return obj

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _MPQ)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                return Scalar._raw(a * c, a * d)
            if not d:
                return Scalar._raw(a * c, b * c)
            return Scalar._raw(a * c - b * d, a * d + b * c)
        other = _q(other)
        return Scalar._raw(self.re * other, self.im * other)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar._raw(self.re / norm, -self.im / norm)

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return self * other.inverse()
        other = _q(other)
        if not other:
            raise ZeroDivisionError("division of Scalar by zero")
        return Scalar._raw(self.re / other, self.im / other)

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def render(self) -> str:
        """Canonical text form, e.g. ``3/2``, ``-1/2*i``, ``1+1/3*i``."""
        if not self.im:
            return _rq(self.re)
        im = _rq(self.im) + "*i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return _rq(self.re) + sign + im

    __str__ = render

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"


def _rq(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = Scalar._raw(mpq(0), mpq(0))
ONE = Scalar._raw(mpq(1), mpq(0))
I = Scalar._raw(mpq(0), mpq(1))

_NUM = r"\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    rf"^(?P<re>[+-]?{_NUM}(?![\d/*]))?(?:(?P<isign>[+-])?(?P<im>{_NUM})?\*?i)?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical rendering (and the long ``a/b+c/d*i`` form)."""
    compact = _re.sub(r"\s*([+*/-])\s*", r"\1", text.strip())
    m = _SCALAR_RE.match(compact)
    if not compact or m is None or not (m.group("re") or compact.endswith("i")):
        raise ValueError(f"bad scalar literal {text!r}")
    re_part = mpq(m.group("re")) if m.group("re") else mpq(0)
    im_part = mpq(0)
    if compact.endswith("i"):
        if m.group("re") and not m.group("isign"):
            raise ValueError(f"bad scalar literal {text!r}")
        im_part = mpq(m.group("im")) if m.group("im") else mpq(1)
        if m.group("isign") == "-":
            im_part = -im_part
    return Scalar._raw(re_part, im_part)


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, complex):
        raise TypeError("floating-point complex values are not exact")
    if isinstance(value, float):
        raise TypeError("floating-point values are not exact")
    return Scalar._raw(mpq(value), mpq(0))
