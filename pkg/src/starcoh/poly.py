"""Sparse polynomials in the base coordinates and hbar-Laurent series of them."""

from __future__ import annotations

from itertools import product as _cartesian
from math import factorial

from .scalar import ONE, ZERO, Scalar, as_scalar, parse_scalar

__all__ = [
    "BasePoly",
    "PolySeries",
    "glex_key",
    "monomials_up_to",
    "add_exp",
    "sub_exp",
    "unit_exp",
    "exp_factorial",
]


def glex_key(exps: tuple) -> tuple:
    """Graded-lex sort key for an exponent vector."""
    return (sum(exps), exps)


def add_exp(a: tuple, b: tuple) -> tuple:
    return tuple([x + y for x, y in zip(a, b)])


def sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple([x - y for x, y in zip(a, b)])


def unit_exp(dim: int, i: int, power: int = 1) -> tuple:
    e = [0] * dim
    e[i] = power
    return tuple(e)


def exp_factorial(exps: tuple) -> int:
    out = 1
    for e in exps:
        out *= factorial(e)
    return out


def monomials_up_to(dim: int, degree: int, min_degree: int = 0) -> list[tuple]:
    """All exponent vectors of total degree in ``[min_degree, degree]``, graded-lex."""
    out = [e for e in _cartesian(range(degree + 1), repeat=dim)
           if min_degree <= sum(e) <= degree]
    out.sort(key=glex_key)
    return out


def _accumulate(terms: dict, key, value: Scalar) -> None:
    old = terms.get(key)
    if old is None:
        if value:
            terms[key] = value
    else:
        new = old + value
        if new:
            terms[key] = new
        else:
            del terms[key]


def _check_exp(dim: int, exps) -> tuple:
    exps = tuple(int(e) for e in exps)
    if len(exps) != dim or any(e < 0 for e in exps):
        raise ValueError(f"bad exponent vector {exps} for dim {dim}")
    return exps


class BasePoly:
    """Polynomial in ``x^0 .. x^{dim-1}`` with Gaussian-rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`Scalar` values.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        clean = {}
        for exps, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[_check_exp(dim, exps)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, dim: int, terms: dict) -> "BasePoly":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, dim: int, c=1) -> "BasePoly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def var(cls, dim: int, i: int) -> "BasePoly":
        if not 0 <= i < dim:
            raise IndexError(f"coordinate index {i} out of range for dim {dim}")
        return cls._wrap(dim, {unit_exp(dim, i): ONE})

    @classmethod
    def monomial(cls, exps, c=1) -> "BasePoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    def _same(self, other: "BasePoly") -> None:
        if not isinstance(other, BasePoly):
            raise TypeError(f"expected BasePoly, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, BasePoly):
            return self.dim == other.dim and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other: "BasePoly") -> "BasePoly":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _accumulate(out, e, c)
        return BasePoly._wrap(self.dim, out)

    def __neg__(self) -> "BasePoly":
        return BasePoly._wrap(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "BasePoly") -> "BasePoly":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _accumulate(out, e, -c)
        return BasePoly._wrap(self.dim, out)

    def scale(self, c) -> "BasePoly":
        c = as_scalar(c)
        if not c:
            return BasePoly._wrap(self.dim, {})
        return BasePoly._wrap(self.dim, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "BasePoly":
        if not isinstance(other, BasePoly):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _accumulate(out, add_exp(e1, e2), c1 * c2)
        return BasePoly._wrap(self.dim, out)

    def __rmul__(self, c) -> "BasePoly":
        return self.scale(c)

    def diff(self, i: int, times: int = 1) -> "BasePoly":
        """Partial derivative with respect to ``x^i``."""
        if not 0 <= i < self.dim:
            raise IndexError(f"coordinate index {i} out of range for dim {self.dim}")
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n < times:
                continue
            f = 1
            for j in range(times):
                f *= n - j
            e2 = list(e)
            e2[i] = n - times
            out[tuple(e2)] = c * f
        return BasePoly._wrap(self.dim, out)

    def diff_multi(self, alpha: tuple) -> "BasePoly":
        return BasePoly._wrap(self.dim, diff_terms(self.terms, alpha))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.dim, ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: glex_key(t[0]))

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            cs = c.render()
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if "i" in cs or "+" in cs[1:] else f"{cs}*{mono}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"BasePoly({self.render()!r})"

    def to_json(self) -> list:
        return [[c.render(), list(e)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, dim: int, data) -> "BasePoly":
        terms: dict = {}
        for item in data:
            coeff, exps = item
            _accumulate(terms, _check_exp(dim, exps), parse_scalar(str(coeff)))
        return cls._wrap(dim, terms)


def diff_terms(terms: dict, alpha: tuple) -> dict:
    """Apply ``d^alpha`` to a ``{exponent: Scalar}`` polynomial dict."""
    if not any(alpha):
        return dict(terms)
    out = {}
    for e, c in terms.items():
        f = 1
        new = []
        for n, a in zip(e, alpha):
            if n < a:
                break
            for j in range(a):
                f *= n - j
            new.append(n - a)
        else:
            out[tuple(new)] = c * f
    return out


def mul_terms(t1: dict, t2: dict) -> dict:
    out: dict = {}
    for e1, c1 in t1.items():
        for e2, c2 in t2.items():
            _accumulate(out, add_exp(e1, e2), c1 * c2)
    return out


class PolySeries:
    """Finite hbar-Laurent series ``sum_k hbar^k p_k(x)``.

    ``terms`` maps ``(k, exponent)`` to nonzero scalars.  This is the type of
    central (y-free) sections: star-product inputs and outputs.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        clean = {}
        for (k, exps), c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[(int(k), _check_exp(dim, exps))] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, dim: int, terms: dict) -> "PolySeries":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def from_poly(cls, p: BasePoly, k: int = 0) -> "PolySeries":
        return cls._wrap(p.dim, {(k, e): c for e, c in p.terms.items()})

    @classmethod
    def zero(cls, dim: int) -> "PolySeries":
        return cls._wrap(dim, {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolySeries):
            return self.dim == other.dim and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def _same(self, other) -> None:
        if not isinstance(other, PolySeries):
            raise TypeError(f"expected PolySeries, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def orders(self) -> list[int]:
        return sorted({k for k, _ in self.terms})

    def coeff(self, k: int) -> BasePoly:
        return BasePoly._wrap(self.dim, {e: c for (kk, e), c in self.terms.items() if kk == k})

    def __add__(self, other: "PolySeries") -> "PolySeries":
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return PolySeries._wrap(self.dim, out)

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, -c)
        return PolySeries._wrap(self.dim, out)

    def __neg__(self) -> "PolySeries":
        return PolySeries._wrap(self.dim, {key: -c for key, c in self.terms.items()})

    def scale(self, c) -> "PolySeries":
        c = as_scalar(c)
        if not c:
            return PolySeries._wrap(self.dim, {})
        return PolySeries._wrap(self.dim, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other) -> "PolySeries":
        """Commutative (pointwise) product."""
        if not isinstance(other, PolySeries):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for (k1, e1), c1 in self.terms.items():
            for (k2, e2), c2 in other.terms.items():
                _accumulate(out, (k1 + k2, add_exp(e1, e2)), c1 * c2)
        return PolySeries._wrap(self.dim, out)

    __rmul__ = scale

    def shift(self, s: int) -> "PolySeries":
        """Multiply by ``hbar^s``."""
        return PolySeries._wrap(self.dim, {(k + s, e): c for (k, e), c in self.terms.items()})

    def hbar_derivative(self) -> "PolySeries":
        return PolySeries._wrap(
            self.dim, {(k - 1, e): c * k for (k, e), c in self.terms.items() if k}
        )

    def truncate(self, max_order: int) -> "PolySeries":
        """Keep the terms with hbar exponent ``<= max_order``."""
        return PolySeries._wrap(
            self.dim, {(k, e): c for (k, e), c in self.terms.items() if k <= max_order}
        )

    def diff_multi(self, alpha: tuple) -> "PolySeries":
        if not any(alpha):
            return self
        out = {}
        for (k, e), c in self.terms.items():
            f = 1
            new = []
            for n, a in zip(e, alpha):
                if n < a:
                    break
                for j in range(a):
                    f *= n - j
                new.append(n - a)
            else:
                out[(k, tuple(new))] = c * f
        return PolySeries._wrap(self.dim, out)

    def x_degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (t[0][0], glex_key(t[0][1])))

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in self.orders():
            p = self.coeff(k).render(names)
            h = "" if k == 0 else ("hbar" if k == 1 else f"hbar^{k}")
            parts.append(f"({p})" + (f"*{h}" if h else ""))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"PolySeries({self.render()!r})"

    def to_json(self) -> dict:
        return {str(k): self.coeff(k).to_json() for k in self.orders()}
