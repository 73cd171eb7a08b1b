"""Scalar differential forms with polynomial coefficients, as hbar-Laurent series.

A term ``c * hbar^k * x^beta * dx^{i_1} ^ ... ^ dx^{i_q}`` is stored under the key
``(k, (i_1, ..., i_q), beta)`` with strictly increasing form indices.
"""

from __future__ import annotations

from .poly import BasePoly, PolySeries, _accumulate, _check_exp, glex_key
from .scalar import as_scalar

__all__ = [
    "ScalarFormSeries",
    "NotClosedError",
    "NoPrimitiveError",
    "wedge_sign",
    "d_exterior",
    "euler_homotopy",
]


class NotClosedError(ValueError):
    """A form expected to be closed has nonzero exterior derivative."""


class NoPrimitiveError(ValueError):
    """A closed form has no polynomial primitive (a nonzero constant 0-form)."""


def wedge_sign(left: tuple, right: tuple):
    """Return ``(sign, merged)`` for ``dx^left ^ dx^right``; ``(0, None)`` if they overlap."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    inversions = 0
    merged = []
    i = j = 0
    nl, nr = len(left), len(right)
    while i < nl and j < nr:
        a, b = left[i], right[j]
        if a == b:
            return 0, None
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            inversions += nl - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return (-1 if inversions & 1 else 1), tuple(merged)


def _normalize_dx(idx) -> tuple:
    """Sort an index tuple, returning ``(sign, sorted)`` or ``(0, None)``."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return sign, tuple(idx)


class ScalarFormSeries:
    """Polynomial-coefficient differential forms with hbar-Laurent coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        clean: dict = {}
        for (k, dx, exps), c in (terms or {}).items():
            c = as_scalar(c)
            sign, dx = _normalize_dx(dx)
            if not sign or not c:
                continue
            if any(not 0 <= i < dim for i in dx):
                raise ValueError(f"form index out of range in {dx}")
            _accumulate(clean, (int(k), dx, _check_exp(dim, exps)), c if sign > 0 else -c)
        self.terms = clean

    @classmethod
    def _wrap(cls, dim: int, terms: dict) -> "ScalarFormSeries":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, dim: int) -> "ScalarFormSeries":
        return cls._wrap(dim, {})

    @classmethod
    def from_matrix(cls, matrix, k: int = 0) -> "ScalarFormSeries":
        """Constant 2-form ``sum_{i<j} M_ij dx^i ^ dx^j`` (at ``hbar^k``)."""
        dim = len(matrix)
        terms = {}
        zero = (0,) * dim
        for i in range(dim):
            for j in range(i + 1, dim):
                c = as_scalar(matrix[i][j])
                if c:
                    terms[(k, (i, j), zero)] = c
        return cls._wrap(dim, terms)

    @classmethod
    def from_components(cls, dim: int, comps: dict, k: int = 0) -> "ScalarFormSeries":
        """Build from ``{dx tuple: BasePoly}`` at a single hbar order."""
        terms = {}
        for dx, p in comps.items():
            for e, c in p.terms.items():
                terms[(k, dx, e)] = c
        return cls(dim, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ScalarFormSeries):
            return self.dim == other.dim and self.terms == other.terms
        return NotImplemented

    def _same(self, other) -> None:
        if not isinstance(other, ScalarFormSeries) or other.dim != self.dim:
            raise ValueError("incompatible form series")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return ScalarFormSeries._wrap(self.dim, out)

    def __sub__(self, other):
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, -c)
        return ScalarFormSeries._wrap(self.dim, out)

    def __neg__(self):
        return ScalarFormSeries._wrap(self.dim, {key: -c for key, c in self.terms.items()})

    def scale(self, c) -> "ScalarFormSeries":
        c = as_scalar(c)
        if not c:
            return ScalarFormSeries._wrap(self.dim, {})
        return ScalarFormSeries._wrap(self.dim, {key: v * c for key, v in self.terms.items()})

    __mul__ = __rmul__ = scale

    def shift(self, s: int) -> "ScalarFormSeries":
        """Multiply by ``hbar^s``."""
        return ScalarFormSeries._wrap(
            self.dim, {(k + s, dx, e): c for (k, dx, e), c in self.terms.items()}
        )

    def hbar_derivative(self) -> "ScalarFormSeries":
        return ScalarFormSeries._wrap(
            self.dim, {(k - 1, dx, e): c * k for (k, dx, e), c in self.terms.items() if k}
        )

    def hbar_orders(self) -> list[int]:
        return sorted({k for k, _, _ in self.terms})

    def form_degrees(self) -> set[int]:
        return {len(dx) for _, dx, _ in self.terms}

    def at_order(self, k: int) -> "ScalarFormSeries":
        return ScalarFormSeries._wrap(
            self.dim, {key: c for key, c in self.terms.items() if key[0] == k}
        )

    def components(self, k: int) -> dict:
        """``{dx tuple: BasePoly}`` at hbar order ``k``."""
        out: dict = {}
        for (kk, dx, e), c in self.terms.items():
            if kk == k:
                out.setdefault(dx, {})[e] = c
        return {dx: BasePoly._wrap(self.dim, t) for dx, t in out.items()}

    def constant_part(self) -> "ScalarFormSeries":
        zero = (0,) * self.dim
        return ScalarFormSeries._wrap(
            self.dim, {key: c for key, c in self.terms.items() if key[2] == zero}
        )

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda t: (t[0][0], len(t[0][1]), t[0][1], glex_key(t[0][2])))

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = []
        for k in self.hbar_orders():
            for dx, p in sorted(self.components(k).items()):
                h = "" if k == 0 else ("hbar*" if k == 1 else f"hbar^{k}*")
                w = "^".join(f"d{names[i]}" for i in dx)
                parts.append(f"{h}({p.render(names)})" + (f"*{w}" if w else ""))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"ScalarFormSeries({self.render()!r})"

    def to_json(self) -> dict:
        out = {}
        for k in self.hbar_orders():
            out[str(k)] = [
                {"dx": list(dx), "poly": p.to_json()}
                for dx, p in sorted(self.components(k).items())
            ]
        return out

    @classmethod
    def from_json(cls, dim: int, data: dict) -> "ScalarFormSeries":
        terms = {}
        for k, items in data.items():
            for item in items:
                p = BasePoly.from_json(dim, item["poly"])
                sign, dx = _normalize_dx(item["dx"])
                if not sign:
                    continue
                for e, c in p.terms.items():
                    _accumulate(terms, (int(k), dx, e), c if sign > 0 else -c)
        return cls._wrap(dim, terms)


def d_exterior(w: ScalarFormSeries) -> ScalarFormSeries:
    """Exterior derivative in the base coordinates, order by order in hbar."""
    out: dict = {}
    dim = w.dim
    for (k, dx, e), c in w.terms.items():
        for i in range(dim):
            n = e[i]
            if not n:
                continue
            sign, merged = wedge_sign((i,), dx)
            if not sign:
                continue
            e2 = list(e)
            e2[i] = n - 1
            v = c * n
            _accumulate(out, (k, merged, tuple(e2)), v if sign > 0 else -v)
    return ScalarFormSeries._wrap(dim, out)


def euler_contract(w: ScalarFormSeries) -> ScalarFormSeries:
    """Contraction with the Euler field ``sum x^i d/dx^i`` (no normalization)."""
    out: dict = {}
    for (k, dx, e), c in w.terms.items():
        for pos, i in enumerate(dx):
            e2 = list(e)
            e2[i] += 1
            rest = dx[:pos] + dx[pos + 1:]
            _accumulate(out, (k, rest, tuple(e2)), -c if pos & 1 else c)
    return ScalarFormSeries._wrap(w.dim, out)


def euler_homotopy(w: ScalarFormSeries, check: bool = True) -> ScalarFormSeries:
    """Primitive of a closed polynomial form.

    Each homogeneous piece of polynomial degree ``d`` and form degree ``q`` is
    contracted with the Euler field and divided by ``d + q``.
    """
    if check and d_exterior(w):
        raise NotClosedError("form is not closed")
    out: dict = {}
    for (k, dx, e), c in w.terms.items():
        weight = sum(e) + len(dx)
        if weight == 0:
            raise NoPrimitiveError("nonzero constant 0-form has no primitive")
        scale = c / weight
        for pos, i in enumerate(dx):
            e2 = list(e)
            e2[i] += 1
            rest = dx[:pos] + dx[pos + 1:]
            _accumulate(out, (k, rest, tuple(e2)), -scale if pos & 1 else scale)
    return ScalarFormSeries._wrap(w.dim, out)


def poly_series_as_forms(s: PolySeries) -> ScalarFormSeries:
    return ScalarFormSeries._wrap(s.dim, {(k, (), e): c for (k, e), c in s.terms.items()})

