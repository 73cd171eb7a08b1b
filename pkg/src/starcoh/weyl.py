"""The truncated formal Weyl algebra and Weyl-algebra-valued forms.

Terms are stored flat as ``{(dx, k, y, x): Scalar}``: a wedge index tuple, the
hbar exponent, the fiber multi-index and the base multi-index.  The Weyl
degree of a term is ``2k + |y|``; a :class:`Truncation` keeps degrees up to
``degree_cap`` and hbar exponents down to ``laurent_floor``.

The fiber product is the Moyal-Weyl product with a constant Poisson matrix;
x-coefficients multiply pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .forms import ScalarFormSeries, wedge_sign
from .linalg import inverse, matmul
from .poly import BasePoly, PolySeries, _accumulate, glex_key
from .scalar import I, ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Truncation",
    "PoissonMatrix",
    "WeylForm",
    "WeylElement",
    "LaurentFloorError",
    "moyal_mul",
    "commutator",
    "graded_product",
    "graded_commutator",
    "ihbar_commutator",
    "center_project",
    "euler_E",
    "hbar_derivative",
    "hbar_euler",
    "rho",
    "c1_bilinear",
]

HALF_I = I / 2
_MINUS_HALF_I_POW = [(-HALF_I) ** m for m in range(64)]


class LaurentFloorError(ValueError):
    """A result would need hbar powers below the configured Laurent floor."""


@dataclass(frozen=True)
class Truncation:
    """Keep terms with ``2k + |alpha| <= degree_cap`` and ``k >= laurent_floor``."""

    degree_cap: int
    laurent_floor: int = 0

    def __post_init__(self):
        if self.degree_cap < 0:
            raise ValueError("degree_cap must be >= 0")
        if self.laurent_floor > 0:
            raise ValueError("laurent_floor must be <= 0")

    def with_cap(self, cap: int) -> "Truncation":
        return Truncation(cap, self.laurent_floor)

    def with_floor(self, floor: int) -> "Truncation":
        return Truncation(self.degree_cap, floor)


class PoissonMatrix:
    """Constant antisymmetric ``pi^{ij}`` (and ``omega_ij`` when invertible).

    The convention is ``omega . pi = identity``.
    """

    def __init__(self, pi, omega=None):
        pi = [[as_scalar(v) for v in row] for row in pi]
        n = len(pi)
        if n == 0 or any(len(row) != n for row in pi):
            raise ValueError("Poisson matrix must be square and nonempty")
        for i in range(n):
            for j in range(n):
                if pi[i][j] != -pi[j][i]:
                    raise ValueError("Poisson matrix must be antisymmetric")
        if omega is not None:
            omega = [[as_scalar(v) for v in row] for row in omega]
            prod = matmul(omega, pi)
            for i in range(n):
                for j in range(n):
                    if prod[i][j] != (ONE if i == j else ZERO):
                        raise ValueError("omega . pi is not the identity")
        self.dim = n
        self.pi = tuple(tuple(row) for row in pi)
        self.omega = None if omega is None else tuple(tuple(row) for row in omega)
        self.pairs = tuple((i, j, pi[i][j]) for i in range(n) for j in range(n) if pi[i][j])
        self._contract: dict = {}
        self._odd: dict = {}
        self._full: dict = {}

    @classmethod
    def from_omega(cls, omega) -> "PoissonMatrix":
        omega = [[as_scalar(v) for v in row] for row in omega]
        n = len(omega)
        for i in range(n):
            for j in range(n):
                if omega[i][j] != -omega[j][i]:
                    raise ValueError("omega must be antisymmetric")
        return cls(inverse(omega), omega)

    @property
    def symplectic(self) -> bool:
        return self.omega is not None

    def require_symplectic(self) -> None:
        if self.omega is None:
            raise ValueError("operation needs an invertible (symplectic) Poisson matrix")

    def __eq__(self, other):
        if not isinstance(other, PoissonMatrix):
            return NotImplemented
        return self.pi == other.pi and self.omega == other.omega

    def __hash__(self):
        return hash(self.pi)

    def contract(self, ya: tuple, yb: tuple) -> tuple:
        """Moyal expansion of ``y^ya * y^yb`` as ``((m, y_out, coeff), ...)``.

        ``coeff`` includes ``(-i/2)^m``; the term carries ``hbar^m``.
        """
        key = (ya, yb)
        hit = self._contract.get(key)
        if hit is None:
            hit = self._contract[key] = self._expand(ya, yb)
        return hit

    def contract_odd(self, ya: tuple, yb: tuple) -> tuple:
        """Twice the odd-``m`` part of :meth:`contract`: the fiber commutator."""
        key = (ya, yb)
        hit = self._odd.get(key)
        if hit is None:
            hit = self._odd[key] = tuple(
                (m, yo, c * 2) for m, yo, c in self.contract(ya, yb) if m & 1
            )
        return hit

    def full_contract(self, ya: tuple, yb: tuple):
        """The y-free part of ``y^ya * y^yb`` as ``(m, coeff)``, or None."""
        key = (ya, yb)
        if key in self._full:
            return self._full[key]
        hit = None
        if sum(ya) == sum(yb):
            zero = (0,) * self.dim
            for m, yo, c in self.contract(ya, yb):
                if yo == zero:
                    hit = (m, c)
        self._full[key] = hit
        return hit

    def _expand(self, ya: tuple, yb: tuple) -> tuple:
        pairs = self.pairs
        npairs = len(pairs)
        ra, rb = list(ya), list(yb)
        acc: dict = {}

        def rec(idx: int, m: int, coef: Scalar) -> None:
            if idx == npairs:
                f = 1
                for a, r in zip(ya, ra):
                    for t in range(r + 1, a + 1):
                        f *= t
                for b, r in zip(yb, rb):
                    for t in range(r + 1, b + 1):
                        f *= t
                yo = tuple([p + q for p, q in zip(ra, rb)])
                _accumulate(acc, (m, yo), coef * f * _MINUS_HALF_I_POW[m])
                return
            i, j, p = pairs[idx]
            top = min(ra[i], rb[j])
            rec(idx + 1, m, coef)
            c = coef
            for cnt in range(1, top + 1):
                c = c * p / cnt
                ra[i] -= 1
                rb[j] -= 1
                rec(idx + 1, m + cnt, c)
            ra[i] += top
            rb[j] += top

        rec(0, 0, ONE)
        return tuple(sorted(((m, yo, c) for (m, yo), c in acc.items()),
                            key=lambda t: (t[0], t[1])))


def _degree(key) -> int:
    return 2 * key[1] + sum(key[2])


class WeylForm:
    """A section of ``W (x) Lambda^q``: Weyl-algebra-valued q-form.

    ``terms`` maps ``(dx, k, y, x)`` to nonzero scalars, ``dx`` strictly
    increasing of length ``q``.
    """

    __slots__ = ("dim", "trunc", "q", "terms")

    def __init__(self, dim: int, trunc: Truncation, q: int, terms: dict | None = None):
        self.dim = dim
        self.trunc = trunc
        self.q = q
        clean: dict = {}
        for (dx, k, y, x), c in (terms or {}).items():
            c = as_scalar(c)
            if not c:
                continue
            dx, y, x = tuple(dx), tuple(y), tuple(x)
            if len(dx) != q or any(a >= b for a, b in zip(dx, dx[1:])):
                raise ValueError(f"form index {dx} must be strictly increasing of length {q}")
            if len(y) != dim or len(x) != dim:
                raise ValueError("multi-index length does not match dim")
            if 2 * k + sum(y) > trunc.degree_cap:
                continue
            if k < trunc.laurent_floor:
                raise LaurentFloorError(f"hbar^{k} below floor {trunc.laurent_floor}")
            _accumulate(clean, (dx, int(k), y, x), c)
        self.terms = clean

    @staticmethod
    def _make(dim: int, trunc: Truncation, q: int, terms: dict) -> "WeylForm":
        cls = WeylElement if q == 0 else WeylForm
        obj = object.__new__(cls)
        obj.dim = dim
        obj.trunc = trunc
        obj.q = q
        obj.terms = terms
        floor = trunc.laurent_floor
        for key in terms:
            if key[1] < floor:
                raise LaurentFloorError(f"hbar^{key[1]} below floor {floor}")
        return obj

    def _like(self, terms: dict, q: int | None = None) -> "WeylForm":
        return WeylForm._make(self.dim, self.trunc, self.q if q is None else q, terms)

    @classmethod
    def zero(cls, dim: int, trunc: Truncation, q: int = 0) -> "WeylForm":
        return WeylForm._make(dim, trunc, q, {})

    @classmethod
    def from_scalar_form(cls, w: ScalarFormSeries, trunc: Truncation, q: int) -> "WeylForm":
        y0 = (0,) * w.dim
        terms = {}
        for (k, dx, x), c in w.terms.items():
            if len(dx) != q:
                raise ValueError("scalar form is not homogeneous of the requested degree")
            if 2 * k <= trunc.degree_cap:
                terms[(dx, k, y0, x)] = c
        return WeylForm._make(w.dim, trunc, q, terms)

    # ----- comparisons and linear structure -----

    def _same(self, other: "WeylForm") -> None:
        if not isinstance(other, WeylForm):
            raise TypeError(f"expected a Weyl form, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.trunc != self.trunc:
            raise ValueError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.dim == other.dim
        return self.dim == other.dim and self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, self.q, frozenset(self.terms.items())))

    def _check_q(self, other: "WeylForm") -> None:
        if self.q != other.q and self.terms and other.terms:
            raise ValueError(f"form degree mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "WeylForm") -> "WeylForm":
        self._same(other)
        self._check_q(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return self._like(out, self.q if self.terms else other.q)

    def __sub__(self, other: "WeylForm") -> "WeylForm":
        self._same(other)
        self._check_q(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, -c)
        return self._like(out, self.q if self.terms else other.q)

    def __neg__(self) -> "WeylForm":
        return self._like({key: -c for key, c in self.terms.items()})

    def scale(self, c) -> "WeylForm":
        c = as_scalar(c)
        if not c:
            return self._like({})
        return self._like({key: v * c for key, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, c) -> "WeylForm":
        if isinstance(c, WeylForm):
            raise TypeError("use moyal_mul/graded_product for fiber products")
        return self.scale(c)

    def shift(self, s: int) -> "WeylForm":
        """Multiply by ``hbar^s``, re-applying the degree cap."""
        cap = self.trunc.degree_cap
        out = {}
        for (dx, k, y, x), c in self.terms.items():
            if 2 * (k + s) + sum(y) <= cap:
                out[(dx, k + s, y, x)] = c
        return self._like(out)

    def truncate(self, cap: int) -> "WeylForm":
        """Drop terms of Weyl degree above ``cap`` (the truncation is unchanged)."""
        return self._like({key: c for key, c in self.terms.items() if _degree(key) <= cap})

    def retruncate(self, trunc: Truncation) -> "WeylForm":
        """Re-home into another truncation, dropping terms that do not fit."""
        out = {key: c for key, c in self.terms.items() if _degree(key) <= trunc.degree_cap}
        return WeylForm._make(self.dim, trunc, self.q, out)

    def degree_slice(self, d: int) -> "WeylForm":
        return self._like({key: c for key, c in self.terms.items() if _degree(key) == d})

    def min_degree(self):
        return min((_degree(key) for key in self.terms), default=None)

    def max_degree(self):
        return max((_degree(key) for key in self.terms), default=None)

    def min_hbar(self):
        return min((key[1] for key in self.terms), default=None)

    def max_y_degree(self) -> int:
        return max((sum(key[2]) for key in self.terms), default=-1)

    # ----- structural pieces -----

    def components(self) -> dict:
        """``{dx: WeylElement}``."""
        out: dict = {}
        for (dx, k, y, x), c in self.terms.items():
            out.setdefault(dx, {})[((), k, y, x)] = c
        return {dx: WeylForm._make(self.dim, self.trunc, 0, t) for dx, t in out.items()}

    @classmethod
    def from_components(cls, comps: dict, dim: int, trunc: Truncation, q: int) -> "WeylForm":
        terms = {}
        for dx, el in comps.items():
            for (_, k, y, x), c in el.terms.items():
                terms[(tuple(dx), k, y, x)] = c
        return cls(dim, trunc, q, terms)

    def scalar_part(self) -> ScalarFormSeries:
        """The y-free terms as a scalar form series."""
        y0 = (0,) * self.dim
        return ScalarFormSeries._wrap(
            self.dim, {(k, dx, x): c for (dx, k, y, x), c in self.terms.items() if y == y0}
        )

    def is_scalar(self) -> bool:
        y0 = (0,) * self.dim
        return all(key[2] == y0 for key in self.terms)

    def y_diff(self, i: int) -> "WeylForm":
        out = {}
        for (dx, k, y, x), c in self.terms.items():
            n = y[i]
            if n:
                y2 = list(y)
                y2[i] = n - 1
                out[(dx, k, tuple(y2), x)] = c * n
        return self._like(out)

    def x_diff(self, i: int) -> "WeylForm":
        out = {}
        for (dx, k, y, x), c in self.terms.items():
            n = x[i]
            if n:
                x2 = list(x)
                x2[i] = n - 1
                out[(dx, k, y, tuple(x2))] = c * n
        return self._like(out)

    def map_coefficients(self, fn) -> "WeylForm":
        return self._like({key: fn(key, c) for key, c in self.terms.items()})

    # ----- rendering -----

    def sorted_terms(self) -> list:
        return sorted(
            self.terms.items(),
            key=lambda t: (t[0][0], _degree(t[0]), t[0][1], t[0][2], glex_key(t[0][3])),
        )

    def to_json(self) -> list:
        return [[list(dx), c.render(), k, list(y), list(x)]
                for (dx, k, y, x), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, dim: int, trunc: Truncation, q: int, data) -> "WeylForm":
        from .scalar import parse_scalar
        return cls(dim, trunc, q,
                   {(tuple(dx), k, tuple(y), tuple(x)): parse_scalar(c)
                    for dx, c, k, y, x in data})

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [str(i + 1) for i in range(self.dim)]
        parts = []
        for (dx, k, y, x), c in self.sorted_terms():
            bits = []
            if k:
                bits.append("hbar" if k == 1 else f"hbar^{k}")
            bits += [f"y{names[i]}" + (f"^{n}" if n > 1 else "") for i, n in enumerate(y) if n]
            bits += [f"x{names[i]}" + (f"^{n}" if n > 1 else "") for i, n in enumerate(x) if n]
            bits += ["^".join(f"dx{names[i]}" for i in dx)] if dx else []
            parts.append(f"({c.render()})" + ("*" + "*".join(bits) if bits else ""))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"{type(self).__name__}(q={self.q}, {self.render()!r})"


class WeylElement(WeylForm):
    """A section of the Weyl bundle (a Weyl form of degree 0)."""

    __slots__ = ()

    def __init__(self, dim: int, trunc: Truncation, terms: dict | None = None):
        """``terms`` maps ``(k, y, x)`` to scalars."""
        super().__init__(dim, trunc, 0,
                         {((), k, y, x): c for (k, y, x), c in (terms or {}).items()})

    @classmethod
    def zero(cls, dim: int, trunc: Truncation, q: int = 0) -> "WeylElement":
        return WeylForm._make(dim, trunc, 0, {})

    @classmethod
    def one(cls, dim: int, trunc: Truncation) -> "WeylElement":
        z = (0,) * dim
        return WeylForm._make(dim, trunc, 0, {((), 0, z, z): ONE})

    @classmethod
    def y(cls, dim: int, trunc: Truncation, i: int, c=1) -> "WeylElement":
        z = (0,) * dim
        yi = tuple(1 if t == i else 0 for t in range(dim))
        return cls(dim, trunc, {(0, yi, z): c})

    @classmethod
    def central(cls, a, trunc: Truncation) -> "WeylElement":
        """Embed a y-free series (``PolySeries`` or ``BasePoly``) as a section."""
        if isinstance(a, BasePoly):
            a = PolySeries.from_poly(a)
        y0 = (0,) * a.dim
        terms = {((), k, y0, x): c for (k, x), c in a.terms.items()
                 if 2 * k <= trunc.degree_cap}
        return WeylForm._make(a.dim, trunc, 0, terms)

    def coefficient(self, k: int, alpha: tuple) -> BasePoly:
        alpha = tuple(alpha)
        return BasePoly._wrap(self.dim, {x: c for (_, kk, y, x), c in self.terms.items()
                                         if kk == k and y == alpha})

    def items(self):
        """Yield ``((k, alpha), BasePoly)`` pairs in canonical order."""
        keys = sorted({(key[1], key[2]) for key in self.terms},
                      key=lambda t: (2 * t[0] + sum(t[1]), t[0], t[1]))
        for k, alpha in keys:
            yield (k, alpha), self.coefficient(k, alpha)

    def to_json(self) -> list:
        return [[c.render(), k, list(y), list(x)] for (_, k, y, x), c in self.sorted_terms()]


# ---------------------------------------------------------------------------
# products


def _group(terms: dict) -> dict:
    groups: dict = {}
    for (dx, k, y, x), c in terms.items():
        groups.setdefault((dx, y), []).append((k, x, c))
    for lst in groups.values():
        lst.sort(key=lambda t: t[0])
    return groups


def _product_terms(ta: dict, tb: dict, P: PoissonMatrix, cap: int, odd_only: bool) -> dict:
    ga, gb = _group(ta), _group(tb)
    out: dict = {}
    table_of = P.contract_odd if odd_only else P.contract
    for (dxa, ya), la in ga.items():
        da = sum(ya)
        ka0 = la[0][0]
        for (dxb, yb), lb in gb.items():
            budget = cap - da - sum(yb)
            kb0 = lb[0][0]
            if 2 * (ka0 + kb0) > budget:
                continue
            sign, dx = wedge_sign(dxa, dxb)
            if not sign:
                continue
            table = table_of(ya, yb)
            if not table:
                continue
            for ka, xa, ca in la:
                if 2 * (ka + kb0) > budget:
                    break
                if sign < 0:
                    ca = -ca
                for kb, xb, cb in lb:
                    k0 = ka + kb
                    if 2 * k0 > budget:
                        break
                    cc = ca * cb
                    xs = tuple([p + q for p, q in zip(xa, xb)])
                    for m, yo, coef in table:
                        key = (dx, k0 + m, yo, xs)
                        v = cc * coef
                        old = out.get(key)
                        if old is None:
                            out[key] = v
                        else:
                            v = old + v
                            if v:
                                out[key] = v
                            else:
                                del out[key]
    return out


def _check_pair(a: WeylForm, b: WeylForm, P: PoissonMatrix) -> None:
    a._same(b)
    if P.dim != a.dim:
        raise ValueError(f"Poisson matrix dim {P.dim} does not match {a.dim}")


def graded_product(a: WeylForm, b: WeylForm, P: PoissonMatrix, cap: int | None = None) -> WeylForm:
    """``a * b``: wedge on the form parts, Moyal-Weyl on the fiber parts."""
    _check_pair(a, b, P)
    trunc = a.trunc if cap is None else a.trunc.with_cap(cap)
    terms = _product_terms(a.terms, b.terms, P, trunc.degree_cap, odd_only=False)
    return WeylForm._make(a.dim, trunc, a.q + b.q, terms)


def graded_commutator(a: WeylForm, b: WeylForm, P: PoissonMatrix, cap: int | None = None) -> WeylForm:
    """``[a, b] = a*b - (-1)^{|a||b|} b*a``.

    For homogeneous forms this is the wedge of fiberwise commutators, which
    keeps only the odd-order Moyal terms (doubled).
    """
    _check_pair(a, b, P)
    trunc = a.trunc if cap is None else a.trunc.with_cap(cap)
    terms = _product_terms(a.terms, b.terms, P, trunc.degree_cap, odd_only=True)
    return WeylForm._make(a.dim, trunc, a.q + b.q, terms)


def moyal_mul(a: WeylElement, b: WeylElement, P: PoissonMatrix) -> WeylElement:
    if a.q or b.q:
        raise ValueError("moyal_mul takes Weyl elements; use graded_product for forms")
    return graded_product(a, b, P)


def commutator(a: WeylElement, b: WeylElement, P: PoissonMatrix) -> WeylElement:
    if a.q or b.q:
        raise ValueError("commutator takes Weyl elements; use graded_commutator for forms")
    return graded_commutator(a, b, P)


def ihbar_commutator(a: WeylForm, b: WeylForm, P: PoissonMatrix) -> WeylForm:
    """``(i/hbar)[a, b]``, computed two degrees above the cap before dividing."""
    raw = graded_commutator(a, b, P, cap=a.trunc.degree_cap + 2)
    terms = {(dx, k - 1, y, x): c * I for (dx, k, y, x), c in raw.terms.items()}
    return WeylForm._make(a.dim, a.trunc, a.q + b.q, terms)


def ihbar_product(a: WeylForm, b: WeylForm, P: PoissonMatrix) -> WeylForm:
    """``(i/hbar) a*b``, computed two degrees above the cap before dividing."""
    raw = graded_product(a, b, P, cap=a.trunc.degree_cap + 2)
    terms = {(dx, k - 1, y, x): c * I for (dx, k, y, x), c in raw.terms.items()}
    return WeylForm._make(a.dim, a.trunc, a.q + b.q, terms)


def center_product(a: WeylElement, b: WeylElement, P: PoissonMatrix) -> PolySeries:
    """``sigma(a * b)`` without forming the y-dependent part of the product."""
    _check_pair(a, b, P)
    cap = a.trunc.degree_cap
    ga, gb = _group(a.terms), _group(b.terms)
    by_deg: dict = {}
    for (dxb, yb), lb in gb.items():
        by_deg.setdefault(sum(yb), []).append((yb, lb))
    out: dict = {}
    full = P.full_contract
    for (_, ya), la in ga.items():
        d = sum(ya)
        for yb, lb in by_deg.get(d, ()):
            hit = full(ya, yb)
            if hit is None:
                continue
            m, coef = hit
            budget = cap - 2 * d
            for ka, xa, ca in la:
                for kb, xb, cb in lb:
                    if 2 * (ka + kb) > budget:
                        break
                    _accumulate(out, (ka + kb + m, tuple([p + q for p, q in zip(xa, xb)])),
                                ca * cb * coef)
    return PolySeries._wrap(a.dim, out)


# ---------------------------------------------------------------------------
# fiberwise linear operators


def center_project(a: WeylForm):
    """``a|_{y=0}``: a ``PolySeries`` for elements, a ``ScalarFormSeries`` for forms."""
    if a.q == 0:
        y0 = (0,) * a.dim
        return PolySeries._wrap(
            a.dim, {(k, x): c for (_, k, y, x), c in a.terms.items() if y == y0}
        )
    return a.scalar_part()


def euler_E(a: WeylForm) -> WeylForm:
    """``E = -(i/2) sum_j y^j d/dy^j``: a term of y-degree m is scaled by ``-(i/2) m``."""
    out = {}
    for key, c in a.terms.items():
        m = sum(key[2])
        if m:
            out[key] = c * (HALF_I * -m)
    return a._like(out)


def hbar_derivative(a: WeylForm, trunc: Truncation | None = None) -> WeylForm:
    """``d/dhbar``.  Pass a truncation with a lower floor when ``a`` has hbar^{<=0}."""
    trunc = trunc or a.trunc
    out = {}
    for (dx, k, y, x), c in a.terms.items():
        if k:
            if k - 1 < trunc.laurent_floor:
                raise LaurentFloorError(
                    f"d/dhbar of hbar^{k} falls below floor {trunc.laurent_floor}"
                )
            out[(dx, k - 1, y, x)] = c * k
    return WeylForm._make(a.dim, trunc, a.q, out)


def hbar_euler(a: WeylForm) -> WeylForm:
    """``hbar d/dhbar`` (degree preserving)."""
    return a._like({key: c * key[1] for key, c in a.terms.items() if key[1]})


def rho(a: WeylForm) -> WeylForm:
    """``rho(a) = (hbar/i) da/dhbar + E(a)``."""
    out = {}
    for key, c in a.terms.items():
        k, m = key[1], sum(key[2])
        v = ZERO
        if k:
            v = v + c * (-I * k)
        if m:
            v = v + c * (HALF_I * -m)
        if v:
            out[key] = v
    return a._like(out)


def c1_bilinear(a: WeylForm, b: WeylForm, P: PoissonMatrix) -> WeylForm:
    """``d/dhbar(a*b) - (da/dhbar)*b - a*(db/dhbar)``: the hbar-derivative of the fiber product.

    Computed directly as ``sum_m m hbar^{m-1} P_m(a, b)``; one degree of
    headroom is used so the result is complete up to the cap.
    """
    _check_pair(a, b, P)
    cap = a.trunc.degree_cap + 2
    ga, gb = _group(a.terms), _group(b.terms)
    out: dict = {}
    for (dxa, ya), la in ga.items():
        for (dxb, yb), lb in gb.items():
            sign, dx = wedge_sign(dxa, dxb)
            if not sign:
                continue
            budget = cap - sum(ya) - sum(yb)
            table = [(m, yo, c * m) for m, yo, c in P.contract(ya, yb) if m]
            if not table:
                continue
            for ka, xa, ca in la:
                if sign < 0:
                    ca = -ca
                for kb, xb, cb in lb:
                    if 2 * (ka + kb) > budget:
                        break
                    cc = ca * cb
                    xs = tuple([p + q for p, q in zip(xa, xb)])
                    for m, yo, coef in table:
                        _accumulate(out, (dx, ka + kb + m - 1, yo, xs), cc * coef)
    return WeylForm._make(a.dim, a.trunc, a.q + b.q,
                          {key: c for key, c in out.items() if _degree(key) <= a.trunc.degree_cap})


def x_multiply(a: WeylForm, p: BasePoly) -> WeylForm:
    """Multiply every x-coefficient of ``a`` by the polynomial ``p``."""
    out: dict = {}
    for (dx, k, y, x), c in a.terms.items():
        for px, pc in p.terms.items():
            _accumulate(out, (dx, k, y, tuple([s + t for s, t in zip(x, px)])), c * pc)
    return a._like(out)
