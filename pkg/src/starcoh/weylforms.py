"""Operators on Weyl-algebra-valued forms: delta, its homotopy, the covariant
derivative of a symplectic connection, and the assembled Fedosov connection."""

from __future__ import annotations

from .forms import wedge_sign
from .poly import BasePoly, _accumulate
from .scalar import ZERO, Scalar, as_scalar
from .weyl import PoissonMatrix, Truncation, WeylForm, ihbar_commutator

__all__ = [
    "delta",
    "delta_inv",
    "hodge_decompose",
    "ConnectionData",
    "covariant_partial",
    "fedosov_D",
    "omega_y_dx",
]


def delta(a: WeylForm) -> WeylForm:
    """``delta a = dx^i ^ da/dy^i``."""
    out: dict = {}
    for (dx, k, y, x), c in a.terms.items():
        for i, n in enumerate(y):
            if not n:
                continue
            sign, merged = wedge_sign((i,), dx)
            if not sign:
                continue
            y2 = list(y)
            y2[i] = n - 1
            v = c * n
            _accumulate(out, (merged, k, tuple(y2), x), v if sign > 0 else -v)
    return WeylForm._make(a.dim, a.trunc, a.q + 1, out)


def delta_inv(a: WeylForm) -> WeylForm:
    """Homotopy for delta: ``(1/(p+q)) y^k i(d/dx^k)`` on y-degree p, form degree q."""
    if a.q == 0:
        return WeylForm._make(a.dim, a.trunc, 0, {})
    out: dict = {}
    for (dx, k, y, x), c in a.terms.items():
        weight = sum(y) + len(dx)
        v = c / weight
        for pos, i in enumerate(dx):
            y2 = list(y)
            y2[i] += 1
            rest = dx[:pos] + dx[pos + 1:]
            _accumulate(out, (rest, k, tuple(y2), x), -v if pos & 1 else v)
    res = WeylForm._make(a.dim, a.trunc, a.q - 1, out)
    # raising y-degree can push terms past the cap
    cap = a.trunc.degree_cap
    if any(2 * key[1] + sum(key[2]) > cap for key in out):
        res = res.truncate(cap)
    return res


def hodge_decompose(a: WeylForm):
    """``(delta delta^{-1} a, delta^{-1} delta a, a|_{y=0, q=0})``; they sum to ``a``."""
    exact = delta(delta_inv(a)) if a.q else WeylForm._make(a.dim, a.trunc, a.q, {})
    coexact = delta_inv(delta(a))
    if a.q == 0:
        y0 = (0,) * a.dim
        center = a._like({key: c for key, c in a.terms.items() if key[2] == y0})
    else:
        center = a._like({})
    return exact, coexact, center


def omega_y_dx(P: PoissonMatrix, trunc: Truncation, scale=1) -> WeylForm:
    """The 1-form ``scale * omega_ij y^i dx^j``."""
    P.require_symplectic()
    n = P.dim
    s = as_scalar(scale)
    z = (0,) * n
    terms = {}
    for i in range(n):
        yi = tuple(1 if t == i else 0 for t in range(n))
        for j in range(n):
            w = P.omega[i][j]
            if w:
                terms[((j,), 0, yi, z)] = w * s
    return WeylForm(n, trunc, 1, terms)


class ConnectionData:
    """A torsion-free symplectic connection with polynomial symbols.

    ``christoffel`` maps ``(i, j, k)`` to ``Gamma_{ijk} = omega_{im} Gamma^m_{jk}``.
    Torsion-freeness plus ``nabla omega = 0`` for constant ``omega`` make the
    lowered symbols totally symmetric; both conditions are checked.
    """

    def __init__(self, P: PoissonMatrix, christoffel: dict | None = None):
        P.require_symplectic()
        self.P = P
        self.dim = n = P.dim
        gam: dict = {}
        for (i, j, k), p in (christoffel or {}).items():
            if not all(0 <= t < n for t in (i, j, k)):
                raise ValueError(f"christoffel index {(i, j, k)} out of range")
            if not isinstance(p, BasePoly):
                p = BasePoly.const(n, p)
            if p.dim != n:
                raise ValueError("christoffel polynomial dimension mismatch")
            if p:
                gam[(i, j, k)] = p
        self.lowered = gam
        zero = BasePoly(n)
        get = lambda key: gam.get(key, zero)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if get((i, j, k)) != get((i, k, j)):
                        raise ValueError(f"connection has torsion at {(i, j, k)}")
                    # (nabla_k omega)_ij = Gamma_{jki} - Gamma_{ikj}
                    if get((j, k, i)) != get((i, k, j)):
                        raise ValueError(f"connection does not preserve omega at {(i, j, k)}")
        raised: dict = {}
        for (i, j, k), p in gam.items():
            for m in range(n):
                c = P.pi[m][i]
                if c:
                    acc = raised.get((m, j, k), zero) + p.scale(c)
                    if acc:
                        raised[(m, j, k)] = acc
                    else:
                        raised.pop((m, j, k), None)
        self.raised = raised
        self._by_m: dict = {}
        for (m, i, j), p in raised.items():
            self._by_m.setdefault(m, []).append((i, j, tuple(p.terms.items())))
        self._R: dict = {}

    @property
    def is_flat(self) -> bool:
        return not self.lowered

    def riemann(self) -> dict:
        """``R^m_{jkl}`` by the textbook formula, as ``{(m, j, k, l): BasePoly}``."""
        n = self.dim
        zero = BasePoly(n)
        G = lambda m, a, b: self.raised.get((m, a, b), zero)
        out = {}
        for m in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        r = G(m, l, j).diff(k) - G(m, k, j).diff(l)
                        for p in range(n):
                            r = r + G(m, k, p) * G(p, l, j) - G(m, l, p) * G(p, k, j)
                        if r:
                            out[(m, j, k, l)] = r
        return out

    def curvature_R(self, trunc: Truncation) -> WeylForm:
        """``R = 1/4 R_{ijkl} y^i y^j dx^k ^ dx^l`` with ``R_{ijkl} = omega_im R^m_{jkl}``."""
        hit = self._R.get(trunc)
        if hit is not None:
            return hit
        n = self.dim
        omega = self.P.omega
        terms: dict = {}
        quarter = as_scalar("1/4")
        for (m, j, k, l), poly in self.riemann().items():
            if k == l:
                continue
            sign, dx = wedge_sign((k,), (l,))
            for i in range(n):
                w = omega[i][m]
                if not w:
                    continue
                y = [0] * n
                y[i] += 1
                y[j] += 1
                for x, c in poly.terms.items():
                    v = c * w * quarter
                    _accumulate(terms, (dx, 0, tuple(y), x), v if sign > 0 else -v)
        res = WeylForm._make(n, trunc, 2, {key: c for key, c in terms.items()
                                           if 2 * key[1] + sum(key[2]) <= trunc.degree_cap})
        self._R[trunc] = res
        return res

    def gamma_tilde(self, trunc: Truncation) -> WeylForm:
        """``1/2 Gamma_{ijk} y^i y^j dx^k``; ``partial = d + (i/hbar)[gamma_tilde, .]``."""
        n = self.dim
        terms: dict = {}
        half = as_scalar("1/2")
        for (i, j, k), p in self.lowered.items():
            y = [0] * n
            y[i] += 1
            y[j] += 1
            for x, c in p.terms.items():
                _accumulate(terms, ((k,), 0, tuple(y), x), c * half)
        return WeylForm(n, trunc, 1, terms)


def covariant_partial(a: WeylForm, conn: ConnectionData) -> WeylForm:
    """``partial a = dx^i ^ (da/dx^i - Gamma^m_{ij} y^j da/dy^m)``."""
    if conn.dim != a.dim:
        raise ValueError("connection dimension mismatch")
    out: dict = {}
    dim = a.dim
    by_m = conn._by_m
    for (dx, k, y, x), c in a.terms.items():
        for i in range(dim):
            n = x[i]
            if not n:
                continue
            sign, merged = wedge_sign((i,), dx)
            if not sign:
                continue
            x2 = list(x)
            x2[i] = n - 1
            v = c * n
            _accumulate(out, (merged, k, y, tuple(x2)), v if sign > 0 else -v)
        if not by_m:
            continue
        for m, entries in by_m.items():
            ym = y[m]
            if not ym:
                continue
            base = -c * ym
            for i, j, pterms in entries:
                sign, merged = wedge_sign((i,), dx)
                if not sign:
                    continue
                y2 = list(y)
                y2[m] -= 1
                y2[j] += 1
                y2 = tuple(y2)
                v0 = base if sign > 0 else -base
                for px, pc in pterms:
                    xs = tuple([p + q for p, q in zip(x, px)])
                    _accumulate(out, (merged, k, y2, xs), v0 * pc)
    return WeylForm._make(dim, a.trunc, a.q + 1, out)


def fedosov_D(a: WeylForm, conn: ConnectionData, gamma: WeylForm | None = None) -> WeylForm:
    """``D a = -delta a + partial a + (i/hbar)[gamma, a]``."""
    res = covariant_partial(a, conn) - delta(a)
    if gamma is not None and gamma.terms:
        res = res + ihbar_commutator(gamma, a, conn.P)
    return res
