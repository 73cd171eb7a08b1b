"""Chart-level de Rham bookkeeping: declared non-exact classes, projection of
closed 2-form series onto them, and the quantum Liouville obstruction."""

from __future__ import annotations

from .forms import NotClosedError, ScalarFormSeries, d_exterior, euler_homotopy
from .linalg import SparseSystem
from .scalar import ZERO, Scalar

__all__ = ["CohomologyDecl", "project_class", "liouville_obstruction"]


class CohomologyDecl:
    """Named constant closed 2-forms declared non-exact on the manifold.

    Everything else closed is treated as exact (through the Euler homotopy).
    Projection is along the complement spanned by the coordinate 2-forms not
    used as pivots by the basis.
    """

    def __init__(self, dim: int, basis=()):
        self.dim = dim
        names = []
        forms = []
        for name, w in basis:
            if not isinstance(w, ScalarFormSeries):
                w = ScalarFormSeries.from_matrix(w)
            if w.dim != dim:
                raise ValueError(f"basis form {name!r} has the wrong dimension")
            if w.form_degrees() - {2} or set(w.hbar_orders()) - {0}:
                raise ValueError(f"basis form {name!r} must be an hbar-free 2-form")
            if w.constant_part() != w:
                raise ValueError(f"basis form {name!r} must have constant coefficients")
            if d_exterior(w):
                raise ValueError(f"basis form {name!r} is not closed")
            if name in names:
                raise ValueError(f"duplicate basis name {name!r}")
            names.append(name)
            forms.append(w)
        self.names = tuple(names)
        self.forms = tuple(forms)
        # reduce the basis to pick one pivot coordinate pair per element
        self._pivots = []
        reduced = []
        for idx, w in enumerate(forms):
            vec = {dx: c for (_, dx, _), c in w.terms.items()}
            combo = {idx: Scalar(1)}
            for piv, rvec, rcombo in reduced:
                f = vec.get(piv)
                if f:
                    for dx, c in rvec.items():
                        v = vec.get(dx, ZERO) - f * c
                        if v:
                            vec[dx] = v
                        else:
                            vec.pop(dx, None)
                    for j, c in rcombo.items():
                        combo[j] = combo.get(j, ZERO) - f * c
            if not vec:
                raise ValueError("declared basis is linearly dependent")
            piv = min(vec)
            inv = vec[piv].inverse()
            vec = {dx: c * inv for dx, c in vec.items()}
            combo = {j: c * inv for j, c in combo.items() if c}
            reduced.append((piv, vec, combo))
        self._reduced = reduced

    def _coordinates(self, const_vec: dict) -> list:
        """Basis coordinates of a constant 2-form given as ``{dx: Scalar}``."""
        vec = dict(const_vec)
        coords = [ZERO] * len(self.forms)
        for piv, rvec, combo in self._reduced:
            f = vec.get(piv)
            if not f:
                continue
            for dx, c in rvec.items():
                v = vec.get(dx, ZERO) - f * c
                if v:
                    vec[dx] = v
                else:
                    vec.pop(dx, None)
            for j, c in combo.items():
                coords[j] = coords[j] + f * c
        return coords

    def to_json(self) -> list:
        return [{"name": n, "form": w.to_json()} for n, w in zip(self.names, self.forms)]


def project_class(w: ScalarFormSeries, decl: CohomologyDecl) -> dict:
    """Per hbar order: ``w_k = sum_j c_j basis_j + d(eta_k)``.

    Returns ``{"coordinates": {name: {k: Scalar}}, "primitives": {k: form}}``.
    """
    if w.dim != decl.dim:
        raise ValueError("form and declaration dimensions differ")
    if w.form_degrees() - {2}:
        raise ValueError("project_class expects a 2-form series")
    if d_exterior(w):
        raise NotClosedError("form series is not closed")
    coords = {name: {} for name in decl.names}
    prims = {}
    zero = (0,) * w.dim
    for k in w.hbar_orders():
        wk = w.at_order(k)
        const = {dx: c for (_, dx, x), c in wk.terms.items() if x == zero}
        cs = decl._coordinates(const)
        rem = wk
        for name, form, c in zip(decl.names, decl.forms, cs):
            coords[name][k] = c
            if c:
                rem = rem - form.shift(k).scale(c)
        eta = euler_homotopy(rem)
        if d_exterior(eta) != rem:
            raise NotClosedError(f"remainder at hbar^{k} is not exact")
        prims[k] = eta
    return {"coordinates": coords, "primitives": prims}


def liouville_obstruction(setup_or_presc, decl: CohomologyDecl) -> dict:
    """Project ``d/dhbar(Omega/hbar)``; any nonzero coordinate rules out a
    quantum Liouville operator."""
    presc = getattr(setup_or_presc, "presc", setup_or_presc)
    dcl = presc.Omega.shift(-1).hbar_derivative()
    proj = project_class(dcl, decl)
    nonzero = {name: {k: c for k, c in by_k.items() if c}
               for name, by_k in proj["coordinates"].items()}
    nonzero = {name: v for name, v in nonzero.items() if v}
    return {"derivative": dcl, "coordinates": proj["coordinates"],
            "primitives": proj["primitives"], "obstructed": bool(nonzero), "nonzero": nonzero}
