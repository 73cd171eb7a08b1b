"""Exact linear algebra over Q(i): dense inverse and a sparse incremental solver."""

from __future__ import annotations

from .scalar import ONE, ZERO, Scalar, as_scalar


class SingularMatrixError(ValueError):
    pass


def inverse(matrix) -> list[list[Scalar]]:
    n = len(matrix)
    a = [[as_scalar(v) for v in row] + [ONE if i == j else ZERO for j in range(n)]
         for i, row in enumerate(matrix)]
    if any(len(row) != 2 * n for row in a):
        raise ValueError("matrix must be square")
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is not invertible")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def matmul(a, b) -> list[list[Scalar]]:
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), ZERO) for j in range(p)]
            for i in range(n)]


class SparseSystem:
    """Accumulates sparse linear equations and keeps them in reduced echelon form.

    Rows are ``{unknown: Scalar}`` dictionaries.  Unknowns may be any hashable,
    orderable keys.  ``add`` returns False as soon as an inconsistent equation
    is found.
    """

    def __init__(self):
        self.pivots: dict = {}  # pivot var -> (row without pivot, rhs)
        self.consistent = True
        self.rank = 0

    def _reduce(self, row: dict, rhs: Scalar):
        row = dict(row)
        for var in [v for v in row if v in self.pivots]:
            c = row.pop(var, None)
            if c is None:
                continue
            prow, prhs = self.pivots[var]
            rhs = rhs - c * prhs
            for v2, c2 in prow.items():
                new = row.get(v2, ZERO) - c * c2
                if new:
                    row[v2] = new
                else:
                    row.pop(v2, None)
        return row, rhs

    def add(self, row: dict, rhs=ZERO) -> bool:
        row = {v: as_scalar(c) for v, c in row.items() if c}
        row, rhs = self._reduce(row, as_scalar(rhs))
        if not row:
            if rhs:
                self.consistent = False
            return self.consistent
        var = min(row)
        inv = row.pop(var).inverse()
        row = {v: c * inv for v, c in row.items()}
        rhs = rhs * inv
        for pvar, (prow, prhs) in list(self.pivots.items()):
            c = prow.get(var)
            if c is None:
                continue
            new_row = dict(prow)
            del new_row[var]
            for v2, c2 in row.items():
                val = new_row.get(v2, ZERO) - c * c2
                if val:
                    new_row[v2] = val
                else:
                    new_row.pop(v2, None)
            self.pivots[pvar] = (new_row, prhs - c * rhs)
        self.pivots[var] = (row, rhs)
        self.rank += 1
        return self.consistent

    def solution(self) -> dict | None:
        """One solution with all free unknowns set to zero, or None."""
        if not self.consistent:
            return None
        return {v: rhs for v, (_, rhs) in self.pivots.items() if rhs}
