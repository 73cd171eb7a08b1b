import functools

import pytest
import sympy as sp
from hypothesis import settings

from starcoh.examples import builtin
from starcoh.fedosov import extract_table
from starcoh.scalar import Scalar
from starcoh.weyl import Truncation

settings.register_profile("repo", deadline=None, max_examples=40)
settings.load_profile("repo")

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])


def to_sympy_scalar(c: Scalar):
    return sp.Rational(int(c.re.numerator), int(c.re.denominator)) + sp.I * sp.Rational(
        int(c.im.numerator), int(c.im.denominator))


def series_to_sympy(s, syms, h):
    """A ``PolySeries`` or ``BasePoly`` as a sympy expression."""
    out = sp.Integer(0)
    if hasattr(s, "coeff"):
        items = [((k, x), c) for (k, x), c in s.terms.items()]
    else:
        items = [((0, x), c) for x, c in s.terms.items()]
    for (k, x), c in items:
        term = to_sympy_scalar(c) * h ** k
        for v, n in zip(syms, x):
            term *= v ** n
        out += term
    return sp.expand(out)


def as_poly(expr, syms, h):
    return sp.Poly(expr, *syms, h, domain="QQ_I")


def moyal_oracle(f, g, syms, pi, h, N):
    """Exponential formula ``sum_n (1/n!) (-i h/2)^n pi^{i1j1}..pi^{injn} d f d g`` by sympy.

    Returns a ``sympy.Poly`` over Q(i) in ``syms`` and ``h``.
    """
    dim = len(syms)
    f, g = as_poly(f, syms, h), as_poly(g, syms, h)
    total = f * g
    layer = [(f, g, sp.Integer(1))]
    for n in range(1, N + 1):
        nxt = []
        for a, b, c in layer:
            for i in range(dim):
                da = a.diff(syms[i])
                if da.is_zero:
                    continue
                for j in range(dim):
                    if not pi[i][j]:
                        continue
                    db = b.diff(syms[j])
                    if not db.is_zero:
                        nxt.append((da, db, c * pi[i][j]))
        layer = nxt
        if not layer:
            break
        weight = as_poly((-sp.I * h / 2) ** n / sp.factorial(n), syms, h)
        for a, b, c in layer:
            total += a * b * as_poly(c, syms, h) * weight
    return total


@functools.lru_cache(maxsize=None)
def cached_setup(name: str, cap: int = 8):
    return builtin(name).setup(Truncation(cap))


@functools.lru_cache(maxsize=None)
def cached_table(name: str, N: int, cap: int | None = None):
    cap = cap if cap is not None else max(8, 2 * N)
    return extract_table(cached_setup(name, cap), N)


@pytest.fixture
def table_of():
    return cached_table


@pytest.fixture
def setup_of():
    return cached_setup
