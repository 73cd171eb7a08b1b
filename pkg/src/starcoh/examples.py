"""Named example setups: flat Moyal charts, the cotangent bundle of the
2-torus with an hbar- or hbar^2-perturbed symplectic form, and a flat chart
with one nonzero Christoffel symbol."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import CohomologyDecl
from .fedosov import CurvaturePrescription, FedosovSetup
from .hochschild import Cochain
from .linalg import matmul
from .poly import BasePoly
from .scalar import Scalar, as_scalar
from .weyl import PoissonMatrix, Truncation
from .weylforms import ConnectionData

__all__ = ["ExampleSpec", "builtin", "BUILTIN_NAMES", "pi_expansion"]

BUILTIN_NAMES = ("moyal_r2", "moyal_r4", "torus_h_omega1", "torus_h2_omega1", "curved_toy")


@dataclass
class ExampleSpec:
    name: str
    coords: tuple
    omega: list
    christoffel: dict = field(default_factory=dict)
    perturbations: list = field(default_factory=list)
    candidate: Cochain | None = None
    decl: CohomologyDecl | None = None
    trunc: Truncation = field(default_factory=lambda: Truncation(8))
    periodic: tuple = ()
    description: str = ""

    @property
    def dim(self) -> int:
        return len(self.coords)

    def poisson(self) -> PoissonMatrix:
        return PoissonMatrix.from_omega(self.omega)

    def connection(self) -> ConnectionData:
        return ConnectionData(self.poisson(), self.christoffel)

    def prescription(self) -> CurvaturePrescription:
        return CurvaturePrescription(self.poisson(), self.perturbations)

    def setup(self, trunc: Truncation | None = None) -> FedosovSetup:
        conn = self.connection()
        presc = CurvaturePrescription(conn.P, self.perturbations)
        return FedosovSetup(conn, presc, trunc or self.trunc)


def _canonical(n: int) -> list:
    """``sum_a dq^a ^ dp^a`` on coordinates ``(q^1..q^n, p^1..p^n)``."""
    dim = 2 * n
    m = [[0] * dim for _ in range(dim)]
    for a in range(n):
        m[a][n + a] = 1
        m[n + a][a] = -1
    return m


def _theta12(dim: int = 4) -> list:
    m = [[0] * dim for _ in range(dim)]
    m[0][1] = 1
    m[1][0] = -1
    return m


def _euler_field(dim: int, indices, weight) -> Cochain:
    return Cochain.vector_field(dim, {i: BasePoly.var(dim, i).scale(as_scalar(weight)) for i in indices})


def pi_expansion(spec: ExampleSpec, order: int) -> dict:
    """Series inverse of ``omega_0 + sum hbar^k omega_k``: ``{k: pi_k}`` through ``hbar^order``."""
    P = spec.poisson()
    pi0 = [list(row) for row in P.pi]
    dim = spec.dim
    omegas = {}
    for k, w in spec.perturbations:
        omegas[k] = [[as_scalar(v) for v in row] for row in w]
    out = {0: pi0}
    for m in range(1, order + 1):
        acc = [[Scalar(0)] * dim for _ in range(dim)]
        for k, wk in omegas.items():
            if k > m:
                continue
            prod = matmul(matmul(pi0, wk), out[m - k])
            acc = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, prod)]
        out[m] = acc
    return out


def builtin(name: str) -> ExampleSpec:
    if name == "moyal_r2":
        return ExampleSpec(
            name, ("q", "p"), _canonical(1),
            candidate=_euler_field(2, range(2), "1/2"),
            decl=CohomologyDecl(2, []),
            description="flat R^2, omega = dq^dp, Omega = omega",
        )
    if name == "moyal_r4":
        return ExampleSpec(
            name, ("q1", "q2", "p1", "p2"), _canonical(2),
            candidate=_euler_field(4, range(4), "1/2"),
            decl=CohomologyDecl(4, []),
            description="flat R^4, omega = dq1^dp1 + dq2^dp2, Omega = omega",
        )
    if name in ("torus_h_omega1", "torus_h2_omega1"):
        k = 1 if name == "torus_h_omega1" else 2
        return ExampleSpec(
            name, ("theta1", "theta2", "p1", "p2"), _canonical(2),
            perturbations=[(k, _theta12())],
            candidate=_euler_field(4, (2, 3), 1),
            decl=CohomologyDecl(4, [("dtheta1^dtheta2", _theta12())]),
            periodic=(0, 1),
            description=f"T*T^2 chart, Omega = omega_0 + hbar^{k} dtheta1^dtheta2",
        )
    if name == "curved_toy":
        return ExampleSpec(
            name, ("q", "p"), _canonical(1),
            christoffel={(0, 0, 0): BasePoly.var(2, 1)},
            candidate=Cochain.vector_field(2, {1: BasePoly.var(2, 1)}),
            decl=CohomologyDecl(2, []),
            description="flat chart with Gamma_qqq = p, Omega = omega",
        )
    raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
