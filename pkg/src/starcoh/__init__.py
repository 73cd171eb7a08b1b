"""Exact Fedosov star-products on flat charts and the Hochschild identities
around the derivative cocycle."""

from .scalar import I, ONE, ZERO, Scalar, parse_scalar
from .poly import BasePoly, PolySeries
from .forms import ScalarFormSeries, d_exterior, euler_homotopy
from .weyl import PoissonMatrix, Truncation, WeylElement, WeylForm, moyal_mul, commutator
from .weylforms import ConnectionData, delta, delta_inv, fedosov_D
from .fedosov import CurvaturePrescription, FedosovSetup, StarProductTable, extract_table, flat_section, star
from .hochschild import Cochain, coboundary, derivative_cocycle, liouville_check, trivialize_on_flat
from .cohomology import CohomologyDecl, liouville_obstruction, project_class
from .examples import builtin

__version__ = "0.1.0"
