"""Exact verification of quasi-Hopf algebras with pivotal, balanced and ribbon structure."""

__version__ = "0.1.0"

from .algebra import QuasiBialgebra, QuasiHopfAlgebra, verify_quasi_bialgebra, verify_quasi_hopf
from .builders import cyclic_qha, group_hopf, sweedler
from .errors import (
    BadParameters,
    ConstructionFailure,
    FormatError,
    InternalIdentityFailure,
    NoSolution,
    NotAnRMatrix,
    NotInvertible,
    NotSemisimple,
    QuasiHopfError,
)
from .gauge import compute_drinfeld_twist, compute_u, verify_qt
from .io import AlgebraFile, dump, dumps, load, loads
from .modules import HModule, check_spherical, check_theta_square, verify_category
from .report import Check, VerificationReport
from .ribbon import (
    build_h_theta,
    pivotal_from_integral,
    solve_pivotal,
    verify_balanced_extension,
    verify_involutory,
    verify_ribbon_element,
    verify_sovereign,
)
from .scalar import Scalar, make_field
from .tensor import Algebra, LinearMap, TensorElement

__all__ = [
    "__version__",
    "Algebra", "AlgebraFile", "BadParameters", "Check", "ConstructionFailure", "FormatError", "HModule",
    "InternalIdentityFailure", "LinearMap", "NoSolution", "NotAnRMatrix", "NotInvertible", "NotSemisimple",
    "QuasiBialgebra", "QuasiHopfAlgebra", "QuasiHopfError", "Scalar", "TensorElement", "VerificationReport",
    "build_h_theta", "check_spherical", "check_theta_square", "compute_drinfeld_twist", "compute_u",
    "cyclic_qha", "dump", "dumps", "group_hopf", "load", "loads", "make_field", "pivotal_from_integral",
    "solve_pivotal", "sweedler", "verify_balanced_extension", "verify_category", "verify_involutory",
    "verify_qt", "verify_quasi_bialgebra", "verify_quasi_hopf", "verify_ribbon_element", "verify_sovereign",
]
