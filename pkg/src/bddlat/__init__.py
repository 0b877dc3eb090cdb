"""Exact rational lattice toolkit: LLL, enumeration, duals, q-ary lattices and BDD decoding."""

from .decode import DecodeReport, babai_nearest_plane, bdd_solve, cvp_enumerate, prepare
from .duality import (dual_basis, lattice_equal, short_basis_from_set, short_basis_with_certificate,
                      unimodular_triangularize)
from .errors import (ConfigError, LatticeError, MembershipError, OracleCapError, ParseError,
                     RadiusPolicyError, RankError, ShapeError, SpecError)
from .gso import Basis, det_sq, gram_schmidt, log_profile, potential_sq
from .qary import QarySpec, bound_report, suffix_bound_check, qary_basis, validate_spec
from .reduction import LllParams, is_lll_reduced, lll_reduce, size_reduce, svp_approx, svp_enumerate

__version__ = "0.1.0"

__all__ = [
    "Basis", "ConfigError", "DecodeReport", "LatticeError", "LllParams", "MembershipError",
    "OracleCapError", "ParseError", "QarySpec", "RadiusPolicyError", "RankError", "ShapeError",
    "SpecError", "babai_nearest_plane", "bdd_solve", "bound_report", "cvp_enumerate", "det_sq",
    "dual_basis", "suffix_bound_check", "gram_schmidt", "is_lll_reduced", "lattice_equal", "lll_reduce",
    "log_profile", "potential_sq", "prepare", "qary_basis", "short_basis_from_set",
    "short_basis_with_certificate", "size_reduce", "svp_approx", "svp_enumerate",
    "unimodular_triangularize", "validate_spec",
]
