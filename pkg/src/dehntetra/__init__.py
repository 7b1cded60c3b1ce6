"""Exact tests for Dehn invariant zero tetrahedra with integer edge lengths."""

from .bounds import case5_bound, hadamard_bound, minor_bound_check
from .dehn import dehn_invariant_is_zero, modp_filter, numeric_dehn_check, zeta_squared
from .exact import MultiQuadNumber, QuadFieldElem, SqrtQuantity, quad_norm
from .families import (
    dehn_sum_certificate,
    h1_instance,
    h2_search,
    h3_search,
    new_family,
    verify_new_family_relations,
)
from .geometry import cayley_menger, dihedral_trig, is_nondegenerate, z_squared
from .padic import angle_span_dimension, hensel_sqrt, splitting_type, valuation_matrix
from .search import ScanConfig, TetraReport, check_tuple, scan
from .symmetry import canonical_form, orbit, regge

__version__ = "0.1.0"
