"""Construction and exhaustive verification of MDS and near-MDS matrices."""

from .codes import (
    CodeReport,
    LinearCode,
    classify,
    dr_profile,
    dual_transpose_check,
    ghw,
    is_mds_matrix,
    is_nmds_matrix,
    min_distance,
    parity_check,
    standard_generator,
)
from .construct import (
    XYSpec,
    check_subset_sums,
    construct_involutory,
    construct_mds,
    construct_nmds,
)
from .gf import Field, FieldElement
from .matrix import FieldMatrix, all_square_submatrices_nonsingular
from .recursive import (
    MonicPoly,
    RootFamily,
    companion,
    construct_theta_family,
    is_recursive_mds,
    is_recursive_nmds,
    poly_from_roots,
    scale_poly,
    scan_exponents,
)
from .vandermonde import GVandSpec, det_gvand_formula, gvand, vand, vand_det

__version__ = "0.1.0"

__all__ = [
    "CodeReport",
    "Field",
    "FieldElement",
    "FieldMatrix",
    "GVandSpec",
    "LinearCode",
    "MonicPoly",
    "RootFamily",
    "XYSpec",
    "all_square_submatrices_nonsingular",
    "check_subset_sums",
    "classify",
    "companion",
    "construct_involutory",
    "construct_mds",
    "construct_nmds",
    "construct_theta_family",
    "det_gvand_formula",
    "dr_profile",
    "dual_transpose_check",
    "ghw",
    "gvand",
    "is_mds_matrix",
    "is_nmds_matrix",
    "is_recursive_mds",
    "is_recursive_nmds",
    "min_distance",
    "parity_check",
    "poly_from_roots",
    "scale_poly",
    "scan_exponents",
    "standard_generator",
    "vand",
    "vand_det",
    "__version__",
]
