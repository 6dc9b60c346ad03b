"""Exact-arithmetic quantum cohomology engine for projective hypersurfaces.

Computes virtual structure constants, flat-coordinate connection data, and
real genus-0 structure constants of degree-k hypersurfaces in CP^{N-1} in
the general-type regime k > N, entirely over arbitrary-precision rationals.
"""

from .exact import QOperator, QSeries, format_rational, parse_rational
from .constants import VirtualConstantTable, degree_one_row, load_table, store_table
from .gaussmanin import (
    FlatConnection,
    GMSystem,
    SectorMatrices,
    build_sector_matrices,
    build_truncated_system,
    coordinate_change_map,
    eliminate_to_flat,
    extract_w3,
    t_frame_matrix,
)
from .correlators import (
    FlatCorrelators,
    RecursionOracle,
    VirtualCorrelators,
    hi_combination,
    named_combination,
    normalized_virtual,
)
from .mirror import (
    enumerate_partitions,
    real_structure_constant,
    real_window,
    s_factor,
    verify_kahler_scaling,
)

__all__ = [
    "QOperator",
    "QSeries",
    "format_rational",
    "parse_rational",
    "VirtualConstantTable",
    "degree_one_row",
    "load_table",
    "store_table",
    "GMSystem",
    "FlatConnection",
    "SectorMatrices",
    "build_truncated_system",
    "eliminate_to_flat",
    "extract_w3",
    "build_sector_matrices",
    "coordinate_change_map",
    "t_frame_matrix",
    "VirtualCorrelators",
    "FlatCorrelators",
    "RecursionOracle",
    "normalized_virtual",
    "named_combination",
    "hi_combination",
    "enumerate_partitions",
    "s_factor",
    "real_structure_constant",
    "real_window",
    "verify_kahler_scaling",
]
