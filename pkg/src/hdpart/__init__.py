"""Exact computation toolkit for higher-dimensional partitions.

Matrices of nonnegative integers correspond to partitions through the grid
of directed last-passage times; the package provides the transform and its
inverse, corner and corner-hook statistics with their product-formula
generating functions, Grothendieck-type polynomials over several alphabets
with quasisymmetry checks, exhaustive enumeration and exact counting, and a
geometric last-passage-percolation simulator validated against the exact
boundary distribution.
"""

from .bijection import (
    WeightMonomial,
    check_membership,
    last_passage_partition,
    source_matrix,
    weight_of_matrix,
    weight_of_partition,
)
from .core import (
    DdPartition,
    DiagramSet,
    InvalidPartitionError,
    NdArray,
    SoftLimitError,
    corners,
    diagram,
    first_axis_shape,
    partition_from_diagram,
    partition_from_top_corners,
    pyramid_diagram,
    shape,
    top_corners,
)
from .enumeration import (
    boxed_count,
    count_by_ch_volume,
    count_by_volume,
    is_packed,
    iter_boxed_partitions,
    iter_matrices,
    iter_packed_matrices,
    iter_partitions_in_shape,
    iter_subpartitions,
    macmahon_box_count,
    pack,
    slice_sums,
)
from .groth import (
    MultiPoly,
    boxed_poly,
    cauchy_product,
    check_quasisymmetric,
    check_symmetric,
    groth_poly,
    monomial_expansion,
    monomial_qsym,
    top_component,
)
from .lpp import (
    GeomParams,
    joint_probability_exact,
    last_passage_grid,
    monte_carlo_joint,
    sample_weights,
    single_point_cdf,
)
from .series import (
    TruncSeries,
    boxed_gf,
    distinct_parts_gf,
    geometric_factor,
    macmahon_number,
    macmahon_series,
    pyramid_gf,
    shaped_gf,
)
from .stats import (
    StatRecord,
    cohook,
    corner_coord_sum,
    corner_graded_sum,
    corner_hook_volume,
    partition_stats,
    top_corner_weight,
    trace,
)

__version__ = "0.1.0"
