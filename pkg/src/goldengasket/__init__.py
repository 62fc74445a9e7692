"""Overlapping simplex IFS at multinacci ratios: exact geometry and analysis."""

from .attractor import (
    ConsistentUpTo,
    HoleReport,
    LevelSet,
    RenderOptions,
    Violation,
    box_dimension_estimate,
    build_level,
    check_total_self_similarity,
    classify_holes,
    estimate_area,
    render_svg,
)
from .errors import (
    DomainError,
    MultipleRootsError,
    NoRootError,
    PrecisionExhausted,
    ResourceLimit,
)
from .exact import (
    AlgebraicNumber,
    LinearCombination,
    compare,
    compare_values,
    gasket_dimension,
    isolate_root,
    lambda_star,
    multinacci,
    sierpinski_dimension,
    sigma,
    smallest_positive_root,
    tau,
    uniqueness_dimension,
)
from .geometry import (
    CornerRegion,
    HoleRegion,
    Similitude,
    apply_map,
    compose_word,
    generator_matrix,
    hole_meets_region,
    hole_region,
    image_region,
    intersection_bounds,
    regions_intersect,
    translation_vector,
)
from .separation import (
    ConverseWitness,
    NotFound,
    SeparationReport,
    SignedPolyValue,
    converse_witness,
    ell_upper,
    erdos_joo_gap_check,
    gap_property_holds,
    golden_ratio,
    min_abs_signed_sum,
    multinacci_reciprocal,
    pisot_number,
    separation_bound_check,
)
from .words import (
    CountingSeq,
    Expansion,
    canonical_word,
    count_unique_addresses,
    edge_address,
    greedy_expansion,
    h_sequence,
    p_sequence,
    point_from_address,
    series_coefficients,
    u_sequence,
)

__version__ = "0.1.0"
