"""Certified operator p-norm bounds for complex matrices on l^p(n).

Exact values where structure allows it (balanced line sums, circulants,
cyclic Hankel layouts, rank-one block tensors, log-affine anchor pairs),
interpolation upper bounds and attained lower bounds everywhere else.
"""

from .core import (
    INF,
    Exponent,
    adjoint,
    as_exponent,
    as_matrix,
    as_vector,
    dual_exponent,
    norm_equivalence_factor,
    pairing,
    vec_norm,
)
from .estimator import (
    AscentResult,
    CertificateError,
    ascent_lower_bound,
    best_lower_bound,
    certified_bound,
    eigen_lower_bound,
    oracle_norm,
    oracle_search,
)
from .exact import (
    AnchorNorms,
    anchor_norms,
    is_p_isometry,
    norm_inf,
    norm_inf_attained,
    norm_one,
    norm_one_attained,
    norm_two,
)
from .interp import (
    LogAffineReport,
    NormBound,
    PNormProfile,
    default_grid,
    is_log_affine,
    la_envelope,
    la_report_from_anchors,
    profile,
    riesz_thorin_bound,
    three_point_log_affinity,
    upper_bound,
    upper_bound_from_anchors,
)
from .matio import MatrixParseError, read_matrix, write_matrix
from .structured import (
    Circulant,
    HankelMod,
    LAWitness,
    TensorRankOne,
    UnitaryPermutation,
    as_circulant,
    as_hankel,
    as_tensor_rank_one,
    as_unitary_permutation,
    block_column_bound,
    block_grid_bound,
    block_row_bound,
    circulant_two_norm,
    classify_circulant_la,
    column_embed,
    column_embed_norm,
    densify,
    direct_sum,
    direct_sum_norm,
    doubly_balanced_norm,
    embed_is_la,
    hankel_factor,
    magic3,
    magic4,
    pad_embed,
    random_unitary_permutation,
    row_embed,
    row_embed_norm,
    split_direct_sum,
    tensor_is_la,
    tensor_norm,
)

__version__ = "0.1.0"
