"""Exact signature tensors of piecewise polynomial paths, the word algebra
around them, and the polynomial parametrizations of their varieties."""

from .algebra import (
    RATIONALS,
    DenseMatrix,
    MultiPoly,
    ParseError,
    RingMismatchError,
    UniPoly,
    VariableTable,
    exact_nullspace_dim,
    exact_rank,
    nullspace_basis,
    parse_poly,
    parse_unipoly,
)
from .lyndon import (
    LyndonPolynomial,
    chen_fox_lyndon,
    is_lyndon,
    lie_basis,
    lyndon_shuffle,
    lyndon_words,
    standard_factorization,
)
from .paths import (
    Path,
    PathSegment,
    concat_paths,
    lin_path,
    path_from_json,
    path_to_json,
    poly_path,
    pw_lin_path,
)
from .signature import (
    SignatureResult,
    adjoint_word,
    caxis_tensor,
    cmon_tensor,
    matrix_action,
    phi_map,
    segment_sig_word,
    sig_apply,
    sig_level,
    sig_series,
    sig_word,
    signature_result,
    substitute_path,
    tensor_exp,
    tensor_exp_series,
    transform_path,
)
from .varieties import (
    IdealCounts,
    PolynomialMap,
    affine_image_dimension,
    export_map,
    low_degree_ideal_counts,
    polynomial_map_from_json,
    polynomial_map_to_json,
    signature_variety_map,
    tensor_parametrization,
    universal_variety_map,
    variety_map,
)
from .words import (
    Tensor,
    concat_product,
    format_tensor,
    half_shuffle,
    parse_tensor,
    parse_word,
    shuffle,
    word_text,
)

__version__ = "0.1.0"
