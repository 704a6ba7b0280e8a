"""Exact Grassmannian embeddings via tensor, exterior and symmetric powers
of matrices over commutative rings, with an exhaustive verification harness."""

from grembed.grassmann import (
    DegenerateImageError,
    GrassmannPoint,
    pluecker_coordinates,
    point_from_matrix,
    points_equal,
    sym_embed,
    tensor_embed,
    tensor_power_embed,
    wedge_embed,
)
from grembed.linalg import (
    LinalgError,
    Matrix,
    ShapeError,
    SpanNotFreeError,
    column_span_normal_form,
    det_bareiss,
    det_cofactor,
    det_division_free,
    determinant,
    is_invertible,
    matmul,
    minor,
    spans_equal,
)
from grembed.multilinear import (
    check_det_sym_identity,
    check_det_tensor_identity,
    check_det_wedge_identity,
    compound,
    kronecker,
    multinomial,
    sym_indices,
    sym_power,
    tensor_indices,
    wedge_indices,
)
from grembed.reports import EXPECTED_FAILURE, FAIL, PASS, CheckReport
from grembed.rings import (
    DualNumbers,
    IntegerRing,
    NotAUnitError,
    NotEnumerableError,
    PolynomialRing,
    PrimeField,
    RationalField,
    Ring,
    RingError,
    RingMismatchError,
    enumerate_ring,
    is_prime,
    ring_from_json,
)

__version__ = "0.1.0"
