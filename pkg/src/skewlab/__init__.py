"""skewlab: exact arithmetic in quotients of skew polynomial rings and the
MRD rank-metric code families living inside them."""

from .code import NuclearParameters, RankCode, enumeration_budget
from .errors import SkewlabError
from .families import (
    DParams,
    SParams,
    build_D,
    build_S,
    claimed_adjoint,
    claimed_dual,
    expected_nuclear,
    scan_etas,
    scan_gammas,
    verify_adjoint_dual,
)
from .gf import FieldElement, FieldTower, frobenius, is_square, tower, trace_norm
from .matrep import (
    MatrixEF,
    RepContext,
    bilinear_unit,
    build_rep,
    rep_rank,
    skolem_noether,
    transpose_bridge,
)
from .quot import (
    QuotElement,
    QuotRing,
    adjoint_element,
    adjoint_element_inv,
    dual_involution_unit,
    get_ring,
    reciprocal_pair,
)
from .skew import CenterPoly, SkewPoly, gcrd_bezout, lclm, left_divide, right_divide

__version__ = "0.1.0"
