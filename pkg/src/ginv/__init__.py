"""Generalized matrix inverses: classical and weak families, with verification suites.

Computes the Moore-Penrose, Drazin, group, core, DMP, MPD and CMP inverses,
plus the weak CMP / weak MPD / weak DMP inverses parameterized by
minimal-rank weak Drazin inverses, and mechanically checks the
characterization identities relating them on paper-sized fixtures and
generated matrix families.
"""

from .classical import (
    BlockForms,
    IndexTooLargeError,
    classical_block_forms,
    cmp,
    core_inverse,
    dmp,
    drazin,
    drazin_residuals,
    group_inverse,
    moore_penrose,
    mpd,
    penrose_residuals,
)
from .classify import (
    InfeasibleSpecError,
    check_drazin_coincidence,
    check_pinv_coincidence,
    check_special_values,
    check_wcmp_wmpd_coincidence,
    check_weak_core_ep,
    check_wmpd_pinv_coincidence,
    exact_drazin,
    exact_index,
    exact_pinv,
    exact_rank,
    gen_ep,
    gen_hermitian_singular,
    gen_nilpotent,
    gen_partial_isometry,
    gen_with_index,
    is_chi_inverse,
    is_core_ep,
    is_ep,
    is_k_ep,
    is_left_k_ep,
    is_nilpotent,
    is_partial_isometry,
)
from .decomp import HSD, ZeroMatrixError, hs_decompose, index, mp_from_hs
from .matcore import (
    DEFAULT_TOL,
    EPS,
    NumericalError,
    SingularError,
    Tol,
    approx_eq,
    as_matrix,
    inv,
    power_rank,
    rank,
    rel_residual,
)
from .weakdrazin import (
    LEFT,
    RIGHT,
    NotMrwdError,
    WdCertificate,
    certify_mrwd,
    mrwd_dmp,
    mrwd_mpd_right,
    mrwd_pinv_structure_check,
    sample_mrwd,
)
from .weakinv import (
    CdExpression,
    JacobsonInverses,
    NotComplementaryError,
    NotIdempotentError,
    PinvRelation,
    ProjectorCharacterization,
    bott_duffin_verify,
    cd_expression,
    jacobson_ad_inverses,
    oblique_projector,
    projector_characterization,
    wcmp_pinv_relation,
    weak_cmp,
    weak_cmp_hs,
    weak_dmp,
    weak_mpd,
    weak_mpd_hs,
)

__version__ = "0.1.0"
