"""Verification workbench for quasi-uniform spaces at desk scale."""

from .relcore import (
    GroundSet,
    QUSpace,
    Relation,
    SpaceValidationError,
    ValidationReport,
    closure,
    double_closure,
    identity,
    full_relation,
    relation_from_pairs,
    relation_from_rows,
    subspace,
    t0_classes,
    validate,
)
from .filters import (
    PFilter,
    StabilityProfile,
    all_pfilters,
    cluster_points,
    double_cluster_points,
    f_sub_u,
    is_bicomplete,
    is_cauchy_pair,
    is_generalized_cauchy_pair,
    is_half_complete,
    is_two_round,
    stability_profile,
    traces_on,
    two_envelope,
    u_sub_f,
)
from .hyperspace import (
    HyperSpace,
    hyper_t0_representatives,
    is_precompact,
    is_totally_bounded,
    kunzi_ryser_check,
    lift,
)
from .stability import (
    Bicompletion,
    StabilitySpace,
    bicompletion,
    build_stability_space,
    embed_hyper,
    lift_map_fd,
    oplus_entourages,
    t0_stability_space,
    ud_equivalent,
)
from .natline import CofSet, SymEntourage, SymFilter, verify_bei, verify_contra
from .intervals import IntervalSet
from .qpm import (
    QPSpace,
    cauchy_probe,
    cover_fact_check,
    double_closure_metric,
    eps_net,
    fn_sets,
    hausdorff_qpm,
    sorgenfrey,
)
from .spacefile import parse_space, serialize_space, space_hash
from .report import CheckReport, emit_report, report_digest
from .suites import Caps, gen_space, run_suite

__version__ = "0.1.0"
