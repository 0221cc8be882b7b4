"""Lie nilpotency indices of modular group algebras KG over GF(p)."""

from .algebra import EchelonBasis, GroupAlgebra, basis_insert
from .classify import (
    CheckReport,
    Classification,
    Condition,
    NilpotencyStatus,
    Prediction,
    PredictionKind,
    Reason,
    classify_theorem1,
    cross_check,
    lie_nilpotency_status,
    unit_group_class,
)
from .errors import LieNilError
from .groups import (
    Group,
    GroupSpec,
    Permutation,
    Subgroup,
    abelian_type,
    build_group,
    derived_subgroup,
    lower_central_series,
    nilpotency_class,
    parse_catalog,
    subgroup_generated,
)
from .series import (
    SeriesReport,
    brute_force_t_lower,
    ideal_closure,
    lower_chain,
    series_report,
    upper_chain,
)
from .verifier import (
    CaseTag,
    ChainReport,
    ChainStep,
    WitnessProfile,
    find_witness_pair,
    iter_witness_pairs,
    verify_chain_p2,
    verify_chain_p3,
)

__version__ = "0.1.0"

__all__ = [
    "CaseTag",
    "ChainReport",
    "ChainStep",
    "CheckReport",
    "Classification",
    "Condition",
    "EchelonBasis",
    "Group",
    "GroupAlgebra",
    "GroupSpec",
    "LieNilError",
    "NilpotencyStatus",
    "Permutation",
    "Prediction",
    "PredictionKind",
    "Reason",
    "SeriesReport",
    "Subgroup",
    "WitnessProfile",
    "abelian_type",
    "basis_insert",
    "brute_force_t_lower",
    "build_group",
    "classify_theorem1",
    "cross_check",
    "derived_subgroup",
    "find_witness_pair",
    "ideal_closure",
    "iter_witness_pairs",
    "lie_nilpotency_status",
    "lower_central_series",
    "lower_chain",
    "nilpotency_class",
    "parse_catalog",
    "series_report",
    "subgroup_generated",
    "unit_group_class",
    "upper_chain",
    "verify_chain_p2",
    "verify_chain_p3",
]
