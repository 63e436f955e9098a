"""Monomial ideals: skeleton chains, depth, Stanley depth and h-regularity."""

from .core import (
    ArityError,
    IdealFormatError,
    MonomialIdeal,
    PreconditionError,
    default_cap,
    dimension_oracle,
    format_ideal,
    minimalize,
    parse_ideal,
)
from .homology import (
    BettiTable,
    FieldConfig,
    betti_table,
    depth,
    depth_via_skeletons,
    is_cohen_macaulay,
    koszul_strand_rank,
    regularity,
    regularity_via_truncations,
)
from .poset import (
    CharacteristicPoset,
    Interval,
    Partition,
    StanleyDecomposition,
    build_poset,
    decomposition_to_partition,
    dimension_from_poset,
    partition_to_decomposition,
    validate_decomposition,
    validate_partition,
)
from .skeleton import (
    layer_decomposition,
    skeleton_chain,
    skeleton_ideal,
    verify_layer_direct_sum,
)
from .stanley import (
    SearchBudget,
    check_hreg_conjecture,
    check_stanley_conjecture,
    generator_rooted_partition,
    hreg,
    sdepth,
)

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "BettiTable",
    "CharacteristicPoset",
    "FieldConfig",
    "IdealFormatError",
    "Interval",
    "MonomialIdeal",
    "Partition",
    "PreconditionError",
    "SearchBudget",
    "StanleyDecomposition",
    "betti_table",
    "build_poset",
    "check_hreg_conjecture",
    "check_stanley_conjecture",
    "decomposition_to_partition",
    "default_cap",
    "depth",
    "depth_via_skeletons",
    "dimension_from_poset",
    "dimension_oracle",
    "format_ideal",
    "generator_rooted_partition",
    "hreg",
    "is_cohen_macaulay",
    "koszul_strand_rank",
    "layer_decomposition",
    "minimalize",
    "parse_ideal",
    "partition_to_decomposition",
    "regularity",
    "regularity_via_truncations",
    "sdepth",
    "skeleton_chain",
    "skeleton_ideal",
    "validate_decomposition",
    "validate_partition",
    "verify_layer_direct_sum",
]
