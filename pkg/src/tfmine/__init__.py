"""Mining of high temporal fuzzy utility itemsets from temporal quantitative
transaction databases, with a brute-force reference miner for verification."""

from .database import (
    DatabaseError,
    QuantTransaction,
    TemporalDatabase,
    build_tp_table,
)
from .membership import (
    Fuzzifier,
    MembershipError,
    MembershipFunction,
    RegionCurve,
    default_membership_function,
    fuzzify,
    membership_from_obj,
)
from .miner import (
    MinerConfig,
    MiningOutcome,
    MiningResult,
    SearchMetrics,
    mine,
    prune_ratio,
    tfur,
)
from .oracle import OracleGuardError, OracleRow, enumerate_fuzzy_itemsets, oracle_mine
from .preprocess import (
    FuzzyItem,
    TemporalIndex,
    TransactionProfile,
    all_upper_bound_ratios,
    build_profiles,
    build_temporal_index,
    compute_global_order,
    item_upper_bound_ratio,
    profile_transaction,
    revise_database,
)
from .rtflist import RTFEntry, RTFList, build_initial_lists, construct, dump_lists, itemset_label

__version__ = "0.1.0"

__all__ = [
    "DatabaseError",
    "Fuzzifier",
    "FuzzyItem",
    "MembershipError",
    "MembershipFunction",
    "MinerConfig",
    "MiningOutcome",
    "MiningResult",
    "OracleGuardError",
    "OracleRow",
    "QuantTransaction",
    "RTFEntry",
    "RTFList",
    "RegionCurve",
    "SearchMetrics",
    "TemporalDatabase",
    "TemporalIndex",
    "TransactionProfile",
    "all_upper_bound_ratios",
    "build_initial_lists",
    "build_profiles",
    "build_temporal_index",
    "build_tp_table",
    "compute_global_order",
    "construct",
    "default_membership_function",
    "dump_lists",
    "enumerate_fuzzy_itemsets",
    "fuzzify",
    "item_upper_bound_ratio",
    "itemset_label",
    "membership_from_obj",
    "mine",
    "oracle_mine",
    "profile_transaction",
    "prune_ratio",
    "revise_database",
    "tfur",
]
