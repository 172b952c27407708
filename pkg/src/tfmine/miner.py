"""Depth-first mining of high temporal fuzzy utility itemsets.

Pipeline per invocation: fuzzify and profile every transaction, build the
period index, filter and reorder the database by the item-level upper-bound
ratio, build the initial utility lists, then recursively join lists in global
order.  A node is extended only while its fuzzy utility plus remaining
measure reaches the utility floor (gamma times the tail tfu window); the join
itself can abort early on the same floor.  Both prunes are toggleable for
ablation runs and never change the result set, only the counters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .database import TemporalDatabase
from .membership import Fuzzifier, MembershipFunction, ROUNDING_MODES
from .preprocess import (
    FuzzyItem,
    TemporalIndex,
    all_upper_bound_ratios,
    build_profiles,
    build_temporal_index,
    compute_global_order,
    revise_database,
)
from .rtflist import RTFList, build_initial_lists, construct


@dataclass
class MinerConfig:
    """gamma is a fraction in [0, 1].

    extension_prune skips extending a node whose sum_fu + sum_rmtfu falls
    below the floor.  The check must gate only the node's own subtree: a
    joined list that fails it still has to stay in the sibling pool, because
    later branches join against it to reach itemsets outside its subtree
    (ones inserting items before its last item, which its remaining measure
    does not cover).  join_abort gates the in-join budget abort; that one is
    a sound sibling drop because its budget is the joining parent's wider
    remaining scope.  remaining_only_retention additionally drops joins whose
    remaining sum alone is not above the floor — deliberately incomplete,
    study use only."""

    gamma: float
    extension_prune: bool = True
    join_abort: bool = True
    remaining_only_retention: bool = False
    rounding: str = "exact"

    def validate(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be within [0, 1], got {self.gamma}")
        if self.rounding not in ROUNDING_MODES:
            raise ValueError(f"unknown rounding mode {self.rounding!r}")


@dataclass
class SearchMetrics:
    visited_nodes: int = 0
    candidates: int = 0
    constructed_lists: int = 0
    join_aborts: int = 0
    extension_skips: int = 0
    wall_seconds: float = 0.0


@dataclass(frozen=True)
class MiningResult:
    itemset: tuple[FuzzyItem, ...]
    tfur: float
    sum_fu: float


@dataclass
class MiningOutcome:
    results: list[MiningResult] = field(default_factory=list)
    metrics: SearchMetrics = field(default_factory=SearchMetrics)


def tfur(lst: RTFList, index: TemporalIndex) -> float:
    """sum_fu over the tfu total of the periods from the list's latest first
    period onward.  A zero denominator cannot occur for a non-empty list
    (every supporting transaction lies inside the window and its tfu bounds
    the itemset's fu from above); returns 0 defensively."""
    denom = index.suffix_tfu[lst.latest_first_period]
    if denom <= 0.0:
        return 0.0
    return lst.sum_fu / denom


def prune_ratio(metrics: SearchMetrics) -> float:
    if metrics.visited_nodes == 0:
        return 0.0
    return (metrics.visited_nodes - metrics.candidates) / metrics.visited_nodes


def mine(
    db: TemporalDatabase, mf: MembershipFunction, config: MinerConfig
) -> MiningOutcome:
    config.validate()
    start = time.perf_counter()
    outcome = MiningOutcome()
    fuzzifier = Fuzzifier(mf, config.rounding)
    profiles = build_profiles(db, fuzzifier)
    index = build_temporal_index(db, profiles)
    if index.tail_tfu <= 0.0:
        outcome.metrics.wall_seconds = time.perf_counter() - start
        return outcome
    ratios = all_upper_bound_ratios(db, profiles, index)
    order = compute_global_order(ratios)
    revised = revise_database(db, ratios, order, config.gamma)
    initial = build_initial_lists(revised, profiles, index, order)
    floor = config.gamma * index.tail_tfu
    _step(None, initial, config, floor, index, outcome)
    rank = {item: i for i, item in enumerate(order)}
    outcome.results.sort(
        key=lambda r: (
            len(r.itemset),
            tuple((rank[fi.item], fi.region_index) for fi in r.itemset),
        )
    )
    assert outcome.metrics.candidates <= outcome.metrics.visited_nodes
    outcome.metrics.wall_seconds = time.perf_counter() - start
    return outcome


def _step(
    prefix: RTFList | None,
    lists: list[RTFList],
    config: MinerConfig,
    floor: float,
    index: TemporalIndex,
    outcome: MiningOutcome,
):
    metrics = outcome.metrics
    no_abort = float("-inf")
    for i, x in enumerate(lists):
        metrics.visited_nodes += 1
        ratio = tfur(x, index)
        if ratio >= config.gamma:
            outcome.results.append(MiningResult(x.itemset, ratio, x.sum_fu))
        if config.extension_prune and x.sum_fu + x.sum_rmtfu < floor:
            metrics.extension_skips += 1
            continue
        extensions = []
        last_item = x.itemset[-1].item
        for y in lists[i + 1:]:
            if y.itemset[-1].item == last_item:
                continue
            joined = construct(
                prefix, x, y, floor if config.join_abort else no_abort
            )
            if joined is None:
                metrics.join_aborts += 1
                continue
            metrics.constructed_lists += 1
            if not joined.entries:
                continue
            if config.remaining_only_retention and not joined.sum_rmtfu > floor:
                continue
            metrics.candidates += 1
            extensions.append(joined)
        if extensions:
            _step(x, extensions, config, floor, index, outcome)
