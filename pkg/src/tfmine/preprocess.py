"""Preprocessing pass: fuzzy transaction profiles, the period index, item-level
upper-bound ratios, the global processing order, and the revised database.

All outputs are immutable once returned and shared freely by the mining phase.
"""

from __future__ import annotations

from dataclasses import dataclass

from .database import DatabaseError, QuantTransaction, TemporalDatabase
from .membership import Fuzzifier


@dataclass(frozen=True)
class FuzzyItem:
    """An (item, region) pair.  Total order = global item order first, region
    index second; the order lives outside this class because it depends on the
    mined database."""

    item: str
    region: str
    region_index: int

    def __str__(self):
        return f"{self.item}.{self.region}"


@dataclass(frozen=True)
class TransactionProfile:
    """Fuzzified view of one transaction.

    crisp[item]   = quantity x unit profit
    regions[item] = active (region index, label, degree) triples
    mfu[item]     = largest single-region fuzzy utility of the item
    tfu           = sum of every region fuzzy utility over all items
    mtfu          = sum of mfu over items; always <= tfu
    """

    tid: int
    period: int
    crisp: dict[str, float]
    regions: dict[str, tuple[tuple[int, str, float], ...]]
    mfu: dict[str, float]
    tfu: float
    mtfu: float


def profile_transaction(
    tx: QuantTransaction, fuzzifier: Fuzzifier, utilities: dict[str, float]
) -> TransactionProfile:
    crisp = {}
    regions = {}
    mfu = {}
    tfu = 0.0
    mtfu = 0.0
    for item, qty in tx.entries:
        profit = utilities.get(item)
        if profit is None:
            raise DatabaseError(f"item {item!r} has no utility entry")
        cu = qty * profit
        active = fuzzifier.degrees(qty)
        crisp[item] = cu
        regions[item] = active
        best = 0.0
        for _, _, degree in active:
            fu = degree * cu
            tfu += fu
            if fu > best:
                best = fu
        mfu[item] = best
        mtfu += best
    return TransactionProfile(
        tid=tx.tid, period=tx.period, crisp=crisp, regions=regions,
        mfu=mfu, tfu=tfu, mtfu=mtfu,
    )


def build_profiles(db: TemporalDatabase, fuzzifier: Fuzzifier) -> list[TransactionProfile]:
    """One profile per transaction, in the database's (period, tid) order."""
    return [profile_transaction(tx, fuzzifier, db.utilities) for tx in db.transactions]


@dataclass(frozen=True)
class TemporalIndex:
    """First-occurrence periods and per-period utility totals.

    first_period maps (item, region index) to the first period where that
    fuzzy item has degree > 0; item_first_period is the min over the item's
    regions.  suffix_tfu[p] sums tfu over all transactions in periods >= p.
    tail_tfu is the suffix at the latest first period over all fuzzy items:
    the denominator window every upper-bound comparison shares.
    """

    first_period: dict[tuple[str, int], int]
    item_first_period: dict[str, int]
    latest_first_period: int | None
    period_tfu: dict[int, float]
    suffix_tfu: dict[int, float]
    tail_tfu: float

    def suffix(self, period: int) -> float:
        return self.suffix_tfu[period]


def build_temporal_index(
    db: TemporalDatabase, profiles: list[TransactionProfile]
) -> TemporalIndex:
    first: dict[tuple[str, int], int] = {}
    item_first: dict[str, int] = {}
    period_tfu: dict[int, float] = {p: 0.0 for p in db.periods}
    # Transactions arrive period-ascending, so the first sighting wins.
    for prof in profiles:
        period_tfu[prof.period] += prof.tfu
        for item, active in prof.regions.items():
            for region_index, _, _ in active:
                key = (item, region_index)
                if key not in first:
                    first[key] = prof.period
                    if item not in item_first:
                        item_first[item] = prof.period
    suffix: dict[int, float] = {}
    acc = 0.0
    for p in reversed(db.periods):
        acc += period_tfu[p]
        suffix[p] = acc
    latest = max(first.values()) if first else None
    tail = suffix[latest] if latest is not None else 0.0
    return TemporalIndex(
        first_period=first, item_first_period=item_first,
        latest_first_period=latest, period_tfu=period_tfu,
        suffix_tfu=suffix, tail_tfu=tail,
    )


def all_upper_bound_ratios(
    db: TemporalDatabase, profiles: list[TransactionProfile], index: TemporalIndex
) -> dict[str, float]:
    """Anti-monotone upper-bound ratio per item.

    Numerator: sum of mtfu over transactions that contain the item, restricted
    to periods at or after the item's first period.  Denominator: tail_tfu.
    Items whose regions are never active get ratio 0.
    """
    sums: dict[str, float] = {}
    for prof in profiles:
        for item in prof.crisp:
            start = index.item_first_period.get(item)
            if start is not None and prof.period >= start:
                sums[item] = sums.get(item, 0.0) + prof.mtfu
    items = db.items()
    if index.tail_tfu <= 0.0:
        return {item: 0.0 for item in items}
    return {item: sums.get(item, 0.0) / index.tail_tfu for item in items}


def item_upper_bound_ratio(
    item: str, db: TemporalDatabase, profiles: list[TransactionProfile],
    index: TemporalIndex,
) -> float:
    return all_upper_bound_ratios(db, profiles, index)[item]


def compute_global_order(ratios: dict[str, float]) -> list[str]:
    """Items by descending ratio; ties broken by ascending identifier."""
    return sorted(ratios, key=lambda item: (-ratios[item], item))


def revise_database(
    db: TemporalDatabase,
    ratios: dict[str, float],
    order: list[str],
    gamma: float,
) -> list[QuantTransaction]:
    """Drop items whose upper-bound ratio falls below gamma, reorder the
    survivors inside each transaction by the global order, and drop
    transactions emptied by the filter.  Quantities are untouched."""
    rank = {item: i for i, item in enumerate(order)}
    out = []
    for tx in db.transactions:
        kept = [(item, qty) for item, qty in tx.entries if ratios[item] >= gamma]
        if not kept:
            continue
        kept.sort(key=lambda e: rank[e[0]])
        out.append(QuantTransaction(tid=tx.tid, period=tx.period, entries=tuple(kept)))
    return out
