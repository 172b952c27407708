"""Brute-force reference miner.

Recomputes every ratio straight from the definitions: no utility lists, no
database revision, no pruning, no code shared with the fast path beyond
fuzzification and the database model.  Deliberately naive; guarded against
combinatorial blow-up by a cap on distinct fuzzy items.
"""

from __future__ import annotations

from dataclasses import dataclass

from .database import TemporalDatabase
from .membership import Fuzzifier, MembershipFunction


DEFAULT_GUARD = 24


class OracleGuardError(ValueError):
    """Database has too many distinct fuzzy items to enumerate exhaustively."""

    def __init__(self, count: int, guard: int):
        self.count = count
        self.guard = guard
        super().__init__(
            f"refusing to enumerate: {count} distinct fuzzy items exceeds "
            f"the guard of {guard}"
        )


@dataclass(frozen=True)
class OracleRow:
    """itemset: (item, region label) pairs sorted by item then region index."""

    itemset: tuple[tuple[str, str], ...]
    tfur: float
    fu: float


def _fuzzified(db: TemporalDatabase, fuzzifier: Fuzzifier):
    """Per transaction: sorted (item, crisp utility, active regions) triples."""
    out = []
    for tx in db.transactions:
        rows = []
        for item, qty in sorted(tx.entries):
            active = fuzzifier.degrees(qty)
            if active:
                rows.append((item, qty * db.utilities[item], active))
        out.append((tx.tid, tx.period, rows))
    return out


def _accumulate(db: TemporalDatabase, fuzzifier: Fuzzifier, guard: int):
    """Walk every transaction's supported sub-itemsets (at most one region per
    item), summing each itemset's fuzzy utility as it goes.

    Returns (itemset -> summed fu, fuzzy item -> first period).  Itemset keys
    are tuples of (item, region index, region label) sorted by construction.
    """
    fuzzified = _fuzzified(db, fuzzifier)
    distinct = set()
    for _, _, rows in fuzzified:
        for item, _, active in rows:
            for region_index, _, _ in active:
                distinct.add((item, region_index))
    if len(distinct) > guard:
        raise OracleGuardError(len(distinct), guard)

    fu_sums: dict[tuple, float] = {}
    first_period: dict[tuple[str, int], int] = {}
    for _, period, rows in fuzzified:
        for item, _, active in rows:
            for region_index, _, _ in active:
                key = (item, region_index)
                if key not in first_period:
                    first_period[key] = period

        def expand(pos, stack, min_degree, crisp_sum):
            if stack:
                key = tuple(stack)
                fu_sums[key] = fu_sums.get(key, 0.0) + min_degree * crisp_sum
            for nxt in range(pos, len(rows)):
                item, cu, active = rows[nxt]
                for region_index, label, degree in active:
                    stack.append((item, region_index, label))
                    expand(
                        nxt + 1,
                        stack,
                        degree if degree < min_degree else min_degree,
                        crisp_sum + cu,
                    )
                    stack.pop()

        expand(0, [], 2.0, 0.0)
    return fu_sums, first_period


def enumerate_fuzzy_itemsets(
    db: TemporalDatabase,
    mf: MembershipFunction,
    rounding: str = "exact",
    guard: int = DEFAULT_GUARD,
) -> set[tuple[tuple[str, str], ...]]:
    """Every fuzzy itemset contained (all members, degree > 0) in at least one
    transaction, as tuples of (item, region label) pairs."""
    fu_sums, _ = _accumulate(db, Fuzzifier(mf, rounding), guard)
    return {
        tuple((item, label) for item, _, label in key) for key in fu_sums
    }


def oracle_mine(
    db: TemporalDatabase,
    mf: MembershipFunction,
    gamma: float,
    rounding: str = "exact",
    guard: int = DEFAULT_GUARD,
) -> list[OracleRow]:
    """All supported itemsets with ratio >= gamma, ratios recomputed from
    scratch.  Sorted by (length, itemset key) for stable output."""
    fuzzifier = Fuzzifier(mf, rounding)
    fu_sums, first_period = _accumulate(db, fuzzifier, guard)

    # Per-period tfu and suffix sums, recomputed locally.
    period_tfu = {p: 0.0 for p in db.periods}
    for tx in db.transactions:
        tfu = 0.0
        for item, qty in tx.entries:
            cu = qty * db.utilities[item]
            for _, _, degree in fuzzifier.degrees(qty):
                tfu += degree * cu
        period_tfu[tx.period] += tfu
    suffix = {}
    acc = 0.0
    for p in reversed(db.periods):
        acc += period_tfu[p]
        suffix[p] = acc

    rows = []
    for key, fu in fu_sums.items():
        latest = max(first_period[(item, ridx)] for item, ridx, _ in key)
        denom = suffix[latest]
        ratio = fu / denom if denom > 0.0 else 0.0
        if ratio >= gamma:
            rows.append(
                OracleRow(
                    itemset=tuple((item, label) for item, _, label in key),
                    tfur=ratio,
                    fu=fu,
                )
            )
    rows.sort(key=lambda r: (len(r.itemset), r.itemset))
    return rows
