"""Temporal quantitative database model.

Transactions carry (item, quantity) pairs and belong to exactly one integer
period.  Periods are declared densely as 1..m so that empty periods are
representable.  Item external utilities (unit profits) live in a plain dict.
All structures are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DatabaseError(ValueError):
    """Raised when database invariants are violated."""


@dataclass(frozen=True)
class QuantTransaction:
    tid: int
    period: int
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for item, qty in self.entries:
            if item in seen:
                raise DatabaseError(f"transaction {self.tid}: duplicate item {item!r}")
            seen.add(item)
            if qty < 1:
                raise DatabaseError(
                    f"transaction {self.tid}: quantity for {item!r} must be >= 1, got {qty}"
                )


@dataclass(frozen=True)
class TemporalDatabase:
    """Transactions ordered by (period, tid), plus the declared period range
    and the per-item unit profits."""

    transactions: tuple[QuantTransaction, ...]
    periods: tuple[int, ...]
    utilities: dict[str, float]
    _by_tid: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        period_set = set(self.periods)
        if len(period_set) != len(self.periods):
            raise DatabaseError("declared periods must be distinct")
        if list(self.periods) != sorted(self.periods):
            raise DatabaseError("declared periods must be ascending")
        tids = set()
        for tx in self.transactions:
            if tx.period not in period_set:
                raise DatabaseError(
                    f"transaction {tx.tid}: period {tx.period} not declared"
                )
            if tx.tid in tids:
                raise DatabaseError(f"duplicate tid {tx.tid}")
            tids.add(tx.tid)
            for item, _ in tx.entries:
                profit = self.utilities.get(item)
                if profit is None:
                    raise DatabaseError(f"item {item!r} has no utility entry")
                if profit <= 0:
                    raise DatabaseError(f"item {item!r}: utility must be > 0")
        ordered = tuple(
            sorted(self.transactions, key=lambda t: (t.period, t.tid))
        )
        object.__setattr__(self, "transactions", ordered)
        object.__setattr__(self, "_by_tid", {t.tid: t for t in ordered})

    def transaction(self, tid: int) -> QuantTransaction:
        return self._by_tid[tid]

    def items(self) -> list[str]:
        """Distinct items appearing in any transaction, sorted."""
        out = set()
        for tx in self.transactions:
            for item, _ in tx.entries:
                out.add(item)
        return sorted(out)


def build_tp_table(db: TemporalDatabase) -> dict[int, list[int]]:
    """Period -> ordered tids, one database pass.

    Declared-but-empty periods map to empty lists.  Backed by a plain dict so
    period lookup is average constant time.
    """
    table: dict[int, list[int]] = {p: [] for p in db.periods}
    for tx in db.transactions:
        table[tx.period].append(tx.tid)
    return table
