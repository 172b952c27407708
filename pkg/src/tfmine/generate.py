"""Seeded synthetic database generation for tests and benchmarks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .database import QuantTransaction, TemporalDatabase


@dataclass(frozen=True)
class GenParams:
    """density is the target mean items per transaction; sizes are drawn
    uniformly from [1, min(item_count, 2*density - 1)].  A fixed seed gives a
    byte-identical database."""

    item_count: int
    transaction_count: int
    period_count: int
    max_quantity: int = 6
    profit_min: int = 1
    profit_max: int = 10
    density: int = 4
    seed: int = 0

    def validate(self):
        for name in ("item_count", "transaction_count", "period_count",
                     "max_quantity", "profit_min", "density"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.profit_max < self.profit_min:
            raise ValueError("profit_max must be >= profit_min")


def generate(params: GenParams) -> TemporalDatabase:
    params.validate()
    rng = random.Random(params.seed)
    items = [f"I{i}" for i in range(1, params.item_count + 1)]
    utilities = {item: float(rng.randint(params.profit_min, params.profit_max))
                 for item in items}
    size_cap = max(1, min(params.item_count, 2 * params.density - 1))
    transactions = []
    for tid in range(1, params.transaction_count + 1):
        size = rng.randint(1, size_cap)
        chosen = rng.sample(items, size)
        entries = tuple(
            (item, rng.randint(1, params.max_quantity)) for item in chosen
        )
        period = rng.randint(1, params.period_count)
        transactions.append(QuantTransaction(tid=tid, period=period, entries=entries))
    return TemporalDatabase(
        transactions=tuple(transactions),
        periods=tuple(range(1, params.period_count + 1)),
        utilities=utilities,
    )
