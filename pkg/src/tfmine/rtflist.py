"""Per-itemset utility lists and their join.

Each list row is (tid, u, rmtfu, R): crisp utility of the itemset in that
transaction, the remaining maximal fuzzy utility after the itemset's last item
in the revised transaction, and the itemset's min membership degree there.
The itemset's fuzzy utility in a row is u * R.

Joining the lists of two sibling itemsets intersects their tids; u follows
inclusion-exclusion against the shared prefix, R takes the min, rmtfu is
inherited from the right operand.  A running budget fused into the join aborts
it as soon as the unmatched rows prove the whole subtree cannot reach the
utility floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .database import QuantTransaction
from .preprocess import FuzzyItem, TemporalIndex, TransactionProfile


class RTFEntry(NamedTuple):
    tid: int
    u: float
    rmtfu: float
    r: float


@dataclass(frozen=True, eq=False)
class RTFList:
    itemset: tuple[FuzzyItem, ...]
    latest_first_period: int
    entries: list[RTFEntry]
    sum_fu: float
    sum_rmtfu: float

    def validate(self):
        """Recompute the cached sums and ordering invariants (test use)."""
        tids = [e.tid for e in self.entries]
        assert tids == sorted(tids) and len(set(tids)) == len(tids)
        items = [fi.item for fi in self.itemset]
        assert len(set(items)) == len(items)
        fu = sum(e.u * e.r for e in self.entries)
        rm = sum(e.rmtfu for e in self.entries)
        assert abs(fu - self.sum_fu) < 1e-9 * max(1.0, abs(fu))
        assert abs(rm - self.sum_rmtfu) < 1e-9 * max(1.0, abs(rm))
        for e in self.entries:
            assert e.u >= 0 and e.rmtfu >= 0 and 0 < e.r <= 1


def itemset_label(itemset: tuple[FuzzyItem, ...]) -> str:
    return "&".join(str(fi) for fi in itemset)


def build_initial_lists(
    revised: list[QuantTransaction],
    profiles: list[TransactionProfile],
    index: TemporalIndex,
    order: list[str],
) -> list[RTFList]:
    """One list per fuzzy item with support, sorted by the global order
    (item rank first, region index second).

    A fuzzy item's rmtfu in a transaction sums the mfu of crisp items strictly
    after it in the revised transaction; other regions of its own item
    contribute nothing.
    """
    rank = {item: i for i, item in enumerate(order)}
    by_tid = {p.tid: p for p in profiles}
    acc: dict[tuple[int, int], list[RTFEntry]] = {}
    labels: dict[tuple[int, int], FuzzyItem] = {}
    # Ascending tid keeps every produced entry list sorted with no extra pass.
    for tx in sorted(revised, key=lambda t: t.tid):
        prof = by_tid[tx.tid]
        n = len(tx.entries)
        # remaining[i] = sum of mfu over positions after i
        remaining = [0.0] * n
        tail = 0.0
        for i in range(n - 1, -1, -1):
            remaining[i] = tail
            tail += prof.mfu[tx.entries[i][0]]
        for i, (item, _) in enumerate(tx.entries):
            cu = prof.crisp[item]
            for region_index, label, degree in prof.regions[item]:
                key = (rank[item], region_index)
                rows = acc.get(key)
                if rows is None:
                    rows = acc[key] = []
                    labels[key] = FuzzyItem(item, label, region_index)
                rows.append(RTFEntry(tx.tid, cu, remaining[i], degree))
    out = []
    for key in sorted(acc):
        fi = labels[key]
        rows = acc[key]
        out.append(
            RTFList(
                itemset=(fi,),
                latest_first_period=index.first_period[(fi.item, fi.region_index)],
                entries=rows,
                sum_fu=sum(e.u * e.r for e in rows),
                sum_rmtfu=sum(e.rmtfu for e in rows),
            )
        )
    return out


def construct(
    prefix: RTFList | None,
    list_x: RTFList,
    list_y: RTFList,
    floor: float = float("-inf"),
) -> RTFList | None:
    """Join two sibling lists into the list of their union itemset.

    Returns None ("aborted") when the running budget — list_x's sum_fu +
    sum_rmtfu minus the (fu + rmtfu) of every X row with no tid match in Y —
    drops below `floor`: no itemset in the joined subtree can reach the floor.
    Pass the default floor to disable the abort.
    """
    assert list_x.itemset[:-1] == list_y.itemset[:-1], "operands must share a prefix"
    assert list_x.itemset[-1].item != list_y.itemset[-1].item, (
        "two regions of one item cannot join"
    )
    ey = list_y.entries
    ep = prefix.entries if prefix is not None else None
    ny = len(ey)
    j = k = 0
    budget = list_x.sum_fu + list_x.sum_rmtfu
    rows: list[RTFEntry] = []
    sum_fu = 0.0
    sum_rmtfu = 0.0
    for tid, ux, rmx, rx in list_x.entries:
        while j < ny and ey[j].tid < tid:
            j += 1
        if j < ny and ey[j].tid == tid:
            _, uy, rmy, ry = ey[j]
            u = ux + uy
            if ep is not None:
                # Every X tid came from a join over the prefix, so it must be here.
                while ep[k].tid < tid:
                    k += 1
                u -= ep[k].u
            r = rx if rx <= ry else ry
            rows.append(RTFEntry(tid, u, rmy, r))
            sum_fu += u * r
            sum_rmtfu += rmy
        else:
            budget -= ux * rx + rmx
            if budget < floor:
                return None
    return RTFList(
        itemset=list_x.itemset + (list_y.itemset[-1],),
        latest_first_period=max(
            list_x.latest_first_period, list_y.latest_first_period
        ),
        entries=rows,
        sum_fu=sum_fu,
        sum_rmtfu=sum_rmtfu,
    )


def dump_lists(lists: list[RTFList]) -> str:
    """Debug rendering: per list a header with the itemset and its latest
    first period, then one "tid u rmtfu R" line per row with 4-decimal reals."""
    blocks = []
    for lst in lists:
        lines = [f"{itemset_label(lst.itemset)} L_STP=P{lst.latest_first_period}"]
        for e in lst.entries:
            lines.append(f"{e.tid} {e.u:.4f} {e.rmtfu:.4f} {e.r:.4f}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
