"""On-disk formats: dataset and profit files, membership JSON, result CSVs,
metrics JSON.

Dataset file: a "periods: m" header, then one transaction per line,
"<period> | <item>:<qty> <item>:<qty> ...".  Periods are 1..m; quantities are
positive integers.  Profit file: "<item> <profit>" per line.  Blank lines and
lines starting with "#" are skipped in both.
"""

from __future__ import annotations

import csv
import json

from .database import QuantTransaction, TemporalDatabase
from .membership import MembershipFunction, MembershipError, membership_from_obj
from .miner import MiningOutcome, SearchMetrics, prune_ratio
from .oracle import OracleRow
from .rtflist import itemset_label


class ParseError(ValueError):
    """Input file violates the format; message carries file and line."""

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        where = f"{path}:{line_no}" if line_no is not None else str(path)
        super().__init__(f"{where}: {message}")


def _content_lines(path):
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield line_no, line


def parse_profits(path) -> dict[str, float]:
    utilities: dict[str, float] = {}
    for line_no, line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(path, line_no, f"expected '<item> <profit>', got {line!r}")
        item, raw = parts
        try:
            profit = float(raw)
        except ValueError:
            raise ParseError(path, line_no, f"profit {raw!r} is not a number")
        if profit <= 0:
            raise ParseError(path, line_no, f"profit for {item!r} must be > 0")
        if item in utilities:
            raise ParseError(path, line_no, f"duplicate profit entry for {item!r}")
        utilities[item] = profit
    return utilities


def parse_database(dataset_path, profit_path) -> TemporalDatabase:
    utilities = parse_profits(profit_path)
    lines = _content_lines(dataset_path)
    try:
        header_no, header = next(lines)
    except StopIteration:
        raise ParseError(dataset_path, None, "empty dataset file")
    if not header.startswith("periods:"):
        raise ParseError(dataset_path, header_no, "first line must be 'periods: <m>'")
    try:
        period_count = int(header.split(":", 1)[1].strip())
    except ValueError:
        raise ParseError(dataset_path, header_no, "period count must be an integer")
    if period_count < 1:
        raise ParseError(dataset_path, header_no, "period count must be >= 1")

    transactions = []
    tid = 0
    for line_no, line in lines:
        if "|" not in line:
            raise ParseError(dataset_path, line_no, "expected '<period> | <item>:<qty> ...'")
        period_part, items_part = line.split("|", 1)
        try:
            period = int(period_part.strip())
        except ValueError:
            raise ParseError(dataset_path, line_no, f"period {period_part.strip()!r} is not an integer")
        if not 1 <= period <= period_count:
            raise ParseError(
                dataset_path, line_no,
                f"period {period} outside declared range 1..{period_count}",
            )
        entries = []
        seen = set()
        tokens = items_part.split()
        if not tokens:
            raise ParseError(dataset_path, line_no, "transaction has no items")
        for token in tokens:
            if ":" not in token:
                raise ParseError(dataset_path, line_no, f"expected '<item>:<qty>', got {token!r}")
            item, raw_qty = token.rsplit(":", 1)
            try:
                qty = int(raw_qty)
            except ValueError:
                raise ParseError(dataset_path, line_no, f"quantity {raw_qty!r} is not an integer")
            if qty < 1:
                raise ParseError(dataset_path, line_no, f"quantity for {item!r} must be >= 1, got {qty}")
            if item in seen:
                raise ParseError(dataset_path, line_no, f"duplicate item {item!r} in transaction")
            if item not in utilities:
                raise ParseError(dataset_path, line_no, f"item {item!r} has no profit entry")
            seen.add(item)
            entries.append((item, qty))
        tid += 1
        transactions.append(QuantTransaction(tid=tid, period=period, entries=tuple(entries)))

    return TemporalDatabase(
        transactions=tuple(transactions),
        periods=tuple(range(1, period_count + 1)),
        utilities=utilities,
    )


def load_membership(path) -> MembershipFunction:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, f"invalid JSON: {exc.msg}")
    try:
        return membership_from_obj(obj)
    except MembershipError as exc:
        raise ParseError(path, None, str(exc))


def write_database(db: TemporalDatabase, dataset_path, profit_path):
    """Inverse of parse_database; byte-deterministic for a given database."""
    with open(dataset_path, "w", encoding="utf-8") as fh:
        fh.write(f"periods: {len(db.periods)}\n")
        for tx in sorted(db.transactions, key=lambda t: t.tid):
            items = " ".join(f"{item}:{qty}" for item, qty in tx.entries)
            fh.write(f"{tx.period} | {items}\n")
    with open(profit_path, "w", encoding="utf-8") as fh:
        for item in sorted(db.utilities):
            profit = db.utilities[item]
            text = str(int(profit)) if float(profit).is_integer() else str(profit)
            fh.write(f"{item} {text}\n")


CSV_COLUMNS = ("itemset", "length", "tfur", "sumFu")


def result_rows(outcome: MiningOutcome):
    for r in outcome.results:
        yield itemset_label(r.itemset), len(r.itemset), r.tfur, r.sum_fu


def oracle_rows(rows: list[OracleRow]):
    for r in rows:
        label = "&".join(f"{item}.{region}" for item, region in r.itemset)
        yield label, len(r.itemset), r.tfur, r.fu


def write_results_csv(fh, rows):
    """rows: iterables of (itemset label, length, tfur, sumFu).  Floats are
    written with repr precision so equal runs give equal bytes."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for label, length, ratio, fu in rows:
        writer.writerow([label, length, repr(float(ratio)), repr(float(fu))])


def read_results_csv(fh) -> dict[str, tuple[float, float]]:
    """Itemset label -> (tfur, sumFu).  Accepts any writer that used the
    fixed column set."""
    reader = csv.DictReader(fh)
    out = {}
    for row in reader:
        out[row["itemset"]] = (float(row["tfur"]), float(row["sumFu"]))
    return out


def metrics_obj(gamma: float, metrics: SearchMetrics) -> dict:
    return {
        "gamma": gamma,
        "visitedNodes": metrics.visited_nodes,
        "candidates": metrics.candidates,
        "constructedLists": metrics.constructed_lists,
        "joinAborts": metrics.join_aborts,
        "extensionSkips": metrics.extension_skips,
        "pruneRatio": prune_ratio(metrics),
        "wallSeconds": metrics.wall_seconds,
    }


def write_metrics_json(fh, gamma: float, outcome: MiningOutcome):
    obj = {
        "metrics": metrics_obj(gamma, outcome.metrics),
        "results": [
            {"itemset": label, "length": length, "tfur": ratio, "sumFu": fu}
            for label, length, ratio, fu in result_rows(outcome)
        ],
    }
    json.dump(obj, fh, indent=2, sort_keys=True)
    fh.write("\n")
