"""Fuzzy membership functions over purchase quantities.

A membership function is an ordered list of region curves (for example Low,
Middle, High).  Each curve is piecewise linear between breakpoints; outside the
breakpoint range the degree is held at the nearest endpoint value, so e.g. a
High region that ends rising stays at full degree for arbitrarily large
quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


ROUNDING_MODES = ("exact", "2-decimals")


class MembershipError(ValueError):
    """Raised for invalid membership function definitions."""


@dataclass(frozen=True)
class RegionCurve:
    """One linguistic region: a label plus a piecewise-linear degree curve."""

    label: str
    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.label:
            raise MembershipError("region label must be non-empty")
        if len(self.breakpoints) < 1:
            raise MembershipError(f"region {self.label!r} has no breakpoints")
        prev_q = None
        for q, degree in self.breakpoints:
            if q < 0:
                raise MembershipError(
                    f"region {self.label!r}: negative quantity breakpoint {q}"
                )
            if prev_q is not None and q <= prev_q:
                raise MembershipError(
                    f"region {self.label!r}: breakpoint quantities must be "
                    f"strictly increasing (saw {prev_q} then {q})"
                )
            if not 0.0 <= degree <= 1.0:
                raise MembershipError(
                    f"region {self.label!r}: degree {degree} outside [0, 1]"
                )
            prev_q = q

    def degree(self, q: float) -> float:
        """Membership degree at quantity q.

        Linear interpolation between surrounding breakpoints; constant
        extrapolation beyond either end.
        """
        pts = self.breakpoints
        if q <= pts[0][0]:
            return pts[0][1]
        if q >= pts[-1][0]:
            return pts[-1][1]
        for (q0, d0), (q1, d1) in zip(pts, pts[1:]):
            if q0 <= q <= q1:
                d = d0 + (d1 - d0) * (q - q0) / (q1 - q0)
                # Valid breakpoints make clamping unnecessary.
                assert -1e-12 <= d <= 1.0 + 1e-12
                return d
        raise AssertionError("unreachable: breakpoints cover the interval")


@dataclass(frozen=True)
class MembershipFunction:
    """Ordered collection of region curves shared by all items.

    The position of a region in `regions` doubles as its order index, the
    secondary sort key among fuzzy items of one item.  Immutable; safe to share
    across threads.
    """

    regions: tuple[RegionCurve, ...]
    _label_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.regions:
            raise MembershipError("membership function needs at least one region")
        labels = [r.label for r in self.regions]
        if len(set(labels)) != len(labels):
            raise MembershipError(f"duplicate region labels in {labels}")
        object.__setattr__(
            self, "_label_index", {r.label: i for i, r in enumerate(self.regions)}
        )

    def region_index(self, label: str) -> int:
        return self._label_index[label]

    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.regions)


def fuzzify(mf: MembershipFunction, q: int, rounding: str = "exact") -> dict[str, float]:
    """Map a quantity to {region label: degree}, omitting zero degrees.

    rounding="2-decimals" rounds every degree to two decimal places right here,
    before any downstream arithmetic; entries that round to zero are dropped.
    """
    if q < 1:
        raise ValueError(f"quantity must be >= 1, got {q}")
    if rounding not in ROUNDING_MODES:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    out = {}
    for region in mf.regions:
        d = region.degree(q)
        if rounding == "2-decimals":
            d = round(d, 2)
        if d > 0.0:
            out[region.label] = d
    return out


def default_membership_function() -> MembershipFunction:
    """The canonical three-region triangular function used by the demo data.

    Low peaks at quantity 3, Middle at 6, High at 9 and stays at full degree
    for any larger quantity.
    """
    return MembershipFunction(
        regions=(
            RegionCurve("Low", ((0.0, 0.0), (3.0, 1.0), (6.0, 0.0))),
            RegionCurve("Middle", ((3.0, 0.0), (6.0, 1.0), (9.0, 0.0))),
            RegionCurve("High", ((6.0, 0.0), (9.0, 1.0))),
        )
    )


def membership_from_obj(obj) -> MembershipFunction:
    """Build a MembershipFunction from parsed JSON: a list of
    {"label": ..., "breakpoints": [[q, degree], ...]} dicts.

    Raises MembershipError on structural or invariant violations.
    """
    if not isinstance(obj, list):
        raise MembershipError("membership config must be a JSON list of regions")
    regions = []
    for i, entry in enumerate(obj):
        if not isinstance(entry, dict) or "label" not in entry or "breakpoints" not in entry:
            raise MembershipError(
                f"region #{i}: expected an object with 'label' and 'breakpoints'"
            )
        label = entry["label"]
        if not isinstance(label, str):
            raise MembershipError(f"region #{i}: label must be a string")
        bps = entry["breakpoints"]
        if not isinstance(bps, list) or not all(
            isinstance(bp, list) and len(bp) == 2 for bp in bps
        ):
            raise MembershipError(
                f"region {label!r}: breakpoints must be a list of [quantity, degree] pairs"
            )
        try:
            pairs = tuple((float(q), float(d)) for q, d in bps)
        except (TypeError, ValueError) as exc:
            raise MembershipError(f"region {label!r}: non-numeric breakpoint: {exc}")
        regions.append(RegionCurve(label, pairs))
    return MembershipFunction(regions=tuple(regions))


class Fuzzifier:
    """Memoizing wrapper around fuzzify for one (function, rounding) pair.

    Quantities repeat heavily in real data, so caching by quantity makes
    fuzzification effectively free on large databases.
    """

    def __init__(self, mf: MembershipFunction, rounding: str = "exact"):
        if rounding not in ROUNDING_MODES:
            raise ValueError(f"unknown rounding mode {rounding!r}")
        self.mf = mf
        self.rounding = rounding
        self._cache: dict[int, tuple[tuple[int, str, float], ...]] = {}

    def degrees(self, q: int) -> tuple[tuple[int, str, float], ...]:
        """Active regions at quantity q as (region index, label, degree) triples."""
        hit = self._cache.get(q)
        if hit is None:
            raw = fuzzify(self.mf, q, self.rounding)
            hit = tuple(
                (self.mf.region_index(label), label, degree)
                for label, degree in raw.items()
            )
            self._cache[q] = hit
        return hit
