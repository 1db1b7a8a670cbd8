"""Fibonacci technical-analysis calculators.

Prices are exact ``Decimal`` values; rounding to a fixed number of places
(half-up) only happens when results are rendered.  Time arithmetic is in
calendar days.
"""
from __future__ import annotations

import datetime as dt
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal

from .errors import PreconditionError

D = Decimal

DEFAULT_RETRACE = (D("0.236"), D("0.382"), D("0.5"), D("0.618"), D("1.0"))
DEFAULT_EXTEND = (D("1.618"), D("2.618"), D("4.236"))
BOX_TIME_MULTIPLIERS = (D("1.0"), D("1.618"), D("2.618"), D("4.236"))

GOLDEN = D("1.618")
GOLDEN_INV = D("0.618")
ALTERNATION_CLASSES = (D("0.382"), D("0.618"))
ALTERNATION_TOL = D("0.05")


def quantize(value: Decimal, places: int = 3) -> Decimal:
    """Half-up rounding to a fixed number of fractional digits."""
    return value.quantize(D(1).scaleb(-places), rounding=ROUND_HALF_UP)


def to_decimal(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, float):
        # Go through repr so 3.799 stays 3.799 rather than its binary expansion.
        return D(repr(x))
    return D(x)


@dataclass(frozen=True)
class PricePoint:
    date: dt.date
    price: Decimal

    def __post_init__(self) -> None:
        object.__setattr__(self, "price", to_decimal(self.price))
        if self.price <= 0:
            raise PreconditionError(f"price must be positive, got {self.price}")

    @classmethod
    def parse(cls, text: str) -> PricePoint:
        """Parse ``YYYY-MM-DD:price``."""
        try:
            day, price = text.split(":")
            return cls(dt.date.fromisoformat(day), D(price))
        except (ValueError, ArithmeticError) as exc:
            raise PreconditionError(f"expected DATE:PRICE, got {text!r}") from exc


@dataclass(frozen=True)
class Swing:
    start: PricePoint
    end: PricePoint

    def __post_init__(self) -> None:
        if not self.start.date < self.end.date:
            raise PreconditionError("swing start date must precede end date")

    @property
    def duration_days(self) -> int:
        return (self.end.date - self.start.date).days

    @property
    def delta_price(self) -> Decimal:
        return self.end.price - self.start.price


@dataclass(frozen=True)
class RatioSet:
    retrace: tuple[Decimal, ...] = DEFAULT_RETRACE
    extend: tuple[Decimal, ...] = DEFAULT_EXTEND

    def __post_init__(self) -> None:
        retrace = tuple(to_decimal(r) for r in self.retrace)
        extend = tuple(to_decimal(r) for r in self.extend)
        if any(r <= 0 for r in retrace + extend):
            raise PreconditionError("ratios must be positive")
        if list(retrace) != sorted(retrace):
            raise PreconditionError("retracement ratios must be ascending")
        object.__setattr__(self, "retrace", retrace)
        object.__setattr__(self, "extend", extend)


@dataclass(frozen=True)
class Level:
    ratio: Decimal
    price: Decimal

    def as_dict(self, places: int = 3) -> dict:
        return {"ratio": self.ratio, "price": quantize(self.price, places)}


def _level(s: Swing, r: Decimal) -> Decimal:
    return s.end.price - s.delta_price * r


def retracement_levels(s: Swing, r: RatioSet = RatioSet()) -> list[Level]:
    """Price after a counter-move recovers fraction ``r`` of the swing."""
    return [Level(ratio, _level(s, ratio)) for ratio in r.retrace]


def extension_levels(s: Swing, r: RatioSet = RatioSet()) -> list[Level]:
    """Same formula with ratios above 1: targets beyond the swing start."""
    return [Level(ratio, _level(s, ratio)) for ratio in r.extend]


# rule -> required wave fields
_RULE_INPUTS: dict[int, tuple[str, ...]] = {
    1: ("wave1_len",),
    2: ("wave1_len", "wave2_base"),
    3: ("wave1_len", "wave1_top", "wave1_base"),
    4: ("wave1_base", "wave3_top", "wave4_base"),
    5: ("a_len",),
    6: ("a_len", "a_base"),
    7: ("a_len",),
    8: ("prev_len",),
}
_LENGTHS = {"wave1_len", "a_len", "prev_len"}

ELLIOTT_RULES = {
    1: "equality: the non-extended impulse waves are about equal in length",
    2: "wave 3 minimum top = wave 2 base + 1.618 x wave 1",
    3: "wave 5 top range = wave 1 base/top + 3.236 x wave 1",
    4: "extended wave 5 = wave 4 base + 1.618 x (wave 3 top - wave 1 base)",
    5: "zigzag: C about equal to A",
    6: "C target = A base - 0.618 x A",
    7: "flat with B beyond A top: C about 1.618 x A",
    8: "triangle: each wave about factor x the previous one",
}


def elliott_target(
    rule: int, waves: Mapping[str, object], factor: Decimal = GOLDEN_INV
) -> Decimal | tuple[Decimal, Decimal]:
    """Price or length target from caller-measured waves under one of eight ratio rules.

    Rule 3 returns a ``(min, max)`` pair; the others return one value.  Rule 8's
    factor defaults to 0.618.
    """
    if rule not in _RULE_INPUTS:
        raise PreconditionError(f"unknown Elliott rule {rule}; expected 1..8")
    w: dict[str, Decimal] = {}
    for name in _RULE_INPUTS[rule]:
        if waves.get(name) is None:
            raise PreconditionError(f"rule {rule} needs '{name}'")
        w[name] = to_decimal(waves[name])
        if name in _LENGTHS and w[name] <= 0:
            raise PreconditionError(f"'{name}' must be a positive length")

    match rule:
        case 1:
            return w["wave1_len"]
        case 2:
            return w["wave2_base"] + GOLDEN * w["wave1_len"]
        case 3:
            ext = 2 * GOLDEN * w["wave1_len"]
            lo, hi = sorted((w["wave1_base"], w["wave1_top"]))
            return lo + ext, hi + ext
        case 4:
            span = w["wave3_top"] - w["wave1_base"]
            if span <= 0:
                raise PreconditionError("wave 3 top must exceed wave 1 base")
            return w["wave4_base"] + GOLDEN * span
        case 5:
            return w["a_len"]
        case 6:
            return w["a_base"] - GOLDEN_INV * w["a_len"]
        case 7:
            return GOLDEN * w["a_len"]
        case _:
            return to_decimal(factor) * w["prev_len"]


def fibonacci_offsets(count: int, paper_list: bool = False) -> list[int]:
    """First ``count`` distinct Fibonacci day offsets 1, 2, 3, 5, 8, ...

    ``paper_list=True`` drops 8, reproducing the published list
    1, 2, 3, 5, 13, 21, ...
    """
    out: list[int] = []
    a, b = 1, 2
    while len(out) < count:
        if not (paper_list and a == 8):
            out.append(a)
        a, b = b, a + b
    return out


def time_zones(pivot: dt.date, count: int, paper_list: bool = False) -> list[dt.date]:
    if count < 1:
        raise PreconditionError("count must be >= 1")
    return [pivot + dt.timedelta(days=k) for k in fibonacci_offsets(count, paper_list)]


@dataclass(frozen=True)
class Trendline:
    start_date: dt.date
    start_price: Decimal
    end_date: dt.date
    end_price: Decimal

    def as_dict(self, places: int = 3) -> dict:
        return {
            "start_date": self.start_date.isoformat(),
            "start_price": quantize(self.start_price, places),
            "end_date": self.end_date.isoformat(),
            "end_price": quantize(self.end_price, places),
        }


@dataclass(frozen=True)
class FibBox:
    swing: Swing
    time_targets: tuple[dt.date, ...]
    price_targets: tuple[Level, ...]
    trendlines: tuple[Trendline, ...]
    time_multipliers: tuple[Decimal, ...] = field(default=BOX_TIME_MULTIPLIERS)

    def as_dict(self, places: int = 3) -> dict:
        s = self.swing
        return {
            "start": {"date": s.start.date.isoformat(), "price": s.start.price},
            "end": {"date": s.end.date.isoformat(), "price": s.end.price},
            "duration_days": s.duration_days,
            "delta_price": s.delta_price,
            "time_targets": {
                f"T{i}": d.isoformat() for i, d in enumerate(self.time_targets, 1)
            },
            "price_targets": {
                f"P{i}": quantize(lv.price, places)
                for i, lv in enumerate(self.price_targets, 1)
            },
            "trendlines": [t.as_dict(places) for t in self.trendlines],
        }


def fib_box(s: Swing, r: RatioSet = RatioSet()) -> FibBox:
    """Price-time grid projected from one swing.

    Time targets are ``end + trunc(DT * m)`` days for m in 1, 1.618, 2.618,
    4.236; truncation toward zero (59.866 -> 59) matches the reference
    box dates.  Price targets are the retracement grid.  The two
    diagonals run from the swing's extreme points to the far box corners at T4.
    """
    days = s.duration_days
    targets = tuple(
        s.end.date
        + dt.timedelta(days=int((days * m).to_integral_value(rounding=ROUND_DOWN)))
        for m in BOX_TIME_MULTIPLIERS
    )
    prices = tuple(retracement_levels(s, r))
    t4 = targets[-1]
    diagonals = (
        Trendline(s.start.date, s.start.price, t4, s.end.price),
        Trendline(s.end.date, s.end.price, t4, s.start.price),
    )
    return FibBox(s, targets, prices, diagonals)


@dataclass(frozen=True)
class AlternationEntry:
    move: Decimal
    reaction: Decimal
    ratio: Decimal
    classification: Decimal | None

    @property
    def label(self) -> str:
        return "unclassified" if self.classification is None else str(self.classification)


@dataclass(frozen=True)
class AlternationReport:
    entries: tuple[AlternationEntry, ...]

    @property
    def pattern(self) -> str:
        names = {D("0.618"): "strong", D("0.382"): "weak"}
        return "-".join(names.get(e.classification, "?") for e in self.entries)

    @property
    def alternates(self) -> bool:
        classes = [e.classification for e in self.entries]
        if None in classes:
            return False
        return all(a != b for a, b in zip(classes, classes[1:]))

    def as_dict(self) -> dict:
        return {
            "entries": [
                {
                    "move": e.move,
                    "reaction": e.reaction,
                    "ratio": e.ratio,
                    "classification": e.label,
                }
                for e in self.entries
            ],
            "pattern": self.pattern,
            "alternates": self.alternates,
        }


def _magnitude(x) -> Decimal:
    if isinstance(x, Swing):
        return abs(x.delta_price)
    return abs(to_decimal(x))


def alternation_analysis(moves: Iterable[tuple[object, object]]) -> AlternationReport:
    """Reaction/move ratios for successive (move, reaction) pairs.

    Each element may be a Swing or a signed price distance.  Ratios are
    classified to the nearest of 0.382 / 0.618 when within 0.05.
    """
    entries = []
    for move, reaction in moves:
        m, r = _magnitude(move), _magnitude(reaction)
        if m == 0:
            raise PreconditionError("preceding move has zero length")
        exact = r / m
        nearest = min(ALTERNATION_CLASSES, key=lambda c: abs(exact - c))
        cls = nearest if abs(exact - nearest) <= ALTERNATION_TOL else None
        entries.append(AlternationEntry(m, r, quantize(exact, 3), cls))
    return AlternationReport(tuple(entries))


@dataclass(frozen=True)
class ZigzagFit:
    relation: str
    predicted: Decimal
    actual: Decimal
    residual: Decimal
    relative_residual: Decimal


ZIGZAG_RELATIONS = ("W = X + Y", "0.618 * W = X + Y", "W + X = Y", "0.618 * (W + X) = Y")


def zigzag_candidates(w, x, y) -> list[ZigzagFit]:
    """All four zigzag time relations in their fixed order."""
    w, x, y = (to_decimal(v) for v in (w, x, y))
    if min(w, x, y) <= 0:
        raise PreconditionError("durations must be positive")
    pairs = (
        (w, x + y),
        (GOLDEN_INV * w, x + y),
        (w + x, y),
        (GOLDEN_INV * (w + x), y),
    )
    return [
        ZigzagFit(name, lhs, rhs, abs(lhs - rhs), abs(lhs - rhs) / rhs)
        for name, (lhs, rhs) in zip(ZIGZAG_RELATIONS, pairs)
    ]


def zigzag_time_relation(w, x, y) -> ZigzagFit:
    """Best-fitting relation by relative residual; ties go to the earlier one."""
    cands = zigzag_candidates(w, x, y)
    return min(cands, key=lambda c: c.relative_residual)  # min() keeps the first on ties


@dataclass(frozen=True)
class Bar:
    date: dt.date
    close: Decimal
    open: Decimal | None = None
    high: Decimal | None = None
    low: Decimal | None = None
    volume: Decimal | None = None

    @property
    def hi(self) -> Decimal:
        return self.close if self.high is None else self.high

    @property
    def lo(self) -> Decimal:
        return self.close if self.low is None else self.low


@dataclass(frozen=True)
class Series:
    bars: tuple[Bar, ...]

    def __post_init__(self) -> None:
        for i, bar in enumerate(self.bars):
            prices = [p for p in (bar.open, bar.high, bar.low, bar.close) if p is not None]
            if any(p <= 0 for p in prices):
                raise PreconditionError(f"bar {i}: prices must be positive")
            if i and bar.date <= self.bars[i - 1].date:
                raise PreconditionError(f"bar {i}: dates must be strictly increasing")

    def __len__(self) -> int:
        return len(self.bars)

    @property
    def has_ohlc(self) -> bool:
        return any(b.high is not None for b in self.bars)


@dataclass(frozen=True)
class Pivot:
    date: dt.date
    price: Decimal
    kind: str  # "top" | "bottom"


def detect_pivots(series: Series, k: int) -> list[Pivot]:
    """Bars whose low (high) is the strict minimum (maximum) of the centred 2k+1 window."""
    if k < 1:
        raise PreconditionError("window half-width k must be >= 1")
    bars: Sequence[Bar] = series.bars
    if len(bars) < 2 * k + 1:
        raise PreconditionError(f"series too short: need {2 * k + 1} bars, have {len(bars)}")
    out = []
    for i in range(k, len(bars) - k):
        window = [*bars[i - k : i], *bars[i + 1 : i + k + 1]]
        bar = bars[i]
        if all(bar.hi > o.hi for o in window):
            out.append(Pivot(bar.date, bar.hi, "top"))
        if all(bar.lo < o.lo for o in window):
            out.append(Pivot(bar.date, bar.lo, "bottom"))
    return out
